#include "sofft/numcheck.hpp"

#include "sofft/error.hpp"

#include <cmath>
#include <sstream>

namespace sofft {

void Grid::validate() const {
    for (const auto& a : axes) {
        if (a.count < 2) throw PreconditionError("grid axis " + a.name + " needs at least 2 points");
        if (!(a.min < a.max)) throw PreconditionError("grid axis " + a.name + " needs min < max");
    }
}

std::vector<ResidualEntry> residual(const EquationSet& eqs, const SectionExpr& sol, const Grid& grid) {
    grid.validate();
    const JetChart& chart = eqs.chart;
    int order = 0;
    for (const auto& e : eqs.equations)
        for (const Symbol& s : symbols(e.residual))
            if (s.kind() == SymbolKind::Jet) order = std::max(order, s.order());
    const SectionExpr full = prolong(sol, order, chart);

    std::vector<std::size_t> axis_of(chart.m());
    for (std::size_t i = 0; i < chart.m(); ++i) {
        bool found = false;
        for (std::size_t a = 0; a < grid.axes.size(); ++a) {
            if (grid.axes[a].name == chart.base_names()[i]) {
                axis_of[i] = a;
                found = true;
            }
        }
        if (!found) throw PreconditionError("grid has no axis for base coordinate " + chart.base_names()[i]);
    }

    Bindings base;
    for (const auto& [name, v] : grid.params) base[Symbol::param(name)] = v;

    std::vector<ResidualEntry> out;
    for (const auto& eq : eqs.equations) {
        ResidualEntry entry;
        entry.name = eq.name;
        entry.symbolic = substitute(eq.residual, full.components);
        out.push_back(std::move(entry));
    }

    std::vector<int> idx(chart.m(), 0);
    for (;;) {
        Bindings b = base;
        std::vector<double> pt(chart.m());
        for (std::size_t i = 0; i < chart.m(); ++i) {
            const Axis& ax = grid.axes[axis_of[i]];
            pt[i] = ax.min + (ax.max - ax.min) * idx[i] / (ax.count - 1);
            b[chart.base(i)] = pt[i];
        }
        for (auto& entry : out) {
            double v;
            try {
                v = entry.symbolic.poly().eval(b);
            } catch (const EvalError& e) {
                std::ostringstream os;
                os << e.what() << " at (";
                for (std::size_t i = 0; i < pt.size(); ++i) os << (i ? ", " : "") << chart.base_names()[i] << "=" << pt[i];
                os << ")";
                throw EvalError(os.str());
            }
            const double a = std::isfinite(v) ? std::abs(v) : INFINITY;
            if (a > entry.max_abs || entry.worst_point.empty()) {
                entry.max_abs = std::max(entry.max_abs, a);
                entry.worst_point = pt;
            }
        }
        std::size_t d = 0;
        while (d < chart.m()) {
            if (++idx[d] < grid.axes[axis_of[d]].count) break;
            idx[d] = 0;
            ++d;
        }
        if (d == chart.m()) break;
    }
    return out;
}

double finite_diff_validate(const Expr& e, const Symbol& s, const std::vector<Bindings>& points) {
    const Expr de = diff(e, s);
    double worst = 0;
    for (const Bindings& p : points) {
        auto it = p.find(s);
        if (it == p.end()) throw EvalError("point does not bind " + s.label());
        const double x = it->second;
        const double h = 1e-5 * std::max(1.0, std::abs(x));
        Bindings lo = p, hi = p;
        lo[s] = x - h;
        hi[s] = x + h;
        const double fd = (e.poly().eval(hi) - e.poly().eval(lo)) / (2 * h);
        const double exact = de.poly().eval(p);
        worst = std::max(worst, std::abs(fd - exact) / std::max(1.0, std::abs(exact)));
    }
    return worst;
}

Eigen::MatrixXd evaluate(const ExprMatrix& m, const Bindings& point) {
    const Eigen::Index rows = static_cast<Eigen::Index>(m.size());
    const Eigen::Index cols = rows ? static_cast<Eigen::Index>(m[0].size()) : 0;
    Eigen::MatrixXd out(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) out(r, c) = m[r][c].poly().eval(point);
    return out;
}

int numeric_rank(const Eigen::MatrixXd& m, double threshold) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > threshold * sv(0)) ++r;
    return r;
}

int numeric_rank(const ExprMatrix& m, const Bindings& point, double threshold) {
    return numeric_rank(evaluate(m, point), threshold);
}

Bindings random_point(const std::vector<Symbol>& symbols, std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Bindings b;
    for (const auto& s : symbols) b[s] = dist(rng);
    return b;
}

} // namespace sofft
