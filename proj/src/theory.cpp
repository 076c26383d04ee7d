#include "sofft/theory.hpp"

#include "sofft/error.hpp"
#include "sofft/jetspace.hpp"
#include "sofft/numcheck.hpp"

#include <functional>
#include <sstream>

namespace sofft {

LagrangianProblem::LagrangianProblem(JetChart c, Expr l, std::vector<std::string> p)
    : chart(c.with_order(2)), L(normal_form(l)), params(std::move(p)) {
    for (const Symbol& s : symbols(L)) {
        switch (s.kind()) {
        case SymbolKind::Base:
        case SymbolKind::Param: break;
        case SymbolKind::Jet:
            if (s.order() > 2) throw PreconditionError("Lagrangian depends on jet " + s.label() + " of order > 2");
            break;
        default: throw PreconditionError("Lagrangian may not contain " + s.label());
        }
    }
}

std::vector<Symbol> LagrangianProblem::param_symbols() const {
    std::vector<Symbol> out;
    for (const auto& n : params) out.push_back(Symbol::param(n));
    return out;
}

Expr LagrangianProblem::parse(const std::string& text, int order) const {
    return sofft::parse(text, chart.with_order(order), params);
}

std::string RegularityVerdict::str() const {
    if (regular) return exhaustive ? "regular" : "regular (checked at sample points only)";
    return "singular, Hessian rank " + std::to_string(rank);
}

ExprMatrix hessian(const LagrangianProblem& prob) {
    const auto vars = prob.chart.jet_symbols_of_order(2);
    const std::size_t N = vars.size();
    ExprMatrix H(N, std::vector<Expr>(N, Expr(0)));
    std::vector<Poly> first;
    for (const auto& v : vars) first.push_back(prob.L.poly().diff(v));
    for (std::size_t r = 0; r < N; ++r) {
        for (std::size_t c = r; c < N; ++c) {
            H[r][c] = Expr::from_poly(first[r].diff(vars[c]));
            H[c][r] = H[r][c];
        }
    }
    return H;
}

Expr determinant(const ExprMatrix& m) {
    const std::size_t N = m.size();
    if (N == 0) return Expr(1);
    if (N > 20) throw PreconditionError("determinant too large for cofactor expansion");
    std::map<std::pair<std::size_t, std::uint32_t>, Poly> memo;
    std::function<Poly(std::size_t, std::uint32_t)> det = [&](std::size_t row, std::uint32_t used) -> Poly {
        if (row == N) return Poly(1);
        auto key = std::make_pair(row, used);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        Poly acc;
        int sign = 1;
        for (std::size_t c = 0; c < N; ++c) {
            if (used & (1u << c)) continue;
            if (!m[row][c].is_zero()) {
                Poly t = m[row][c].poly() * det(row + 1, used | (1u << c));
                if (sign < 0) t = -t;
                acc += t;
            }
            sign = -sign;
        }
        memo.emplace(key, acc);
        return acc;
    };
    return Expr::from_poly(det(0, 0));
}

Bindings sample_point(const LagrangianProblem& prob, std::mt19937_64& rng) {
    const JetChart c3 = prob.chart.with_order(3);
    std::vector<Symbol> syms = c3.base_symbols();
    auto jets = c3.jet_symbols();
    syms.insert(syms.end(), jets.begin(), jets.end());
    for (const auto& p : prob.param_symbols()) syms.push_back(p);
    return random_point(syms, rng, -2, 2);
}

RegularityVerdict classify_regularity(const LagrangianProblem& prob, int samples, std::uint64_t seed) {
    RegularityVerdict v;
    const ExprMatrix H = hessian(prob);
    v.determinant = determinant(H);
    std::mt19937_64 rng(seed);
    std::vector<Bindings> pts;
    for (int i = 0; i < std::max(samples, 5); ++i) pts.push_back(sample_point(prob, rng));
    int rank = 0;
    for (const auto& p : pts) rank = std::max(rank, numeric_rank(H, p));
    v.rank = rank;
    if (auto c = v.determinant.constant_value()) {
        v.regular = *c != 0;
        v.exhaustive = true;
        return v;
    }
    bool all_nonzero = true;
    for (const auto& p : pts) {
        if (std::abs(v.determinant.poly().eval(p)) < 1e-12) all_nonzero = false;
    }
    v.regular = all_nonzero;
    v.exhaustive = false;
    return v;
}

LegendreMap restricted_legendre(const LagrangianProblem& prob) {
    const JetChart& ch = prob.chart;
    const JetChart c3 = ch.with_order(3);
    LegendreMap out;
    const Poly& L = prob.L.poly();
    for (std::size_t a = 0; a < ch.n(); ++a) {
        for (std::size_t i = 0; i < ch.m(); ++i) {
            Poly img = L.diff(ch.jet1(a, i));
            for (std::size_t j = 0; j < ch.m(); ++j) {
                const MultiIndex I = MultiIndex::unit(ch.m(), i).add_unit(j);
                Poly t = total_derivative(L.diff(ch.jet(a, I)), j, c3, 3);
                img -= t * Poly(Rational(1, sym_factor(i, j)));
            }
            out.restricted.emplace(ch.momentum1(a, i), Expr::from_poly(img));
        }
        for (const MultiIndex& I : enumerate(ch.m(), 2))
            out.restricted.emplace(ch.momentum(a, I), Expr::from_poly(L.diff(ch.jet(a, I))));
    }
    return out;
}

LegendreMap extended_legendre(const LagrangianProblem& prob) {
    LegendreMap out = restricted_legendre(prob);
    const JetChart& ch = prob.chart;
    Poly p = prob.L.poly();
    for (std::size_t a = 0; a < ch.n(); ++a) {
        for (std::size_t i = 0; i < ch.m(); ++i)
            p -= Poly(ch.jet1(a, i)) * out.restricted.at(ch.momentum1(a, i)).poly();
        for (const MultiIndex& I : enumerate(ch.m(), 2))
            p -= Poly(ch.jet(a, I)) * out.restricted.at(ch.momentum(a, I)).poly();
    }
    out.extended_p = Expr::from_poly(p);
    return out;
}

ExprMatrix legendre_jacobian(const LegendreMap& map, const JetChart& chart) {
    const Coords cols = jet_coords(chart, 3);
    ExprMatrix J;
    auto row_of = [&](const Poly& f) {
        std::vector<Expr> row;
        for (const Symbol& z : cols->coords()) row.push_back(Expr::from_poly(f.diff(z)));
        return row;
    };
    const JetChart c1 = chart.with_order(1);
    for (const Symbol& s : c1.base_symbols()) J.push_back(row_of(Poly(s)));
    for (const Symbol& s : c1.jet_symbols(1)) J.push_back(row_of(Poly(s)));
    for (const auto& [p, img] : map.restricted) J.push_back(row_of(img.poly()));
    if (map.extended_p) J.push_back(row_of(map.extended_p->poly()));
    return J;
}

int legendre_jacobian_rank(const LegendreMap& map, const JetChart& chart, const Bindings& point) {
    const Coords cols = jet_coords(chart, 3);
    for (const Symbol& z : cols->coords())
        if (!point.count(z)) throw EvalError("point does not bind " + z.label());
    return numeric_rank(legendre_jacobian(map, chart), point);
}

Expr canonical_sign(const Expr& residual) {
    const Poly& p = residual.poly();
    if (p.is_zero()) return Expr(0);
    std::optional<Symbol> principal;
    for (const Symbol& s : p.symbols()) {
        if (s.kind() != SymbolKind::Jet) continue;
        if (!principal || s.order() > principal->order() || (s.order() == principal->order() && s > *principal))
            principal = s;
    }
    Rational lead = p.terms().rbegin()->second;
    if (principal) {
        for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
            bool has = false;
            for (const auto& [atom, e] : it->first)
                if (atom.is_symbol() && atom.symbol() == *principal) has = true;
            if (has) {
                lead = it->second;
                break;
            }
        }
    }
    return Expr::from_poly(lead < 0 ? -p : p);
}

std::vector<Expr> euler_lagrange_raw(const LagrangianProblem& prob) {
    const JetChart& ch = prob.chart;
    const JetChart c4 = ch.with_order(4);
    const Poly& L = prob.L.poly();
    std::vector<Expr> out;
    for (std::size_t a = 0; a < ch.n(); ++a) {
        Poly r = L.diff(ch.field(a));
        for (std::size_t i = 0; i < ch.m(); ++i) r -= total_derivative(L.diff(ch.jet1(a, i)), i, c4, 4);
        for (const MultiIndex& I : enumerate(ch.m(), 2)) {
            Poly t = L.diff(ch.jet(a, I));
            for (std::size_t i = 0; i < ch.m(); ++i)
                for (int k = 0; k < I[i]; ++k) t = total_derivative(t, i, c4, 4);
            r += t;
        }
        out.push_back(Expr::from_poly(r));
    }
    return out;
}

EquationSet euler_lagrange(const LagrangianProblem& prob) {
    EquationSet eqs{prob.chart.with_order(4), {}};
    const auto raw = euler_lagrange_raw(prob);
    for (std::size_t a = 0; a < raw.size(); ++a)
        eqs.add("EL[" + prob.chart.field_names()[a] + "]", "euler-lagrange", canonical_sign(raw[a]));
    return eqs;
}

Form liouville_pattern(const Coords& target, const JetChart& chart, const Expr& p, const std::map<Symbol, Expr>& momenta) {
    const std::size_t m = chart.m();
    auto mom = [&](const Symbol& s) {
        auto it = momenta.find(s);
        return it == momenta.end() ? Expr(s) : it->second;
    };
    const Form vol = Form::volume(target);
    std::vector<Form> vol_minus;
    for (std::size_t i = 0; i < m; ++i) vol_minus.push_back(Form::volume_minus(target, i));
    Form theta = vol.scaled(p);
    for (std::size_t a = 0; a < chart.n(); ++a) {
        const Form du = Form::differential(target, chart.field(a));
        for (std::size_t i = 0; i < m; ++i) theta = theta + wedge(du, vol_minus[i]).scaled(mom(chart.momentum1(a, i)));
        for (std::size_t i = 0; i < m; ++i) {
            const Form dui = Form::differential(target, chart.jet1(a, i));
            for (std::size_t j = 0; j < m; ++j) {
                const MultiIndex I = MultiIndex::unit(m, i).add_unit(j);
                const Expr w = Expr(Rational(1, sym_factor(i, j))) * mom(chart.momentum(a, I));
                theta = theta + wedge(dui, vol_minus[j]).scaled(w);
            }
        }
    }
    return theta;
}

Form liouville_form(const JetChart& chart) {
    return liouville_pattern(multimomentum_coords(chart, true), chart, Expr(Symbol::ext_momentum()));
}

Form poincare_cartan(const LagrangianProblem& prob) {
    const LegendreMap leg = extended_legendre(prob);
    return liouville_pattern(jet_coords(prob.chart, 3), prob.chart, *leg.extended_p, leg.restricted);
}

Form poincare_cartan_closed(const LagrangianProblem& prob) {
    const JetChart& ch = prob.chart;
    const std::size_t m = ch.m();
    const Coords cs = jet_coords(ch, 3);
    const LegendreMap leg = restricted_legendre(prob);
    const Form vol = Form::volume(cs);
    Form theta = vol.scaled(prob.L);
    for (std::size_t a = 0; a < ch.n(); ++a) {
        const Form du = Form::differential(cs, ch.field(a));
        for (std::size_t i = 0; i < m; ++i) {
            const Expr pi = leg.restricted.at(ch.momentum1(a, i));
            const Form piece = wedge(du, Form::volume_minus(cs, i)) - vol.scaled(Expr(ch.jet1(a, i)));
            theta = theta + piece.scaled(pi);
        }
        for (std::size_t i = 0; i < m; ++i) {
            const Form dui = Form::differential(cs, ch.jet1(a, i));
            for (std::size_t j = 0; j < m; ++j) {
                const MultiIndex I = MultiIndex::unit(m, i).add_unit(j);
                const Symbol uI = ch.jet(a, I);
                const Expr w = Expr(Rational(1, sym_factor(i, j))) * diff(prob.L, uI);
                const Form piece = wedge(dui, Form::volume_minus(cs, j)) - vol.scaled(Expr(uI));
                theta = theta + piece.scaled(w);
            }
        }
    }
    return theta;
}

Expr hamiltonian_hat(const LagrangianProblem& prob) {
    const JetChart& ch = prob.chart;
    Poly H = -prob.L.poly();
    for (std::size_t a = 0; a < ch.n(); ++a) {
        for (std::size_t i = 0; i < ch.m(); ++i) H += Poly(ch.momentum1(a, i)) * Poly(ch.jet1(a, i));
        for (const MultiIndex& I : enumerate(ch.m(), 2)) H += Poly(ch.momentum(a, I)) * Poly(ch.jet(a, I));
    }
    return Expr::from_poly(H);
}

UnifiedForms unified_forms(const LagrangianProblem& prob) {
    const Coords wr = unified_coords(prob.chart, false);
    const Expr H = hamiltonian_hat(prob);
    Form theta = liouville_pattern(wr, prob.chart, normal_form(-H));
    Form omega = -exterior_d(theta);
    return UnifiedForms{std::move(theta), std::move(omega), H};
}

Expr pairing_cs(const JetChart& chart) {
    Poly C(Symbol::ext_momentum());
    const JetChart c2 = chart.with_order(2);
    for (std::size_t a = 0; a < chart.n(); ++a) {
        for (std::size_t i = 0; i < chart.m(); ++i) C += Poly(c2.momentum1(a, i)) * Poly(c2.jet1(a, i));
        for (const MultiIndex& I : enumerate(chart.m(), 2)) C += Poly(c2.momentum(a, I)) * Poly(c2.jet(a, I));
    }
    return Expr::from_poly(C);
}

Multimomenta symmetric_embedding(const JetChart& chart) {
    const JetChart c2 = chart.with_order(2);
    Multimomenta out(chart.n(), std::vector<std::vector<Expr>>(chart.m(), std::vector<Expr>(chart.m())));
    for (std::size_t a = 0; a < chart.n(); ++a)
        for (std::size_t i = 0; i < chart.m(); ++i)
            for (std::size_t j = 0; j < chart.m(); ++j) {
                const MultiIndex I = MultiIndex::unit(chart.m(), i).add_unit(j);
                out[a][i][j] = normal_form(Expr(c2.momentum(a, I)) * Expr(Rational(1, sym_factor(i, j))));
            }
    return out;
}

Expr pairing_c(const JetChart& chart, const Multimomenta& pij) {
    if (pij.size() != chart.n()) throw PreconditionError("pairing_c needs one p^{ij} block per field");
    const JetChart c2 = chart.with_order(2);
    Expr C(Symbol::ext_momentum());
    for (std::size_t a = 0; a < chart.n(); ++a) {
        if (pij[a].size() != chart.m()) throw PreconditionError("pairing_c needs an m x m block per field");
        for (std::size_t i = 0; i < chart.m(); ++i) {
            if (pij[a][i].size() != chart.m()) throw PreconditionError("pairing_c needs an m x m block per field");
            C += Expr(c2.momentum1(a, i)) * Expr(c2.jet1(a, i));
            for (std::size_t j = 0; j < chart.m(); ++j)
                C += pij[a][i][j] * Expr(c2.jet(a, MultiIndex::unit(chart.m(), i).add_unit(j)));
        }
    }
    return normal_form(C);
}

} // namespace sofft
