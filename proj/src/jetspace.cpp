#include "sofft/jetspace.hpp"

#include "sofft/error.hpp"

namespace sofft {

SectionExpr SectionExpr::from_fields(const JetChart& chart, const std::vector<Expr>& fields) {
    if (fields.size() != chart.n()) throw PreconditionError("section needs one expression per field");
    SectionExpr s;
    for (std::size_t a = 0; a < fields.size(); ++a) s.set(chart.field(a), fields[a]);
    return s;
}

const Expr& SectionExpr::at(const Symbol& s) const {
    auto it = components.find(s);
    if (it == components.end()) throw PreconditionError("section does not bind " + s.label());
    return it->second;
}

Poly total_derivative(const Poly& e, std::size_t i, const JetChart& chart, int cap,
                      const std::map<Symbol, Poly>& images) {
    if (i >= chart.m()) throw std::out_of_range("base index out of range");
    Poly out;
    for (const Symbol& s : e.symbols()) {
        switch (s.kind()) {
        case SymbolKind::Base:
            if (s.dir() == i) out += e.diff(s);
            break;
        case SymbolKind::Jet:
            if (s.order() >= cap)
                throw PreconditionError("order overflow: total derivative of " + s.label() + " needs jets above order " +
                                        std::to_string(cap));
            out += e.diff(s) * Poly(Symbol::jet(s.field(), s.index().add_unit(i), chart.field_names()[s.field()]));
            break;
        default: {
            auto it = images.find(s);
            if (it != images.end()) out += e.diff(s) * it->second;
            break;
        }
        }
    }
    return out;
}

Expr total_derivative(const Expr& e, std::size_t i, const JetChart& chart, int cap, const Substitution& images) {
    std::map<Symbol, Poly> pimg;
    for (const auto& [k, v] : images) pimg.emplace(k, v.poly());
    return Expr::from_poly(total_derivative(e.poly(), i, chart, cap, pimg));
}

Expr iterated_total_derivative(const Expr& e, const MultiIndex& I, const JetChart& chart, int cap) {
    if (I.dim() != chart.m()) throw PreconditionError("multi-index arity does not match base dimension");
    Poly p = e.poly();
    for (std::size_t i = 0; i < I.dim(); ++i)
        for (int r = 0; r < I[i]; ++r) p = total_derivative(p, i, chart, cap);
    return Expr::from_poly(p);
}

SectionExpr prolong(const SectionExpr& s, int k, const JetChart& chart) {
    SectionExpr out = s;
    const std::vector<Symbol> bases = chart.base_symbols();
    for (std::size_t a = 0; a < chart.n(); ++a) {
        const Symbol u = Symbol::jet(a, MultiIndex(chart.m()), chart.field_names()[a]);
        auto it = s.components.find(u);
        if (it == s.components.end()) continue;
        std::map<MultiIndex, Poly> level{{MultiIndex(chart.m()), it->second.poly()}};
        for (int r = 1; r <= k; ++r) {
            std::map<MultiIndex, Poly> next;
            for (const MultiIndex& I : enumerate(chart.m(), r)) {
                std::size_t i = 0;
                while (I[i] == 0) ++i;
                Poly d = level.at(I.sub_unit(i)).diff(bases[i]);
                out.components.insert_or_assign(Symbol::jet(a, I, chart.field_names()[a]), Expr::from_poly(d));
                next.emplace(I, std::move(d));
            }
            level = std::move(next);
        }
    }
    return out;
}

namespace {

const Expr* find_component(const SectionExpr& s, std::size_t a, const MultiIndex& I, const JetChart& chart) {
    auto it = s.components.find(Symbol::jet(a, I, chart.field_names()[a]));
    return it == s.components.end() ? nullptr : &it->second;
}

} // namespace

HolonomyReport holonomy_check(const SectionExpr& s, int r, int k, const JetChart& chart) {
    HolonomyReport rep;
    const auto bases = chart.base_symbols();
    for (std::size_t a = 0; a < chart.n(); ++a) {
        for (const MultiIndex& I : enumerate_up_to(chart.m(), k - r)) {
            const Expr* low = find_component(s, a, I, chart);
            for (std::size_t i = 0; i < chart.m(); ++i) {
                const MultiIndex J = I.add_unit(i);
                const Expr* high = find_component(s, a, J, chart);
                if (!low || !high) {
                    rep.violations.push_back({a, I, i, "missing component"});
                    continue;
                }
                if (!equivalent(*high, diff(*low, bases[i]))) rep.violations.push_back({a, I, i, "mismatch"});
            }
        }
    }
    rep.holds = rep.violations.empty();
    return rep;
}

HolonomyReport holonomy_check_iterated(const SectionExpr& s, int r, int k, const JetChart& chart) {
    HolonomyReport rep;
    const auto bases = chart.base_symbols();
    for (std::size_t a = 0; a < chart.n(); ++a) {
        const Expr* u = find_component(s, a, MultiIndex(chart.m()), chart);
        for (int len = 1; len <= k - r + 1; ++len) {
            for (const MultiIndex& I : enumerate(chart.m(), len)) {
                const Expr* c = find_component(s, a, I, chart);
                if (!u || !c) {
                    rep.violations.push_back({a, I, 0, "missing component"});
                    continue;
                }
                Poly d = u->poly();
                for (std::size_t i = 0; i < chart.m(); ++i)
                    for (int t = 0; t < I[i]; ++t) d = d.diff(bases[i]);
                if (!equivalent(*c, Expr::from_poly(d))) rep.violations.push_back({a, I, 0, "mismatch"});
            }
        }
    }
    rep.holds = rep.violations.empty();
    return rep;
}

long jet_dimension(long m, long n, int k) {
    long d = m;
    for (int r = 0; r <= k; ++r) d += n * binomial(m + r - 1, r);
    return d;
}

Dimensions dimensions(long m, long n) {
    if (m < 1 || n < 1) throw PreconditionError("dimensions need m, n >= 1");
    Dimensions d{};
    d.j1 = jet_dimension(m, n, 1);
    d.j2 = jet_dimension(m, n, 2);
    d.j3 = jet_dimension(m, n, 3);
    d.lambda2m = m + n + 2 * n * m + n * m * m + 1;
    d.j2dagger = m + n + 2 * m * n + n * m * (m + 1) / 2 + 1;
    d.j2ddagger = d.j2dagger - 1;
    d.w = m + n + 2 * n * m + n * m * (m + 1) + n * m * (m + 1) * (m + 2) / 6 + 1;
    d.wr = d.w - 1;
    return d;
}

} // namespace sofft
