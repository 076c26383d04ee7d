#include "sofft/hamiltonian.hpp"

#include "sofft/error.hpp"
#include "sofft/jetspace.hpp"

#include <algorithm>

namespace sofft {

namespace {

Substitution as_substitution(const std::map<Symbol, Expr>& m) { return Substitution(m.begin(), m.end()); }

bool is_high_jet(const Symbol& s) { return s.kind() == SymbolKind::Jet && s.order() >= 2; }

} // namespace

void check_section(const LagrangianProblem& prob, const LegendreSection& s, const ImageSubmanifold* P) {
    const LegendreMap leg = restricted_legendre(prob);
    const Substitution sub = as_substitution(s.images);
    for (const auto& [p, img] : leg.restricted) {
        Expr want(p);
        if (P) {
            if (auto it = P->embedding.find(p); it != P->embedding.end()) want = it->second;
        }
        const Expr got = substitute(img, sub);
        for (const Symbol& z : symbols(got))
            if (is_high_jet(z)) throw PreconditionError("section leaves " + z.label() + " unbound");
        if (equal(got, want) != Verdict::ProvenEqual)
            throw PreconditionError("section is not a section of the Legendre map at " + p.label() + ": " + got.str() +
                                    " != " + want.str());
    }
}

std::optional<LegendreSection> automatic_section(const LagrangianProblem& prob) {
    const JetChart& ch = prob.chart;
    const JetChart c3 = ch.with_order(3);
    const ExprMatrix H = hessian(prob);
    const auto high = ch.jet_symbols_of_order(2);
    for (std::size_t r = 0; r < H.size(); ++r) {
        for (std::size_t c = 0; c < H.size(); ++c) {
            auto v = H[r][c].constant_value();
            if (!v || (r != c && *v != 0) || (r == c && *v == 0)) return std::nullopt;
        }
    }
    LegendreSection s;
    const LegendreMap leg = restricted_legendre(prob);
    // Order 2: p^I = h_I u_I + g_I with g_I free of order-2 jets.
    for (std::size_t k = 0; k < high.size(); ++k) {
        const Symbol& uI = high[k];
        const Symbol p = ch.momentum(uI.field(), uI.index());
        const Poly img = leg.restricted.at(p).poly();
        const Rational h = *H[k][k].constant_value();
        const Poly g = img - Poly(uI) * Poly(h);
        for (const Symbol& z : g.symbols())
            if (is_high_jet(z)) return std::nullopt;
        s.images.emplace(uI, Expr::from_poly((Poly(p) - g) * Poly(Rational(1) / h)));
    }
    // Order 3: p^i = b_i + sum_v A_{iv} v over order-3 jets v, solved in least norm.
    const auto top = c3.jet_symbols_of_order(3);
    std::vector<Symbol> rows;
    for (std::size_t a = 0; a < ch.n(); ++a)
        for (std::size_t i = 0; i < ch.m(); ++i) rows.push_back(ch.momentum1(a, i));
    const std::size_t R = rows.size(), C = top.size();
    std::vector<std::vector<Rational>> A(R, std::vector<Rational>(C));
    std::vector<Poly> b(R);
    const Substitution order2 = as_substitution(s.images);
    for (std::size_t r = 0; r < R; ++r) {
        const Poly img = leg.restricted.at(rows[r]).poly();
        Poly rest = img;
        for (std::size_t c = 0; c < C; ++c) {
            auto d = img.degree_in(top[c]);
            if (!d || *d > 1) return std::nullopt;
            const Poly coef = img.coefficient(top[c], 1);
            if (!coef.is_constant()) return std::nullopt;
            A[r][c] = *coef.constant_value();
            rest -= coef * Poly(top[c]);
        }
        b[r] = Poly(rows[r]) - substitute(Expr::from_poly(rest), order2).poly();
    }
    // y = (A A^T)^{-1} b, v = A^T y, by Gauss-Jordan over the rationals.
    std::vector<std::vector<Rational>> M(R, std::vector<Rational>(R));
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < R; ++j)
            for (std::size_t c = 0; c < C; ++c) M[i][j] += A[i][c] * A[j][c];
    std::vector<Poly> y = b;
    for (std::size_t col = 0; col < R; ++col) {
        std::size_t piv = col;
        while (piv < R && M[piv][col] == 0) ++piv;
        if (piv == R) return std::nullopt;
        std::swap(M[piv], M[col]);
        std::swap(y[piv], y[col]);
        const Rational inv = Rational(1) / M[col][col];
        for (auto& v : M[col]) v *= inv;
        y[col] *= Poly(inv);
        for (std::size_t r = 0; r < R; ++r) {
            if (r == col || M[r][col] == 0) continue;
            const Rational f = M[r][col];
            for (std::size_t j = 0; j < R; ++j) M[r][j] -= f * M[col][j];
            y[r] -= y[col] * Poly(f);
        }
    }
    for (std::size_t c = 0; c < C; ++c) {
        Poly v;
        for (std::size_t r = 0; r < R; ++r)
            if (A[r][c] != 0) v += y[r] * Poly(A[r][c]);
        s.images.emplace(top[c], Expr::from_poly(v));
    }
    return s;
}

Expr ham_function_regular(const LagrangianProblem& prob, const LegendreSection& s) {
    check_section(prob, s);
    const JetChart& ch = prob.chart;
    Poly H = -substitute(prob.L, as_substitution(s.images)).poly();
    for (std::size_t a = 0; a < ch.n(); ++a) {
        for (std::size_t i = 0; i < ch.m(); ++i) H += Poly(ch.momentum1(a, i)) * Poly(ch.jet1(a, i));
        for (const MultiIndex& I : enumerate(ch.m(), 2))
            H += Poly(ch.momentum(a, I)) * s.images.at(ch.jet(a, I)).poly();
    }
    return Expr::from_poly(H);
}

EquationSet hamilton_ddw_equations(const Expr& H, const JetChart& chart) {
    const JetChart ch = chart.with_order(2);
    const std::size_t m = ch.m();
    EquationSet eqs{ch, {}};
    auto D = [&](const Symbol& s, std::size_t j) { return Expr(ch.deriv(s, j)); };
    for (std::size_t a = 0; a < ch.n(); ++a) {
        for (std::size_t i = 0; i < m; ++i)
            eqs.add("field[" + ch.jet1(a, i).label() + "]", "field", D(ch.field(a), i) - diff(H, ch.momentum1(a, i)));
        for (const MultiIndex& I : enumerate(m, 2)) {
            Expr r = -diff(H, ch.momentum(a, I));
            for (auto [i, j] : unit_pairs(I)) r += Expr(Rational(1, sym_factor(i, j))) * D(ch.jet1(a, i), j);
            eqs.add("jet[" + ch.jet(a, I).label() + "]", "jet", r);
        }
        Expr bal = diff(H, ch.field(a));
        for (std::size_t i = 0; i < m; ++i) bal += D(ch.momentum1(a, i), i);
        eqs.add("balance[" + ch.field_names()[a] + "]", "balance", bal);
        for (std::size_t i = 0; i < m; ++i) {
            Expr r = diff(H, ch.jet1(a, i));
            for (std::size_t j = 0; j < m; ++j)
                r += Expr(Rational(1, sym_factor(i, j))) * D(ch.momentum(a, MultiIndex::unit(m, i).add_unit(j)), j);
            eqs.add("momentum[" + ch.momentum1(a, i).label() + "]", "momentum", r);
        }
    }
    return eqs;
}

ImageSubmanifold image_submanifold(const LagrangianProblem& prob) {
    const JetChart& ch = prob.chart;
    const LegendreMap leg = restricted_legendre(prob);
    const JetChart c3 = ch.with_order(3);
    std::vector<Symbol> high = c3.jet_symbols_of_order(2);
    for (const Symbol& s : c3.jet_symbols_of_order(3)) high.push_back(s);

    // Rows p - image, as Poly, with the high jets in `high` order.
    std::vector<Poly> rows;
    for (const Symbol& p : ch.momentum_symbols()) {
        const Poly img = leg.restricted.at(p).poly();
        for (const Symbol& v : high) {
            auto d = img.degree_in(v);
            if (!d || *d > 1) throw PreconditionError("Legendre image of " + p.label() + " is not affine in " + v.label());
            for (const Symbol& z : img.coefficient(v, 1).symbols())
                if (is_high_jet(z))
                    throw PreconditionError("Legendre image of " + p.label() + " is not affine in the jets of order >= 2");
        }
        rows.push_back(Poly(p) - img);
    }
    // Fraction-free elimination of the high jets.
    std::vector<bool> used(rows.size(), false);
    for (const Symbol& v : high) {
        std::optional<std::size_t> piv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (used[r] || rows[r].coefficient(v, 1).is_zero()) continue;
            if (!piv || (rows[r].coefficient(v, 1).is_constant() && !rows[*piv].coefficient(v, 1).is_constant())) piv = r;
        }
        if (!piv) continue;
        used[*piv] = true;
        const Poly a = rows[*piv].coefficient(v, 1);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == *piv) continue;
            const Poly b = rows[r].coefficient(v, 1);
            if (b.is_zero()) continue;
            rows[r] = a.is_constant() ? rows[r] - rows[*piv] * b * Poly(Rational(1) / *a.constant_value())
                                      : rows[r] * a - rows[*piv] * b;
        }
    }
    ImageSubmanifold P;
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (!used[r] && !rows[r].is_zero()) P.constraints.push_back(Expr::from_poly(rows[r]));

    // Solve each constraint for a momentum with constant coefficient, largest symbol first.
    std::map<Symbol, Poly> solved;
    for (Expr& c : P.constraints) {
        Poly q = substitute(c, as_substitution([&] {
                     std::map<Symbol, Expr> m;
                     for (const auto& [s, e] : solved) m.emplace(s, Expr::from_poly(e));
                     return m;
                 }())).poly();
        std::optional<Symbol> pick;
        for (const Symbol& s : q.symbols()) {
            if (s.kind() != SymbolKind::Momentum || q.degree_in(s) != 1 || !q.coefficient(s, 1).is_constant()) continue;
            if (!pick || s > *pick) pick = s;
        }
        if (!pick) continue;
        const Rational k = *q.coefficient(*pick, 1).constant_value();
        c = Expr::from_poly(q * Poly(Rational(1) / k));
        const Poly value = -(q - Poly(*pick) * Poly(k)) * Poly(Rational(1) / k);
        for (auto& [s, e] : solved) {
            std::map<Symbol, Poly> one{{*pick, value}};
            e = e.substitute(one);
        }
        solved.emplace(*pick, value);
    }
    for (const auto& [s, e] : solved) P.embedding.emplace(s, Expr::from_poly(e));
    for (const Symbol& s : ch.base_symbols()) P.coordinates.push_back(s);
    for (const Symbol& s : ch.jet_symbols(1)) P.coordinates.push_back(s);
    for (const Symbol& s : ch.momentum_symbols())
        if (!solved.count(s)) P.coordinates.push_back(s);
    return P;
}

Expr ham_function_almost_regular(const LagrangianProblem& prob, const ImageSubmanifold& P, const LegendreSection& sigma) {
    check_section(prob, sigma, &P);
    const LegendreMap leg = extended_legendre(prob);
    Expr H = normal_form(-substitute(*leg.extended_p, as_substitution(sigma.images)));
    for (const Symbol& s : symbols(H))
        if (std::find(P.coordinates.begin(), P.coordinates.end(), s) == P.coordinates.end() && s.kind() != SymbolKind::Param)
            throw PreconditionError("Hamiltonian depends on " + s.label() + ", which is not a coordinate of P");
    return H;
}

Coords image_coords(const ImageSubmanifold& P, const JetChart& chart) { return make_coords(P.coordinates, chart.m()); }

Form hamilton_cartan_form(const Expr& H, const JetChart& chart, const ImageSubmanifold* P) {
    const JetChart ch = chart.with_order(2);
    if (!P) return liouville_pattern(multimomentum_coords(ch, false), ch, normal_form(-H));
    return liouville_pattern(image_coords(*P, ch), ch, normal_form(-H), P->embedding);
}

EquationSet hamilton_form_equations(const Form& theta_h, const JetChart& chart) {
    const JetChart ch = chart.with_order(2);
    EquationSet eqs{ch, {}};
    const Form omega = -exterior_d(theta_h);
    const CoordSystem& cs = *theta_h.coords();
    std::vector<Symbol> vol;
    for (std::size_t i = 0; i < ch.m(); ++i) vol.push_back(ch.base(i));
    for (std::size_t k = cs.base_count(); k < cs.size(); ++k) {
        const Form i_z = interior(VectorField::coordinate(cs[k]), omega);
        if (i_z.is_zero()) continue;
        const Form pulled = pullback_by_section(i_z, SectionExpr{}, ch, true);
        eqs.add("d/d" + cs[k].label(), "hamilton", pulled.coefficient(vol));
    }
    return eqs;
}


Form legendre_pullback(const Form& a, const LagrangianProblem& prob) {
    const LegendreMap leg = restricted_legendre(prob);
    Substitution images;
    for (const Symbol& z : a.coords()->coords())
        if (z.kind() == SymbolKind::Momentum) images.emplace(z, leg.restricted.at(z));
    return pullback(a, jet_coords(prob.chart, 3), images);
}

} // namespace sofft
