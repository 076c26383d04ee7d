#include "sofft/unified.hpp"

#include "sofft/error.hpp"

namespace sofft {

namespace {

Rational weight(std::size_t i, std::size_t j) { return Rational(1, sym_factor(i, j)); }

MultiIndex pair_index(std::size_t m, std::size_t i, std::size_t j) { return MultiIndex::unit(m, i).add_unit(j); }

} // namespace

EquationSet section_equations(const LagrangianProblem& prob) {
    const JetChart& ch = prob.chart;
    const std::size_t m = ch.m();
    EquationSet eqs{ch.with_order(3), {}};
    const Expr& L = prob.L;
    auto D = [&](const Symbol& s, std::size_t j) { return Expr(ch.deriv(s, j)); };
    for (std::size_t a = 0; a < ch.n(); ++a) {
        const std::string& f = ch.field_names()[a];
        Expr bal = -diff(L, ch.field(a));
        for (std::size_t i = 0; i < m; ++i) bal += D(ch.momentum1(a, i), i);
        eqs.add("balance[" + f + "]", "balance", bal);

        for (std::size_t i = 0; i < m; ++i) {
            Expr r = Expr(ch.momentum1(a, i)) - diff(L, ch.jet1(a, i));
            for (std::size_t j = 0; j < m; ++j) r += Expr(weight(i, j)) * D(ch.momentum(a, pair_index(m, i, j)), j);
            eqs.add("momentum[" + ch.momentum1(a, i).label() + "]", "momentum-relation", r);
        }
        for (const MultiIndex& I : enumerate(m, 2)) {
            const Symbol uI = ch.jet(a, I);
            eqs.add("algebraic[" + ch.momentum(a, I).label() + "]", "algebraic", Expr(ch.momentum(a, I)) - diff(L, uI));
        }
        for (std::size_t i = 0; i < m; ++i) {
            const Symbol ui = ch.jet1(a, i);
            eqs.add("holonomy[" + ui.label() + "]", "holonomy", Expr(ui) - D(ch.field(a), i));
        }
        for (const MultiIndex& I : enumerate(m, 2)) {
            Expr r(ch.jet(a, I));
            for (auto [i, j] : unit_pairs(I)) r -= Expr(weight(i, j)) * D(ch.jet1(a, i), j);
            eqs.add("holonomy[" + ch.jet(a, I).label() + "]", "holonomy", r);
        }
    }
    return eqs;
}

std::vector<Expr> first_constraints(const LagrangianProblem& prob) {
    std::vector<Expr> out;
    const JetChart& ch = prob.chart;
    for (std::size_t a = 0; a < ch.n(); ++a)
        for (const MultiIndex& I : enumerate(ch.m(), 2))
            out.push_back(normal_form(Expr(ch.momentum(a, I)) - diff(prob.L, ch.jet(a, I))));
    return out;
}

MultiVectorField MultiVectorField::generic(const JetChart& chart) {
    MultiVectorField X(chart.with_order(3));
    const JetChart& c = X.chart_;
    for (std::size_t a = 0; a < c.n(); ++a) {
        for (std::size_t j = 0; j < c.m(); ++j) {
            for (const MultiIndex& I : enumerate_up_to(c.m(), 3)) X.coeffs_.emplace(c.mv_f(a, I, j), Expr(c.mv_f(a, I, j)));
            for (int r = 1; r <= 2; ++r)
                for (const MultiIndex& I : enumerate(c.m(), r)) X.coeffs_.emplace(c.mv_g(a, I, j), Expr(c.mv_g(a, I, j)));
        }
    }
    return X;
}

MultiVectorField MultiVectorField::holonomic(const JetChart& chart) {
    MultiVectorField X = generic(chart);
    const JetChart& c = X.chart_;
    const JetChart c4 = c.with_order(4);
    for (std::size_t a = 0; a < c.n(); ++a)
        for (std::size_t j = 0; j < c.m(); ++j)
            for (const MultiIndex& I : enumerate_up_to(c.m(), 2)) X.set(c.mv_f(a, I, j), Expr(c4.jet(a, I.add_unit(j))));
    return X;
}

Expr MultiVectorField::F(std::size_t a, const MultiIndex& I, std::size_t j) const { return coeffs_.at(chart_.mv_f(a, I, j)); }

Expr MultiVectorField::G(std::size_t a, const MultiIndex& I, std::size_t j) const { return coeffs_.at(chart_.mv_g(a, I, j)); }

void MultiVectorField::set(const Symbol& coefficient, const Expr& value) {
    auto it = coeffs_.find(coefficient);
    if (it == coeffs_.end()) throw PreconditionError(coefficient.label() + " is not a coefficient of this multivector field");
    it->second = normal_form(value);
}

VectorField MultiVectorField::component(std::size_t j) const {
    VectorField v;
    v.components.emplace(chart_.base(j), Expr(1));
    for (std::size_t a = 0; a < chart_.n(); ++a) {
        for (const MultiIndex& I : enumerate_up_to(chart_.m(), 3)) v.components.emplace(chart_.jet(a, I), F(a, I, j));
        for (int r = 1; r <= 2; ++r)
            for (const MultiIndex& I : enumerate(chart_.m(), r)) v.components.emplace(chart_.momentum(a, I), G(a, I, j));
    }
    return v;
}

Expr MultiVectorField::apply(std::size_t j, const Expr& f) const {
    const Poly& p = f.poly();
    Poly out;
    for (const Symbol& s : p.symbols()) {
        Expr c;
        switch (s.kind()) {
        case SymbolKind::Base: c = s == chart_.base(j) ? Expr(1) : Expr(0); break;
        case SymbolKind::Jet:
            if (s.order() > 3) throw PreconditionError("jet " + s.label() + " is outside W_r");
            c = F(s.field(), s.index(), j);
            break;
        case SymbolKind::Momentum: c = G(s.field(), s.index(), j); break;
        default: continue;
        }
        if (!c.is_zero()) out += c.poly() * p.diff(s);
    }
    return Expr::from_poly(out);
}

EquationSet multivector_residuals(const LagrangianProblem& prob, const MultiVectorField& X) {
    const JetChart& ch = prob.chart;
    const std::size_t m = ch.m();
    EquationSet eqs{ch.with_order(3), {}};
    const Expr& L = prob.L;
    for (std::size_t a = 0; a < ch.n(); ++a) {
        const std::string& f = ch.field_names()[a];
        const MultiIndex zero(m);
        for (std::size_t j = 0; j < m; ++j)
            eqs.add("holonomy[" + ch.jet1(a, j).label() + "]", "holonomy", X.F(a, zero, j) - Expr(ch.jet1(a, j)));
        for (const MultiIndex& I : enumerate(m, 2)) {
            Expr r = -Expr(ch.jet(a, I));
            for (auto [i, j] : unit_pairs(I)) r += Expr(weight(i, j)) * X.F(a, MultiIndex::unit(m, i), j);
            eqs.add("holonomy[" + ch.jet(a, I).label() + "]", "holonomy", r);
        }
        Expr bal = -diff(L, ch.field(a));
        for (std::size_t i = 0; i < m; ++i) bal += X.G(a, MultiIndex::unit(m, i), i);
        eqs.add("balance[" + f + "]", "balance", bal);
        for (std::size_t i = 0; i < m; ++i) {
            Expr r = Expr(ch.momentum1(a, i)) - diff(L, ch.jet1(a, i));
            for (std::size_t j = 0; j < m; ++j) r += Expr(weight(i, j)) * X.G(a, pair_index(m, i, j), j);
            eqs.add("momentum[" + ch.momentum1(a, i).label() + "]", "momentum-relation", r);
        }
        for (const MultiIndex& I : enumerate(m, 2))
            eqs.add("algebraic[" + ch.momentum(a, I).label() + "]", "algebraic",
                    Expr(ch.momentum(a, I)) - diff(L, ch.jet(a, I)));
    }
    return eqs;
}

HolonomyReport multivector_holonomy_check(const MultiVectorField& X, int r) {
    HolonomyReport rep;
    const JetChart& c = X.chart();
    const JetChart c4 = c.with_order(4);
    for (std::size_t a = 0; a < c.n(); ++a) {
        for (const MultiIndex& I : enumerate_up_to(c.m(), 3 - r)) {
            for (std::size_t j = 0; j < c.m(); ++j) {
                const Expr want(c4.jet(a, I.add_unit(j)));
                const Expr have = X.F(a, I, j);
                if (equal(have, want) == Verdict::ProvenUnequal) {
                    rep.holds = false;
                    rep.violations.push_back(
                        {a, I, j, c.mv_f(a, I, j).label() + " = " + have.str() + ", expected " + want.str()});
                }
            }
        }
    }
    return rep;
}

Expr holonomic_closure(const Expr& e, const JetChart& chart) {
    Substitution sub;
    const JetChart c = chart.with_order(std::max(chart.k(), 4));
    for (const Symbol& s : symbols(e))
        if (s.kind() == SymbolKind::MvF) sub.emplace(s, Expr(c.jet(s.field(), s.index().add_unit(s.dir()))));
    return sub.empty() ? e : substitute(e, sub);
}

std::string ConstraintLadder::verdict() const {
    std::size_t last = 0;
    for (std::size_t l = 0; l < levels.size(); ++l)
        if (!levels[l].constraints.empty()) last = l;
    std::string v;
    if (incompatible) {
        v = "incompatible: a constraint reduces to a nonzero constant";
    } else if (regular) {
        v = "regular Lagrangian: the ladder terminates at W_L; the final conditions are solvable for F_{J,j}";
    } else if (last <= 1) {
        v = "singular Lagrangian: there are no additional constraints; the final constraint submanifold is W_L";
    } else {
        v = "singular Lagrangian: new constraints up to level " + std::to_string(last) +
            "; the final constraint submanifold is W_f";
    }
    for (const auto& n : notes) v += "\n" + n;
    return v;
}

namespace {

bool is_free(const Symbol& s, const MultiVectorField& X) {
    if (s.kind() != SymbolKind::MvF && s.kind() != SymbolKind::MvG) return false;
    auto it = X.coefficients().find(s);
    return it != X.coefficients().end() && it->second.op() == Expr::Op::Sym && it->second.symbol() == s;
}

enum class Outcome { Vanishes, Constraint, Assigned, Condition, Incompatible };

/// Classifies a residual produced at some level and records it there.
Outcome classify(const Expr& r, const std::string& name, MultiVectorField& X, LadderLevel& here,
                 std::vector<NamedExpr>& next_constraints) {
    const Poly& p = r.poly();
    if (p.is_zero()) return Outcome::Vanishes;
    if (p.is_constant()) return Outcome::Incompatible;
    std::vector<Symbol> gs, fs;
    for (const Symbol& s : p.symbols()) {
        if (!is_free(s, X)) continue;
        (s.kind() == SymbolKind::MvG ? gs : fs).push_back(s);
    }
    if (gs.empty() && fs.empty()) {
        bool has_momentum = false;
        for (const Symbol& s : p.symbols())
            if (s.kind() == SymbolKind::Momentum) has_momentum = true;
        next_constraints.push_back({name, has_momentum ? r : canonical_sign(r)});
        return Outcome::Constraint;
    }
    const auto& target = gs.empty() ? fs : gs;
    if (target.size() == 1 && p.degree_in(target[0]) == 1) {
        const Poly c = p.coefficient(target[0], 1);
        if (c.is_constant()) {
            Poly rest = p - c * Poly(target[0]);
            Expr value = Expr::from_poly(-rest * Poly(Rational(1) / *c.constant_value()));
            here.assignments.push_back({target[0], value});
            X.set(target[0], value);
            return Outcome::Assigned;
        }
    }
    here.conditions.push_back({name, canonical_sign(r)});
    return Outcome::Condition;
}

} // namespace

ConstraintLadder run_constraint_algorithm(const LagrangianProblem& prob, int max_levels) {
    ConstraintLadder ladder;
    ladder.regular = classify_regularity(prob).regular;
    ladder.notes.push_back("the m equations along dx^i are omitted; they follow from the others");
    const JetChart& ch = prob.chart;
    MultiVectorField X = MultiVectorField::holonomic(ch);

    std::vector<Equation> pending;
    for (const auto& e : multivector_residuals(prob, X).equations)
        if (e.group == "balance" || e.group == "momentum-relation") pending.push_back(e);

    LadderLevel here;
    {
        const auto fc = first_constraints(prob);
        std::size_t k = 0;
        for (std::size_t a = 0; a < ch.n(); ++a)
            for (const MultiIndex& I : enumerate(ch.m(), 2))
                here.constraints.push_back({"W_c[" + ch.momentum(a, I).label() + "]", fc[k++]});
    }

    for (int level = 0; level < max_levels; ++level) {
        LadderLevel upcoming;
        auto record = [&](Outcome o) {
            if (o == Outcome::Incompatible) ladder.incompatible = true;
        };
        for (const auto& c : here.constraints)
            for (std::size_t j = 0; j < ch.m(); ++j)
                record(classify(X.apply(j, c.expr), c.name + "/" + ch.base_names()[j], X, here,
                                upcoming.constraints));

        // Field equations whose G coefficients are all known now yield the next level.
        std::vector<Equation> still;
        for (const auto& e : pending) {
            Substitution sub;
            for (const Symbol& s : symbols(e.residual))
                if (s.kind() == SymbolKind::MvG) sub.emplace(s, X.coefficients().at(s));
            const Expr r = normal_form(substitute(e.residual, sub));
            bool unknown = false;
            for (const Symbol& s : symbols(r))
                if (s.kind() == SymbolKind::MvG && is_free(s, X)) unknown = true;
            if (unknown) {
                still.push_back(e);
                continue;
            }
            const bool balance = e.group == "balance";
            if (balance) ladder.euler_lagrange_conditions.push_back(r);
            const std::string inner = e.name.substr(e.name.find('['));
            record(classify(r, (balance ? "EL" : "W_L") + inner, X, upcoming, upcoming.constraints));
        }
        pending = std::move(still);
        ladder.levels.push_back(std::move(here));
        if (ladder.incompatible) break;
        if (upcoming.constraints.empty() && upcoming.assignments.empty() && upcoming.conditions.empty()) break;
        here = std::move(upcoming);
    }
    return ladder;
}

} // namespace sofft
