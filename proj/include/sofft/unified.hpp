#pragma once

#include "sofft/equations.hpp"
#include "sofft/forms.hpp"
#include "sofft/jetspace.hpp"
#include "sofft/theory.hpp"

#include <string>
#include <vector>

namespace sofft {

/// Section field equations on W_r with opaque derivative symbols.
/// Groups: balance, momentum-relation, algebraic, holonomy.
[[nodiscard]] EquationSet section_equations(const LagrangianProblem& prob);

/// p^I - dL/du_I for |I| = 2.
[[nodiscard]] std::vector<Expr> first_constraints(const LagrangianProblem& prob);

/// Locally decomposable m-vector field on W_r with unit scale: per direction j,
/// coefficients F^a_{I,j} (|I| <= 3) and G^I_{a,j} (1 <= |I| <= 2).
class MultiVectorField {
public:
    /// Every coefficient is its own symbol.
    static MultiVectorField generic(const JetChart& chart);
    /// F^a_{I,j} = u^a_{I+1_j} for |I| <= 2; the rest stay symbolic.
    static MultiVectorField holonomic(const JetChart& chart);

    [[nodiscard]] const JetChart& chart() const { return chart_; }
    [[nodiscard]] Expr F(std::size_t a, const MultiIndex& I, std::size_t j) const;
    [[nodiscard]] Expr G(std::size_t a, const MultiIndex& I, std::size_t j) const;
    void set(const Symbol& coefficient, const Expr& value);
    [[nodiscard]] const std::map<Symbol, Expr>& coefficients() const { return coeffs_; }

    /// The j-th factor d/dx^j + F d/du + G d/dp as a vector field on W_r.
    [[nodiscard]] VectorField component(std::size_t j) const;
    /// Derivative of a function on W_r along the j-th factor.
    [[nodiscard]] Expr apply(std::size_t j, const Expr& f) const;

private:
    explicit MultiVectorField(JetChart chart) : chart_(std::move(chart)) {}

    JetChart chart_;
    std::map<Symbol, Expr> coeffs_;
};

/// Groups: holonomy, balance, momentum-relation, algebraic.
[[nodiscard]] EquationSet multivector_residuals(const LagrangianProblem& prob, const MultiVectorField& X);

/// F^a_j = u^a_j and F^a_{I,j} = u^a_{I+1_j} for |I| <= 3 - r.
[[nodiscard]] HolonomyReport multivector_holonomy_check(const MultiVectorField& X, int r);

struct NamedExpr {
    std::string name;
    Expr expr;
};

struct Assignment {
    Symbol coefficient;
    Expr value;
};

struct LadderLevel {
    std::vector<NamedExpr> constraints;
    std::vector<Assignment> assignments;
    /// Residual relations among the free coefficients F^a_{J,j}, |J| = 3.
    std::vector<NamedExpr> conditions;
};

struct ConstraintLadder {
    std::vector<LadderLevel> levels;
    bool incompatible = false;
    bool regular = false;
    /// The balance residuals once every G is determined (one per field, sign as derived).
    std::vector<Expr> euler_lagrange_conditions;
    std::vector<std::string> notes;

    [[nodiscard]] std::string verdict() const;
};

[[nodiscard]] ConstraintLadder run_constraint_algorithm(const LagrangianProblem& prob, int max_levels = 8);

/// Replaces every F^a_{J,j} by u^a_{J+1_j}.
[[nodiscard]] Expr holonomic_closure(const Expr& e, const JetChart& chart);

} // namespace sofft
