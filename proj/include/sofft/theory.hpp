#pragma once

#include "sofft/chart.hpp"
#include "sofft/equations.hpp"
#include "sofft/expr.hpp"
#include "sofft/forms.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace sofft {

/// Second-order Lagrangian on a k = 2 chart.
struct LagrangianProblem {
    LagrangianProblem(JetChart chart, Expr L, std::vector<std::string> params);

    JetChart chart;
    Expr L;
    std::vector<std::string> params;

    [[nodiscard]] std::vector<Symbol> param_symbols() const;
    /// Parses text against this problem's chart (raised to `order`) and parameters.
    [[nodiscard]] Expr parse(const std::string& text, int order = 3) const;
};

struct LegendreMap {
    std::map<Symbol, Expr> restricted;
    std::optional<Expr> extended_p;
};

struct RegularityVerdict {
    bool regular = false;
    int rank = 0;
    /// False when regularity was only observed at sample points.
    bool exhaustive = true;
    Expr determinant;

    [[nodiscard]] std::string str() const;
};

/// Second partials over (field, enumerate(m,2)).
[[nodiscard]] ExprMatrix hessian(const LagrangianProblem& prob);
/// Exact determinant by cofactor expansion.
[[nodiscard]] Expr determinant(const ExprMatrix& m);
[[nodiscard]] RegularityVerdict classify_regularity(const LagrangianProblem& prob, int samples = 5,
                                                    std::uint64_t seed = 7);

[[nodiscard]] LegendreMap restricted_legendre(const LagrangianProblem& prob);
[[nodiscard]] LegendreMap extended_legendre(const LagrangianProblem& prob);

/// Jacobian of the Legendre map: identity rows for x, u, u_i, then one row per momentum
/// (and p when extended); columns are all J^3 pi coordinates.
[[nodiscard]] ExprMatrix legendre_jacobian(const LegendreMap& map, const JetChart& chart);
[[nodiscard]] int legendre_jacobian_rank(const LegendreMap& map, const JetChart& chart, const Bindings& point);

/// Makes the monomial carrying the highest-order jet have a positive coefficient.
[[nodiscard]] Expr canonical_sign(const Expr& residual);

/// dL/du - d_i dL/du_i + sum_{|I|=2} d^I dL/du_I, exactly as written (order 4).
[[nodiscard]] std::vector<Expr> euler_lagrange_raw(const LagrangianProblem& prob);
/// Sign-canonical Euler-Lagrange residuals.
[[nodiscard]] EquationSet euler_lagrange(const LagrangianProblem& prob);

/// p d^m x + p^i du ^ d^{m-1}x_i + (1/n(ij)) p^{1_i+1_j} du_i ^ d^{m-1}x_j on `target`,
/// with p and the momenta replaced by the given values (missing momenta default to symbols).
[[nodiscard]] Form liouville_pattern(const Coords& target, const JetChart& chart, const Expr& p,
                                     const std::map<Symbol, Expr>& momenta = {});
/// Theta_1^s on J^2 pi^dagger.
[[nodiscard]] Form liouville_form(const JetChart& chart);

/// Theta_L by substituting the extended Legendre images into the Theta_1^s pattern.
[[nodiscard]] Form poincare_cartan(const LagrangianProblem& prob);
/// Theta_L from the closed-form expression in terms of L and its partials.
[[nodiscard]] Form poincare_cartan_closed(const LagrangianProblem& prob);

/// H^ = p^i u_i + p^I u_I - L on W_r.
[[nodiscard]] Expr hamiltonian_hat(const LagrangianProblem& prob);

struct UnifiedForms {
    Form theta_r;
    Form omega_r;
    Expr H_hat;
};

[[nodiscard]] UnifiedForms unified_forms(const LagrangianProblem& prob);

/// C^s = p + p^i u_i + p^I u_I.
[[nodiscard]] Expr pairing_cs(const JetChart& chart);

/// Values of the non-symmetric multimomenta p^{ij}_a, indexed [a][i][j].
using Multimomenta = std::vector<std::vector<std::vector<Expr>>>;

/// j_s: p^{ij}_a = p^{1_i+1_j}_a / n(ij).
[[nodiscard]] Multimomenta symmetric_embedding(const JetChart& chart);

/// C = p + p^i_a u^a_i + p^{ij}_a u^a_{1_i+1_j}. Reference formula; the equations use C^s.
[[nodiscard]] Expr pairing_c(const JetChart& chart, const Multimomenta& pij);

/// Random values for every J^3 pi coordinate and parameter.
[[nodiscard]] Bindings sample_point(const LagrangianProblem& prob, std::mt19937_64& rng);

} // namespace sofft
