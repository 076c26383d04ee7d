#pragma once

#include "sofft/equations.hpp"
#include "sofft/forms.hpp"
#include "sofft/theory.hpp"

#include <map>
#include <optional>
#include <vector>

namespace sofft {

/// Images of the order-2 and order-3 jets in the coordinates of J^2 pi^ddagger (or of P).
struct LegendreSection {
    std::map<Symbol, Expr> images;
};

struct ImageSubmanifold {
    std::vector<Expr> constraints;
    /// Induced coordinates of P: x, u, u_i and the momenta that were not eliminated.
    std::vector<Symbol> coordinates;
    /// Eliminated momentum -> expression in the induced coordinates.
    std::map<Symbol, Expr> embedding;

    [[nodiscard]] std::size_t dimension() const { return coordinates.size(); }
};

/// Throws PreconditionError naming the first momentum for which FL o section differs from
/// the identity (or from the embedding image on P).
void check_section(const LagrangianProblem& prob, const LegendreSection& s, const ImageSubmanifold* P = nullptr);

/// Least-norm solution of the Legendre relations when the Hessian is constant and
/// diagonal and the order-3 jets enter the momentum images with constant coefficients.
[[nodiscard]] std::optional<LegendreSection> automatic_section(const LagrangianProblem& prob);

/// H = p^i u_i + p^I f_I - L o section.
[[nodiscard]] Expr ham_function_regular(const LagrangianProblem& prob, const LegendreSection& s);

/// Hamilton-De Donder-Weyl equations on J^2 pi^ddagger with opaque derivative symbols.
/// Groups: field, jet, balance, momentum.
[[nodiscard]] EquationSet hamilton_ddw_equations(const Expr& H, const JetChart& chart);

/// Eliminates the jets of order >= 2 from the Legendre images. Throws PreconditionError
/// when an image is not affine in those jets.
[[nodiscard]] ImageSubmanifold image_submanifold(const LagrangianProblem& prob);

/// H = -(extended p o sigma) in the induced coordinates of P.
[[nodiscard]] Expr ham_function_almost_regular(const LagrangianProblem& prob, const ImageSubmanifold& P,
                                               const LegendreSection& sigma);

[[nodiscard]] Coords image_coords(const ImageSubmanifold& P, const JetChart& chart);

/// Theta_h: the Theta_1^s pattern with p -> -H, on J^2 pi^ddagger or on P.
[[nodiscard]] Form hamilton_cartan_form(const Expr& H, const JetChart& chart, const ImageSubmanifold* P = nullptr);

/// Field equations of Theta_h: for every fibre coordinate z, the d^m x coefficient of the
/// pullback of i(d/dz)Omega_h along a section with opaque derivatives.
[[nodiscard]] EquationSet hamilton_form_equations(const Form& theta_h, const JetChart& chart);

/// FL^* of a form on J^2 pi^ddagger (or P): momenta replaced by their Legendre images.
[[nodiscard]] Form legendre_pullback(const Form& a, const LagrangianProblem& prob);

} // namespace sofft
