#pragma once

#include "sofft/chart.hpp"
#include "sofft/expr.hpp"

#include <map>
#include <string>
#include <vector>

namespace sofft {

/// Local section: coordinate symbol -> expression in base coordinates and parameters.
struct SectionExpr {
    std::map<Symbol, Expr> components;

    /// u^a given for each field in order.
    static SectionExpr from_fields(const JetChart& chart, const std::vector<Expr>& fields);

    [[nodiscard]] bool has(const Symbol& s) const { return components.count(s) != 0; }
    [[nodiscard]] const Expr& at(const Symbol& s) const;
    void set(const Symbol& s, const Expr& e) { components.insert_or_assign(s, normal_form(e)); }
};

/// d/dx^i = d/dx^i + sum u_{I+1_i} d/du_I over |I| <= cap - 1.
/// `images` optionally gives the total derivative of further symbols (e.g. momenta);
/// symbols without an image are constants for the operator.
/// Throws PreconditionError when e holds a jet of order >= cap.
[[nodiscard]] Expr total_derivative(const Expr& e, std::size_t i, const JetChart& chart, int cap,
                                    const Substitution& images = {});

[[nodiscard]] Poly total_derivative(const Poly& e, std::size_t i, const JetChart& chart, int cap,
                                    const std::map<Symbol, Poly>& images = {});

/// Applies total_derivative I(i) times in each direction i.
[[nodiscard]] Expr iterated_total_derivative(const Expr& e, const MultiIndex& I, const JetChart& chart, int cap);

/// Fills u^a_I for 1 <= |I| <= k by differentiating u^a with respect to the base coordinates.
[[nodiscard]] SectionExpr prolong(const SectionExpr& s, int k, const JetChart& chart);

struct HolonomyViolation {
    std::size_t field;
    MultiIndex index;
    std::size_t dir;
    std::string detail;
};

struct HolonomyReport {
    bool holds = true;
    std::vector<HolonomyViolation> violations;
};

/// psi_{I+1_i} = d psi_I / dx^i for 0 <= |I| <= k - r.
[[nodiscard]] HolonomyReport holonomy_check(const SectionExpr& s, int r, int k, const JetChart& chart);

/// psi_I = d^{|I|} psi / dx^I for 1 <= |I| <= k - r + 1.
[[nodiscard]] HolonomyReport holonomy_check_iterated(const SectionExpr& s, int r, int k, const JetChart& chart);

struct Dimensions {
    long j1, j2, j3;
    long lambda2m;   ///< dim Lambda^2_m(J^1 pi)
    long j2dagger;   ///< dim J^2 pi^dagger
    long j2ddagger;  ///< dim J^2 pi^ddagger
    long w, wr;
};

[[nodiscard]] long jet_dimension(long m, long n, int k);
[[nodiscard]] Dimensions dimensions(long m, long n);

} // namespace sofft
