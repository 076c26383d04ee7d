#pragma once

#include "sofft/equations.hpp"
#include "sofft/jetspace.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace sofft {

struct Axis {
    std::string name;
    double min = 0;
    double max = 1;
    int count = 2;
};

struct Grid {
    std::vector<Axis> axes;
    std::map<std::string, double> params;

    /// Throws PreconditionError unless count >= 2 and min < max on every axis.
    void validate() const;
};

struct ResidualEntry {
    std::string name;
    Expr symbolic;  ///< residual after substituting the prolonged solution
    double max_abs = 0;
    std::vector<double> worst_point;
};

/// Prolongs `sol`, substitutes it into every residual, normalizes, then takes the
/// max |value| over the grid for each equation.
[[nodiscard]] std::vector<ResidualEntry> residual(const EquationSet& eqs, const SectionExpr& sol, const Grid& grid);

/// Max relative error of diff(e, s) against central differences over the points.
[[nodiscard]] double finite_diff_validate(const Expr& e, const Symbol& s, const std::vector<Bindings>& points);

[[nodiscard]] Eigen::MatrixXd evaluate(const ExprMatrix& m, const Bindings& point);
[[nodiscard]] int numeric_rank(const Eigen::MatrixXd& m, double threshold = 1e-9);
[[nodiscard]] int numeric_rank(const ExprMatrix& m, const Bindings& point, double threshold = 1e-9);

/// Uniform random values in [lo, hi] for each symbol.
[[nodiscard]] Bindings random_point(const std::vector<Symbol>& symbols, std::mt19937_64& rng, double lo = -2,
                                    double hi = 2);

} // namespace sofft
