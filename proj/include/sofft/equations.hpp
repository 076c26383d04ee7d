#pragma once

#include "sofft/chart.hpp"
#include "sofft/expr.hpp"

#include <string>
#include <vector>

namespace sofft {

using ExprMatrix = std::vector<std::vector<Expr>>;

/// One equation `residual = 0`.
struct Equation {
    std::string name;
    std::string group;
    Expr residual;
};

struct EquationSet {
    JetChart chart;
    std::vector<Equation> equations;

    void add(std::string name, std::string group, const Expr& residual) {
        equations.push_back({std::move(name), std::move(group), normal_form(residual)});
    }
    [[nodiscard]] std::size_t size() const { return equations.size(); }
    [[nodiscard]] std::vector<Equation> group(const std::string& g) const {
        std::vector<Equation> out;
        for (const auto& e : equations)
            if (e.group == g) out.push_back(e);
        return out;
    }
};

} // namespace sofft
