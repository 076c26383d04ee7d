#pragma once

#include "sofft/hamiltonian.hpp"
#include "sofft/jetspace.hpp"
#include "sofft/numcheck.hpp"
#include "sofft/theory.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace sofft {

/// Parsed problem file.
struct ProblemFile {
    std::string name;
    LagrangianProblem problem;
    /// "upsilon" (section of FL on J^2 pi^ddagger) or "sigma" (section on P).
    std::string section_kind;
    std::optional<LegendreSection> section;
    std::optional<SectionExpr> solution;
    std::map<std::string, double> values;
    std::optional<Grid> grid;

    /// The file grid, or [-1, 1] with 11 points per base axis; parameter values attached.
    [[nodiscard]] Grid effective_grid() const;
};

/// Throws ParseError (with line and column, or the offending key) and PreconditionError.
[[nodiscard]] ProblemFile parse_problem(const std::string& text, const std::string& source = "<input>");
[[nodiscard]] ProblemFile load_problem(const std::filesystem::path& path);

} // namespace sofft
