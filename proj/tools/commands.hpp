#pragma once

#include "sofft/problem.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace sofft::cli {

enum ExitCode { Ok = 0, Usage = 1, ParseFailure = 2, PreconditionFailure = 3, CheckFailure = 4 };

inline const std::vector<std::string> emit_selectors{"legendre",    "extended-legendre", "regularity",
                                                     "euler-lagrange", "hamilton",       "constraints",
                                                     "forms",       "dims",              "pairing"};

[[nodiscard]] nlohmann::json analyze_json(const ProblemFile& pf, const std::string& emit);
[[nodiscard]] std::string analyze_text(const ProblemFile& pf, const std::string& emit);

struct CheckResult {
    bool pass = false;
    double tol = 1e-8;
    std::vector<ResidualEntry> entries;
};

/// Overrides have the form axis=min:max:count.
[[nodiscard]] CheckResult check(const ProblemFile& pf, double tol, const std::vector<std::string>& grid_overrides);
[[nodiscard]] std::string render(const CheckResult& r);

[[nodiscard]] std::string dims_text(long m, long n);

/// Full command line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace sofft::cli
