#pragma once

#include "sofft/forms.hpp"
#include "sofft/jetspace.hpp"
#include "sofft/numcheck.hpp"

#include <chrono>
#include <random>
#include <string>
#include <vector>

namespace property {

struct SuiteResult {
    std::string name;
    int instances = 0;
    int failures = 0;
    std::string first_failure;
    double seconds = 0;

    [[nodiscard]] bool ok() const { return failures == 0 && instances > 0; }
};

inline sofft::Expr random_poly(const std::vector<sofft::Symbol>& vars, std::mt19937_64& rng, int max_terms = 4,
                               int max_degree = 3) {
    using sofft::Expr;
    std::uniform_int_distribution<int> coef(-4, 4), terms(1, max_terms), degree(0, max_degree);
    std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
    Expr out(0);
    const int t = terms(rng);
    for (int i = 0; i < t; ++i) {
        int c = coef(rng);
        if (c == 0) c = 1;
        Expr term(c);
        const int d = degree(rng);
        for (int k = 0; k < d; ++k) term *= Expr(vars[pick(rng)]);
        out += term;
    }
    return out;
}

/// Polynomial plus one elementary function of a random linear combination.
inline sofft::Expr random_smooth(const std::vector<sofft::Symbol>& vars, std::mt19937_64& rng) {
    using sofft::Expr;
    std::uniform_int_distribution<int> small(-2, 2), kind(0, 3);
    Expr arg(small(rng));
    for (const auto& v : vars) arg += Expr(small(rng)) * Expr(v);
    Expr f;
    switch (kind(rng)) {
    case 0: f = sofft::sin(arg); break;
    case 1: f = sofft::cos(arg); break;
    case 2: f = sofft::tanh(arg); break;
    default: f = sofft::exp(arg * sofft::Rational(1, 4)); break;
    }
    return random_poly(vars, rng, 3, 3) + Expr(small(rng) == 0 ? 1 : small(rng)) * f;
}

template <class Body>
SuiteResult run_suite(const std::string& name, int instances, std::uint64_t seed, Body body) {
    SuiteResult r{name, 0, 0, "", 0};
    std::mt19937_64 rng(seed);
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < instances; ++i) {
        ++r.instances;
        std::string detail;
        if (!body(rng, detail)) {
            if (r.failures++ == 0) r.first_failure = "instance " + std::to_string(i) + ": " + detail;
        }
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

/// d(d a) = 0 for random 0- and 1-forms on J^1 pi with polynomial coefficients.
inline SuiteResult d_squared(int instances = 100, std::uint64_t seed = 101) {
    using namespace sofft;
    const JetChart chart({"x", "y"}, {"u", "v"}, 2);
    const Coords cs = jet_coords(chart, 1);
    return run_suite("d o d = 0", instances, seed, [&](std::mt19937_64& rng, std::string& detail) {
        std::uniform_int_distribution<std::size_t> pick(0, cs->size() - 1);
        std::uniform_int_distribution<int> degree(0, 1);
        Form a = Form::function(cs, random_poly(cs->coords(), rng));
        if (degree(rng) == 1) {
            Form one(cs, 1);
            for (int k = 0; k < 3; ++k) one.add({pick(rng)}, random_poly(cs->coords(), rng));
            a = one;
        }
        const Form dd = exterior_d(exterior_d(a));
        if (!dd.is_zero()) detail = dd.str();
        return dd.is_zero();
    });
}

/// D_x D_y f = D_y D_x f for random polynomials on J^2 pi.
inline SuiteResult total_derivative_commutation(int instances = 100, std::uint64_t seed = 202) {
    using namespace sofft;
    const JetChart chart({"x", "y"}, {"u"}, 4);
    std::vector<Symbol> vars = chart.base_symbols();
    for (const auto& s : chart.jet_symbols(2)) vars.push_back(s);
    return run_suite("total derivative commutation", instances, seed, [&](std::mt19937_64& rng, std::string& detail) {
        const Expr f = random_poly(vars, rng);
        const Expr a = total_derivative(total_derivative(f, 0, chart, 4), 1, chart, 4);
        const Expr b = total_derivative(total_derivative(f, 1, chart, 4), 0, chart, 4);
        if (equal(a, b) != Verdict::ProvenEqual) {
            detail = f.str();
            return false;
        }
        return true;
    });
}

/// Prolongations of random sections are holonomic of every type up to their order.
inline SuiteResult prolongation_holonomy(int instances = 100, std::uint64_t seed = 303) {
    using namespace sofft;
    const JetChart chart({"x", "y"}, {"u"}, 3);
    const std::vector<Symbol> base = chart.base_symbols();
    return run_suite("prolongation holonomy", instances, seed, [&](std::mt19937_64& rng, std::string& detail) {
        const SectionExpr s = prolong(SectionExpr::from_fields(chart, {random_smooth(base, rng)}), 3, chart);
        for (int r = 1; r <= 3; ++r) {
            if (!holonomy_check(s, r, 3, chart).holds || !holonomy_check_iterated(s, r, 3, chart).holds) {
                detail = s.at(chart.field(0)).str() + " at type " + std::to_string(r);
                return false;
            }
        }
        return true;
    });
}

/// Symbolic derivatives agree with central differences to 1e-6 relative.
inline SuiteResult diff_vs_finite_difference(int instances = 100, std::uint64_t seed = 404) {
    using namespace sofft;
    const std::vector<Symbol> vars{Symbol::base(0, "x"), Symbol::base(1, "y")};
    return run_suite("diff vs finite differences", instances, seed, [&](std::mt19937_64& rng, std::string& detail) {
        const Expr e = random_smooth(vars, rng);
        std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
        std::vector<Bindings> points;
        for (int k = 0; k < 5; ++k) points.push_back(random_point(vars, rng, -1.5, 1.5));
        const double err = finite_diff_validate(e, vars[pick(rng)], points);
        if (!(err < 1e-6)) {
            detail = e.str() + " error " + std::to_string(err);
            return false;
        }
        return true;
    });
}

inline std::vector<SuiteResult> all_suites(int instances = 100) {
    return {d_squared(instances), total_derivative_commutation(instances), prolongation_holonomy(instances),
            diff_vs_finite_difference(instances)};
}

} // namespace property
