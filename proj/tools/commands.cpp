#include "commands.hpp"

#include "sofft/error.hpp"
#include "sofft/unified.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>

namespace sofft::cli {

using nlohmann::json;

namespace {

json equations_json(const EquationSet& eqs) {
    json arr = json::array();
    for (const auto& e : eqs.equations) arr.push_back({{"name", e.name}, {"group", e.group}, {"expr", e.residual.str()}});
    return arr;
}

json form_json(const Form& f) {
    json o = json::object();
    const CoordSystem& cs = *f.coords();
    for (const auto& [k, c] : f.terms()) {
        std::string key;
        for (std::size_t i = 0; i < k.size(); ++i) key += (i ? "^d" : "d") + cs[k[i]].label();
        o[key] = c.str();
    }
    return o;
}

json momenta_json(const LegendreMap& leg) {
    json o = json::object();
    for (const auto& [p, e] : leg.restricted) o[p.label()] = e.str();
    return o;
}

int generic_rank(const LegendreMap& leg, const LagrangianProblem& prob) {
    std::mt19937_64 rng(17);
    int r = 0;
    for (int i = 0; i < 5; ++i) r = std::max(r, legendre_jacobian_rank(leg, prob.chart, sample_point(prob, rng)));
    return r;
}

json ladder_json(const ConstraintLadder& ladder) {
    json levels = json::array();
    json flat = json::array();
    for (const auto& l : ladder.levels) {
        json lv{{"constraints", json::array()}, {"assignments", json::array()}, {"conditions", json::array()}};
        for (const auto& c : l.constraints) {
            lv["constraints"].push_back({{"name", c.name}, {"expr", c.expr.str()}});
            flat.push_back({{"name", c.name}, {"expr", c.expr.str()}});
        }
        for (const auto& a : l.assignments)
            lv["assignments"].push_back({{"coefficient", a.coefficient.label()}, {"expr", a.value.str()}});
        for (const auto& c : l.conditions) lv["conditions"].push_back({{"name", c.name}, {"expr", c.expr.str()}});
        levels.push_back(lv);
    }
    return {{"levels", levels},
            {"constraints", flat},
            {"verdict", ladder.verdict()},
            {"incompatible", ladder.incompatible},
            {"regular", ladder.regular}};
}

json dims_json(long m, long n) {
    const Dimensions d = dimensions(m, n);
    return {{"J1", d.j1},       {"J2", d.j2},         {"J3", d.j3}, {"Lambda2m", d.lambda2m}, {"J2dagger", d.j2dagger},
            {"J2ddagger", d.j2ddagger}, {"W", d.w}, {"Wr", d.wr}};
}

struct HamiltonResult {
    bool regular = false;
    std::optional<ImageSubmanifold> P;
    std::optional<Expr> H;
    EquationSet equations;
    std::string note;
};

HamiltonResult hamilton(const ProblemFile& pf) {
    const LagrangianProblem& prob = pf.problem;
    HamiltonResult r{false, std::nullopt, std::nullopt, EquationSet{prob.chart, {}}, ""};
    r.regular = classify_regularity(prob).regular;
    if (r.regular) {
        std::optional<LegendreSection> s;
        if (pf.section && pf.section_kind == "upsilon") s = pf.section;
        else s = automatic_section(prob);
        if (!s) throw PreconditionError("regular Lagrangian without a usable section: add [section] kind = \"upsilon\"");
        r.H = ham_function_regular(prob, *s);
        r.equations = hamilton_ddw_equations(*r.H, prob.chart);
        return r;
    }
    r.P = image_submanifold(prob);
    if (!pf.section || pf.section_kind != "sigma") {
        r.note = "no [section] kind = \"sigma\" given; H on P not computed";
        return r;
    }
    r.H = ham_function_almost_regular(prob, *r.P, *pf.section);
    r.equations = hamilton_form_equations(hamilton_cartan_form(*r.H, prob.chart, &*r.P), prob.chart);
    return r;
}

} // namespace

json analyze_json(const ProblemFile& pf, const std::string& emit) {
    const LagrangianProblem& prob = pf.problem;
    json j{{"problem", pf.name}, {"emit", emit}};
    if (emit == "legendre" || emit == "extended-legendre") {
        const LegendreMap leg = emit == "legendre" ? restricted_legendre(prob) : extended_legendre(prob);
        j["momenta"] = momenta_json(leg);
        if (leg.extended_p) j["momenta"]["p0"] = leg.extended_p->str();
        j["rank"] = generic_rank(leg, prob);
    } else if (emit == "regularity") {
        const RegularityVerdict v = classify_regularity(prob);
        j["verdict"] = v.str();
        j["regular"] = v.regular;
        j["exhaustive"] = v.exhaustive;
        j["rank"] = v.rank;
        j["determinant"] = v.determinant.str();
        j["legendre_rank"] = generic_rank(restricted_legendre(prob), prob);
    } else if (emit == "euler-lagrange") {
        j["equations"] = equations_json(euler_lagrange(prob));
    } else if (emit == "hamilton") {
        const HamiltonResult h = hamilton(pf);
        j["regular"] = h.regular;
        if (h.H) j["H"] = h.H->str();
        j["constraints"] = json::array();
        if (h.P) {
            for (const auto& c : h.P->constraints) j["constraints"].push_back(c.str());
            json emb = json::object();
            for (const auto& [s, e] : h.P->embedding) emb[s.label()] = e.str();
            j["embedding"] = emb;
            json coords = json::array();
            for (const auto& s : h.P->coordinates) coords.push_back(s.label());
            j["coordinates"] = coords;
            j["dims"] = {{"P", h.P->dimension()}};
        }
        j["equations"] = equations_json(h.equations);
        if (!h.note.empty()) j["note"] = h.note;
    } else if (emit == "constraints") {
        j.update(ladder_json(run_constraint_algorithm(prob)));
    } else if (emit == "forms") {
        const UnifiedForms uf = unified_forms(prob);
        j["forms"] = {{"Theta_L", form_json(poincare_cartan(prob))}, {"Theta_r", form_json(uf.theta_r)}};
        j["H_hat"] = uf.H_hat.str();
    } else if (emit == "dims") {
        j["dims"] = dims_json(static_cast<long>(prob.chart.m()), static_cast<long>(prob.chart.n()));
    } else if (emit == "pairing") {
        j["C"] = pairing_cs(prob.chart).str();
    } else {
        throw PreconditionError("unknown --emit selector " + emit);
    }
    return j;
}

std::string analyze_text(const ProblemFile& pf, const std::string& emit) {
    const LagrangianProblem& prob = pf.problem;
    std::ostringstream os;
    auto eq_lines = [&](const EquationSet& eqs) {
        for (const auto& e : eqs.equations) os << e.residual.str() << " = 0\n";
    };
    if (emit == "legendre" || emit == "extended-legendre") {
        const LegendreMap leg = emit == "legendre" ? restricted_legendre(prob) : extended_legendre(prob);
        for (const Symbol& p : prob.chart.momentum_symbols()) os << p.label() << " = " << leg.restricted.at(p).str() << "\n";
        if (leg.extended_p) os << "p0 = " << leg.extended_p->str() << "\n";
        os << "rank = " << generic_rank(leg, prob) << "\n";
    } else if (emit == "regularity") {
        os << classify_regularity(prob).str() << "\n";
    } else if (emit == "euler-lagrange") {
        eq_lines(euler_lagrange(prob));
    } else if (emit == "hamilton") {
        const HamiltonResult h = hamilton(pf);
        if (h.P) {
            os << "P: dim " << h.P->dimension() << "\n";
            for (const auto& c : h.P->constraints) os << c.str() << " = 0\n";
        }
        if (h.H) os << "H = " << h.H->str() << "\n";
        eq_lines(h.equations);
        if (!h.note.empty()) os << h.note << "\n";
    } else if (emit == "constraints") {
        const ConstraintLadder ladder = run_constraint_algorithm(prob);
        for (std::size_t l = 0; l < ladder.levels.size(); ++l) {
            os << "level " << l << "\n";
            for (const auto& c : ladder.levels[l].constraints) os << "  " << c.expr.str() << " = 0\n";
            for (const auto& a : ladder.levels[l].assignments)
                os << "  " << a.coefficient.label() << " := " << a.value.str() << "\n";
            for (const auto& c : ladder.levels[l].conditions) os << "  condition " << c.expr.str() << " = 0\n";
        }
        os << ladder.verdict() << "\n";
    } else if (emit == "forms") {
        const UnifiedForms uf = unified_forms(prob);
        os << "Theta_L = " << poincare_cartan(prob).str() << "\n";
        os << "Theta_r = " << uf.theta_r.str() << "\n";
        os << "H_hat = " << uf.H_hat.str() << "\n";
    } else if (emit == "dims") {
        os << dims_text(static_cast<long>(prob.chart.m()), static_cast<long>(prob.chart.n()));
    } else if (emit == "pairing") {
        os << "C = " << pairing_cs(prob.chart).str() << "\n";
    } else {
        throw PreconditionError("unknown --emit selector " + emit);
    }
    return os.str();
}

CheckResult check(const ProblemFile& pf, double tol, const std::vector<std::string>& grid_overrides) {
    if (!pf.solution) throw PreconditionError("problem file has no [solution] block");
    Grid g = pf.effective_grid();
    for (const auto& o : grid_overrides) {
        const auto eq = o.find('=');
        const auto c1 = o.find(':', eq == std::string::npos ? 0 : eq);
        const auto c2 = c1 == std::string::npos ? std::string::npos : o.find(':', c1 + 1);
        if (eq == std::string::npos || c1 == std::string::npos || c2 == std::string::npos)
            throw PreconditionError("grid override must be axis=min:max:count, got " + o);
        const std::string name = o.substr(0, eq);
        Axis a;
        try {
            a = Axis{name, std::stod(o.substr(eq + 1, c1 - eq - 1)), std::stod(o.substr(c1 + 1, c2 - c1 - 1)),
                     std::stoi(o.substr(c2 + 1))};
        } catch (const std::exception&) {
            throw PreconditionError("grid override must be axis=min:max:count, got " + o);
        }
        bool replaced = false;
        for (auto& ax : g.axes)
            if (ax.name == name) {
                ax = a;
                replaced = true;
            }
        if (!replaced) throw PreconditionError("grid override names unknown axis " + name);
    }
    CheckResult r;
    r.tol = tol;
    r.entries = residual(euler_lagrange(pf.problem), *pf.solution, g);
    r.pass = true;
    for (const auto& e : r.entries)
        if (!(e.max_abs < tol)) r.pass = false;
    return r;
}

std::string render(const CheckResult& r) {
    std::ostringstream os;
    for (const auto& e : r.entries) {
        os << e.name << "  max|r| = " << std::setprecision(3) << std::scientific << e.max_abs;
        if (!e.worst_point.empty()) {
            os << " at (";
            for (std::size_t i = 0; i < e.worst_point.size(); ++i)
                os << (i ? ", " : "") << std::defaultfloat << std::setprecision(6) << e.worst_point[i];
            os << ")";
        }
        os << std::defaultfloat << "\n  symbolic: " << e.symbolic.str() << "\n";
    }
    os << (r.pass ? "PASS" : "FAIL") << " (tol " << std::setprecision(3) << r.tol << ")\n";
    return os.str();
}

std::string dims_text(long m, long n) {
    const Dimensions d = dimensions(m, n);
    std::ostringstream os;
    os << "dim J1 = " << d.j1 << "\n"
       << "dim J2 = " << d.j2 << "\n"
       << "dim J3 = " << d.j3 << "\n"
       << "dim Lambda2m = " << d.lambda2m << "\n"
       << "dim J2dagger = " << d.j2dagger << "\n"
       << "dim J2ddagger = " << d.j2ddagger << "\n"
       << "dim W = " << d.w << "\n"
       << "dim Wr = " << d.wr << "\n";
    return os.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Second-order field theory derivations"};
    app.require_subcommand(1);

    std::string file, emit, format = "text";
    auto* analyze = app.add_subcommand("analyze", "Derive and print one object for a problem file");
    analyze->add_option("file", file, "Problem file")->required();
    analyze->add_option("--emit", emit, "What to derive")->required()->check(CLI::IsMember(emit_selectors));
    analyze->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

    double tol = 1e-8;
    std::vector<std::string> grids;
    auto* chk = app.add_subcommand("check", "Check the Euler-Lagrange residual of the solution block");
    chk->add_option("file", file, "Problem file")->required();
    chk->add_option("--tol", tol, "Max-abs residual tolerance");
    chk->add_option("--grid", grids, "axis=min:max:count");

    long m = 0, n = 0;
    auto* dims = app.add_subcommand("dims", "Bundle dimensions for base dimension m and fibre dimension n");
    dims->add_option("m", m)->required()->check(CLI::PositiveNumber);
    dims->add_option("n", n)->required()->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return Usage;
    }

    try {
        if (*dims) {
            out << dims_text(m, n);
            return Ok;
        }
        const ProblemFile pf = load_problem(file);
        if (*analyze) {
            if (format == "json") out << analyze_json(pf, emit).dump(2) << "\n";
            else out << analyze_text(pf, emit);
            return Ok;
        }
        const CheckResult r = check(pf, tol, grids);
        out << render(r);
        return r.pass ? Ok : CheckFailure;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return ParseFailure;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return PreconditionFailure;
    } catch (const EvalError& e) {
        err << "evaluation error: " << e.what() << "\n";
        return CheckFailure;
    }
}

} // namespace sofft::cli
