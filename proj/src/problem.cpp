#include "sofft/problem.hpp"

#include "sofft/error.hpp"

#include <toml.hpp>

#include <fstream>
#include <sstream>

namespace sofft {

namespace {

std::vector<std::string> string_list(const toml::table& t, const std::string& key, const std::string& where) {
    const auto* arr = t[key].as_array();
    if (!arr) throw ParseError(where + "." + key + " must be an array of strings", 0);
    std::vector<std::string> out;
    for (const auto& v : *arr) {
        auto s = v.value<std::string>();
        if (!s) throw ParseError(where + "." + key + " must be an array of strings", 0);
        out.push_back(*s);
    }
    return out;
}

std::string required_string(const toml::table& t, const std::string& key, const std::string& where) {
    auto s = t[key].value<std::string>();
    if (!s) throw ParseError("missing string " + where + "." + key, 0);
    return *s;
}

Expr parse_field(const std::string& text, const JetChart& chart, const std::vector<std::string>& params,
                 const std::string& key) {
    try {
        return parse(text, chart, params);
    } catch (const ParseError& e) {
        throw ParseError(key + ": " + std::string(e.what()).substr(0, std::string(e.what()).rfind(" at offset")),
                         e.offset());
    }
}

double number(const toml::node& n, const std::string& key) {
    if (auto d = n.value<double>()) return *d;
    throw ParseError(key + " must be a number", 0);
}

} // namespace

Grid ProblemFile::effective_grid() const {
    Grid g;
    if (grid) g = *grid;
    else
        for (const auto& b : problem.chart.base_names()) g.axes.push_back({b, -1, 1, 11});
    for (const auto& [k, v] : values) g.params.emplace(k, v);
    return g;
}

ProblemFile parse_problem(const std::string& text, const std::string& source) {
    toml::table doc;
    try {
        doc = toml::parse(text, source);
    } catch (const toml::parse_error& e) {
        const auto& b = e.source().begin;
        throw ParseError(source + ":" + std::to_string(b.line) + ":" + std::to_string(b.column) + ": " +
                             std::string(e.description()),
                         0);
    }
    const auto* prob = doc["problem"].as_table();
    if (!prob) throw ParseError("missing [problem] table", 0);
    const std::string name = prob->contains("name") ? required_string(*prob, "name", "problem") : source;
    const auto base = string_list(*prob, "base", "problem");
    const auto fields = string_list(*prob, "fields", "problem");
    std::vector<std::string> params;
    if (prob->contains("params")) params = string_list(*prob, "params", "problem");
    const int order = static_cast<int>((*prob)["order"].value_or<int64_t>(2));
    if (order != 1 && order != 2) throw PreconditionError("problem.order must be 1 or 2, got " + std::to_string(order));

    const auto* lag = doc["lagrangian"].as_table();
    if (!lag) throw ParseError("missing [lagrangian] table", 0);
    const JetChart chart(base, fields, order);
    // A first-order density is read on J^1 and used unchanged on J^2.
    const Expr L = parse_field(required_string(*lag, "L", "lagrangian"), chart, params, "lagrangian.L");

    ProblemFile pf{name, LagrangianProblem(chart.with_order(2), L, params), "", std::nullopt, std::nullopt, {}, std::nullopt};
    const JetChart c3 = chart.with_order(3);

    if (const auto* sec = doc["section"].as_table()) {
        pf.section_kind = required_string(*sec, "kind", "section");
        if (pf.section_kind != "upsilon" && pf.section_kind != "sigma")
            throw ParseError("section.kind must be \"upsilon\" or \"sigma\"", 0);
        LegendreSection s;
        for (const auto& [k, v] : *sec) {
            const std::string key(k.str());
            if (key == "kind") continue;
            auto txt = v.value<std::string>();
            if (!txt) throw ParseError("section." + key + " must be a string", 0);
            const Expr target = parse_field(key, c3, params, "section key " + key);
            if (target.op() != Expr::Op::Sym || target.symbol().kind() != SymbolKind::Jet || target.symbol().order() < 2)
                throw ParseError("section key " + key + " must be a jet of order 2 or 3", 0);
            s.images.emplace(target.symbol(), parse_field(*txt, chart.with_order(2), params, "section." + key));
        }
        // Unlisted jets of order 2 and 3 map to zero.
        for (int r = 2; r <= 3; ++r)
            for (const Symbol& z : c3.jet_symbols_of_order(r)) s.images.emplace(z, Expr(0));
        pf.section = std::move(s);
    }

    if (const auto* sol = doc["solution"].as_table()) {
        std::vector<Expr> comps;
        for (const auto& f : fields) {
            auto txt = (*sol)[f].value<std::string>();
            if (!txt) throw ParseError("solution." + f + " is missing", 0);
            comps.push_back(parse_field(*txt, chart, params, "solution." + f));
        }
        for (const auto& [k, v] : *sol) {
            const std::string key(k.str());
            if (std::find(fields.begin(), fields.end(), key) == fields.end())
                throw ParseError("solution." + key + " is not a field", 0);
        }
        for (const Expr& e : comps)
            for (const Symbol& s : symbols(e))
                if (s.kind() != SymbolKind::Base && s.kind() != SymbolKind::Param)
                    throw ParseError("solution may depend only on base coordinates and parameters, found " + s.label(), 0);
        pf.solution = SectionExpr::from_fields(chart, comps);
    }

    if (const auto* vals = doc["values"].as_table()) {
        for (const auto& [k, v] : *vals) {
            const std::string key(k.str());
            if (std::find(params.begin(), params.end(), key) == params.end())
                throw ParseError("values." + key + " is not a declared parameter", 0);
            pf.values.emplace(key, number(v, "values." + key));
        }
    }

    if (const auto* grid = doc["grid"].as_table()) {
        Grid g;
        for (const auto& b : base) {
            const auto* arr = (*grid)[b].as_array();
            if (!arr || arr->size() != 3) throw ParseError("grid." + b + " must be [min, max, count]", 0);
            Axis a{b, number((*arr)[0], "grid." + b), number((*arr)[1], "grid." + b), 0};
            auto cnt = (*arr)[2].value<int64_t>();
            if (!cnt) throw ParseError("grid." + b + " count must be an integer", 0);
            a.count = static_cast<int>(*cnt);
            g.axes.push_back(a);
        }
        g.validate();
        pf.grid = g;
    }
    return pf;
}

ProblemFile load_problem(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_problem(ss.str(), path.string());
}

} // namespace sofft
