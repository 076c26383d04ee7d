#include "doctest.h"

#include "fixtures.hpp"
#include "sofft/error.hpp"
#include "sofft/hamiltonian.hpp"
#include "sofft/jetspace.hpp"
#include "sofft/numcheck.hpp"

using namespace sofft;

namespace {

void check_equal(const Expr& a, const Expr& b) {
    INFO(a.str(), " vs ", b.str());
    CHECK(equal(a, b) == Verdict::ProvenEqual);
}

Expr find(const EquationSet& eqs, const std::string& name) {
    for (const auto& e : eqs.equations)
        if (e.name == name) return e.residual;
    FAIL("missing equation " << name);
    return Expr(0);
}

Expr P(const LagrangianProblem& prob, const std::string& s) { return prob.parse(s, 4); }

LegendreSection plate_upsilon(const LagrangianProblem& prob) {
    LegendreSection s;
    const JetChart c = prob.chart.with_order(3);
    s.images[c.jet(0, {2, 0})] = P(prob, "p.u[2,0]");
    s.images[c.jet(0, {1, 1})] = P(prob, "1/2*p.u[1,1]");
    s.images[c.jet(0, {0, 2})] = P(prob, "p.u[0,2]");
    s.images[c.jet(0, {3, 0})] = P(prob, "-1/2*p.u[1,0]");
    s.images[c.jet(0, {2, 1})] = P(prob, "-1/2*p.u[0,1]");
    s.images[c.jet(0, {1, 2})] = P(prob, "-1/2*p.u[1,0]");
    s.images[c.jet(0, {0, 3})] = P(prob, "-1/2*p.u[0,1]");
    return s;
}

LegendreSection kdv_sigma(const LagrangianProblem& prob) {
    LegendreSection s;
    const JetChart c = prob.chart.with_order(3);
    for (const Symbol& z : c.jet_symbols_of_order(2)) s.images[z] = Expr(0);
    for (const Symbol& z : c.jet_symbols_of_order(3)) s.images[z] = Expr(0);
    s.images[c.jet(0, {2, 0})] = P(prob, "-p.u[2,0]");
    s.images[c.jet(0, {3, 0})] = P(prob, "p.u[1,0] - 1/2*u[0,1] + 3*u[1,0]^2");
    return s;
}

} // namespace

TEST_CASE("plate Hamiltonian from the section") {
    auto prob = fixture::plate();
    auto H = ham_function_regular(prob, plate_upsilon(prob));
    check_equal(H, P(prob, "p.u[1,0]*u[1,0] + p.u[0,1]*u[0,1] + 1/2*p.u[2,0]^2 + 1/4*p.u[1,1]^2"
                           " + 1/2*p.u[0,2]^2 + q*u"));
}

TEST_CASE("automatic section reproduces the plate section") {
    auto prob = fixture::plate();
    auto s = automatic_section(prob);
    REQUIRE(s.has_value());
    for (const auto& [z, e] : plate_upsilon(prob).images) check_equal(s->images.at(z), e);
    CHECK_FALSE(automatic_section(fixture::kdv()).has_value());
}

TEST_CASE("one-dimensional diagonal quadratic inversion") {
    const JetChart c({"x"}, {"u"}, 2);
    LagrangianProblem prob(c, parse("1/2*u[1]^2 + 1/2*u[2]^2", c, {}), {});
    auto s = automatic_section(prob);
    REQUIRE(s.has_value());
    auto H = ham_function_regular(prob, *s);
    check_equal(H, parse("p.u[1]*u[1] + 1/2*p.u[2]^2 - 1/2*u[1]^2", c, {}));
}

TEST_CASE("zero Lagrangian with the zero section") {
    const JetChart c({"x", "y"}, {"u"}, 2);
    LagrangianProblem prob(c, Expr(0), {});
    LegendreSection s;
    const JetChart c3 = c.with_order(3);
    for (const Symbol& z : c3.jet_symbols_of_order(2)) s.images[z] = Expr(0);
    for (const Symbol& z : c3.jet_symbols_of_order(3)) s.images[z] = Expr(0);
    // FL is identically zero, so only the zero-momentum submanifold is reached.
    CHECK_THROWS_AS((void)ham_function_regular(prob, s), PreconditionError);
    auto Pz = image_submanifold(prob);
    CHECK(Pz.constraints.size() == 5);
    CHECK(Pz.dimension() == 5);
    check_equal(ham_function_almost_regular(prob, Pz, s), Expr(0));
}

TEST_CASE("section check names the failing momentum") {
    auto prob = fixture::plate();
    auto s = plate_upsilon(prob);
    s.images[prob.chart.with_order(3).jet(0, {1, 1})] = P(prob, "p.u[1,1]");
    try {
        check_section(prob, s);
        FAIL("accepted a wrong section");
    } catch (const PreconditionError& e) {
        CHECK(std::string(e.what()).find("p.u[1,1]") != std::string::npos);
    }
}

TEST_CASE("plate Hamilton-De Donder-Weyl equations") {
    auto prob = fixture::plate();
    auto H = ham_function_regular(prob, plate_upsilon(prob));
    auto eqs = hamilton_ddw_equations(H, prob.chart);
    CHECK(eqs.size() == 8);
    check_equal(find(eqs, "field[u[1,0]]"), P(prob, "D.x(u) - u[1,0]"));
    check_equal(find(eqs, "jet[u[2,0]]"), P(prob, "D.x(u[1,0]) - p.u[2,0]"));
    check_equal(find(eqs, "jet[u[1,1]]"), P(prob, "1/2*(D.x(u[0,1]) + D.y(u[1,0]) - p.u[1,1])"));
    check_equal(find(eqs, "balance[u]"), P(prob, "D.x(p.u[1,0]) + D.y(p.u[0,1]) + q"));
    check_equal(find(eqs, "momentum[p.u[1,0]]"), P(prob, "D.x(p.u[2,0]) + 1/2*D.y(p.u[1,1]) + p.u[1,0]"));
    check_equal(find(eqs, "momentum[p.u[0,1]]"), P(prob, "1/2*D.x(p.u[1,1]) + D.y(p.u[0,2]) + p.u[0,1]"));

    auto by_form = hamilton_form_equations(hamilton_cartan_form(H, prob.chart), prob.chart);
    CHECK(by_form.size() == 8);
    for (const auto& e : eqs.equations) {
        bool matched = false;
        for (const auto& f : by_form.equations)
            if (equal(e.residual, f.residual) == Verdict::ProvenEqual ||
                equal(e.residual, -f.residual) == Verdict::ProvenEqual)
                matched = true;
        CHECK_MESSAGE(matched, e.name);
    }
}

TEST_CASE("trivial Hamiltonian in one dimension") {
    const JetChart c({"x"}, {"u"}, 2);
    auto H = parse("p.u[1]*u[1]", c, {});
    auto eqs = hamilton_ddw_equations(H, c);
    CHECK(find(eqs, "field[u[1]]").str() == "-u[1] + D.x(u)");
    CHECK(find(eqs, "balance[u]").str() == "D.x(p.u[1])");
}

TEST_CASE("plate HDW equations reduce to the biharmonic equation") {
    auto prob = fixture::plate();
    const JetChart c4 = prob.chart.with_order(4);
    auto eqs = hamilton_ddw_equations(ham_function_regular(prob, plate_upsilon(prob)), prob.chart);
    // Holonomic closure: u_i are derivatives of u, momenta solve the jet and momentum groups.
    std::map<Symbol, Expr> image;
    for (const Symbol& z : prob.chart.jet_symbols(1)) image[z] = Expr(z);
    for (const Symbol& uI : prob.chart.jet_symbols_of_order(2))
        image[prob.chart.momentum(0, uI.index())] = diff(prob.L, uI);
    for (std::size_t i = 0; i < 2; ++i) {
        Expr r = find(eqs, "momentum[" + prob.chart.momentum1(0, i).label() + "]");
        Substitution sub;
        for (const Symbol& s : symbols(r))
            if (s.kind() == SymbolKind::Deriv) sub.emplace(s, total_derivative(image.at(s.inner()), s.dir(), c4, 4));
        Expr rest = normal_form(substitute(r, sub));
        const Symbol p = prob.chart.momentum1(0, i);
        image[p] = normal_form(Expr(p) - rest);
    }
    Expr bal = find(eqs, "balance[u]");
    Substitution sub;
    for (const Symbol& s : symbols(bal))
        if (s.kind() == SymbolKind::Deriv) sub.emplace(s, total_derivative(image.at(s.inner()), s.dir(), c4, 4));
    Expr reduced = normal_form(substitute(bal, sub));
    check_equal(reduced, -euler_lagrange(prob).equations[0].residual);
}

TEST_CASE("KdV image submanifold") {
    auto prob = fixture::kdv();
    auto Pk = image_submanifold(prob);
    REQUIRE(Pk.constraints.size() == 3);
    check_equal(Pk.constraints[0], P(prob, "p.u[0,1] - 1/2*u[1,0]"));
    check_equal(Pk.constraints[1], P(prob, "p.u[1,1]"));
    check_equal(Pk.constraints[2], P(prob, "p.u[0,2]"));
    CHECK(Pk.dimension() == 7);
    check_equal(Pk.embedding.at(prob.chart.momentum(0, {0, 1})), P(prob, "1/2*u[1,0]"));
    CHECK(Pk.embedding.at(prob.chart.momentum(0, {1, 1})).is_zero());

    auto leg = restricted_legendre(prob);
    Substitution sub(leg.restricted.begin(), leg.restricted.end());
    for (const auto& c : Pk.constraints) CHECK(normal_form(substitute(c, sub)).is_zero());

    std::mt19937_64 rng(5);
    for (int i = 0; i < 5; ++i)
        CHECK(legendre_jacobian_rank(leg, prob.chart, sample_point(prob, rng)) == static_cast<int>(Pk.dimension()));
}

TEST_CASE("image submanifold of the other fixtures") {
    auto plate = image_submanifold(fixture::plate());
    CHECK(plate.constraints.empty());
    CHECK(plate.dimension() == 10);

    auto prob = fixture::firstorder();
    auto Pf = image_submanifold(prob);
    REQUIRE(Pf.constraints.size() == 5);
    check_equal(Pf.embedding.at(prob.chart.momentum1(0, 0)), P(prob, "-u[1,0]"));
    for (const auto& I : enumerate(2, 2)) CHECK(Pf.embedding.at(prob.chart.momentum(0, I)).is_zero());
    CHECK(Pf.dimension() == 5);
}

TEST_CASE("non-affine Legendre images are rejected") {
    const JetChart c({"x"}, {"u"}, 2);
    LagrangianProblem prob(c, parse("u[2]^3", c, {}), {});
    CHECK_THROWS_AS((void)image_submanifold(prob), PreconditionError);
}

TEST_CASE("KdV Hamiltonian and equations on P") {
    auto prob = fixture::kdv();
    auto Pk = image_submanifold(prob);
    auto H = ham_function_almost_regular(prob, Pk, kdv_sigma(prob));
    check_equal(H, P(prob, "p.u[1,0]*u[1,0] + u[1,0]^3 - 1/2*p.u[2,0]^2"));

    Form th = hamilton_cartan_form(H, prob.chart, &Pk);
    const JetChart& c = prob.chart;
    const Symbol x = c.base(0), t = c.base(1), u = c.field(0), u1 = c.jet1(0, 0);
    check_equal(th.coefficient({x, t}), P(prob, "1/2*p.u[2,0]^2 - p.u[1,0]*u[1,0] - u[1,0]^3"));
    check_equal(th.coefficient({u, t}), P(prob, "p.u[1,0]"));
    check_equal(th.coefficient({u, x}), P(prob, "-1/2*u[1,0]"));
    check_equal(th.coefficient({u1, t}), P(prob, "p.u[2,0]"));

    auto eqs = hamilton_form_equations(th, c);
    REQUIRE(eqs.size() == 4);
    check_equal(find(eqs, "d/dp.u[1,0]"), P(prob, "u[1,0] - D.x(u)"));
    check_equal(find(eqs, "d/du"), P(prob, "D.x(p.u[1,0]) + 1/2*D.t(u[1,0])"));
    check_equal(find(eqs, "d/dp.u[2,0]"), P(prob, "-D.x(u[1,0]) - p.u[2,0]"));
    check_equal(find(eqs, "d/du[1,0]"), P(prob, "p.u[1,0] + 3*u[1,0]^2 - 1/2*D.t(u) + D.x(p.u[2,0])"));
}

TEST_CASE("first-order Hamiltonian on P") {
    auto prob = fixture::firstorder();
    auto Pf = image_submanifold(prob);
    LegendreSection s;
    const JetChart c3 = prob.chart.with_order(3);
    for (const Symbol& z : c3.jet_symbols_of_order(2)) s.images[z] = Expr(0);
    for (const Symbol& z : c3.jet_symbols_of_order(3)) s.images[z] = Expr(0);
    auto H = ham_function_almost_regular(prob, Pf, s);
    // p^i u_i - L with p^i = dL/du_i on P.
    check_equal(H, P(prob, "-1/2*u[1,0]^2 + 1/2*u[0,1]^2 + 1/2*k*u^2"));
}

TEST_CASE("Legendre pullback of Theta_h is Theta_L") {
    auto prob = fixture::plate();
    auto H = ham_function_regular(prob, plate_upsilon(prob));
    Form pulled = legendre_pullback(hamilton_cartan_form(H, prob.chart), prob);
    CHECK(forms_equal(pulled, poincare_cartan(prob)));
}

TEST_CASE("multisymplectic and degenerate forms") {
    auto prob = fixture::plate();
    std::mt19937_64 rng(99);
    auto H = ham_function_regular(prob, plate_upsilon(prob));
    Form omega_h = -exterior_d(hamilton_cartan_form(H, prob.chart));
    Form omega_L = -exterior_d(poincare_cartan(prob));
    Form omega_1 = -exterior_d(liouville_form(prob.chart));
    auto Mh = contraction_matrix(omega_h);
    auto ML = contraction_matrix(omega_L);
    auto M1 = contraction_matrix(omega_1);
    std::vector<Symbol> syms = omega_1.coords()->coords();
    for (const Symbol& s : prob.chart.with_order(3).jet_symbols()) syms.push_back(s);
    syms.push_back(Symbol::param("q"));
    for (int i = 0; i < 5; ++i) {
        auto pt = random_point(syms, rng);
        CHECK(numeric_rank(Mh, pt) == 10);
        CHECK(numeric_rank(M1, pt) == 11);
        CHECK(numeric_rank(ML, pt) < 12);
    }
}
