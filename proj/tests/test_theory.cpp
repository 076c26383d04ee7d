#include "doctest.h"

#include "fixtures.hpp"
#include "sofft/error.hpp"
#include "sofft/numcheck.hpp"
#include "sofft/theory.hpp"

using namespace sofft;

namespace {

void check_equal(const Expr& a, const Expr& b) {
    INFO(a.str(), " vs ", b.str());
    CHECK(equal(a, b) == Verdict::ProvenEqual);
}

std::string image(const LegendreMap& m, const Symbol& s) { return m.restricted.at(s).str(); }

} // namespace

TEST_CASE("Hessian of the fixtures") {
    auto H = hessian(fixture::plate());
    REQUIRE(H.size() == 3);
    CHECK(H[0][0].str() == "1");
    CHECK(H[1][1].str() == "2");
    CHECK(H[2][2].str() == "1");
    CHECK(H[0][1].is_zero());

    auto K = hessian(fixture::kdv());
    CHECK(K[0][0].str() == "-1");
    CHECK(K[1][1].is_zero());
    CHECK(K[2][2].is_zero());

    const JetChart c({"x", "y"}, {"u"}, 2);
    auto Z = hessian(LagrangianProblem(c, parse("q*u", c, {"q"}), {"q"}));
    for (const auto& row : Z)
        for (const auto& e : row) CHECK(e.is_zero());
}

TEST_CASE("determinant by cofactors") {
    const JetChart c({"x"}, {"u"}, 2);
    auto a = parse("u", c, {});
    ExprMatrix m{{a, Expr(2)}, {Expr(3), a}};
    CHECK(determinant(m).str() == "u^2 - 6");
    CHECK(determinant({}).str() == "1");
}

TEST_CASE("regularity verdicts") {
    auto p = classify_regularity(fixture::plate());
    CHECK(p.regular);
    CHECK(p.exhaustive);
    CHECK(p.determinant.str() == "2");
    CHECK(p.str() == "regular");

    auto k = classify_regularity(fixture::kdv());
    CHECK_FALSE(k.regular);
    CHECK(k.rank == 1);
    CHECK(k.str() == "singular, Hessian rank 1");

    auto f = classify_regularity(fixture::firstorder());
    CHECK_FALSE(f.regular);
    CHECK(f.rank == 0);
}

TEST_CASE("regularity by sampling is flagged non-exhaustive") {
    const JetChart c({"x"}, {"u"}, 2);
    LagrangianProblem prob(c, parse("exp(u)*u[2]^2", c, {}), {});
    auto v = classify_regularity(prob);
    CHECK(v.regular);
    CHECK_FALSE(v.exhaustive);
}

TEST_CASE("plate restricted Legendre map") {
    auto prob = fixture::plate();
    auto leg = restricted_legendre(prob);
    const JetChart& c = prob.chart;
    REQUIRE(leg.restricted.size() == 5);
    CHECK(image(leg, c.momentum1(0, 0)) == "-u[1,2] - u[3,0]");
    CHECK(image(leg, c.momentum1(0, 1)) == "-u[0,3] - u[2,1]");
    CHECK(image(leg, c.momentum(0, {2, 0})) == "u[2,0]");
    CHECK(image(leg, c.momentum(0, {1, 1})) == "2*u[1,1]");
    CHECK(image(leg, c.momentum(0, {0, 2})) == "u[0,2]");
    check_equal(leg.restricted.at(c.momentum1(0, 0)), prob.parse("-u[3,0] - u[1,2]"));
    CHECK_FALSE(leg.extended_p.has_value());
}

TEST_CASE("KdV Legendre maps") {
    auto prob = fixture::kdv();
    auto leg = extended_legendre(prob);
    const JetChart& c = prob.chart;
    CHECK(image(leg, c.momentum1(0, 0)) == "1/2*u[0,1] - 3*u[1,0]^2 + u[3,0]");
    CHECK(image(leg, c.momentum1(0, 1)) == "1/2*u[1,0]");
    CHECK(image(leg, c.momentum(0, {2, 0})) == "-u[2,0]");
    CHECK(image(leg, c.momentum(0, {1, 1})) == "0");
    CHECK(image(leg, c.momentum(0, {0, 2})) == "0");
    REQUIRE(leg.extended_p.has_value());
    check_equal(*leg.extended_p, prob.parse("-1/2*u[1,0]*u[0,1] + 2*u[1,0]^3 - u[3,0]*u[1,0] + 1/2*u[2,0]^2"));

    auto restricted = restricted_legendre(prob);
    for (const auto& [s, e] : restricted.restricted) CHECK(e.identical(leg.restricted.at(s)));
}

TEST_CASE("first-order Lagrangian Legendre map") {
    auto prob = fixture::firstorder();
    auto leg = extended_legendre(prob);
    const JetChart& c = prob.chart;
    check_equal(leg.restricted.at(c.momentum1(0, 0)), prob.parse("-u[1,0]"));
    check_equal(leg.restricted.at(c.momentum1(0, 1)), prob.parse("u[0,1]"));
    for (const auto& I : enumerate(2, 2)) CHECK(leg.restricted.at(c.momentum(0, I)).is_zero());
    Expr L = prob.L;
    Expr expected = L - prob.parse("u[1,0]") * diff(L, c.jet1(0, 0)) - prob.parse("u[0,1]") * diff(L, c.jet1(0, 1));
    check_equal(*leg.extended_p, expected);
}

TEST_CASE("zero Lagrangian has zero Legendre images") {
    const JetChart c({"x", "y"}, {"u"}, 2);
    auto leg = extended_legendre(LagrangianProblem(c, Expr(0), {}));
    for (const auto& [s, e] : leg.restricted) CHECK(e.is_zero());
    CHECK(leg.extended_p->is_zero());
}

TEST_CASE("Legendre Jacobian ranks") {
    std::mt19937_64 rng(11);
    for (auto [prob, expected] : {std::pair{fixture::plate(), 10}, std::pair{fixture::kdv(), 7}}) {
        auto restricted = restricted_legendre(prob);
        auto extended = extended_legendre(prob);
        CHECK(legendre_jacobian(restricted, prob.chart).size() == 10);
        CHECK(legendre_jacobian(restricted, prob.chart)[0].size() == 12);
        for (int i = 0; i < 5; ++i) {
            auto pt = sample_point(prob, rng);
            CHECK(legendre_jacobian_rank(restricted, prob.chart, pt) == expected);
            CHECK(legendre_jacobian_rank(extended, prob.chart, pt) == expected);
        }
    }
    auto prob = fixture::plate();
    CHECK_THROWS_AS((void)legendre_jacobian_rank(restricted_legendre(prob), prob.chart, Bindings{}), EvalError);
}

TEST_CASE("Euler-Lagrange equations") {
    auto plate = euler_lagrange(fixture::plate());
    REQUIRE(plate.size() == 1);
    CHECK(plate.equations[0].residual.str() == "u[0,4] + 2*u[2,2] + u[4,0] - q");

    auto kdv = euler_lagrange(fixture::kdv());
    CHECK(kdv.equations[0].residual.str() == "u[1,1] - 6*u[1,0]*u[2,0] + u[4,0]");

    auto prob = fixture::firstorder();
    auto fo = euler_lagrange(prob);
    check_equal(fo.equations[0].residual, prob.parse("u[2,0] - u[0,2] - k*u", 4));
}

TEST_CASE("sign canonicalization keys on the highest jet") {
    const JetChart c({"x"}, {"u"}, 4);
    CHECK(canonical_sign(parse("-u[4] + u^2", c, {})).str() == "-u^2 + u[4]");
    CHECK(canonical_sign(parse("-3", c, {})).str() == "3");
    CHECK(canonical_sign(Expr(0)).is_zero());
}

TEST_CASE("Hamiltonian on W_r and pairing") {
    auto prob = fixture::kdv();
    auto H = hamiltonian_hat(prob);
    check_equal(H, prob.parse("p.u[1,0]*u[1,0] + p.u[0,1]*u[0,1] + p.u[2,0]*u[2,0] + p.u[1,1]*u[1,1]"
                              " + p.u[0,2]*u[0,2] - 1/2*u[1,0]*u[0,1] + u[1,0]^3 + 1/2*u[2,0]^2"));
    auto C = pairing_cs(prob.chart);
    check_equal(C, prob.parse("p0 + p.u[1,0]*u[1,0] + p.u[0,1]*u[0,1] + p.u[2,0]*u[2,0] + p.u[1,1]*u[1,1]"
                              " + p.u[0,2]*u[0,2]"));
    // C - L = 0 solved for p gives -H.
    Substitution none;
    Expr p_from_C = normal_form(Expr(Symbol::ext_momentum()) - (C - prob.L));
    check_equal(p_from_C, -H);

    const JetChart line({"x"}, {"u"}, 2);
    check_equal(pairing_cs(line), parse("p0 + p.u[1]*u[1] + p.u[2]*u[2]", line, {}));
}

TEST_CASE("C on the symmetric embedding is C^s") {
    for (const JetChart& c : {JetChart({"x", "y"}, {"u"}, 2), JetChart({"x", "y", "z"}, {"u", "v"}, 2)})
        check_equal(pairing_c(c, symmetric_embedding(c)), pairing_cs(c));

    const JetChart c({"x", "y"}, {"u"}, 2);
    Multimomenta pij = symmetric_embedding(c);
    CHECK(pij[0][0][1].str() == "1/2*p.u[1,1]");
    pij[0][0][1] = Expr(1);
    pij[0][1][0] = Expr(0);
    check_equal(pairing_c(c, pij), parse("p0 + p.u[1,0]*u[1,0] + p.u[0,1]*u[0,1] + p.u[2,0]*u[2,0] + u[1,1]"
                                         " + p.u[0,2]*u[0,2]", c, {}));
    CHECK_THROWS_AS((void)pairing_c(c, {}), PreconditionError);
}

TEST_CASE("extended_p is minus H at the Legendre images") {
    for (auto prob : {fixture::plate(), fixture::kdv(), fixture::firstorder()}) {
        auto leg = extended_legendre(prob);
        Substitution sub(leg.restricted.begin(), leg.restricted.end());
        check_equal(substitute(hamiltonian_hat(prob), sub), -*leg.extended_p);
    }
}

TEST_CASE("Poincare-Cartan forms") {
    auto prob = fixture::plate();
    Form theta = poincare_cartan(prob);
    const JetChart c3 = prob.chart.with_order(3);
    const Symbol x = c3.base(0), y = c3.base(1), u = c3.field(0);
    const Symbol u1 = c3.jet1(0, 0), u2 = c3.jet1(0, 1);
    check_equal(theta.coefficient({u, y}), prob.parse("-u[3,0] - u[1,2]"));
    check_equal(theta.coefficient({u, x}), prob.parse("u[2,1] + u[0,3]"));
    check_equal(theta.coefficient({u1, y}), prob.parse("u[2,0]"));
    check_equal(theta.coefficient({u1, x}), prob.parse("-u[1,1]"));
    check_equal(theta.coefficient({u2, y}), prob.parse("u[1,1]"));
    check_equal(theta.coefficient({u2, x}), prob.parse("-u[0,2]"));
    check_equal(theta.coefficient({x, y}),
                prob.parse("-1/2*u[2,0]^2 - u[1,1]^2 - 1/2*u[0,2]^2 - q*u + u[3,0]*u[1,0] + u[1,2]*u[1,0]"
                           " + u[2,1]*u[0,1] + u[0,3]*u[0,1]"));

    auto kdv = fixture::kdv();
    Form tk = poincare_cartan(kdv);
    const JetChart k3 = kdv.chart.with_order(3);
    check_equal(tk.coefficient({k3.field(0), k3.base(1)}), kdv.parse("1/2*u[0,1] - 3*u[1,0]^2 + u[3,0]"));
    check_equal(tk.coefficient({k3.field(0), k3.base(0)}), kdv.parse("-1/2*u[1,0]"));
    check_equal(tk.coefficient({k3.jet1(0, 0), k3.base(1)}), kdv.parse("-u[2,0]"));
    check_equal(tk.coefficient({k3.base(0), k3.base(1)}), *extended_legendre(kdv).extended_p);

    for (auto p : {fixture::plate(), fixture::kdv(), fixture::firstorder()})
        CHECK(forms_equal(poincare_cartan(p), poincare_cartan_closed(p)));

    const JetChart c({"x", "y"}, {"u"}, 2);
    CHECK(poincare_cartan(LagrangianProblem(c, Expr(0), {})).is_zero());
}

TEST_CASE("unified forms") {
    for (auto prob : {fixture::plate(), fixture::kdv()}) {
        auto uf = unified_forms(prob);
        CHECK((uf.omega_r + exterior_d(uf.theta_r)).is_zero());
        CHECK(uf.theta_r.degree() == 2);
        CHECK(uf.omega_r.degree() == 3);
        const Coords& wr = uf.omega_r.coords();
        Form vol = Form::volume(wr);
        for (const Symbol& uI : prob.chart.jet_symbols_of_order(2)) {
            auto pI = prob.chart.momentum(0, uI.index());
            Form lhs = interior(VectorField::coordinate(uI), uf.omega_r);
            Form rhs = vol.scaled(Expr(pI) - diff(prob.L, uI));
            CHECK(forms_equal(lhs, rhs));
        }
        for (const Symbol& uJ : prob.chart.with_order(3).jet_symbols_of_order(3))
            CHECK(interior(VectorField::coordinate(uJ), uf.omega_r).is_zero());
    }
}

TEST_CASE("Theta_1^s on the multimomentum bundle") {
    const JetChart c({"x", "y"}, {"u"}, 2);
    Form t = liouville_form(c);
    CHECK(t.coords()->size() == 11);
    CHECK(t.coefficient({c.base(0), c.base(1)}).str() == "p0");
    CHECK(t.coefficient({c.jet1(0, 0), c.base(0)}).str() == "-1/2*p.u[1,1]");
}

TEST_CASE("Lagrangian validation") {
    const JetChart c({"x", "y"}, {"u"}, 3);
    CHECK_THROWS_AS(LagrangianProblem(c, parse("u[3,0]", c, {}), {}), PreconditionError);
    CHECK_THROWS_AS(LagrangianProblem(c, parse("p.u[1,0]", c, {}), {}), PreconditionError);
}
