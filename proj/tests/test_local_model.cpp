#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gfc/model.hpp"
#include "model_fixtures.hpp"

using namespace gfc;

TEST_CASE("minimal flat line") {
    ModelSpec spec = load_model(R"(
[context]
base = ["x"]
truncation = {y_order = 4}
)");
    CHECK(spec.base.size() == 1);
    Model m = validate(spec);
    CHECK(m.dim() == 1);
    CHECK(m.flat());
    CHECK_FALSE(m.has_q());
    CHECK(m.ctxN().size() == 3);
    CHECK(m.ctxN().degree(m.xi_index(0)) == 1);
    CHECK(m.ctxN().degree(m.y_index(0)) == 0);
}

TEST_CASE("de Rham line validates with [Q,Q] = 0") {
    Model m = validate(load_model(fixtures::derham_line));
    CHECK(m.has_q());
    CHECK(m.q_on_m().degree() == 1);
    int th = 1;
    CHECK(m.ctxN().degree(m.xi_index(th)) == 2);
    CHECK(m.ctxN().degree(m.y_index(th)) == 1);
}

TEST_CASE("Gamma degree mismatch is rejected") {
    CHECK_THROWS_AS(validate(load_model(R"(
[context]
base = ["x"]
graded = [{name = "theta", degree = 1}]

[connection]
"Gamma.theta.theta.theta" = "x"
)")),
                    DegreeError);
}

TEST_CASE("torsion violation is rejected") {
    CHECK_THROWS_AS(validate(load_model(R"(
[context]
base = ["x1", "x2"]

[connection]
"Gamma.x1.x2.x1" = "1"
"Gamma.x2.x1.x1" = "-1"
)")),
                    TorsionError);
}

TEST_CASE("non-square-zero Q is rejected") {
    // Q = theta d/dx + z d/dtheta has degree one but [Q,Q](x) = 2z != 0.
    CHECK_THROWS_AS(validate(load_model(R"(
[context]
base = ["x"]
graded = [{name = "theta", degree = 1}, {name = "z", degree = 2}]

[q]
"x" = "theta"
"theta" = "z"
)")),
                    NotHomological);
}

TEST_CASE("unknown coordinate in connection") {
    CHECK_THROWS(validate(load_model(R"(
[context]
base = ["x"]

[connection]
"Gamma.x.x.w" = "x"
)")));
}

TEST_CASE("parse error carries a location") {
    try {
        load_model("[context]\nbase = [\"x\"\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
}

TEST_CASE("connection derivations: flat case is d/dx") {
    Model m = validate(load_model(fixtures::flat_r2));
    for (int k = 0; k < 2; ++k) {
        Derivation d = m.connection_derivation(k);
        CHECK(d.terms().size() == 1);
        CHECK(d.coeff(m.x_index(k)) == Elem::scalar(m.ctxN(), 1));
    }
}

TEST_CASE("connection derivations: curved line") {
    Model m = validate(load_model(fixtures::curved_r1));
    Derivation d = m.connection_derivation(0);
    // nabla_{d/dx}(y) = -x*y on an even coordinate
    Elem y = Elem::generator(m.ctxN(), m.y_index(0));
    CHECK(d.apply(y) == parse_elem(m.ctxN(), "-x*y_x"));
    // nabla_{d/dx}(f(x)) = df/dx
    CHECK(d.apply(parse_elem(m.ctxN(), "x^3")) == parse_elem(m.ctxN(), "3*x^2"));
}

TEST_CASE("connection derivations satisfy Leibniz") {
    Model m = validate(load_model(fixtures::curved_r1));
    const Context& ctx = m.ctxN();
    Derivation d = m.connection_derivation(0);
    Elem a = parse_elem(ctx, "x*y_x^2");
    Elem b = parse_elem(ctx, "y_x + x^2");
    CHECK(d.apply(Elem::mul(a, b)) == Elem::mul(d.apply(a), b) + Elem::mul(a, d.apply(b)));
}

TEST_CASE("validate is deterministic") {
    ModelSpec spec = load_model(fixtures::derham_line);
    Model m1 = validate(spec);
    Model m2 = validate(spec);
    CHECK(m1.dim() == m2.dim());
    CHECK(m1.hash() == m2.hash());
    CHECK(m1.q_on_m().str() == m2.q_on_m().str());
}
