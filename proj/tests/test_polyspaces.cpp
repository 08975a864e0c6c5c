#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gfc/sample.hpp"
#include "model_fixtures.hpp"

using namespace gfc;

namespace {

const char* kModels[] = {fixtures::flat_r2, fixtures::curved_r1, fixtures::odd_line,
                         fixtures::derham_line};

struct SideFixture {
    Model m;
    PolySide side;
    SideFixture(const char* text, bool fed) : m(validate(load_model(text))), side(m, fed) {}
};

} // namespace

TEST_CASE("wedge: unit, odd legs square to zero, sign rule") {
    for (const char* text : kModels) {
        for (bool fed : {false, true}) {
            SideFixture f(text, fed);
            Sampler s(11);
            for (int i = 0; i < 10; ++i) {
                Elem u = s.chain(f.side, s.pick(0, 2), true);
                Elem one = Elem::scalar(f.side.ctx(), 1);
                CHECK(f.side.wedge(u, one) == u);
                Elem a = s.chain(f.side, 1, true), b = s.chain(f.side, 1, true);
                if (a.is_zero() || b.is_zero()) continue;
                int da = a.degree_or_throw(), db = b.degree_or_throw();
                Elem lhs = f.side.wedge(a, b);
                Elem rhs = f.side.wedge(b, a);
                CHECK(lhs == ((da & 1) && (db & 1) ? -rhs : rhs));
                if (da & 1) CHECK(f.side.wedge(a, a).is_zero());
            }
        }
    }
}

TEST_CASE("schouten: anchor on functions and vector fields") {
    for (const char* text : kModels) {
        SideFixture f(text, false);
        Sampler s(21);
        for (int i = 0; i < 12; ++i) {
            Elem X = s.chain(f.side, 1, true);
            Elem g = s.chain(f.side, 0, true);
            // [X, f] = X(f)
            CHECK(f.side.schouten(X, g) == f.side.field_of(X).apply(g));
            // p = q = 1 reduces to the commutator of derivations
            Elem Y = s.chain(f.side, 1, true);
            Derivation cm = Derivation::commutator(f.side.field_of(X), f.side.field_of(Y));
            CHECK(f.side.schouten(X, Y) == f.side.chain_of_field(cm));
        }
    }
}

TEST_CASE("schouten: graded Jacobi and Gerstenhaber compatibility") {
    for (const char* text : kModels) {
        for (bool fed : {false, true}) {
            SideFixture f(text, fed);
            Sampler s(31);
            for (int i = 0; i < 10; ++i) {
                Elem X = s.chain(f.side, s.pick(0, 2), true);
                Elem Y = s.chain(f.side, s.pick(0, 2), true);
                Elem Z = s.chain(f.side, s.pick(0, 2), true);
                if (X.is_zero() || Y.is_zero() || Z.is_zero()) continue;
                int dx = X.degree_or_throw() - 1, dy = Y.degree_or_throw() - 1,
                    dz = Z.degree_or_throw() - 1;
                // [X,[Y,Z]] = [[X,Y],Z] + (-1)^{(|X|-1)(|Y|-1)} [Y,[X,Z]]
                Elem lhs = f.side.schouten(X, f.side.schouten(Y, Z));
                Elem r1 = f.side.schouten(f.side.schouten(X, Y), Z);
                Elem r2 = f.side.schouten(Y, f.side.schouten(X, Z));
                Elem rhs = r1 + ((dx & 1) && (dy & 1) ? -r2 : r2);
                CHECK((lhs - rhs).is_zero());
                // graded antisymmetry: [X,Y] = -(-1)^{(|X|-1)(|Y|-1)} [Y,X]
                Elem anti = f.side.schouten(Y, X);
                CHECK(f.side.schouten(X, Y) == ((dx & 1) && (dy & 1) ? anti : -anti));
                // compatibility: [X, Y ^ Z] = [X,Y] ^ Z + (-1)^{(|X|-1)|Y|} Y ^ [X,Z]
                Elem c1 = f.side.schouten(X, f.side.wedge(Y, Z));
                Elem c2 = f.side.wedge(f.side.schouten(X, Y), Z);
                Elem c3 = f.side.wedge(Y, f.side.schouten(X, Z));
                Elem crhs = c2 + ((dx & 1) && ((dy + 1) & 1) ? -c3 : c3);
                CHECK((c1 - crhs).is_zero());
            }
        }
    }
}

TEST_CASE("d: generator values and d^2 = 0") {
    SideFixture base(fixtures::derham_line, false);
    Derivation d = base.side.cartan_d();
    CHECK(d.apply(Elem::generator(base.side.ctx(), 0)) ==
          Elem::generator(base.side.ctx(), base.side.aleg(0)));
    SideFixture fed(fixtures::derham_line, true);
    Derivation dF = fed.side.cartan_d();
    const Context& cf = fed.side.ctx();
    CHECK(dF.apply(Elem::generator(cf, cf.find_or_throw("y_x"))) ==
          Elem::generator(cf, fed.side.aleg(0)));
    // d kills xi and x on the Fedosov side (legs are dy only)
    CHECK(dF.apply(Elem::generator(cf, cf.find_or_throw("xi_x"))).is_zero());
    CHECK(dF.apply(Elem::generator(cf, 0)).is_zero());
    Sampler s(41);
    for (int i = 0; i < 10; ++i) {
        Elem w = s.chain(fed.side, s.pick(0, 2), false);
        CHECK(dF.apply(dF.apply(w)).is_zero());
        Elem v = s.chain(base.side, s.pick(0, 2), false);
        CHECK(d.apply(d.apply(v)).is_zero());
    }
}

TEST_CASE("iota: anchors") {
    for (const char* text : kModels) {
        SideFixture f(text, false);
        Sampler s(51);
        Derivation d = f.side.cartan_d();
        for (int i = 0; i < 12; ++i) {
            Elem X = s.chain(f.side, 1, true);
            Elem g = s.chain(f.side, 0, true);
            // iota_X(df) = X(f)
            CHECK(f.side.iota(X, d.apply(g)) == f.side.field_of(X).apply(g));
            // iota_{X^Y} = iota_X iota_Y on samples
            Elem Y = s.chain(f.side, 1, true);
            Elem w = s.chain(f.side, 2, false);
            Elem lhs = f.side.iota(f.side.wedge(X, Y), w);
            Elem rhs = f.side.iota(X, f.side.iota(Y, w));
            CHECK((lhs - rhs).is_zero());
            // module: iota_u iota_v = iota_{u ^ v} at mixed arities
            Elem u = s.chain(f.side, s.pick(0, 1), true);
            Elem v = s.chain(f.side, s.pick(0, 1), true);
            Elem om = s.chain(f.side, 2, false);
            CHECK((f.side.iota(f.side.wedge(u, v), om) - f.side.iota(u, f.side.iota(v, om)))
                      .is_zero());
        }
    }
}

TEST_CASE("Cartan relations brick, straw, wood") {
    for (const char* text : kModels) {
        for (bool fed : {false, true}) {
            SideFixture f(text, fed);
            Sampler s(61);
            Derivation d = f.side.cartan_d();
            for (int i = 0; i < 10; ++i) {
                Elem X = s.chain(f.side, s.pick(0, 2), true);
                Elem Y = s.chain(f.side, s.pick(0, 2), true);
                Elem w = s.chain(f.side, s.pick(0, 2), false);
                if (X.is_zero() || Y.is_zero()) continue;
                int dx = X.degree_or_throw(), dy = Y.degree_or_throw();
                // brick, second form: L_X = (-1)^{|X|-1} [d, iota_X]
                Elem lhs = f.side.lie(X, w);
                Elem t1 = d.apply(f.side.iota(X, w));
                Elem t2 = f.side.iota(X, d.apply(w));
                Elem comm = t1 - ((dx & 1) ? -t2 : t2);
                CHECK(lhs == (((dx - 1) & 1) ? -comm : comm));
                // straw: iota_{[X,Y]} = [L_X, iota_Y]
                Elem s1 = f.side.iota(f.side.schouten(X, Y), w);
                Elem s2 = f.side.lie(X, f.side.iota(Y, w));
                Elem s3 = f.side.iota(Y, f.side.lie(X, w));
                Elem srhs = s2 - (((dx - 1) & 1) && (dy & 1) ? -s3 : s3);
                CHECK((s1 - srhs).is_zero());
                // wood: L_{X^Y} = (-1)^{|Y|} L_X iota_Y + iota_X L_Y
                Elem w1 = f.side.lie(f.side.wedge(X, Y), w);
                Elem w2 = f.side.lie(X, f.side.iota(Y, w));
                Elem w3 = f.side.iota(X, f.side.lie(Y, w));
                Elem wrhs = ((dy & 1) ? -w2 : w2) + w3;
                CHECK((w1 - wrhs).is_zero());
            }
        }
    }
}

TEST_CASE("lie_field matches the schouten action of the field's chain") {
    for (const char* text : kModels) {
        for (bool fed : {false, true}) {
            SideFixture f(text, fed);
            Sampler s(71);
            for (int i = 0; i < 10; ++i) {
                Elem X = s.chain(f.side, 1, true);
                Elem u = s.chain(f.side, s.pick(0, 2), true);
                Derivation L = f.side.lie_field(f.side.field_of(X));
                CHECK((L.apply(u) - f.side.schouten(X, u)).is_zero());
            }
        }
    }
}

TEST_CASE("L_Q squares to zero and [L_D, d_F] = 0") {
    Model m = validate(load_model(fixtures::derham_line));
    PolySide base(m, false), fed(m, true);
    Derivation LQ = base.lie_field(m.q_on_m());
    Sampler s(81);
    for (int i = 0; i < 10; ++i) {
        Elem u = s.chain(base, s.pick(0, 2), s.pick(0, 1) == 1);
        CHECK(LQ.apply(LQ.apply(u)).is_zero());
    }
    FedosovData fd = build_fedosov(m);
    Derivation LD = fed.lie_field(fd.D);
    Derivation dF = fed.cartan_d();
    Derivation bracket = Derivation::commutator(LD, dF);
    for (int i = 0; i < 10; ++i) {
        Elem w = s.chain(fed, s.pick(0, 2), false);
        CHECK(window_zero(m, bracket.apply(w)));
        CHECK(window_zero(m, LD.apply(LD.apply(w))));
    }
}

TEST_CASE("trigrade bookkeeping") {
    Model m = validate(load_model(fixtures::derham_line));
    PolySide fed(m, true);
    const Context& c = fed.ctx();
    Elem e = Elem::mul(parse_elem(c, "xi_x*y_x"), Elem::generator(c, fed.tleg(1)));
    auto t = fed.trigrade(e);
    CHECK(t.r == 1);
    CHECK(t.p == 1);
    // degree = |xi_x| + |y_x| + |t_theta| = 1 + 0 + 0 = 1, q = 1 - 1 - 1 = -1
    CHECK(t.q == -1);
    // sum over (r, p) parts recovers the element
    Sampler s(91);
    for (int i = 0; i < 8; ++i) {
        Elem u = s.chain(fed, s.pick(0, 2), true);
        Elem sum(c);
        for (int r = 0; r <= 4; ++r)
            for (int p = 0; p <= 4; ++p) sum += fed.trigrade_part(u, r, p);
        CHECK(sum == u);
    }
}
