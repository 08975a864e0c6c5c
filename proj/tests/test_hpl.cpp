#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gfc/fedosov.hpp"
#include "gfc/hpl.hpp"
#include "model_fixtures.hpp"

#include <random>

using namespace gfc;

namespace {

struct Fixture {
    Model m;
    FedosovData fd;
    explicit Fixture(const char* text) : m(validate(load_model(text))) { fd = build_fedosov(m); }

    // Koszul contraction (functions level): V = C(M), W = C(N), dW = -delta.
    Contraction<Elem, Elem> koszul() const {
        Contraction<Elem, Elem> C;
        const Model* mp = &m;
        Derivation delta = fd.delta;
        C.dV = [](const Elem& v) { return Elem(v.ctx()) + v * 0; };
        C.dV = [mp](const Elem& v) { return Elem(mp->ctxN()); };
        C.dW = [delta](const Elem& w) { return -delta.apply(w); };
        C.sigma = [mp](const Elem& w) { return proj_sigma(*mp, w); };
        C.tau = [](const Elem& v) { return v; };
        C.h = [mp](const Elem& w) { return homotopy_h(*mp, w); };
        return C;
    }

    Elem random_w(std::mt19937_64& rng, int max_fiber = 2) const {
        const Context& ctx = m.ctxN();
        std::uniform_int_distribution<int> coef(-2, 2);
        std::uniform_int_distribution<int> expo(0, 2);
        Elem e(ctx);
        for (int t = 0; t < 4; ++t) {
            Mono mono;
            int fiber = 0;
            for (int g = 0; g < ctx.size(); ++g) {
                int k = expo(rng);
                if (ctx.odd(g)) k %= 2;
                if (ctx.cls(g) == GenClass::Fiber && fiber + k > max_fiber) k = 0;
                if (ctx.cls(g) == GenClass::Fiber) fiber += k;
                if (k > 0) mono.e.emplace_back(g, k);
            }
            if (int c = coef(rng)) e.add_term(mono, c);
        }
        return e;
    }

    Elem random_v(std::mt19937_64& rng) const {
        std::uniform_int_distribution<int> coef(-2, 2);
        std::uniform_int_distribution<int> expo(0, 2);
        Elem e(m.ctxN());
        for (int t = 0; t < 3; ++t) {
            Mono mono;
            for (int i = 0; i < m.dim(); ++i) {
                int k = expo(rng);
                if (m.ctxN().odd(i)) k %= 2;
                if (k > 0) mono.e.emplace_back(m.x_index(i), k);
            }
            if (int c = coef(rng)) e.add_term(mono, c);
        }
        return e;
    }
};

} // namespace

TEST_CASE("Koszul contraction passes check_contraction on all models") {
    for (const char* text : {fixtures::flat_r2, fixtures::curved_r1, fixtures::odd_line,
                             fixtures::derham_line}) {
        Fixture f(text);
        auto C = f.koszul();
        std::mt19937_64 rng(7);
        std::vector<Elem> vs, ws;
        for (int i = 0; i < 12; ++i) {
            vs.push_back(f.random_v(rng));
            ws.push_back(f.random_w(rng));
        }
        auto rep = check_contraction(C, vs, ws);
        for (const auto& s : rep.failures) { INFO(s); CHECK(false); }
        CHECK(rep.ok);
    }
}

TEST_CASE("a corrupted homotopy is detected with a witness") {
    Fixture f(fixtures::curved_r1);
    auto C = f.koszul();
    const Model* mp = &f.m;
    C.h = [mp](const Elem& w) { return homotopy_h(*mp, w) * 2; };
    std::mt19937_64 rng(11);
    std::vector<Elem> vs = {f.random_v(rng)};
    std::vector<Elem> ws = {f.random_w(rng)};
    auto rep = check_contraction(C, vs, ws);
    CHECK_FALSE(rep.ok);
    bool found = false;
    for (const auto& s : rep.failures)
        if (s.find("id - tau sigma") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("zero complex passes vacuously") {
    Fixture f(fixtures::flat_r2);
    auto C = f.koszul();
    auto rep = check_contraction(C, std::vector<Elem>{}, std::vector<Elem>{});
    CHECK(rep.ok);
}

TEST_CASE("perturbation by zero returns the same maps") {
    Fixture f(fixtures::curved_r1);
    auto C = f.koszul();
    const Context* ctx = &f.m.ctxN();
    auto P = perturb<Elem, Elem>(C, [ctx](const Elem&) { return Elem(*ctx); });
    std::mt19937_64 rng(23);
    for (int i = 0; i < 10; ++i) {
        Elem w = f.random_w(rng);
        Elem v = f.random_v(rng);
        CHECK(P.h(w) == C.h(w));
        CHECK(P.sigma(w) == C.sigma(w));
        CHECK(P.tau(v) == C.tau(v));
        CHECK(P.dV(v) == C.dV(v));
        CHECK(P.dW(w) == C.dW(w));
    }
}

TEST_CASE("perturbing the Koszul contraction by L_{dnabla + A} gives the Fedosov one") {
    for (const char* text : {fixtures::curved_r1, fixtures::derham_line}) {
        Fixture f(text);
        auto C = f.koszul();
        Derivation rho_der = f.fd.dnabla + f.fd.A;
        auto P = perturb<Elem, Elem>(C, [rho_der](const Elem& w) { return rho_der.apply(w); });
        std::mt19937_64 rng(5);
        // dW' = L_D
        for (int i = 0; i < 8; ++i) {
            Elem w = f.random_w(rng);
            CHECK(P.dW(w) == f.fd.D.apply(w));
        }
        // perturbed contraction passes the relations inside the window
        std::vector<Elem> vs, ws;
        for (int i = 0; i < 8; ++i) {
            vs.push_back(f.random_v(rng));
            ws.push_back(f.random_w(rng));
        }
        int qwin = f.m.y_order();
        for (const Elem& v : vs) {
            CHECK((P.sigma(P.tau(v)) - v).is_zero());
            CHECK(P.h(P.tau(v)).fiber_window(qwin).is_zero());
            CHECK(P.dW(P.tau(v)).fiber_window(qwin).is_zero()); // dV' = 0
        }
        for (const Elem& w : ws) {
            Elem homo = w - P.tau(P.sigma(w)) - P.h(P.dW(w)) - P.dW(P.h(w));
            CHECK(homo.fiber_window(qwin).is_zero());
            CHECK(P.sigma(P.h(w)).is_zero());
            CHECK(P.h(P.h(w)).fiber_window(qwin).is_zero());
        }
        // tau' of the Taylor kind: sigma unchanged by the proposition
        for (int i = 0; i < 5; ++i) {
            Elem w = f.random_w(rng);
            CHECK(P.sigma(w) == C.sigma(w));
        }
    }
}

TEST_CASE("Taylor expansion on the flat line") {
    Fixture f(fixtures::flat_r2);
    auto C = f.koszul();
    Derivation rho_der = f.fd.dnabla + f.fd.A;
    auto P = perturb<Elem, Elem>(C, [rho_der](const Elem& w) { return rho_der.apply(w); });
    const Context& ctx = f.m.ctxN();
    // tau'(x1^2) = x1^2 + 2 x1 y1 + y1^2
    Elem got = P.tau(parse_elem(ctx, "x1^2"));
    CHECK(got == parse_elem(ctx, "x1^2 + 2*x1*y_x1 + y_x1^2"));
}

TEST_CASE("fixed point characterization of the series") {
    Fixture f(fixtures::curved_r1);
    Derivation rho_der = f.fd.dnabla + f.fd.A;
    const Model* mp = &f.m;
    std::function<Elem(const Elem&)> rho = [rho_der](const Elem& w) { return -rho_der.apply(w); };
    std::function<Elem(const Elem&)> h = [mp](const Elem& w) { return homotopy_h(*mp, w); };
    std::mt19937_64 rng(13);
    for (int i = 0; i < 10; ++i) {
        Elem w = f.random_w(rng);
        Elem breve = perturbation_series<Elem>(rho, h, w);
        Elem fix = rho(w + h(breve));
        CHECK((breve - fix).fiber_window(f.m.y_order()).is_zero());
    }
}

TEST_CASE("non-terminating series raises") {
    Fixture f(fixtures::flat_r2);
    const Context& ctx = f.m.ctxN();
    // rho = multiplication by 1 never drops any filtration
    std::function<Elem(const Elem&)> rho = [](const Elem& w) { return w; };
    std::function<Elem(const Elem&)> h = [](const Elem& w) { return w; };
    Elem w = parse_elem(ctx, "x1");
    CHECK_THROWS_AS(perturbation_series<Elem>(rho, h, w), NonTerminatingSeries);
}

TEST_CASE("bicomplex specialization agrees with the generic engine") {
    // Columns = form degree: h lowers them, tau lands in column zero, and the
    // lifted vector field theta d/dx preserves them, so the bicomplex lemma
    // applies and the induced differential on functions is Q itself.
    Fixture f(fixtures::derham_line);
    auto C = f.koszul();
    Derivation V = parse_derivation(f.m.ctxN(), "theta*d/dx");
    std::function<Elem(const Elem&)> rho_add = [V](const Elem& w) { return V.apply(w); };
    auto P = perturb<Elem, Elem>(C, rho_add);
    auto B = perturb_bicomplex<Elem, Elem>(C, rho_add);
    std::mt19937_64 rng(31);
    std::vector<Elem> vs, ws;
    for (int i = 0; i < 8; ++i) {
        Elem w = f.random_w(rng);
        Elem v = f.random_v(rng);
        vs.push_back(v);
        ws.push_back(w);
        CHECK(B.h(w) == P.h(w));
        CHECK(B.sigma(w) == P.sigma(w));
        CHECK(B.dW(w) == P.dW(w));
        CHECK(B.tau(v) == P.tau(v));
        CHECK(B.tau(v) == C.tau(v));
        CHECK(B.dV(v) == P.dV(v));
        CHECK(B.dV(v) == V.apply(v)); // d_V' = L_Q on the base
    }
    auto rep = check_contraction(B, vs, ws);
    for (const auto& s : rep.failures) { INFO(s); CHECK(false); }
    CHECK(rep.ok);
}
