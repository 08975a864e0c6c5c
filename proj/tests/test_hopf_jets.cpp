#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gfc/cpoly.hpp"
#include "gfc/sample.hpp"
#include "model_fixtures.hpp"

using namespace gfc;

namespace {

const char* kModels[] = {fixtures::flat_r2, fixtures::curved_r1, fixtures::odd_line,
                         fixtures::derham_line};

Elem keep_homogeneous(const Context& c, const Elem& e) {
    std::map<int, Elem> parts;
    for (const auto& [m, cc] : e.terms()) {
        auto it = parts.find(mono_degree(c, m));
        if (it == parts.end()) parts.emplace(mono_degree(c, m), Elem::monomial(c, m, cc));
        else it->second.add_term(m, cc);
    }
    Elem best(c);
    size_t n = 0;
    for (auto& [d, p] : parts)
        if (p.term_count() > n) {
            n = p.term_count();
            best = p;
        }
    return best;
}

Elem random_base_fn(Sampler& s, const HopfSide& side) {
    const Context& c = side.ctx();
    Elem e(c);
    for (int t = 0; t < 3; ++t) {
        Mono m = s.mono(c, 2, side.fedosov() ? 2 : 0, 0);
        Mono amb;
        for (auto [g, k] : m.e)
            if (c.cls(g) != GenClass::Leg && c.cls(g) != GenClass::Jet) amb.e.emplace_back(g, k);
        Rat cc = s.coeff();
        if (cc != 0) e.add_term(amb, cc);
    }
    return keep_homogeneous(c, e);
}

Elem random_uword(Sampler& s, const HopfSide& side, int max_len) {
    const Context& c = side.ctx();
    Elem e(c);
    for (int t = 0; t < 2; ++t) {
        Elem m = Elem::monomial(c, Mono{}, s.coeff());
        Mono amb = s.mono(c, 1, 0, 0);
        Mono clean;
        for (auto [g, k] : amb.e)
            if (c.cls(g) != GenClass::Leg && c.cls(g) != GenClass::Jet)
                clean.e.emplace_back(g, k);
        m = Elem::mul(m, Elem::monomial(c, clean, 1));
        int L = s.pick(0, max_len);
        for (int i = 0; i < L; ++i)
            m = Elem::mul(m, Elem::generator(c, side.wsym(s.pick(0, side.ncoord() - 1))));
        e += m;
    }
    return keep_homogeneous(c, e);
}

Elem random_jet(Sampler& s, const HopfSide& side, int max_ord) {
    const Context& c = side.ctx();
    Elem e(c);
    for (int t = 0; t < 3; ++t) {
        Elem m = Elem::monomial(c, Mono{}, s.coeff());
        Mono amb = s.mono(c, 1, 0, 0);
        Mono clean;
        for (auto [g, k] : amb.e)
            if (c.cls(g) != GenClass::Leg && c.cls(g) != GenClass::Jet)
                clean.e.emplace_back(g, k);
        m = Elem::mul(m, Elem::monomial(c, clean, 1));
        int L = s.pick(0, max_ord);
        for (int i = 0; i < L; ++i)
            m = Elem::mul(m, Elem::generator(c, side.jsym(s.pick(0, side.ncoord() - 1))));
        e += m;
    }
    return keep_homogeneous(c, e);
}

// append a pure-jet factor as an extra slot
CChain append_slot(const HopfSide& side, const CChain& ch, const Elem& jet) {
    CChain next(side);
    for (const auto& [k, coef] : ch.terms())
        for (const auto& [m2, c2] : jet.terms()) {
            Mono amb, jm;
            for (auto [g, kk] : m2.e) (side.is_jet(g) ? jm : amb).e.emplace_back(g, kk);
            if (!amb.is_one()) continue;
            CKey nk = k;
            nk.slots.push_back(jm);
            next.add_term(nk, coef * c2);
        }
    return next;
}

CChain random_cchain(Sampler& s, const HopfSide& side, int p) {
    if (p == 0) return CChain::scalar(side, random_base_fn(s, side));
    CChain ch = CChain::from_jet(side, random_jet(s, side, 2));
    for (int extra = 1; extra < p; ++extra) ch = append_slot(side, ch, random_jet(s, side, 2));
    return ch;
}

} // namespace

TEST_CASE("u_mul is associative (base side, pbw coordinates)") {
    for (const char* text : {fixtures::curved_r1, fixtures::odd_line}) {
        Model m = validate(load_model(text));
        HopfSide side(m, false);
        Sampler s(5);
        for (int i = 0; i < 10; ++i) {
            Elem a = random_uword(s, side, 2), b = random_uword(s, side, 2),
                 c = random_uword(s, side, 1);
            CHECK(side.u_mul(side.u_mul(a, b), c) == side.u_mul(a, side.u_mul(b, c)));
        }
    }
}

TEST_CASE("pairing normalization (paper values)") {
    Model m = validate(load_model(fixtures::odd_line));
    HopfSide side(m, false);
    JetOps jo(side);
    const Context& c = side.ctx();
    Elem jx2 = Elem::generator(c, side.jsym(0), 2);
    Elem wx2 = Elem::generator(c, side.wsym(0), 2);
    CHECK(jo.pair(jx2, wx2) == Elem::scalar(c, 2)); // eps_I I! = 2
    Elem jt = Elem::generator(c, side.jsym(1));
    Elem wt = Elem::generator(c, side.wsym(1));
    CHECK(jo.pair(jt, wt) == Elem::scalar(c, -1)); // (-1)^{|j_theta|}
    Elem u = Elem::generator(c, side.wsym(0)) + Elem::scalar(c, 3);
    CHECK(jo.pair(jo.unit(), u) == Elem::scalar(c, 3)); // <1, u> = eps(u)
    // alpha is a module map: alpha(f) * xi = f xi
    Elem f = parse_elem(m.ctxM(), "x^2");
    Elem xi = Elem::mul(Elem::generator(c, side.jsym(0)), Elem::generator(c, 0));
    CHECK(jo.star(jo.alpha(transport(f, c)), xi) == Elem::mul(transport(f, c), xi));
}

TEST_CASE("beta pairs as evaluation and S swaps source and target") {
    for (const char* text : kModels) {
        Model m = validate(load_model(text));
        HopfSide side(m, false);
        JetOps jo(side);
        const Context& c = side.ctx();
        Sampler s(17);
        for (int i = 0; i < 6; ++i) {
            Elem f = random_base_fn(s, side);
            if (f.is_zero()) continue;
            int fpar = f.degree_or_throw() & 1;
            Elem u = random_uword(s, side, 2);
            Elem lhs = jo.pair(jo.beta(f), u);
            Elem rhs(c);
            for (const auto& [mm, cc] : u.terms()) {
                Elem one = Elem::monomial(c, mm, cc);
                Elem ap = side.u_apply(one, f);
                if (fpar && mono_parity(c, mm)) ap = -ap;
                rhs += ap;
            }
            CHECK(lhs == rhs);
            CHECK(jo.antipode(jo.alpha(f)) == jo.beta(f));
            CHECK(jo.antipode(jo.beta(f)) == jo.alpha(f));
        }
    }
}

TEST_CASE("coproduct is dual to u_mul through the HKG pairing") {
    for (const char* text : {fixtures::curved_r1, fixtures::odd_line}) {
        Model m = validate(load_model(text));
        HopfSide side(m, false);
        JetOps jo(side);
        const Context& c = side.ctx();
        Sampler s(29);
        for (int i = 0; i < 8; ++i) {
            Elem xi = random_jet(s, side, 2);
            Elem u = random_uword(s, side, 1);
            Elem v = random_uword(s, side, 1);
            if (u.is_zero() || v.is_zero() || xi.is_zero()) continue;
            int upar = u.degree_or_throw() & 1;
            Elem lhs = jo.pair(xi, side.u_mul(u, v));
            Elem rhs(c);
            for (const auto& [a, b] : jo.delta(xi)) {
                Elem inner = jo.pair(b, v);
                if (inner.is_zero()) continue;
                int bpar = b.degree_or_throw() & 1;
                Elem val = jo.pair(a, side.u_mul(u, inner));
                if (upar && bpar) val = -val;
                rhs += val;
            }
            CHECK((lhs - rhs).is_zero());
        }
    }
}

TEST_CASE("counit laws for the jet coproduct") {
    Model m = validate(load_model(fixtures::odd_line));
    HopfSide side(m, false);
    JetOps jo(side);
    const Context& c = side.ctx();
    Sampler s(31);
    for (int i = 0; i < 8; ++i) {
        Elem xi = random_jet(s, side, 3);
        Elem rec(c), rec2(c);
        for (const auto& [a, b] : jo.delta(xi)) {
            rec += Elem::mul(jo.counit(a), b);
            rec2 += Elem::mul(a, jo.counit(b));
        }
        CHECK(rec == xi);
        CHECK(rec2 == xi);
    }
}

TEST_CASE("Grothendieck connection flattens the Taylor jets") {
    Model m = validate(load_model(fixtures::curved_r1));
    HopfSide side(m, false);
    JetOps jo(side);
    Sampler s(37);
    for (int i = 0; i < 6; ++i) {
        Elem f = random_base_fn(s, side);
        Mono w;
        w.e.emplace_back(side.wsym(0), 1);
        CHECK(jo.grothendieck_word(w, jo.beta(f)).is_zero());
    }
}

TEST_CASE("Connes operator squares to zero") {
    for (const char* text : kModels) {
        Model m = validate(load_model(text));
        HopfSide side(m, false);
        Sampler s(41);
        for (int p = 0; p <= 2; ++p) {
            for (int i = 0; i < 3; ++i) {
                CChain ch = random_cchain(s, side, p);
                if (ch.is_zero()) continue;
                CChain bb = connes_B(connes_B(ch));
                INFO("model ", text, " p ", p, " B^2 = ", bb.str());
                CHECK(bb.is_zero());
            }
        }
    }
}

TEST_CASE("hochschild b: b^2 = 0 and [b, B] = 0") {
    for (const char* text : {fixtures::curved_r1, fixtures::odd_line}) {
        Model m = validate(load_model(text));
        HopfSide side(m, false);
        Sampler s(43);
        for (int p = 1; p <= 2; ++p) {
            for (int i = 0; i < 3; ++i) {
                CChain ch = random_cchain(s, side, p);
                if (ch.is_zero()) continue;
                CChain b2 = hochschild_b(hochschild_b(ch));
                INFO("model ", text, " p ", p, " b^2 = ", b2.str());
                CHECK(b2.is_zero());
                CChain bB = hochschild_b(connes_B(ch)) + connes_B(hochschild_b(ch));
                INFO("model ", text, " p ", p, " [b,B] = ", bB.str());
                CHECK(bB.is_zero());
            }
        }
    }
}

TEST_CASE("iota_D: function case and evaluation oracle at (1,1)") {
    Model m = validate(load_model(fixtures::odd_line));
    HopfSide side(m, false);
    JetOps jo(side);
    Sampler s(47);
    for (int i = 0; i < 6; ++i) {
        Elem f = random_base_fn(s, side);
        Elem j = random_jet(s, side, 2);
        CChain c1 = CChain::from_jet(side, j);
        DChain uf = DChain::scalar(side, f);
        CChain lhs = iota_D(uf, c1);
        CChain rhs = CChain::from_jet(side, jo.star(jo.alpha(transport(f, side.ctx())), j));
        CHECK((lhs - rhs).is_zero());
    }
    for (int i = 0; i < 10; ++i) {
        Elem a0 = random_base_fn(s, side);
        Elem a1 = random_base_fn(s, side);
        Elem uw = random_uword(s, side, 2);
        if (a0.is_zero() || a1.is_zero() || uw.is_zero()) continue;
        DChain u = DChain::from_uword(side, uw);
        CChain lhs = iota_D(u, phi_chain(side, {a0, a1}));
        int du = u.degree_or_throw();
        Elem val = evaluate(u, {a1});
        Elem prod = Elem::mul(transport(a0, side.ctx()), val);
        if ((du & 1) && (a0.degree_or_throw() & 1)) prod = -prod;
        CChain rhs = CChain::scalar(side, prod);
        INFO("diff = ", (lhs - rhs).str());
        CHECK((lhs - rhs).is_zero());
    }
}

TEST_CASE("lie_D at (1,1) matches the displayed cyclic formula") {
    Model m = validate(load_model(fixtures::odd_line));
    HopfSide side(m, false);
    Sampler s(53);
    for (int i = 0; i < 10; ++i) {
        Elem a0 = random_base_fn(s, side);
        Elem a1 = random_base_fn(s, side);
        Elem uw = random_uword(s, side, 2);
        if (a0.is_zero() || a1.is_zero() || uw.is_zero()) continue;
        DChain u = DChain::from_uword(side, uw);
        int dD = u.degree_or_throw();
        CChain lhs = lie_D(u, phi_chain(side, {a0, a1}));
        int pa0 = (a0.degree_or_throw() + 1) & 1; // |a_0| + 1 parities
        int pa1 = (a1.degree_or_throw() + 1) & 1;
        int pD = (dD + 1) & 1;
        // eps_0 = (-1)^{(|D|+1)(|a_0|+1)}; term a_0 (x) D(a_1)
        Elem Da1 = evaluate(u, {a1});
        CChain t1 = phi_chain(side, {a0, Da1});
        if (pD & pa0) t1 = -t1;
        // eta_1 = (-1)^{|D|+1+(sum_{i<=1})(sum_{i>=1})}; term D(a_0) (x) a_1
        Elem Da0 = evaluate(u, {a0});
        CChain t2 = phi_chain(side, {Da0, a1});
        int eta = pD ^ ((pa0 ^ pa1) & pa1);
        if (eta & 1) t2 = -t2;
        CChain rhs = t1 + t2;
        INFO("lhs = ", lhs.str());
        INFO("rhs = ", rhs.str());
        CHECK((lhs - rhs).is_zero());
    }
}
