#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gfc/opword.hpp"
#include "model_fixtures.hpp"

#include <random>

using namespace gfc;

namespace {

struct BaseOps {
    Model model;
    OpAlgebra alg;
    explicit BaseOps(const char* text)
        : model(validate(load_model(text))),
          alg(model.ctxM(), [&] {
              std::vector<int> dirs;
              for (int i = 0; i < model.dim(); ++i) dirs.push_back(i);
              return dirs;
          }(), 7) {
        alg.set_connection(model);
    }
};

Elem random_op(const OpAlgebra& alg, std::mt19937_64& rng, int max_len = 2) {
    std::uniform_int_distribution<int> coef(-2, 2);
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> pick(0, alg.ctx().size() - 1);
    std::uniform_int_distribution<int> sym(0, alg.nsym() - 1);
    Elem e(alg.ctx());
    for (int t = 0; t < 3; ++t) {
        Elem m = Elem::scalar(alg.ctx(), coef(rng));
        for (int i = 0; i < 2; ++i) {
            int g = pick(rng);
            if (!alg.is_sym(g)) m = Elem::mul(m, Elem::generator(alg.ctx(), g));
        }
        int L = len(rng);
        for (int i = 0; i < L; ++i)
            m = Elem::mul(m, Elem::generator(alg.ctx(), alg.sym_gen(sym(rng))));
        e += m;
    }
    return e;
}

Elem random_fn(const OpAlgebra& alg, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coef(-2, 2);
    std::uniform_int_distribution<int> pick(0, alg.ambient().size() - 1);
    Elem e(alg.ctx());
    for (int t = 0; t < 3; ++t) {
        Elem m = Elem::scalar(alg.ctx(), coef(rng));
        for (int i = 0; i < 3; ++i) {
            int g = pick(rng);
            m = Elem::mul(m, Elem::generator(alg.ctx(), g));
        }
        e += m;
    }
    return e;
}

} // namespace

TEST_CASE("compose agrees with application") {
    BaseOps b(fixtures::odd_line);
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 30; ++i) {
        Elem u = random_op(b.alg, rng);
        Elem v = random_op(b.alg, rng);
        Elem f = random_fn(b.alg, rng);
        CHECK(b.alg.apply(b.alg.compose(u, v), f) == b.alg.apply(u, b.alg.apply(v, f)));
    }
}

TEST_CASE("compose is associative") {
    BaseOps b(fixtures::odd_line);
    std::mt19937_64 rng(55);
    for (int i = 0; i < 20; ++i) {
        Elem u = random_op(b.alg, rng, 1);
        Elem v = random_op(b.alg, rng, 1);
        Elem w = random_op(b.alg, rng, 1);
        CHECK(b.alg.compose(b.alg.compose(u, v), w) == b.alg.compose(u, b.alg.compose(v, w)));
    }
}

TEST_CASE("unshuffle: primitives and counit") {
    BaseOps b(fixtures::flat_r2);
    Mono w;
    w.e.emplace_back(b.alg.sym_gen(0), 1);
    auto s = b.alg.split2(w);
    // Delta(X) = X (x) 1 + 1 (x) X
    REQUIRE(s.size() == 2);
    for (const auto& sp : s) CHECK(sp.coeff == 1);
}

TEST_CASE("unshuffle Koszul sign for odd letters") {
    BaseOps b(fixtures::odd_line);
    int sth = b.alg.sym_of_dir(b.model.ctxM().find_or_throw("theta"));
    REQUIRE(sth >= 0);
    int sx = b.alg.sym_of_dir(0);
    Mono w;
    w.e.emplace_back(std::min(sx, sth), 1);
    w.e.emplace_back(std::max(sx, sth), 1);
    auto s = b.alg.split2(w);
    // four splits; the exchanged one carries the Koszul sign of moving the
    // odd letter past the even one (positive here since only one letter is odd)
    CHECK(s.size() == 4);
    Rat total = 0;
    for (const auto& sp : s) total += sp.coeff;
    CHECK(total == 4); // theta odd vs x even: no sign flips
}

TEST_CASE("coassociativity of unshuffle") {
    BaseOps b(fixtures::flat_r2);
    Mono w;
    w.e.emplace_back(b.alg.sym_gen(0), 2);
    w.e.emplace_back(b.alg.sym_gen(1), 1);
    auto threefold = b.alg.splitn(w, 3);
    // (Delta x id) Delta = (id x Delta) Delta: both equal splitn(w, 3)
    std::map<std::tuple<Mono, Mono, Mono>, Rat> lhs, rhs;
    for (const auto& s1 : b.alg.split2(w))
        for (const auto& s2 : b.alg.split2(s1.left))
            lhs[{s2.left, s2.right, s1.right}] += s1.coeff * s2.coeff;
    for (const auto& s1 : b.alg.split2(w))
        for (const auto& s2 : b.alg.split2(s1.right))
            rhs[{s1.left, s2.left, s2.right}] += s1.coeff * s2.coeff;
    std::erase_if(lhs, [](const auto& kv) { return kv.second == 0; });
    std::erase_if(rhs, [](const auto& kv) { return kv.second == 0; });
    CHECK(lhs == rhs);
    std::map<std::tuple<Mono, Mono, Mono>, Rat> direct;
    for (const auto& [ms, c] : threefold) direct[{ms[0], ms[1], ms[2]}] += c;
    std::erase_if(direct, [](const auto& kv) { return kv.second == 0; });
    CHECK(direct == lhs);
}

TEST_CASE("pbw on a flat model is the identity reinterpretation") {
    BaseOps b(fixtures::flat_r2);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 10; ++i) {
        Elem w = random_op(b.alg, rng, 3);
        CHECK(b.alg.pbw(w) == w);
        CHECK(b.alg.pbw_inv(w) == w);
    }
}

TEST_CASE("pbw one recursion step on the curved line") {
    BaseOps b(fixtures::curved_r1);
    const Context& c = b.alg.ctx();
    int s = b.alg.sym_gen(0);
    Elem word2 = Elem::generator(c, s, 2); // d/dx (.) d/dx
    // pbw(X (.) X) = X X - Gamma^x_xx X = d2/dx2 - x d/dx
    Elem expect = Elem::generator(c, s, 2) - Elem::mul(parse_elem(c, "x"), Elem::generator(c, s));
    CHECK(b.alg.pbw(word2) == expect);
    CHECK(b.alg.pbw(Elem::scalar(c, 1)) == Elem::scalar(c, 1));
    CHECK(b.alg.pbw(Elem::generator(c, s)) == Elem::generator(c, s));
}

TEST_CASE("pbw round trip and filtration") {
    BaseOps b(fixtures::curved_r1);
    std::mt19937_64 rng(99);
    for (int i = 0; i < 15; ++i) {
        Elem w = random_op(b.alg, rng, 3);
        Elem op = b.alg.pbw(w);
        CHECK(b.alg.order(op) == b.alg.order(w));
        CHECK(b.alg.pbw_inv(op) == w);
    }
}

TEST_CASE("pbw is a coalgebra morphism on words of length <= 3") {
    BaseOps models[] = {BaseOps(fixtures::curved_r1), BaseOps(fixtures::odd_line)};
    for (auto& b : models) {
        const Context& c = b.alg.ctx();
        std::mt19937_64 rng(4242);
        for (int i = 0; i < 12; ++i) {
            Elem w = random_op(b.alg, rng, 3);
            // both sides normalized to (left mono, right word mono) pairs with
            // coefficients shifted to the left slot
            std::map<std::pair<Mono, Mono>, Rat> lhs, rhs;
            auto accum = [&](std::map<std::pair<Mono, Mono>, Rat>& out, const Mono& m1,
                            const Rat& c1, const Mono& m2, const Rat& c2) {
                // move the ambient part of m2 into the left slot
                Mono amb = b.alg.coeff_part(m2);
                Mono word = OpAlgebra::word_part(c, m2);
                int sgn = 1;
                if (mono_parity(c, amb) && mono_parity(c, m1)) sgn = -1;
                Mono merged;
                int s2;
                if (!mono_mul(c, m1, amb, merged, s2)) return;
                Rat v = c1 * c2 * sgn * s2;
                auto key = std::make_pair(merged, word);
                out[key] += v;
            };
            // LHS: unshuffle the operator words of pbw(w)
            Elem P = b.alg.pbw(w);
            for (const auto& [m, coef] : P.terms()) {
                Mono amb = b.alg.coeff_part(m);
                Mono word = OpAlgebra::word_part(c, m);
                for (const auto& sp : b.alg.split2(word)) {
                    Mono left;
                    int sg;
                    if (!mono_mul(c, amb, sp.left, left, sg)) continue;
                    accum(lhs, left, coef * sp.coeff * sg, sp.right, 1);
                }
            }
            // RHS: (pbw x pbw) applied to the unshuffle of w
            for (const auto& [m, coef] : w.terms()) {
                Mono amb = b.alg.coeff_part(m);
                Mono word = OpAlgebra::word_part(c, m);
                for (const auto& sp : b.alg.split2(word)) {
                    Elem L = b.alg.pbw(Elem::monomial(c, sp.left, 1));
                    Elem R = b.alg.pbw(Elem::monomial(c, sp.right, 1));
                    for (const auto& [ml, cl] : L.terms()) {
                        Mono left;
                        int sg;
                        if (!mono_mul(c, amb, ml, left, sg)) continue;
                        for (const auto& [mr, cr] : R.terms())
                            accum(rhs, left, coef * sp.coeff * cl * sg, mr, cr);
                    }
                }
            }
            std::erase_if(lhs, [](const auto& kv) { return kv.second == 0; });
            std::erase_if(rhs, [](const auto& kv) { return kv.second == 0; });
            CHECK(lhs == rhs);
        }
    }
}
