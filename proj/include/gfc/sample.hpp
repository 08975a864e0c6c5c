#pragma once

#include "gfc/poly.hpp"

#include <random>

namespace gfc {

// Deterministic sampling for the verification suites: coefficients in
// {-2..2}, base-coordinate degree <= 2, fiber order <= 2. Identities are
// checked strictly inside the truncation window, so samples stay well below
// the caps.
class Sampler {
public:
    explicit Sampler(uint64_t seed) : rng_(seed) {}

    int pick(int lo, int hi) {
        std::uniform_int_distribution<int> d(lo, hi);
        return d(rng_);
    }
    Rat coeff() { return Rat(pick(-2, 2)); }
    uint64_t raw() { return rng_(); }

    // monomial with bounded class orders
    Mono mono(const Context& ctx, int max_base, int max_series, int max_leg);
    Elem elem(const Context& ctx, int terms, int max_base, int max_series, int max_leg);
    // largest homogeneous component of a random element (never zero unless
    // the random element is)
    Elem homogeneous(const Context& ctx, int terms, int max_base, int max_series, int max_leg);

    // arity-p chain using the given leg range, homogeneous
    Elem chain(const PolySide& side, int p, bool tlegs);
    // homogeneous vector field on the side (arity-1 chain's field)
    Derivation vfield(const PolySide& side);

private:
    std::mt19937_64 rng_;
};

// per-sample deterministic seed derivation
uint64_t subseed(uint64_t seed, const std::string& tag, int index);

} // namespace gfc
