#include "gfc/sample.hpp"

namespace gfc {

Mono Sampler::mono(const Context& ctx, int max_base, int max_series, int max_leg) {
    Mono m;
    int series = 0, legs = 0;
    for (int g = 0; g < ctx.size(); ++g) {
        int cap;
        if (ctx.cls(g) == GenClass::Base) cap = max_base;
        else if (ctx.cls(g) == GenClass::Leg) cap = max_leg - legs;
        else cap = max_series - series;
        if (cap <= 0) continue;
        int k = pick(0, 2);
        if (k > cap) k = cap;
        if (ctx.odd(g)) k %= 2;
        if (k == 0) continue;
        if (ctx.cls(g) == GenClass::Leg) legs += k;
        else if (ctx.cls(g) != GenClass::Base) series += k;
        m.e.emplace_back(g, k);
    }
    return m;
}

Elem Sampler::elem(const Context& ctx, int terms, int max_base, int max_series, int max_leg) {
    Elem e(ctx);
    for (int t = 0; t < terms; ++t) {
        Rat c = coeff();
        if (c == 0) continue;
        e.add_term(mono(ctx, max_base, max_series, max_leg), c);
    }
    return e;
}

Elem Sampler::homogeneous(const Context& ctx, int terms, int max_base, int max_series,
                          int max_leg) {
    Elem e = elem(ctx, terms, max_base, max_series, max_leg);
    if (e.is_zero()) return e;
    std::map<int, Elem> by_degree;
    for (const auto& [m, c] : e.terms()) {
        int d = mono_degree(ctx, m);
        auto it = by_degree.find(d);
        if (it == by_degree.end()) by_degree.emplace(d, Elem::monomial(ctx, m, c));
        else it->second.add_term(m, c);
    }
    size_t best = 0;
    Elem out(ctx);
    for (auto& [d, part] : by_degree)
        if (part.term_count() > best) {
            best = part.term_count();
            out = part;
        }
    return out;
}

Elem Sampler::chain(const PolySide& side, int p, bool tlegs) {
    const Context& ctx = side.ctx();
    Elem e(ctx);
    for (int t = 0; t < 3; ++t) {
        Rat c = coeff();
        if (c == 0) continue;
        Mono m = mono(ctx, 2, side.fedosov() ? 2 : 0, 0);
        // strip any sampled legs, then attach exactly p of the wanted family
        Mono stripped;
        for (auto [g, k] : m.e)
            if (ctx.cls(g) != GenClass::Leg) stripped.e.emplace_back(g, k);
        Elem term = Elem::monomial(ctx, stripped, c);
        for (int i = 0; i < p; ++i) {
            int j = pick(0, side.nlegs() - 1);
            int leg = tlegs ? side.tleg(j) : side.aleg(j);
            term = Elem::mul(term, Elem::generator(ctx, leg));
        }
        e += term;
    }
    // keep one homogeneous component of pure arity p
    Elem pure(ctx);
    for (const auto& [m, c] : e.terms())
        if (mono_order(ctx, m, GenClass::Leg) == p) pure.add_term(m, c);
    if (pure.is_zero()) return pure;
    std::map<int, Elem> by_degree;
    for (const auto& [m, c] : pure.terms()) {
        int d = mono_degree(ctx, m);
        auto it = by_degree.find(d);
        if (it == by_degree.end()) by_degree.emplace(d, Elem::monomial(ctx, m, c));
        else it->second.add_term(m, c);
    }
    size_t best = 0;
    Elem out(ctx);
    for (auto& [d, part] : by_degree)
        if (part.term_count() > best) {
            best = part.term_count();
            out = part;
        }
    return out;
}

Derivation Sampler::vfield(const PolySide& side) {
    Elem c = chain(side, 1, true);
    return side.field_of(c);
}

uint64_t subseed(uint64_t seed, const std::string& tag, int index) {
    std::string data = tag + "#" + std::to_string(index);
    uint64_t h = seed ^ 0x9e3779b97f4a7c15ULL;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001b3ULL;
        h ^= h >> 29;
    }
    return h;
}

} // namespace gfc
