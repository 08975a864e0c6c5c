#pragma once

#include "gfc/context.hpp"
#include "gfc/rational.hpp"

#include <compare>
#include <map>
#include <utility>
#include <vector>

namespace gfc {

// Sign-normalized monomial: generators in ascending context order.
// Odd-degree generators carry exponent at most 1.
struct Mono {
    std::vector<std::pair<int, int>> e; // (generator index, exponent), ascending

    bool is_one() const { return e.empty(); }
    int exponent(int gen) const {
        for (const auto& [g, k] : e)
            if (g == gen) return k;
        return 0;
    }
    auto operator<=>(const Mono&) const = default;
};

int mono_degree(const Context& ctx, const Mono& m);
int mono_order(const Context& ctx, const Mono& m, GenClass cls);
int mono_series_order(const Context& ctx, const Mono& m);
// Parity (mod 2) of the total degree of the monomial.
int mono_parity(const Context& ctx, const Mono& m);

// Koszul product of two normalized monomials. Returns false when the
// product vanishes (odd generator squared) or exceeds the context caps.
bool mono_mul(const Context& ctx, const Mono& a, const Mono& b, Mono& out, int& sign);

class Elem {
public:
    Elem() : ctx_(nullptr) {}
    explicit Elem(const Context& ctx) : ctx_(&ctx) {}

    static Elem scalar(const Context& ctx, const Rat& c);
    static Elem generator(const Context& ctx, int gen, int exp = 1);
    static Elem monomial(const Context& ctx, const Mono& m, const Rat& c);

    const Context& ctx() const;
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<Mono, Rat>& terms() const { return terms_; }

    void add_term(const Mono& m, const Rat& c);

    Elem operator-() const;
    Elem& operator+=(const Elem& o);
    Elem& operator-=(const Elem& o);
    friend Elem operator+(Elem a, const Elem& b) { return a += b; }
    friend Elem operator-(Elem a, const Elem& b) { return a -= b; }
    friend Elem operator*(const Elem& a, const Elem& b) { return mul(a, b); }
    Elem operator*(const Rat& c) const;
    bool operator==(const Elem& o) const { return terms_ == o.terms_; }

    // Graded-commutative Koszul product, truncated to the context caps.
    static Elem mul(const Elem& a, const Elem& b);

    // Left partial derivative with respect to one generator.
    Elem dleft(int gen) const;
    // Right partial derivative.
    Elem dright(int gen) const;

    // Component with exactly r Form-generator factors and fiber order q.
    Elem bigrade(int r, int q) const;
    // Drop monomials whose total non-Base order exceeds n.
    Elem truncated(int n) const;
    // Drop monomials of fiber order > q (comparison window helper).
    Elem fiber_window(int q) const;
    Elem filter_class(GenClass cls, int order) const; // keep order == given
    int max_order(GenClass cls) const;
    int min_fiber_order() const; // INT_MAX when zero

    bool is_homogeneous(int* deg = nullptr) const;
    int degree_or_throw() const;

    std::string str() const;

private:
    const Context* ctx_;
    std::map<Mono, Rat> terms_;
    void check_ctx(const Elem& o) const;
};

} // namespace gfc
