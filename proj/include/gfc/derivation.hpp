#pragma once

#include "gfc/elem.hpp"

#include <map>

namespace gfc {

// Finite sum of coefficient * d/d(generator) terms, acting as a left graded
// derivation: (c * d/dg)(e) = c * dleft_g(e).
class Derivation {
public:
    Derivation() : ctx_(nullptr), deg_(0) {}
    Derivation(const Context& ctx, int degree) : ctx_(&ctx), deg_(degree) {}

    static Derivation partial(const Context& ctx, int gen) {
        Derivation d(ctx, -ctx.degree(gen));
        d.set_coeff(gen, Elem::scalar(ctx, 1));
        return d;
    }

    const Context& ctx() const {
        if (!ctx_) throw Error("derivation has no context");
        return *ctx_;
    }
    int degree() const { return deg_; }
    bool is_zero() const;

    void set_coeff(int gen, const Elem& c);
    void add_coeff(int gen, const Elem& c);
    Elem coeff(int gen) const; // zero element when absent
    const std::map<int, Elem>& terms() const { return terms_; }

    Elem apply(const Elem& e) const;
    Elem operator()(const Elem& e) const { return apply(e); }

    Derivation operator-() const;
    Derivation& operator+=(const Derivation& o);
    friend Derivation operator+(Derivation a, const Derivation& b) { return a += b; }
    friend Derivation operator-(Derivation a, const Derivation& b) { return a += -b; }
    Derivation operator*(const Rat& c) const;
    // Left multiplication by an element: e * D (coefficients become e*c_g).
    Derivation scaled_left(const Elem& e, int extra_degree) const;

    // Graded commutator [a, b] = a b - (-1)^{|a||b|} b a, as a derivation.
    static Derivation commutator(const Derivation& a, const Derivation& b);

    // Checks |coeff| = degree + |gen| for every term.
    void check_degrees() const;

    std::string str() const;

private:
    const Context* ctx_;
    int deg_;
    std::map<int, Elem> terms_;
};

} // namespace gfc
