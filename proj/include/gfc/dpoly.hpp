#pragma once

#include "gfc/fedosov.hpp"
#include "gfc/opword.hpp"

#include <memory>

namespace gfc {

// Shared workspace for poly-differential operators and polyjets on one side.
// The context holds the ambient generators, one word symbol w_<coord> per
// coordinate direction (plus, on the Fedosov side, auxiliary symbols for the
// horizontal directions so commutators with D stay representable), and one
// jet variable j_<coord> per coordinate. Word symbols are named identically
// on the two sides, so sigma and tau act on words by transport.
class HopfSide {
public:
    HopfSide(const Model& model, bool fedosov);

    const Model& model() const { return *model_; }
    bool fedosov() const { return fedosov_; }
    const Context& ctx() const { return *ctx_; }
    const Context& ambient() const { return fedosov_ ? model_->ctxN() : model_->ctxM(); }
    const OpAlgebra& ops() const { return *ops_; }

    int wsym(int j) const { return wbase_ + j; }     // coordinate word symbol
    int jsym(int j) const { return jbase_ + j; }     // jet variable
    int ncoord() const { return model_->dim(); }
    bool is_jet(int g) const { return g >= jbase_ && g < jbase_ + ncoord(); }

    Elem lift(const Elem& e) const { return transport(e, *ctx_); }

    // U-algebra in pbw normal form: product, shuffle coproduct pieces,
    // counit, application to functions.
    Elem u_mul(const Elem& a, const Elem& b) const;
    Elem u_apply(const Elem& u, const Elem& f) const;
    Elem u_counit(const Elem& u) const;
    int u_order(const Elem& u) const { return ops_->order(u); }

    // vertical commutator [V, u] for an ambient derivation V (Fedosov side:
    // asserts the result uses only the coordinate word symbols)
    Elem commute(const Derivation& v, const Elem& u) const;

    // Lift of a derivation into the shared context.
    Derivation lift_derivation(const Derivation& v) const;

private:
    const Model* model_;
    bool fedosov_;
    std::unique_ptr<Context> ctx_;
    std::unique_ptr<OpAlgebra> ops_;
    int wbase_, jbase_;
};

// Term basis of a p-differential operator chain: coefficient monomial on the
// left, then p suspended word monomials.
struct DKey {
    Mono coeff;
    std::vector<Mono> slots;
    auto operator<=>(const DKey&) const = default;
};

class DChain {
public:
    DChain() : side_(nullptr) {}
    explicit DChain(const HopfSide& side) : side_(&side) {}

    const HopfSide& side() const;
    bool is_zero() const { return t_.empty(); }
    const std::map<DKey, Rat>& terms() const { return t_; }
    void add_term(const DKey& k, const Rat& c);
    int arity() const; // -1 when mixed

    DChain operator-() const;
    DChain& operator+=(const DChain& o);
    DChain& operator-=(const DChain& o);
    friend DChain operator+(DChain a, const DChain& b) { return a += b; }
    friend DChain operator-(DChain a, const DChain& b) { return a -= b; }
    DChain operator*(const Rat& c) const;
    bool operator==(const DChain& o) const { return t_ == o.t_; }

    int key_degree(const DKey& k) const;
    bool is_homogeneous(int* deg = nullptr) const;
    int degree_or_throw() const;

    std::string str() const;

    static DChain scalar(const HopfSide& side, const Elem& f);
    static DChain from_uword(const HopfSide& side, const Elem& u); // arity 1
    Elem to_uword() const;                                         // arity 1

private:
    const HopfSide* side_;
    std::map<DKey, Rat> t_;
};

// the shifted multiplication m = -(up 1 (x) up 1)
DChain shifted_mult(const HopfSide& side);

DChain cup(const DChain& u, const DChain& v);
DChain star(const DChain& u, const DChain& v);
DChain gerstenhaber(const DChain& u, const DChain& v);
DChain hochschild_d(const DChain& u); // face maps; equals [m, .]
DChain lie_by_field_D(const Derivation& v, const DChain& u);

// coefficient-wise contraction data (Fedosov side)
DChain h_nat_D(const DChain& u);
DChain sigma_coeff_D(const DChain& u);
DChain fiber_window_D(const DChain& u, int qmax);

// transport between sides (words renamed, coefficients included/projected)
DChain tau_nat_D(const HopfSide& base, const HopfSide& fed, const DChain& u);
DChain sigma_nat_D(const HopfSide& base, const HopfSide& fed, const DChain& u);

// Base-side evaluation as a multilinear map on shifted arguments.
Elem evaluate(const DChain& u, const std::vector<Elem>& args);

} // namespace gfc
