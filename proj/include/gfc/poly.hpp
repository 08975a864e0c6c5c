#pragma once

#include "gfc/fedosov.hpp"
#include "gfc/model.hpp"

#include <memory>

namespace gfc {

// One side of the Fedosov picture: the base manifold (coefficients in x) or
// the Fedosov algebroid (coefficients in x, xi, y). Polyvector fields and
// differential forms live in an extended context with one tensor leg t_c
// (shifted coordinate field, degree 1 - |c|) and one form leg a_c (shifted
// coordinate form, degree |c| - 1) per coordinate. Leg names agree across
// the two sides, so the contraction maps are transports.
class PolySide {
public:
    PolySide(const Model& model, bool fedosov);

    const Model& model() const { return *model_; }
    bool fedosov() const { return fedosov_; }
    const Context& ctx() const { return *ctx_; }
    const Context& ambient() const { return fedosov_ ? model_->ctxN() : model_->ctxM(); }

    int tleg(int j) const { return tbase_ + j; }
    int aleg(int j) const { return abase_ + j; }
    // ambient generator differentiated by leg j (x_j or y_j)
    int dir(int j) const { return fedosov_ ? model_->y_index(j) : j; }
    int nlegs() const { return model_->dim(); }

    Elem lift(const Elem& ambient_elem) const { return transport(ambient_elem, *ctx_); }

    // arity = total leg exponents; -1 when mixed
    int arity(const Elem& chain) const;
    bool pure_t(const Elem& chain) const;
    bool pure_a(const Elem& chain) const;

    // vector field of an arity-1 T-chain and back
    Derivation field_of(const Elem& tchain) const;
    Elem chain_of_field(const Derivation& v) const;

    // Lie derivative along an ambient derivation (vector field on this side,
    // or D / D + tau(Q) on the Fedosov side), as a derivation of ctx().
    Derivation lie_field(const Derivation& v) const;

    // Chevalley-Eilenberg differential (de Rham / leafwise), degree -1 on
    // shifted forms.
    Derivation cartan_d() const;

    Elem wedge(const Elem& u, const Elem& w) const;
    Elem iota(const Elem& tchain, const Elem& achain) const;
    Elem lie(const Elem& tchain, const Elem& achain) const;
    Elem schouten(const Elem& u, const Elem& w) const;

    // coefficient-wise sigma / tau / h of the Koszul contraction, with legs
    // fixed (Fedosov side only).
    Elem h_nat(const Elem& chain) const;
    Elem sigma_coeff(const Elem& chain) const;

    // trigrade (r, q, p) with q = degree - r - p; requires homogeneity.
    struct Trigrade {
        int r, q, p;
    };
    Trigrade trigrade(const Elem& chain) const;
    Elem trigrade_part(const Elem& chain, int r, int p) const;

private:
    const Model* model_;
    bool fedosov_;
    std::unique_ptr<Context> ctx_;
    int tbase_, abase_;
};

// tau / sigma between the two sides (legs renamed, coefficients included /
// projected).
Elem tau_nat(const PolySide& base, const PolySide& fed, const Elem& base_chain);
Elem sigma_nat(const PolySide& base, const PolySide& fed, const Elem& fed_chain);

} // namespace gfc
