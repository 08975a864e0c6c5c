#pragma once

#include "gfc/dpoly.hpp"

#include <functional>

namespace gfc {

// Jets stored in pbw-transpose coordinates: truncated series in the jet
// variables j_<coord> with coefficient functions on the left. The pairing
// against operator words follows <j^I, d^I> = (-1)^{|j^I|} eps_I I!.
class JetOps {
public:
    explicit JetOps(const HopfSide& side) : side_(&side) {}

    const HopfSide& side() const { return *side_; }
    const Context& ctx() const { return side_->ctx(); }

    // all coordinate word monomials of order <= n
    std::vector<Mono> words(int max_order) const;

    Elem pair(const Elem& jet, const Elem& uword) const;
    // reconstruct a jet from its pairings with pure words
    Elem from_functional(const std::function<Elem(const Mono&)>& phi) const;

    Elem star(const Elem& a, const Elem& b) const { return Elem::mul(a, b); }
    Elem unit() const { return Elem::scalar(ctx(), 1); }
    Elem alpha(const Elem& f) const { return transport(f, ctx()); }
    Elem beta(const Elem& f) const;
    Elem counit(const Elem& jet) const { return jet.filter_class(GenClass::Jet, 0); }

    // Sweedler presentation of the coproduct: list of (left, right) jets
    // whose signs are folded into the left factor.
    std::vector<std::pair<Elem, Elem>> delta(const Elem& jet) const;

    // Grothendieck connection along a pure word (flat U-action).
    Elem grothendieck_word(const Mono& word, const Elem& jet) const;
    Elem antipode(const Elem& jet) const;

    // <dmb_u xi, v> = <xi, v u>
    Elem dmb(const Elem& uword, const Elem& jet) const;

    // <L_V xi, u> = V<xi, u> - (-1)^{|V||xi|} <xi, [V, u]>
    Elem lie_field_jet(const Derivation& v, const Elem& jet) const;

private:
    const HopfSide* side_;
};

} // namespace gfc
