#pragma once

#include "gfc/jets.hpp"

namespace gfc {

// Term basis of a p-polyjet chain: coefficient monomial on the left, then p
// desuspended jet monomials.
struct CKey {
    Mono coeff;
    std::vector<Mono> slots;
    auto operator<=>(const CKey&) const = default;
};

class CChain {
public:
    CChain() : side_(nullptr) {}
    explicit CChain(const HopfSide& side) : side_(&side) {}

    const HopfSide& side() const;
    bool is_zero() const { return t_.empty(); }
    const std::map<CKey, Rat>& terms() const { return t_; }
    void add_term(const CKey& k, const Rat& c);
    int arity() const;

    CChain operator-() const;
    CChain& operator+=(const CChain& o);
    CChain& operator-=(const CChain& o);
    friend CChain operator+(CChain a, const CChain& b) { return a += b; }
    friend CChain operator-(CChain a, const CChain& b) { return a -= b; }
    CChain operator*(const Rat& c) const;
    bool operator==(const CChain& o) const { return t_ == o.t_; }

    int key_degree(const CKey& k) const;
    bool is_homogeneous(int* deg = nullptr) const;
    int degree_or_throw() const;
    std::string str() const;

    static CChain scalar(const HopfSide& side, const Elem& f);
    static CChain from_jet(const HopfSide& side, const Elem& jet); // arity 1
    Elem to_jet() const;

private:
    const HopfSide* side_;
    std::map<CKey, Rat> t_;
};

// Rinehart-Connes operator: arity +1, degree -1.
CChain connes_B(const CChain& c);
// Contraction of an operator chain (arity d <= p).
CChain iota_D(const DChain& u, const CChain& c);
// Lie action through the flat-section isomorphisms, d <= 2.
CChain lie_D(const DChain& u, const CChain& c);
// Hochschild boundary b = L_m.
CChain hochschild_b(const CChain& c);
CChain lie_by_field_C(const Derivation& v, const CChain& c);

CChain h_nat_C(const CChain& c);
CChain sigma_coeff_C(const CChain& c);
CChain fiber_window_C(const CChain& c, int qmax);
CChain tau_nat_C(const HopfSide& base, const HopfSide& fed, const CChain& c);
CChain sigma_nat_C(const HopfSide& base, const HopfSide& fed, const CChain& c);

// Base-side identification of function tensors with polyjets:
// <Phi(a_0 (x) ... (x) a_p), u_1 (x) ... (x) u_p> = +- a_0 u_1(a_1)...u_p(a_p).
CChain phi_chain(const HopfSide& side, const std::vector<Elem>& a);

} // namespace gfc
