#pragma once

#include "gfc/model.hpp"
#include "gfc/opword.hpp"

namespace gfc {

struct DefectNotDeltaClosed : Error {
    using Error::Error;
};
struct FlatnessFailure : Error {
    using Error::Error;
};
struct NotSquareZero : Error {
    using Error::Error;
};
struct TruncationTooSmall : Error {
    using Error::Error;
};

// delta = sum xi_k d/dy_k and eta = sum y_k d/dxi_k as derivations of the
// N-context algebra.
Derivation koszul_delta(const Model& m);
Derivation koszul_eta(const Model& m);

// h = -eta/(r+q) on the (r, q) component, zero on (0, 0). Not a derivation.
Elem homotopy_h(const Model& m, const Elem& e);
// sigma: projection onto the (0,0) component; tau: inclusion of functions.
Elem proj_sigma(const Model& m, const Elem& e);

// d^nabla = sum xi_k nabla_k.
Derivation covariant_d(const Model& m);

// Degreewise solve for the curvature correction A with h_nat(A) = 0 and
// (-delta + d^nabla + A)^2 = 0 through fiber order `orders` (defaults to the
// context cap). A raises fiber order by at least one.
Derivation build_A(const Model& m, int orders = -1);

struct FedosovData {
    Derivation delta, eta, dnabla, A, D;
    // D + tau(Q) when the model carries Q (set by twist_by_Q).
    std::optional<Derivation> DQ;
};

FedosovData build_fedosov(const Model& m);

// D assembled from parts; verifies flatness on generators inside the window.
Derivation fedosov_D(const Model& m, const Derivation& A);

// Independent construction of D through the formal exponential map:
// nabla^pbw_X S = pbw^{-1}(X . pbw(S)) on S(T_M), transposed to the dual
// series in y, assembled as sum xi_k (d/dx_k + transpose part).
Derivation fedosov_D_via_pbw(const Model& m);

// D + tau(Q); checks the self-commutator vanishes inside the window.
Derivation twist_by_Q(const Model& m, const FedosovData& fd, const Derivation& tauQ);

// Fiber-order window on which identities are asserted (y_order).
bool window_zero(const Model& m, const Elem& e);
bool window_zero(const Model& m, const Derivation& d);

} // namespace gfc
