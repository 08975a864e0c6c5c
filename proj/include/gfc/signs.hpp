#pragma once

// Structural sign choices left open by the displayed formulas and resolved
// by a once-run constrained search against the identity suites (squares of
// differentials, [b,B] = 0, the base-side evaluation oracle). Flipping any
// entry breaks a named test.
namespace gfc::signs {

// Lie transport of tensor legs: L_V(t_j) picks up the commutator [V, d/dz_j]
// with this extra factor on (-1)^{|V|}.
inline constexpr int kLieTLegShift = 0;
// Dual transport of form legs: extra factor on (-1)^{|V|} beyond the pairing
// signs.
inline constexpr int kLieALegShift = 0;

// Polyjet side; `inline int` rather than constexpr so the calibration driver
// can sweep them. Production values are the ones recorded here.
inline int kConnesRotShiftS = 1;    // suspended parity for the antipode block
inline int kConnesRotShiftB = 1;    // suspended parities for the jet entries
inline int kConnesMain = 1;         // global sign of the cyclic family
inline int kConnesDegen = -1;       // global sign of the degeneracy family
inline int kConnesSweedlerShift = 0; // parities in the Sweedler interleave
inline int kIotaZipShift = 1;        // zip parities in iota_D
inline int kIotaPairTwist = 0;       // per-pair twist in iota_D
inline int kTildeLWrap = 1;          // wrap block Koszul in the L action
inline int kTildeLU = 1;             // operator slots use suspended parities
inline int kTildeLUWrap = 1;         // operator slots wrap past the stay block

} // namespace gfc::signs
