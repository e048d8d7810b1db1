#pragma once
// Localization data on the zero section: the A-hat form of a (nilpotent)
// curvature 2-form matrix through the det^{1/2}(x/sinh x) power series, the
// T-scaled character forms of twist bundles and gauge maps, and the
// stationary-phase right-hand sides that the loop-space integrals reproduce.

#include "loopint/bundles.hpp"

namespace loopint {

// Square matrix with exterior-form entries (wedge multiplication).
using FormMat = std::vector<std::vector<CliffordC>>;

FormMat form_mat_mul(const FormMat& a, const FormMat& b);
CliffordC form_mat_trace(const FormMat& a);
// exp of a nilpotent (positive-degree) form.
CliffordC form_exp(const CliffordC& a);

// det^{1/2}((R/2T) / sinh(R/2T)) via exp((1/2) tr log); R antisymmetric with
// 2-form entries, everything nilpotent so the series terminate.  R = 0 gives
// the constant 1 (flat backends).
CliffordC a_hat_form(const FormMat& R, double T);

// str_V exp(-T F) of a twist bundle as a constant exterior form.
CliffordC chern_character_form(const FlatTorus& X, const TwistBundle& V, double T);

// (2 pi T)^{-n/2} int_X [A-hat(T) ^ ch_T(V)]_top, the even localized value;
// the X-integral is done by an equal-weight lattice grid (exact for trig
// coefficients) times the volume.
cplx localized_rhs_even(const FlatTorus& X, const TwistBundle& V, double T, int gridpts = 64);

// Odd localized value on the circle: (2 pi T)^{-1/2} int tr(g^-1 dg)
// (higher odd-character terms vanish in one dimension).
cplx localized_rhs_odd(const FlatTorus& S, const GaugeMap& g, double T);

}  // namespace loopint
