#pragma once
// The loop-space integral map I_T on integral forms, evaluated two
// independent ways: Monte Carlo against the Wiener measure (loop samples,
// current q per loop, scalar-curvature weight — identically zero on flat
// backends, with a synthetic override hook), and the exact Fourier route
// (ordered heat-semigroup insertions with Gauss-Legendre simplex quadrature
// for density profiles).  Also the relative (pointwise) map over pinned
// loops, and partition-refinement studies.

#include "loopint/qfunctional.hpp"
#include "loopint/spectral.hpp"
#include "loopint/wiener.hpp"

namespace loopint {

// Pinned dictionary between the real supertrace pipeline and complex-linear
// spectral traces: even n, I_T of the even character form equals (-i)^{n/2}
// times the index (the orientation fixed by the chirality convention of the
// complex supertrace); odd n = 1, I_T of the odd character form equals
// i^{(n+1)/2} sqrt(2 pi / T) times the spectral flow.
inline cplx index_phase_even(int n) { return std::conj(ipow(n / 2)); }
inline cplx index_phase_odd(int n) { return ipow((n + 1) / 2); }

struct IntegratorOptions {
  McOptions mc;
  int grid = 64;            // loop time grid
  double scal_override = 0; // synthetic constant scalar curvature
  QOptions q;
};

EstimateC integrate_mc(const FlatTorus& X, double T, const IntegralForm& theta,
                       const IntegratorOptions& opt);

// Spectral route on the untwisted torus; point masses exact, densities by
// ordered Gauss-Legendre (gl_nodes per density factor, full-cube sorted sum).
cplx integrate_spectral(const FlatTorus& X, double T, const IntegralForm& theta, int cutoff,
                        int gl_nodes = 16, double* tail = nullptr);

// Relative map at base point x: a differential-form value, estimated over
// pinned loops.  The scalar I_T equals the integral over X of the top
// coefficient of the relative value.
struct RelativeEstimate {
  CliffordC value;
  double stderr_ = 0;  // worst componentwise standard error
  long n = 0;
};
RelativeEstimate integrate_relative(const FlatTorus& X, double T, const Vec& x,
                                    const IntegralForm& theta, const IntegratorOptions& opt);

// Evaluate I_T with q computed on polygonized loops over uniform partitions
// of the given sizes, all from common fine-grid samples (shared seeds), so
// the refinement error is directly comparable across partition sizes.
std::vector<EstimateC> integrate_refined(const FlatTorus& X, double T, const IntegralForm& theta,
                                         const std::vector<int>& partitions,
                                         const IntegratorOptions& opt);

}  // namespace loopint
