#pragma once
// T-dependent character currents of twist bundles along loops.  Even case:
// the current of the bundle character form is the supertrace of the closed
// path-ordered exponential with potential (1/2) c(F); computed both by the
// splitting ODE route and by the simplex series (which collapses to
// (-T/2)^N/N! str(hol c(F)^N) on flat backends, where the curvature is
// constant and commutes with the abelian holonomies).  Odd case: circle
// gauge families, where all curvature terms of the family vanish in one
// dimension and only the bare Maurer-Cartan insertion survives.

#include "loopint/integrator.hpp"

namespace loopint {

// Current of the even character form along one loop (spin closing sign and
// automorphy closure included).
cplx bch_even_q(const FlatTorus& X, const TwistBundle& V, const DiscreteLoop& loop, double T,
                double scal_override = 0, int substeps = 1);

// Truncated series with its factorial tail bound (||c(F)|| T / 2)^{N+1}/(N+1)!.
cplx bch_even_series(const FlatTorus& X, const TwistBundle& V, const DiscreteLoop& loop,
                     double T, int terms, double* tail_bound = nullptr);

// I_T of the even character form by Monte Carlo; equals (-i)^{n/2} times
// the index of the twisted Dirac operator (the flux integer on the 2-torus).
EstimateC integrate_bch_even(const FlatTorus& X, const TwistBundle& V, double T,
                             const IntegratorOptions& opt);

// Current of the odd character form of a circle gauge map along one loop:
// only the N = 0 term survives, an s-averaged Maurer-Cartan insertion with
// the family transport phase exp(-2 pi i m s w) around winding w.
cplx bch_odd_q(const FlatTorus& S, const GaugeMap& g, const DiscreteLoop& loop, double T,
               int s_nodes = 64);

// I_T of the odd character form; equals i^{(n+1)/2} sqrt(2 pi / T) times the
// spectral flow (= total winding) of the family.
EstimateC integrate_bch_odd(const FlatTorus& S, const GaugeMap& g, double T,
                            const IntegratorOptions& opt);

// Simplex-ordered s-profile weight int_0^1 s^N (1-s)^N ds = (N!)^2/(2N+1)!.
double beta_weight(int N);

// Lowest-order equivariance identity: the derivative of the holonomy trace
// under a loop perturbation v (with v(0) = 0) against the curvature-current
// contraction.  lhs uses a finite difference with step eps.
struct EquivarianceCheck {
  cplx lhs, rhs;
  double defect() const { return std::abs(lhs - rhs); }
};
EquivarianceCheck equivariance_residual(const FlatTorus& X, const TwistBundle& V,
                                        const DiscreteLoop& loop, const std::vector<Vec>& v,
                                        double eps);

}  // namespace loopint
