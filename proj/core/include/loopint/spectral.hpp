#pragma once
// Exact spectral evaluators on flat backends: Fourier-mode supertraces with
// Clifford insertions on untwisted tori, Landau levels for flux bundles on
// the 2-torus (with an independent oscillator-reduction oracle), Galerkin
// heat traces for scalar potentials, spectral flow for circle gauge
// families, and the regularized-determinant toy identity on the circle.

#include "loopint/bundles.hpp"
#include "loopint/loopforms.hpp"

namespace loopint {

// One Clifford insertion inside the heat semigroup.
struct Insertion {
  double tau;        // in [0,1]
  const FormField* field;
};

// Str( e^{-T(1-tau_M)H} c(f_M) e^{-T(tau_M-tau_{M-1})H} ... c(f_1) e^{-T tau_1 H} )
// on the untwisted spinor bundle of a flat torus, H = Delta/2, insertions
// sorted by increasing tau.  Spinor modes are Fourier modes shifted by the
// spin structure; trig fields couple them sparsely, so each choice of one
// trig term per insertion contributes a closed mode sum.  `tail` reports a
// crude bound on the dropped weight at the mode cutoff.
cplx heat_insertion_supertrace(const FlatTorus& X, double T,
                               const std::vector<Insertion>& ins, int cutoff,
                               double* tail = nullptr);

// Dirac eigenvalue list for the circle of circumference ell with spin bit
// eps: (2 pi / ell)(nu + eps/2), |nu| <= cutoff.
std::vector<double> circle_dirac_spectrum(const FlatTorus& S, int cutoff);

// Landau ladder of the flux-k twisted Dirac on a 2-torus: eigenvalues of
// D^2/2 are B*j per chirality ladder, B = 2 pi |k| / vol, each with
// multiplicity |k|; the kernel sits on the chirality given by sign(k).
struct LandauLevel {
  double energy;     // eigenvalue of D^2/2
  int multiplicity;
  int chirality;     // +1 / -1
};
std::vector<LandauLevel> landau_levels(const FlatTorus& X, int k, int count);

// Complex supertrace of exp(-T D^2/2) for the flux bundle: telescopes to the
// flux integer, independently of T.
cplx flux_heat_supertrace(const FlatTorus& X, int k, double T);

// Independent oracle: the magnetic Laplacian in Landau gauge reduces per
// Fourier sector nu = 0..|k|-1 to a 1d harmonic oscillator on the line,
// (-d^2/dy^2 + B^2 y^2)/2, discretized by finite differences; returns the
// lowest `count` eigenvalues of sector nu.
std::vector<double> magnetic_sector_levels(const FlatTorus& X, int k, int nu, int count,
                                           int gridpts = 2000, double halfwidth = 0.0);

// Galerkin heat trace Tr exp(-T(Delta/2 + V)) for a scalar trig potential on
// the torus, by dense diagonalization over modes within the cutoff.
double scalar_heat_trace(const FlatTorus& X, double T, const FormField& V, int cutoff);
// Diagonal kernel of the same semigroup at point x.
double scalar_heat_kernel_diag(const FlatTorus& X, double T, const FormField& V, int cutoff,
                               const Vec& x);

// Eigenvalues of the circle family D_s = D + s c(omega) for a diagonal gauge
// map: (2 pi / ell)(nu + eps/2 + m_j s), |nu| <= cutoff, all j.
std::vector<double> circle_family_eigs(const FlatTorus& S, const GaugeMap& g, double s,
                                       int cutoff);

// Net signed zero crossings of the sorted eigenvalue curves sampled at
// `steps`+1 parameter values; min_gap reports how well separated the curves
// stayed between samples.
struct FlowResult {
  int flow = 0;
  double min_gap = 0;  // smallest observed |lambda| away from a crossing step
  std::vector<std::pair<double, double>> crossings;  // (s, slope estimate)
};
FlowResult spectral_flow_tracked(const std::function<std::vector<double>(double)>& eigs,
                                 int steps);

// sqrt(T/(2 pi)) int_0^1 Tr( dD_s/ds exp(-T D_s^2 / 2) ) ds, Gauss-Legendre
// in s; equals the spectral flow for the circle families here.
double getzler_flow_integral(const FlatTorus& S, const GaugeMap& g, double T, int s_nodes,
                             int cutoff);

// Regularized-determinant toy on the circle: the zeta-determinant of the
// twisted boundary problem equals |1 - e^{i alpha}|^2 = 4 sin^2(alpha/2);
// the right side recomputes it as (-1)^{n/2} (str_C of the spin lift)^2 of
// the rotation by alpha in Cl_2.
double zeta_toy_lhs(double alpha);
double zeta_toy_rhs(double alpha);

// Gauss-Legendre nodes/weights on [0,1].
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace loopint
