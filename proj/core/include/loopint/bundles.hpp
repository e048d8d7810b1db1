#pragma once
// Twist data over flat backends: Z2-graded direct sums of flux line bundles
// on a 2-torus (with exact segment holonomy in the Landau gauge of the
// universal cover), gauge maps on the circle, and path-ordered exponentials
// of matrix potentials along discrete loops.

#include <Eigen/Dense>

#include "loopint/geometry.hpp"

namespace loopint {

using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;

// Clifford element with r x r matrix coefficients: operators on the tensor
// product (spinor module) x (twist bundle fiber).
struct CliffordMat {
  int dim = 0;  // clifford generators
  int r = 0;    // fiber rank
  std::vector<MatC> comp;  // size 1<<dim

  CliffordMat() = default;
  CliffordMat(int n, int rank)
      : dim(n), r(rank), comp(size_t(1) << n, MatC::Zero(rank, rank)) {}
  static CliffordMat identity(int n, int rank);
  // a (x) A
  static CliffordMat tensor(const CliffordC& a, const MatC& A);
  CliffordMat& operator+=(const CliffordMat& o);
  CliffordMat& operator*=(cplx s);
  friend CliffordMat operator+(CliffordMat a, const CliffordMat& b) { return a += b; }
  friend CliffordMat operator*(CliffordMat a, cplx s) { return a *= s; }
  double coeff_l1() const;  // sum of spectral norms of components (upper bound)
};

CliffordMat cm_mul(const CliffordMat& a, const CliffordMat& b);
// exp(a) by scaling and squaring with the algebra product.
CliffordMat cm_exp(const CliffordMat& a);
// Supertrace over spinors (x) fiber: 2^{n/2} * str_V of the volume component,
// with fiber grading signs g (+1/-1 per fiber index).
cplx cm_supertrace(const CliffordMat& a, const std::vector<int>& grading);
// Plain fiber trace of the scalar (empty-mask) component.
cplx cm_fiber_trace(const CliffordMat& a, const std::vector<int>& grading);

// Hermitian line bundle on a 2-torus with curvature F = 2 pi i k du1^du2 in
// lattice coordinates (total flux integral |int tr F| = 2 pi |k|).  Sections
// are functions psi on R^2 with psi(u + z) = j(z, u) psi(u), factor of
// automorphy j(z, u) = exp(-2 pi i k z1 u2).
struct FluxSummand {
  int flux = 0;
  int grading = 1;  // +1 even, -1 odd part of the Z2-graded sum
};

struct TwistBundle {
  std::vector<FluxSummand> summands;
  int rank() const { return int(summands.size()); }
  std::vector<int> gradings() const;
  static TwistBundle flux_line(int k) { return {{{k, +1}}}; }
  static TwistBundle direct_sum(const TwistBundle& a, const TwistBundle& b);
  static TwistBundle graded_trivial(int p, int q);  // C^{p|q}, flat
};

// Connection phase of one summand along the straight segment between lifts p
// and q (universal-cover trivialization): exp(i int_seg A) for the Landau
// gauge A = -2 pi k u1 du2, arguments in lattice coordinates.
cplx flux_segment_phase(int k, const Eigen::Vector2d& p_lat, const Eigen::Vector2d& q_lat);
// Automorphy factor j(z, u).
cplx flux_automorphy(int k, const Eigen::Vector2i& z, const Eigen::Vector2d& u_lat);

// Holonomy of a summand around a discrete loop, as an operator on the fiber
// over the base point: product of segment phases closed up by j(w, u(0))^-1.
cplx flux_loop_holonomy(const FlatTorus& X, int k, const DiscreteLoop& loop);
// Transport from loop time s to t in the lift trivialization.
cplx flux_transport(const FlatTorus& X, int k, const DiscreteLoop& loop, double s, double t);

// Curvature operator F(e1,e2) on the fiber in the orthonormal frame:
// diagonal with entries 2 pi i k_j / vol.
MatC curvature_matrix(const FlatTorus& X, const TwistBundle& V);
// Automorphy closure identifying the fiber at lift(0)+closing with the fiber
// at lift(0): diagonal of j(w, u0)^-1 factors.
MatC closure_matrix(const FlatTorus& X, const TwistBundle& V, const DiscreteLoop& loop);
// Clifford action (1/2) c(F) = (1/2) sum_{a<b} F(e_a,e_b) e_a e_b (x) id.
CliffordMat half_clifford_curvature(const FlatTorus& X, const TwistBundle& V);

// Path-ordered exponential along a loop: solution at time 1 of
//   U' = (covariant transport) - T * V(gamma(t)) U,  U(0) = id,
// by Strang splitting of exact segment holonomies with exp(-T h V(mid))
// steps; substeps per segment control the splitting error.  The potential is
// a CliffordMat-valued function of the lift point.
CliffordMat path_ordered_exp(
    const FlatTorus& X, const TwistBundle& V, const DiscreteLoop& loop, double T,
    const std::function<CliffordMat(const Vec&)>& potential, int substeps = 1);

// Same with no potential: diagonal of summand holonomies tensor identity.
CliffordMat loop_holonomy(const FlatTorus& X, const TwistBundle& V, const DiscreteLoop& loop,
                          int clifford_dim);

// Unitary gauge map on the circle: g(u) = diag(exp(2 pi i m_j u)) in the
// lattice coordinate u, conjugated by a fixed unitary Q.
struct GaugeMap {
  std::vector<int> windings;
  MatC Q;  // unitary frame; identity if empty
  int rank() const { return int(windings.size()); }
  MatC eval(double u) const;
  // Maurer-Cartan coefficient: omega = g^-1 dg = Q diag(2 pi i m_j) Q* du.
  MatC maurer_cartan_coeff() const;
};

// Finite-difference check g^-1 g' vs the closed form, max error over a grid.
double maurer_cartan_fd_error(const GaugeMap& g, int gridpts, double h);

}  // namespace loopint
