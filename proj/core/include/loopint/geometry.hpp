#pragma once
// Flat backends: R^n / Lambda with the Euclidean metric, a spin structure
// labelled by eps in {0,1}^n (one bit per lattice generator), piecewise
// geodesic loops kept as lifts to the universal cover, and the exact heat
// kernel as a lattice theta sum.

#include <Eigen/Dense>
#include <vector>

#include "loopint/clifford.hpp"

namespace loopint {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using IVec = Eigen::VectorXi;

struct FlatTorus {
  Mat L;       // columns are the lattice generators
  IVec eps;    // spin structure bits, one per generator
  Mat Linv;    // cached inverse
  double vol = 0;

  FlatTorus() = default;
  FlatTorus(Mat lattice, IVec spin);

  int dim() const { return int(L.rows()); }
  // Lattice coordinates of an ambient point and back.
  Vec to_lattice_coords(const Vec& x) const { return Linv * x; }
  Vec from_lattice_coords(const Vec& u) const { return L * u; }
  // Representative in the fundamental domain L*[0,1)^n.
  Vec wrap(const Vec& x) const;
  // Columns of L^{-T}: generators of the dual lattice.
  Mat dual_basis() const { return Linv.transpose(); }

  // All lattice vectors with |lambda| <= r (componentwise box enumeration).
  std::vector<Vec> lattice_ball(double r) const;
  std::vector<IVec> lattice_ball_coords(double r) const;
};

// Standard square torus of side 1 per axis.
FlatTorus unit_torus(int n, IVec eps);
FlatTorus unit_torus(int n);  // periodic spin structure (eps = 0)
// Circle of circumference ell.
FlatTorus circle(double ell = 1.0, int eps_bit = 0);

// Heat kernel p_t(x,y) of Delta/2 as a theta sum over the lattice; image
// terms are truncated once they are below 1e-16 relative to the lead term.
double heat_kernel(const FlatTorus& X, double t, const Vec& x, const Vec& y);

// Total heat trace Z(T) = Tr exp(-T Delta/2) over functions with boundary
// twist eps (spinor components see the twist; eps = 0 gives functions).
// Computed as a dual-lattice sum: sum over k in Lambda*+delta of
// exp(-T(2pi|k|)^2/2), delta = (1/2) sum eps_i b_i.
double heat_trace_dual(const FlatTorus& X, double T, bool twisted);
// Same quantity through Poisson summation (position-side theta sum):
// vol * sum over lambda of (2 pi T)^{-n/2} (+-) exp(-|lambda|^2/(2T)).
double heat_trace_poisson(const FlatTorus& X, double T, bool twisted);

// Shortest representative of y - x modulo the lattice.
Vec geodesic_displacement(const FlatTorus& X, const Vec& x, const Vec& y);

// A closed piecewise-geodesic loop parametrized by [0,1), stored as lifts at
// the knot times; the final segment runs from lifts.back() to lifts[0] +
// closing, with closing a lattice vector (the winding).
struct DiscreteLoop {
  std::vector<double> times;  // strictly increasing in [0,1)
  std::vector<Vec> lifts;
  Vec closing;

  int knots() const { return int(times.size()); }
  // Piecewise-linear lift at t in [times[0], times[0]+1).
  Vec lift_at(double t) const;
  double length() const;
  // Discrete Dirichlet energy (1/2) int |dot gamma|^2.
  double energy() const;
};

// Constant loop at x on the uniform m-point grid.
DiscreteLoop constant_loop(const Vec& x, int m);

// Resample a loop on the given partition of [0,1), joining consecutive
// sampled points by minimizing geodesics (displacements re-reduced mod the
// lattice, so the winding of the polygon may differ from the original).
DiscreteLoop polygonize(const FlatTorus& X, const DiscreteLoop& loop,
                        const std::vector<double>& partition);

// Integer winding coordinates of the loop's closing vector.
IVec winding_coords(const FlatTorus& X, const DiscreteLoop& loop);

// Spin parallel transport around the full loop in the lift trivialization:
// the transport itself is the identity, and closing up contributes
// (-1)^{<eps, w>} for winding coordinates w.
int spin_closing_sign(const FlatTorus& X, const DiscreteLoop& loop);

// Transport between interior times in the cover trivialization carries sign
// (-1)^{<eps, m(t)-m(s)>} with m(u) the integer part of the lattice
// coordinates of the lift (fundamental-domain crossing count).
int spin_transport_sign(const FlatTorus& X, const DiscreteLoop& loop, double s, double t);

// Canonical two-form on loop space, omega(v,w) = int_0^1 <v, nabla_{dot
// gamma} w> dt, for piecewise-linear vector fields given at the knots.
double canonical_two_form(const DiscreteLoop& loop, const std::vector<Vec>& v,
                          const std::vector<Vec>& w);

}  // namespace loopint
