#include "loopint/bismut.hpp"

#include <cmath>

namespace loopint {

cplx bch_even_q(const FlatTorus& X, const TwistBundle& V, const DiscreteLoop& loop, double T,
                double scal_override, int substeps) {
  const int n = X.dim();
  CliffordMat pot = half_clifford_curvature(X, V);
  if (scal_override != 0) {
    CliffordMat s = CliffordMat::identity(n, V.rank());
    s *= cplx(scal_override / 8.0);
    pot += s;
  }
  CliffordMat U = path_ordered_exp(X, V, loop, T, [&](const Vec&) { return pot; }, substeps);
  MatC J = closure_matrix(X, V, loop);
  for (auto& c : U.comp) c = J * c;
  return double(spin_closing_sign(X, loop)) * cm_supertrace(U, V.gradings());
}

cplx bch_even_series(const FlatTorus& X, const TwistBundle& V, const DiscreteLoop& loop,
                     double T, int terms, double* tail_bound) {
  const int n = X.dim();
  CliffordMat hol = loop_holonomy(X, V, loop, n);
  CliffordMat cf = half_clifford_curvature(X, V);
  cf *= 2.0;  // c(F) itself; the 1/2 sits in the series prefactor below
  cplx acc = 0;
  CliffordMat pow = CliffordMat::identity(n, V.rank());
  double fact = 1;
  for (int N = 0; N <= terms; ++N) {
    if (N > 0) {
      pow = cm_mul(cf, pow);
      fact *= N;
    }
    CliffordMat term = cm_mul(pow, hol);
    acc += std::pow(-T / 2.0, N) / fact * cm_supertrace(term, V.gradings());
  }
  if (tail_bound) {
    double x = cf.coeff_l1() * T / 2.0;
    double t = std::pow(x, terms + 1);
    for (int j = 2; j <= terms + 1; ++j) t /= j;
    // Crude remainder: first dropped term / (1 - x/(terms+2)) when it decays.
    *tail_bound = std::pow(std::sqrt(2.0), n) * double(V.rank()) * t /
                  std::max(0.5, 1.0 - x / (terms + 2));
  }
  return double(spin_closing_sign(X, loop)) * acc;
}

EstimateC integrate_bch_even(const FlatTorus& X, const TwistBundle& V, double T,
                             const IntegratorOptions& opt) {
  LoopSampler sampler(X, T, opt.grid);
  return mc_expect_c(sampler, opt.mc, [&](const DiscreteLoop& loop, int) {
    return bch_even_q(X, V, loop, T, opt.scal_override);
  });
}

cplx bch_odd_q(const FlatTorus& S, const GaugeMap& g, const DiscreteLoop& loop, double T,
               int s_nodes) {
  (void)T;
  double ell = S.L(0, 0);
  double w = double(winding_coords(S, loop)[0]);
  std::vector<double> xs, ws;
  gauss_legendre_01(s_nodes, xs, ws);
  cplx acc = 0;
  for (int m : g.windings) {
    if (m == 0) continue;
    cplx sint = 0;
    for (int q = 0; q < s_nodes; ++q)
      sint += ws[q] * std::exp(cplx(0, -2 * M_PI * m * xs[q] * w));
    acc += cplx(0, 2 * M_PI * m / ell) * sint;
  }
  // The two 2^{+-1/2} factors (current normalization, str of the generator)
  // cancel; the tau integral telescopes because the transport phases around
  // the loop do not depend on the insertion time.
  return double(spin_closing_sign(S, loop)) * acc;
}

EstimateC integrate_bch_odd(const FlatTorus& S, const GaugeMap& g, double T,
                            const IntegratorOptions& opt) {
  LoopSampler sampler(S, T, opt.grid);
  return mc_expect_c(sampler, opt.mc, [&](const DiscreteLoop& loop, int) {
    return bch_odd_q(S, g, loop, T);
  });
}

double beta_weight(int N) {
  double v = 1;
  for (int j = 1; j <= N; ++j) v *= double(j) / double(N + j);
  return v / double(2 * N + 1);
}

EquivarianceCheck equivariance_residual(const FlatTorus& X, const TwistBundle& V,
                                        const DiscreteLoop& loop, const std::vector<Vec>& v,
                                        double eps) {
  const auto grading = V.gradings();
  auto hol_trace = [&](const DiscreteLoop& l) {
    CliffordMat h = loop_holonomy(X, V, l, X.dim());
    return double(spin_closing_sign(X, l)) * cm_fiber_trace(h, grading);
  };
  DiscreteLoop pert = loop;
  for (int j = 0; j < loop.knots(); ++j) pert.lifts[j] += eps * v[j];
  EquivarianceCheck out;
  out.lhs = (hol_trace(pert) - hol_trace(loop)) / eps;

  // Curvature contraction int_0^1 F(dot gamma, v) dt per summand; abelian, so
  // the transports collapse onto the full holonomy.
  MatC F = curvature_matrix(X, V);
  cplx rhs = 0;
  const int m = loop.knots();
  for (int s = 0; s < V.rank(); ++s) {
    double integral_re = 0, integral_im = 0;
    cplx f12 = F(s, s);  // F(e1, e2) in the orthonormal frame
    for (int j = 0; j < m; ++j) {
      double ta = loop.times[j];
      double tb = (j + 1 < m) ? loop.times[j + 1] : loop.times[0] + 1;
      Vec pa = loop.lifts[j];
      Vec pb = (j + 1 < m) ? loop.lifts[j + 1] : Vec(loop.lifts[0] + loop.closing);
      Vec dg = (pb - pa) / (tb - ta);
      Vec vm = 0.5 * (v[j] + v[(j + 1) % m]);  // midpoint of the linear field
      double area = dg[0] * vm[1] - dg[1] * vm[0];
      cplx contrib = f12 * area * (tb - ta);
      integral_re += contrib.real();
      integral_im += contrib.imag();
    }
    CliffordMat h = loop_holonomy(X, V, loop, X.dim());
    rhs += double(spin_closing_sign(X, loop)) * double(grading[s]) * h.comp[0](s, s) *
           cplx(integral_re, integral_im);
  }
  out.rhs = rhs;
  return out;
}

}  // namespace loopint
