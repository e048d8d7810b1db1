#include "loopint/qfunctional.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace loopint {

namespace {

CliffordC eval_block(const FlatTorus& X, const DiscreteLoop& loop, const BlockTerm& blk,
                     int stride) {
  const int n = X.dim();
  const int M = blk.order();
  if (M > 8) throw std::invalid_argument("q: block order above the supported cap (8)");
  if (has_coincident_points(blk))
    throw std::invalid_argument(
        "q: coincident point masses; run decompose_blocks on the form first");
  CliffordC out(n);
  if (M == 0) {
    out.c[0] = blk.prefactor;
    return out;
  }

  std::vector<int> pidx, didx;
  for (int i = 0; i < M; ++i)
    (blk.factors[i].profile.is_point() ? pidx : didx).push_back(i);
  const int D = int(didx.size());
  if (D > 3) throw std::invalid_argument("q: more than 3 density factors per block");

  // Quadrature nodes on the loop's own grid.
  std::vector<double> nodes;
  for (int j = 0; j < loop.knots(); j += stride) nodes.push_back(loop.times[j]);
  const int G = int(nodes.size());
  const double w0 = 1.0 / G;  // periodic trapezoid = equal weights

  // Field values: point factors once, density factors at every node.
  std::vector<CliffordC> pval(M, CliffordC(n));
  for (int i : pidx)
    pval[i] = blk.factors[i].field.eval_lat(X.Linv * loop.lift_at(blk.factors[i].profile.tau()));
  std::vector<std::vector<CliffordC>> dval(M);
  std::vector<std::vector<double>> dw(M);
  for (int i : didx) {
    dval[i].reserve(G);
    dw[i].reserve(G);
    for (int g = 0; g < G; ++g) {
      dval[i].push_back(blk.factors[i].field.eval_lat(X.Linv * loop.lift_at(nodes[g])));
      dw[i].push_back(w0 * blk.factors[i].profile.density().eval(nodes[g]));
    }
  }

  const std::vector<int> par = blk.parities();
  std::vector<std::pair<double, int>> events(M);  // (key, factor)

  std::vector<int> g(D, 0);
  CliffordC acc(n);
  while (true) {
    double weight = 1;
    for (int d = 0; d < D; ++d) weight *= dw[didx[d]][g[d]];
    if (weight != 0) {
      for (size_t a = 0; a < pidx.size(); ++a) {
        int i = pidx[a];
        // Ties at a shared node break toward the point mass (key offset 0).
        events[a] = {blk.factors[i].profile.tau(), i};
      }
      for (int d = 0; d < D; ++d)
        events[pidx.size() + d] = {nodes[g[d]] + 0.25 / (G * G), didx[d]};
      std::stable_sort(events.begin(), events.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      std::vector<int> perm(M);
      for (int s = 0; s < M; ++s) perm[s] = events[s].second;
      int sgn = super_sign(perm, par);
      // Product right to left: earliest insertion is the rightmost factor.
      CliffordC prod = CliffordC::scalar(n, 1);
      for (int s = 0; s < M; ++s) {
        int i = events[s].second;
        const CliffordC& v =
            blk.factors[i].profile.is_point()
                ? pval[i]
                : dval[i][g[std::find(didx.begin(), didx.end(), i) - didx.begin()]];
        prod = cl_mul(v, prod);
      }
      prod *= cplx(double(sgn) * weight);
      acc += prod;
    }
    int d = 0;
    for (; d < D; ++d) {
      if (++g[d] < G) break;
      g[d] = 0;
    }
    if (d == D) break;
  }
  acc *= blk.prefactor * cplx(std::pow(std::sqrt(0.5), M));
  return acc;
}

}  // namespace

CliffordC q_rel(const FlatTorus& X, const DiscreteLoop& loop, const IntegralForm& theta,
                const QOptions& opt) {
  CliffordC out(X.dim());
  for (const auto& blk : theta.blocks) out += eval_block(X, loop, blk, opt.stride);
  return out;
}

cplx q_loop(const FlatTorus& X, const DiscreteLoop& loop, const IntegralForm& theta,
            const QOptions& opt) {
  int sgn = spin_closing_sign(X, loop);
  return double(sgn) * supertrace(q_rel(X, loop, theta, opt));
}

double q_bound(int dim, const IntegralForm& theta) {
  return std::pow(std::sqrt(2.0), dim) * theta.norm_bound();
}

double q_defect(const FlatTorus& X, const DiscreteLoop& loop, const IntegralForm& theta) {
  cplx a = q_loop(X, loop, theta, {1});
  cplx b = q_loop(X, loop, theta, {2});
  return std::abs(a - b);
}

}  // namespace loopint
