#include "loopint/integrator.hpp"

#include <algorithm>
#include <cmath>

namespace loopint {

EstimateC integrate_mc(const FlatTorus& X, double T, const IntegralForm& theta,
                       const IntegratorOptions& opt) {
  LoopSampler sampler(X, T, opt.grid);
  double scal_weight = std::exp(-T * opt.scal_override / 8.0);
  return mc_expect_c(sampler, opt.mc, [&](const DiscreteLoop& loop, int sgn) {
    return scal_weight * double(sgn) * supertrace(q_rel(X, loop, theta, opt.q));
  });
}

cplx integrate_spectral(const FlatTorus& X, double T, const IntegralForm& theta, int cutoff,
                        int gl_nodes, double* tail) {
  const int n = X.dim();
  cplx total = 0;
  double worst_tail = 0;
  std::vector<double> gx, gw;
  gauss_legendre_01(gl_nodes, gx, gw);
  for (const auto& blk : theta.blocks) {
    const int M = blk.order();
    if (has_coincident_points(blk))
      throw std::invalid_argument("integrate_spectral: decompose coincident point masses first");
    if (M == 0) {
      // Str of the plain heat semigroup vanishes on the untwisted torus
      // (chirality pairing), so order-0 blocks contribute nothing.
      continue;
    }
    std::vector<int> pidx, didx;
    for (int i = 0; i < M; ++i)
      (blk.factors[i].profile.is_point() ? pidx : didx).push_back(i);
    const int D = int(didx.size());
    const std::vector<int> par = blk.parities();

    std::vector<int> g(D, 0);
    cplx bacc = 0;
    while (true) {
      double weight = 1;
      std::vector<std::pair<double, int>> events;
      for (int i : pidx) events.push_back({blk.factors[i].profile.tau(), i});
      for (int d = 0; d < D; ++d) {
        double t = gx[g[d]];
        weight *= gw[g[d]] * blk.factors[didx[d]].profile.density().eval(t);
        events.push_back({t, didx[d]});
      }
      if (weight != 0) {
        std::stable_sort(events.begin(), events.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<int> perm(M);
        std::vector<Insertion> ins(M);
        for (int s = 0; s < M; ++s) {
          perm[s] = events[s].second;
          ins[s] = {events[s].first, &blk.factors[events[s].second].field};
        }
        int sgn = super_sign(perm, par);
        double tl = 0;
        cplx v = heat_insertion_supertrace(X, T, ins, cutoff, &tl);
        worst_tail = std::max(worst_tail, tl);
        bacc += double(sgn) * weight * v;
      }
      int d = 0;
      for (; d < D; ++d) {
        if (++g[d] < gl_nodes) break;
        g[d] = 0;
      }
      if (d == D || D == 0) break;
    }
    total += blk.prefactor * std::pow(std::sqrt(0.5), M) * bacc;
  }
  (void)n;
  if (tail) *tail = worst_tail;
  return total;
}

RelativeEstimate integrate_relative(const FlatTorus& X, double T, const Vec& x,
                                    const IntegralForm& theta, const IntegratorOptions& opt) {
  const int n = X.dim();
  const uint32_t comps = uint32_t(1) << n;
  std::vector<Accumulator> ar(comps), ai(comps);
  double scal_weight = std::exp(-T * opt.scal_override / 8.0);
  // Pinned-loop machinery shared with mc_expect_pinned would hide the
  // per-component accumulation, so run the loop directly here.
  double r = std::sqrt(2 * T * std::log(1e14)) + 1e-12;
  std::vector<IVec> zs;
  std::vector<double> cdf;
  double wsum = 0;
  for (const auto& z : X.lattice_ball_coords(r)) {
    zs.push_back(z);
    cdf.push_back(wsum += std::exp(-(X.L * z.cast<double>()).squaredNorm() / (2 * T)));
  }
  double mass = std::pow(2 * M_PI * T, -0.5 * n) * wsum;
  for (auto& c : cdf) c /= wsum;
  for (long i = 0; i < opt.mc.n; ++i) {
    RngStream rng = RngStream::make(opt.mc.seed, uint64_t(opt.mc.start + i));
    double p = rng.uniform();
    size_t k = std::lower_bound(cdf.begin(), cdf.end(), p) - cdf.begin();
    if (k >= zs.size()) k = zs.size() - 1;
    Vec lam = X.L * zs[k].cast<double>();
    DiscreteLoop loop;
    loop.times.resize(opt.grid);
    for (int j = 0; j < opt.grid; ++j) loop.times[j] = double(j) / opt.grid;
    loop.lifts = sample_bridge(x, x + lam, T, opt.grid, rng);
    loop.closing = lam;
    int sgn = spin_closing_sign(X, loop);
    CliffordC v = q_rel(X, loop, theta, opt.q);
    v *= cplx(scal_weight * double(sgn));
    for (uint32_t c = 0; c < comps; ++c) {
      ar[c].add(v.c[c].real(), opt.mc.clip);
      ai[c].add(v.c[c].imag(), opt.mc.clip);
    }
  }
  RelativeEstimate out;
  out.value = CliffordC(n);
  out.n = opt.mc.n;
  double scale = std::pow(std::sqrt(2.0), n) * mass;
  for (uint32_t c = 0; c < comps; ++c) {
    Estimate er = ar[c].finalize(scale), ei = ai[c].finalize(scale);
    out.value.c[c] = {er.value, ei.value};
    out.stderr_ = std::max({out.stderr_, er.stderr_, ei.stderr_});
  }
  return out;
}

std::vector<EstimateC> integrate_refined(const FlatTorus& X, double T, const IntegralForm& theta,
                                         const std::vector<int>& partitions,
                                         const IntegratorOptions& opt) {
  LoopSampler sampler(X, T, opt.grid);
  double scal_weight = std::exp(-T * opt.scal_override / 8.0);
  std::vector<EstimateC> out;
  for (int m : partitions) {
    std::vector<double> part(m);
    for (int j = 0; j < m; ++j) part[j] = double(j) / m;
    out.push_back(mc_expect_c(sampler, opt.mc, [&](const DiscreteLoop& loop, int) {
      DiscreteLoop poly = polygonize(X, loop, part);
      int sgn = spin_closing_sign(X, poly);
      return scal_weight * double(sgn) * supertrace(q_rel(X, poly, theta, opt.q));
    }));
  }
  return out;
}

}  // namespace loopint
