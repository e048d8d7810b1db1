#include <doctest.h>

#include <cmath>

#include "loopint/spectral.hpp"
#include "loopint/wiener.hpp"

using namespace loopint;

TEST_CASE("rng streams are deterministic and decorrelated") {
  RngStream a = RngStream::make(7, 3);
  RngStream b = RngStream::make(7, 3);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  RngStream c = RngStream::make(7, 4);
  int same = 0;
  RngStream a2 = RngStream::make(7, 3);
  for (int i = 0; i < 100; ++i) same += (a2.next_u64() == c.next_u64());
  CHECK(same == 0);
  // uniforms land strictly inside (0,1); normals have sane moments
  RngStream d = RngStream::make(1, 0);
  double s1 = 0, s2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    double u = d.uniform();
    CHECK(u > 0);
    CHECK(u < 1);
    double z = d.normal();
    s1 += z;
    s2 += z * z;
  }
  CHECK(std::abs(s1 / n) < 4.0 / std::sqrt(double(n)));
  CHECK(std::abs(s2 / n - 1.0) < 6.0 / std::sqrt(double(n)));
}

TEST_CASE("accumulator merge matches a single pass") {
  RngStream r = RngStream::make(11, 0);
  std::vector<double> xs(999);
  for (auto& x : xs) x = r.normal() * 3 + 1;
  Accumulator whole;
  for (double x : xs) whole.add(x, 1e12);
  Accumulator left, right;
  for (size_t i = 0; i < xs.size(); ++i) (i < 400 ? left : right).add(xs[i], 1e12);
  left.merge(right);
  CHECK(left.n == whole.n);
  CHECK(left.mean == doctest::Approx(whole.mean).epsilon(1e-14));
  CHECK(left.m2 == doctest::Approx(whole.m2).epsilon(1e-12));
  // clip and nan flags propagate
  Accumulator flag;
  flag.add(5.0, 2.0);
  CHECK(flag.clipped == 1);
  flag.add(std::nan(""), 2.0);
  CHECK(flag.has_nan);
}

TEST_CASE("sampler mass equals the unsigned heat trace") {
  Mat L(2, 2);
  L << 1.1, 0.2, 0.0, 0.9;
  IVec eps(2);
  eps << 1, 0;
  FlatTorus X(L, eps);
  for (double T : {0.3, 1.0, 2.5}) {
    LoopSampler s(X, T, 32);
    // dual-side route is an independent computation of the same trace
    CHECK(s.mass == doctest::Approx(heat_trace_dual(X, T, false)).epsilon(1e-10));
  }
  // f = 1 integrates to the mass exactly; f = sign estimates the
  // spin-twisted trace with statistical error
  LoopSampler s(X, 1.0, 16);
  McOptions opt;
  opt.n = 160000;
  Estimate e1 = mc_expect(s, opt, [](const DiscreteLoop&, int) { return 1.0; });
  CHECK(e1.value == doctest::Approx(s.mass).epsilon(1e-12));
  CHECK(e1.n == 160000);
  Estimate es = mc_expect(s, opt, [](const DiscreteLoop&, int sign) { return double(sign); });
  CHECK(std::abs(es.value - heat_trace_dual(X, 1.0, true)) < 3 * es.stderr_);
}

TEST_CASE("bridge increments have the right variance profile") {
  // midpoint of a T-bridge from 0 to 0 has variance T/4 per coordinate
  Vec a = Vec::Zero(1), b = Vec::Zero(1);
  double T = 0.7;
  RngStream r = RngStream::make(5, 9);
  const int n = 60000;
  double s2 = 0, send = 0;
  for (int i = 0; i < n; ++i) {
    auto xs = sample_bridge(a, b, T, 8, r);
    CHECK(xs.size() == 8);
    CHECK(xs[0][0] == 0.0);
    s2 += xs[4][0] * xs[4][0];
    send += xs[7][0] * xs[7][0];  // var at t=7/8 is T*(7/8)(1/8)
  }
  double var_mid = s2 / n, var_end = send / n;
  CHECK(var_mid == doctest::Approx(T / 4).epsilon(0.03));
  CHECK(var_end == doctest::Approx(T * 7.0 / 64).epsilon(0.03));
}

TEST_CASE("sampled loops close up with lattice windings") {
  FlatTorus X = unit_torus(2, (IVec(2) << 1, 1).finished());
  LoopSampler s(X, 1.5, 24);
  RngStream r = RngStream::make(3, 0);
  int nontrivial = 0;
  for (int i = 0; i < 200; ++i) {
    int sign = 0;
    DiscreteLoop l = s.sample(r, &sign);
    CHECK(l.knots() == 24);
    IVec w = winding_coords(X, l);
    Vec residue = l.closing - X.L * w.cast<double>();
    CHECK(residue.norm() < 1e-12);
    CHECK(sign == spin_closing_sign(X, l));
    nontrivial += (w.squaredNorm() != 0);
  }
  CHECK(nontrivial > 10);  // T = 1.5 makes winding sectors common
}

TEST_CASE("monte carlo estimates are independent of the worker layout") {
  FlatTorus X = unit_torus(1);
  LoopSampler s(X, 0.8, 16);
  auto f = [](const DiscreteLoop& l, int sign) { return sign * l.energy(); };
  McOptions o1;
  o1.n = 20000;
  o1.seed = 42;
  o1.workers = 1;
  McOptions o4 = o1;
  o4.workers = 4;
  Estimate e1 = mc_expect(s, o1, f);
  Estimate e4 = mc_expect(s, o4, f);
  CHECK(e1.value == e4.value);  // bit identical
  CHECK(e1.stderr_ == e4.stderr_);
}

TEST_CASE("two half runs merge into the full run") {
  FlatTorus X = unit_torus(1);
  LoopSampler s(X, 0.8, 16);
  auto f = [](const DiscreteLoop& l, int sign) { return sign * l.length(); };
  McOptions full;
  full.n = 10000;
  full.seed = 9;
  McOptions lo = full, hi = full;
  lo.n = 5000;
  hi.n = 5000;
  hi.start = 5000;
  Estimate ef = mc_expect(s, full, f);
  Estimate el = mc_expect(s, lo, f);
  Estimate eh = mc_expect(s, hi, f);
  double merged = 0.5 * (el.value + eh.value);
  CHECK(merged == doctest::Approx(ef.value).epsilon(1e-13));
}

TEST_CASE("feynman-kac against the galerkin heat trace") {
  // Tr exp(-T(Delta/2 + V)) = Z * E[exp(-T int V(gamma))] on the untwisted
  // unit circle, potential V = 0.8 cos(2 pi x) + 0.3.
  FlatTorus X = circle(1.0, 0);
  double T = 0.6;
  auto V = [](double x) { return 0.8 * std::cos(2 * M_PI * x) + 0.3; };
  FormField Vf = FormField::constant(1, 0, 0.3);
  Vf.terms.push_back({0, (IVec(1) << 1).finished(), 0.4});
  Vf.terms.push_back({0, (IVec(1) << -1).finished(), 0.4});
  double exact = scalar_heat_trace(X, T, Vf, 24);
  LoopSampler s(X, T, 64);
  McOptions opt;
  opt.n = 200000;
  opt.seed = 17;
  opt.workers = 4;
  Estimate e = mc_expect(s, opt, [&](const DiscreteLoop& l, int sign) {
    double acc = 0;
    for (int j = 0; j < l.knots(); ++j) acc += V(l.lift_at((j + 0.5) / l.knots())[0]);
    return sign * std::exp(-T * acc / l.knots());
  });
  CHECK(std::abs(e.value - exact) < 3 * e.stderr_ + 2e-3);
}

TEST_CASE("pinned expectation reproduces the diagonal heat kernel") {
  FlatTorus X = unit_torus(1, (IVec(1) << 1).finished());
  double T = 0.9;
  Vec x = (Vec(1) << 0.3).finished();
  McOptions opt;
  opt.n = 40000;
  double unsgn = 0, sgnd = 0;
  for (const auto& lam : X.lattice_ball(40 * std::sqrt(T))) {
    IVec z = (X.Linv * lam).array().round().cast<int>();
    double sgn = (z.dot(X.eps) % 2 == 0) ? 1 : -1;
    double w = std::exp(-lam.squaredNorm() / (2 * T)) / std::sqrt(2 * M_PI * T);
    unsgn += w;
    sgnd += sgn * w;
  }
  // f = 1 gives the unsigned diagonal kernel exactly
  EstimateC e1 = mc_expect_pinned(X, T, 16, x, opt,
                                  [](const DiscreteLoop&, int) { return cplx(1); });
  CHECK(e1.value().real() == doctest::Approx(unsgn).epsilon(1e-10));
  CHECK(e1.value().imag() == 0.0);
  // f = sector sign estimates the spin-signed kernel
  EstimateC es = mc_expect_pinned(X, T, 16, x, opt,
                                  [](const DiscreteLoop&, int sign) { return cplx(sign); });
  CHECK(std::abs(es.value().real() - sgnd) < 3 * es.stderr_());
}

TEST_CASE("small T concentrates the loops") {
  FlatTorus X = unit_torus(2);
  LoopSampler s(X, 0.01, 16);
  RngStream r = RngStream::make(2, 0);
  for (int i = 0; i < 50; ++i) {
    DiscreteLoop l = s.sample(r);
    CHECK(winding_coords(X, l).squaredNorm() == 0);
    double spread = 0;
    for (const auto& p : l.lifts) spread = std::max(spread, (p - l.lifts[0]).norm());
    CHECK(spread < 0.45);
  }
}
