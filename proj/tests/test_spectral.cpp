#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "loopint/spectral.hpp"

using namespace loopint;

TEST_CASE("gauss-legendre nodes integrate polynomials exactly") {
  std::vector<double> x, w;
  gauss_legendre_01(8, x, w);
  double s0 = 0, s9 = 0;
  for (int i = 0; i < 8; ++i) {
    s0 += w[i];
    s9 += w[i] * std::pow(x[i], 9.0);
  }
  CHECK(s0 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s9 == doctest::Approx(0.1).epsilon(1e-13));  // int_0^1 x^9 = 1/10
}

TEST_CASE("circle dirac spectrum and spin structure shift") {
  FlatTorus S = circle(2.0, 1);  // antiperiodic
  auto ev = circle_dirac_spectrum(S, 3);
  std::sort(ev.begin(), ev.end());
  // (2 pi / 2)(nu + 1/2): no zero mode, symmetric
  CHECK(ev.size() == 7);
  CHECK(ev[3] == doctest::Approx(M_PI * 0.5));
  for (double l : ev) CHECK(std::abs(l) > 1e-12);
  auto ev0 = circle_dirac_spectrum(circle(2.0, 0), 3);
  CHECK(*std::min_element(ev0.begin(), ev0.end(),
                          [](double a, double b) { return std::abs(a) < std::abs(b); }) == 0.0);
}

TEST_CASE("heat insertion supertrace: no insertions and plain traces") {
  FlatTorus X = unit_torus(2);
  double tail = 0;
  // empty insertion list: supertrace of the heat semigroup on spinors is 0
  cplx z = heat_insertion_supertrace(X, 0.7, {}, 20, &tail);
  CHECK(std::abs(z) < 1e-13);
  CHECK(tail < 1e-10);
}

TEST_CASE("heat insertion supertrace against a direct mode-sum oracle") {
  // Str(e^{-T(1-tau)H} c(f) e^{-T tau H}) with f = e^{2 pi i <w,u>} dx_mask:
  // momentum bookkeeping done from scratch with dense Cl_2 matrices over a
  // mode box.
  IVec eps(2);
  eps << 1, 0;
  FlatTorus X = unit_torus(2, eps);
  double T = 0.55, tau = 0.3;
  // two insertions with opposite waves so the total momentum transfer is 0
  FormField f1 = FormField::mode(2, 0b01, (IVec(2) << 1, -1).finished(), cplx(0.8, 0.1));
  FormField f2 = FormField::mode(2, 0b10, (IVec(2) << -1, 1).finished(), cplx(0.5, -0.4));
  std::vector<Insertion> ins{{0.3, &f1}, {0.7, &f2}};
  cplx got = heat_insertion_supertrace(X, T, ins, 24);

  // oracle: spinor modes are k + eps/2; the first insertion carries the
  // momentum from k to k + w and the second brings it back; the Clifford
  // part is str(c(f2) c(f1)) once for the whole sum
  cplx strp = cplx(0.5, -0.4) * cplx(0.8, 0.1) *
              supertrace(cl_mul(CliffordC::monomial(2, 0b10), CliffordC::monomial(2, 0b01)));
  double msum = 0;
  const double ew = 0.5 * (2 * M_PI) * (2 * M_PI);
  for (int a = -24; a <= 24; ++a)
    for (int b = -24; b <= 24; ++b) {
      Vec k1(2);
      k1 << a + 0.5, b;
      Vec k2 = k1 + (IVec(2) << 1, -1).finished().cast<double>().matrix();
      msum += std::exp(-T * ew * (tau * k1.squaredNorm() + 0.4 * k2.squaredNorm() +
                                  0.3 * k1.squaredNorm()));
    }
  CHECK(std::abs(got - strp * msum) < 1e-10);
}

TEST_CASE("insertions with unbalanced momentum transfer vanish") {
  FlatTorus X = unit_torus(2);
  FormField f = FormField::mode(2, 0b01, (IVec(2) << 1, 0).finished(), 1.0);
  cplx z = heat_insertion_supertrace(X, 0.4, {{0.5, &f}}, 20);
  CHECK(std::abs(z) < 1e-13);
}

TEST_CASE("cutoff stability of the insertion supertrace") {
  IVec eps(2);
  eps << 1, 1;
  FlatTorus X = unit_torus(2, eps);
  FormField f1 = FormField::mode(2, 0b01, (IVec(2) << 2, 0).finished(), 1.0);
  FormField f2 = FormField::mode(2, 0b10, (IVec(2) << -2, 0).finished(), 1.0);
  std::vector<Insertion> ins{{0.2, &f1}, {0.9, &f2}};
  cplx lo = heat_insertion_supertrace(X, 0.5, ins, 16);
  cplx hi = heat_insertion_supertrace(X, 0.5, ins, 32);
  CHECK(std::abs(lo - hi) < 1e-8);
}

TEST_CASE("landau levels match the oscillator reduction oracle") {
  Mat L(2, 2);
  L << 1.0, 0.0, 0.0, 1.3;
  FlatTorus X(L, IVec::Zero(2));
  for (int k : {1, 2, -2}) {
    auto lad = landau_levels(X, k, 4);
    double B = 2 * M_PI * std::abs(k) / X.vol;
    // multiplicity |k| realized as one ladder per Fourier sector nu
    for (int nu = 0; nu < std::abs(k); ++nu) {
      auto osc = magnetic_sector_levels(X, k, nu, 3, 1200);
      for (int j = 0; j < 3; ++j)
        CHECK(osc[j] == doctest::Approx(B * (j + 0.5)).epsilon(2e-3));
    }
    // ladder bookkeeping: level j has energy B*j, multiplicity |k| per
    // chirality except the kernel
    CHECK(lad[0].energy == doctest::Approx(0.0));
    CHECK(lad[0].multiplicity == std::abs(k));
    CHECK(lad[0].chirality == (k > 0 ? 1 : -1));
  }
}

TEST_CASE("flux heat supertrace telescopes to the flux for all T") {
  FlatTorus X = unit_torus(2);
  for (int k : {-2, -1, 1, 3}) {
    for (double T : {0.2, 1.0, 4.0}) {
      cplx s = flux_heat_supertrace(X, k, T);
      CHECK(std::abs(s - cplx(k)) < 1e-10);
    }
  }
}

TEST_CASE("galerkin heat trace against free and constant potentials") {
  FlatTorus X = circle(1.0, 0);
  // V = 0: matches the exact theta-sum trace
  FormField zero{1, 0, {}};
  CHECK(scalar_heat_trace(X, 0.8, zero, 24) ==
        doctest::Approx(heat_trace_dual(X, 0.8, false)).epsilon(1e-10));
  // constant shift factors out of the trace
  FormField c0 = FormField::constant(1, 0, 0.7);
  CHECK(scalar_heat_trace(X, 0.8, c0, 24) ==
        doctest::Approx(std::exp(-0.8 * 0.7) * heat_trace_dual(X, 0.8, false)).epsilon(1e-10));
  // diagonal kernel integrates to the trace (uniform grid, mode potential)
  FormField V = FormField::constant(1, 0, 0.3);
  V.terms.push_back({0, (IVec(1) << 1).finished(), 0.4});
  V.terms.push_back({0, (IVec(1) << -1).finished(), 0.4});
  double tr = scalar_heat_trace(X, 0.6, V, 20);
  double acc = 0;
  const int G = 64;
  for (int g = 0; g < G; ++g)
    acc += scalar_heat_kernel_diag(X, 0.6, V, 20, (Vec(1) << double(g) / G).finished()) / G;
  CHECK(acc == doctest::Approx(tr).epsilon(1e-8));
}

TEST_CASE("tracked spectral flow of circle gauge families") {
  FlatTorus S = circle(1.0, 1);
  for (int m : {-3, -1, 1, 2, 3}) {
    GaugeMap g{{m}, {}};
    auto eigs = [&](double s) { return circle_family_eigs(S, g, s, 12); };
    FlowResult r = spectral_flow_tracked(eigs, 160);
    CHECK(r.flow == m);
    CHECK(int(r.crossings.size()) >= std::abs(m));
  }
  // rank-2 family: net flow adds up
  GaugeMap g2{{2, -1}, {}};
  auto eigs2 = [&](double s) { return circle_family_eigs(S, g2, s, 12); };
  CHECK(spectral_flow_tracked(eigs2, 240).flow == 1);
}

TEST_CASE("flow integral matches the winding") {
  FlatTorus S = circle(1.0, 1);
  for (int m : {-2, 1, 3}) {
    GaugeMap g{{m}, {}};
    double v = getzler_flow_integral(S, g, 0.35, 48, 40);
    CHECK(v == doctest::Approx(double(m)).epsilon(1e-3));
  }
}

TEST_CASE("determinant toy identity across the twist angle") {
  for (int j = 1; j < 20; ++j) {
    double alpha = j * 0.3;
    CHECK(zeta_toy_lhs(alpha) == doctest::Approx(4 * std::pow(std::sin(alpha / 2), 2)).epsilon(1e-14));
    CHECK(std::abs(zeta_toy_lhs(alpha) - zeta_toy_rhs(alpha)) < 1e-10);
  }
}
