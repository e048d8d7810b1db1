#include <doctest.h>

#include <cmath>

#include "loopint/integrator.hpp"
#include "loopint/localization.hpp"

using namespace loopint;

TEST_CASE("exponential of nilpotent forms") {
  const int n = 4;
  CliffordC a(n);
  a.c[0b0011] = 0.7;
  a.c[0b1100] = cplx(0.0, 2.0);
  CliffordC e = form_exp(a);
  CHECK(e.c[0] == cplx(1.0));
  CHECK(e.c[0b0011] == cplx(0.7));
  // cross term: (1/2)(a ^ a) = a12 * a34 e1234 (forms of even degree commute)
  CHECK(std::abs(e.c[0b1111] - cplx(0.7) * cplx(0, 2.0)) < 1e-14);
  CHECK_THROWS_AS((void)form_exp(CliffordC::scalar(n, 1.0)), std::invalid_argument);
}

TEST_CASE("a-hat of zero curvature is one") {
  const int n = 2;
  FormMat R(n, std::vector<CliffordC>(n, CliffordC(n)));
  CliffordC a = a_hat_form(R, 0.8);
  CHECK(a.c[0] == cplx(1.0));
  for (uint32_t m = 1; m < 4u; ++m) CHECK(a.c[m] == cplx(0.0));
}

TEST_CASE("a-hat of a synthetic curvature matches the series by hand") {
  // R = [[0, theta], [-theta, 0]], theta = a e12 + b e34; the eigenvalue
  // pair +-i theta gives det^{1/2}(x/sinh x) = 1 + a b /(12 T^2) e1234
  const int n = 4;
  double a = 0.6, b = -1.1, T = 0.7;
  CliffordC theta(n);
  theta.c[0b0011] = a;
  theta.c[0b1100] = b;
  FormMat R(2, std::vector<CliffordC>(2, CliffordC(n)));
  R[0][1] = theta;
  R[1][0] = theta;
  R[1][0] *= cplx(-1.0);
  CliffordC ah = a_hat_form(R, T);
  CHECK(ah.c[0] == cplx(1.0));
  CHECK(std::abs(ah.c[0b1111] - cplx(a * b / (12.0 * T * T))) < 1e-14);
  for (uint32_t m : {0b0011u, 0b0101u, 0b1100u}) CHECK(std::abs(ah.c[m]) < 1e-15);
}

TEST_CASE("character forms of twist bundles") {
  FlatTorus X = unit_torus(2);
  CliffordC triv = chern_character_form(X, TwistBundle::graded_trivial(3, 1), 0.5);
  CHECK(triv.c[0] == cplx(2.0));
  CHECK(triv.c[0b11] == cplx(0.0));
  double T = 0.9;
  int k = 2;
  CliffordC fl = chern_character_form(X, TwistBundle::flux_line(k), T);
  CHECK(fl.c[0] == cplx(1.0));
  CHECK(std::abs(fl.c[0b11] - cplx(0, -T * 2 * M_PI * k / X.vol)) < 1e-14);
}

TEST_CASE("even localized value is the flux index with the pinned phase") {
  Mat L(2, 2);
  L << 1.4, 0.0, 0.0, 0.8;
  FlatTorus X(L, IVec::Zero(2));
  for (int k : {-2, -1, 1, 3}) {
    for (double T : {0.2, 1.0, 5.0}) {
      cplx v = localized_rhs_even(X, TwistBundle::flux_line(k), T);
      CHECK(std::abs(v - index_phase_even(2) * double(k)) < 1e-12);
    }
  }
  // purely flat summands contribute their graded rank times zero top form
  CHECK(std::abs(localized_rhs_even(X, TwistBundle::graded_trivial(2, 1), 0.7)) < 1e-14);
  // additivity over direct sums
  TwistBundle s = TwistBundle::direct_sum(TwistBundle::flux_line(2), TwistBundle::flux_line(-1));
  cplx lhs = localized_rhs_even(X, s, 0.6);
  cplx rhs = localized_rhs_even(X, TwistBundle::flux_line(2), 0.6) +
             localized_rhs_even(X, TwistBundle::flux_line(-1), 0.6);
  CHECK(std::abs(lhs - rhs) < 1e-13);
}

TEST_CASE("odd localized value matches the phase dictionary exactly") {
  FlatTorus S = circle(1.0, 1);
  for (double T : {0.25, 1.0, 3.0}) {
    for (int m : {-3, 1, 2}) {
      GaugeMap g{{m}, {}};
      cplx v = localized_rhs_odd(S, g, T);
      cplx want = index_phase_odd(1) * std::sqrt(2 * M_PI / T) * double(m);
      CHECK(std::abs(v - want) < 1e-13);
    }
  }
  // total winding adds over the fiber
  GaugeMap g2{{2, -1, 4}, {}};
  CHECK(std::abs(localized_rhs_odd(S, g2, 0.5) -
                 index_phase_odd(1) * std::sqrt(2 * M_PI / 0.5) * 5.0) < 1e-12);
}
