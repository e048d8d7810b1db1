#include <doctest.h>

#include "loopint/geometry.hpp"

using namespace loopint;

namespace {

Mat skew_lattice() {
  Mat L(2, 2);
  L << 1.0, 0.3, 0.0, 0.8;
  return L;
}

}  // namespace

TEST_CASE("wrap and coordinate round trips") {
  FlatTorus X(skew_lattice(), IVec::Zero(2));
  Vec x(2);
  x << 3.7, -2.2;
  Vec w = X.wrap(x);
  Vec u = X.to_lattice_coords(w);
  CHECK(u[0] >= 0.0);
  CHECK(u[0] < 1.0);
  CHECK(u[1] >= 0.0);
  CHECK(u[1] < 1.0);
  // difference is a lattice vector
  Vec d = X.to_lattice_coords(x - w);
  CHECK(std::abs(d[0] - std::round(d[0])) < 1e-12);
  CHECK(std::abs(d[1] - std::round(d[1])) < 1e-12);
}

TEST_CASE("heat kernel symmetry, positivity, normalization") {
  FlatTorus X(skew_lattice(), IVec::Zero(2));
  Vec x(2), y(2);
  x << 0.2, 0.5;
  y << 0.9, 0.1;
  double t = 0.3;
  CHECK(heat_kernel(X, t, x, y) == doctest::Approx(heat_kernel(X, t, y, x)).epsilon(1e-13));
  CHECK(heat_kernel(X, t, x, y) > 0);
  // int p_t(x, y) dy = 1 over the torus (64^2 lattice grid, exact for the
  // rapidly converging Fourier tail at this t)
  const int m = 64;
  double s = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Vec u(2);
      u << double(i) / m, double(j) / m;
      s += heat_kernel(X, t, x, X.from_lattice_coords(u));
    }
  s *= X.vol / double(m * m);
  CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("heat kernel semigroup property") {
  FlatTorus X = unit_torus(1);
  Vec x(1), y(1);
  x << 0.15;
  y << 0.65;
  double t = 0.25, s = 0.4;
  const int m = 256;
  double conv = 0;
  for (int i = 0; i < m; ++i) {
    Vec z(1);
    z << double(i) / m;
    conv += heat_kernel(X, t, x, z) * heat_kernel(X, s, z, y);
  }
  conv /= m;
  CHECK(conv == doctest::Approx(heat_kernel(X, t + s, x, y)).epsilon(1e-10));
}

TEST_CASE("dual and Poisson theta representations of the heat trace agree") {
  for (double T : {0.1, 0.5, 1.0, 3.0}) {
    FlatTorus X(skew_lattice(), IVec::Zero(2));
    CHECK(heat_trace_dual(X, T, false) ==
          doctest::Approx(heat_trace_poisson(X, T, false)).epsilon(1e-13));
    IVec eps(2);
    eps << 1, 0;
    FlatTorus Xt(skew_lattice(), eps);
    CHECK(heat_trace_dual(Xt, T, true) ==
          doctest::Approx(heat_trace_poisson(Xt, T, true)).epsilon(1e-12));
    // circle, both spin structures
    for (int e : {0, 1}) {
      FlatTorus S = circle(1.0, e);
      CHECK(heat_trace_dual(S, T, true) ==
            doctest::Approx(heat_trace_poisson(S, T, true)).epsilon(1e-12));
    }
  }
}

TEST_CASE("geodesic displacement matches brute-force minimization") {
  FlatTorus X(skew_lattice(), IVec::Zero(2));
  uint64_t st = 99;
  auto rnd = [&] {
    st ^= st << 13; st ^= st >> 7; st ^= st << 17;
    return double(st % 1000000) / 1000000.0;
  };
  for (int trial = 0; trial < 200; ++trial) {
    Vec x = X.from_lattice_coords((Vec(2) << rnd(), rnd()).finished());
    Vec y = X.from_lattice_coords((Vec(2) << rnd(), rnd()).finished());
    Vec d = geodesic_displacement(X, x, y);
    double best = 1e300;
    for (const auto& lam : X.lattice_ball(6.0)) best = std::min(best, (y - x + lam).norm());
    CHECK(d.norm() == doctest::Approx(best).epsilon(1e-12));
    // displacement differs from y - x by a lattice vector
    Vec z = X.to_lattice_coords(y - x - d);
    CHECK(std::abs(z[0] - std::round(z[0])) < 1e-12);
    CHECK(std::abs(z[1] - std::round(z[1])) < 1e-12);
  }
}

namespace {

DiscreteLoop sample_test_loop(const FlatTorus& X) {
  DiscreteLoop l;
  const int m = 8;
  l.times.resize(m);
  for (int j = 0; j < m; ++j) l.times[j] = double(j) / m;
  l.lifts.resize(m);
  for (int j = 0; j < m; ++j) {
    Vec p(2);
    p << 0.1 + 0.2 * j + 0.05 * std::sin(2.0 * j), 0.3 - 0.1 * j;
    l.lifts[j] = p;
  }
  l.closing = X.L * (Vec(2) << 2, -1).finished();
  return l;
}

}  // namespace

TEST_CASE("loop lift is equivariant under t -> t + 1") {
  FlatTorus X(skew_lattice(), IVec::Zero(2));
  DiscreteLoop l = sample_test_loop(X);
  for (double t : {0.0, 0.13, 0.5, 0.97}) {
    Vec a = l.lift_at(t + 1.0) - l.lift_at(t);
    CHECK((a - l.closing).norm() < 1e-12);
  }
  CHECK((l.lift_at(1.0) - (l.lifts[0] + l.closing)).norm() < 1e-12);
}

TEST_CASE("polygonize reproduces a polygon on its own partition") {
  FlatTorus X(skew_lattice(), IVec::Zero(2));
  DiscreteLoop l = sample_test_loop(X);
  // Use a loop with short segments so its edges are already minimizing.
  DiscreteLoop s = l;
  for (int j = 0; j < s.knots(); ++j)
    s.lifts[j] = X.L * (Vec(2) << double(j) / s.knots(), 0.3 + 0.02 * j).finished();
  s.closing = X.L * (Vec(2) << 1, 0).finished();
  DiscreteLoop p = polygonize(X, s, s.times);
  for (int j = 0; j < s.knots(); ++j) {
    Vec da = X.wrap(p.lifts[j]);
    Vec db = X.wrap(s.lifts[j]);
    CHECK(geodesic_displacement(X, da, db).norm() < 1e-12);
  }
  IVec w1 = winding_coords(X, p), w2 = winding_coords(X, s);
  CHECK(w1[0] == w2[0]);
  CHECK(w1[1] == w2[1]);
}

TEST_CASE("winding and spin signs") {
  IVec eps(2);
  eps << 1, 0;
  FlatTorus X(skew_lattice(), eps);
  DiscreteLoop l = sample_test_loop(X);
  IVec w = winding_coords(X, l);
  CHECK(w[0] == 2);
  CHECK(w[1] == -1);
  CHECK(spin_closing_sign(X, l) == 1);  // eps . w = 2
  l.closing = X.L * (Vec(2) << 1, 0).finished();
  CHECK(spin_closing_sign(X, l) == -1);
  // transport over a full period equals the closing sign
  CHECK(spin_transport_sign(X, l, 0.1, 1.1) == spin_closing_sign(X, l));
  // groupoid composition
  int a = spin_transport_sign(X, l, 0.05, 0.4);
  int b = spin_transport_sign(X, l, 0.4, 0.9);
  CHECK(a * b == spin_transport_sign(X, l, 0.05, 0.9));
}

TEST_CASE("energy of a straight constant-speed loop") {
  FlatTorus X = unit_torus(2);
  DiscreteLoop l = constant_loop((Vec(2) << 0.5, 0.5).finished(), 16);
  CHECK(l.energy() == doctest::Approx(0.0));
  l.closing = (Vec(2) << 1, 0).finished();
  for (int j = 0; j < 16; ++j) l.lifts[j][0] = 0.5 + double(j) / 16.0;
  CHECK(l.energy() == doctest::Approx(0.5));  // (1/2) |v|^2, |v| = 1
  CHECK(l.length() == doctest::Approx(1.0));
}

TEST_CASE("canonical two-form is antisymmetric and bilinear") {
  FlatTorus X = unit_torus(2);
  DiscreteLoop l = sample_test_loop(X);
  uint64_t st = 7;
  auto rnd = [&] {
    st ^= st << 13; st ^= st >> 7; st ^= st << 17;
    return double(st % 1000000) / 500000.0 - 1.0;
  };
  std::vector<Vec> v(l.knots()), w(l.knots()), u(l.knots());
  for (int j = 0; j < l.knots(); ++j) {
    v[j] = (Vec(2) << rnd(), rnd()).finished();
    w[j] = (Vec(2) << rnd(), rnd()).finished();
    u[j] = (Vec(2) << rnd(), rnd()).finished();
  }
  double vw = canonical_two_form(l, v, w);
  CHECK(vw == doctest::Approx(-canonical_two_form(l, w, v)).epsilon(1e-12));
  std::vector<Vec> vpu(l.knots());
  for (int j = 0; j < l.knots(); ++j) vpu[j] = v[j] + 2.0 * u[j];
  CHECK(canonical_two_form(l, vpu, w) ==
        doctest::Approx(vw + 2.0 * canonical_two_form(l, u, w)).epsilon(1e-11));
}
