#include "loopint/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace loopint {

namespace {

// Enumerate integer vectors z with |M z| <= r.
void enumerate_ball(const Mat& M, double r, std::vector<IVec>& out) {
  const int n = int(M.rows());
  Mat Minv = M.inverse();
  IVec bound(n);
  for (int i = 0; i < n; ++i)
    bound[i] = int(std::floor(r * Minv.row(i).norm())) + 1;
  IVec z = -bound;
  const double r2 = r * r;
  while (true) {
    Vec v = M * z.cast<double>();
    if (v.squaredNorm() <= r2) out.push_back(z);
    int i = 0;
    for (; i < n; ++i) {
      if (z[i] < bound[i]) { ++z[i]; break; }
      z[i] = -bound[i];
    }
    if (i == n) break;
  }
}

}  // namespace

FlatTorus::FlatTorus(Mat lattice, IVec spin) : L(std::move(lattice)), eps(std::move(spin)) {
  if (L.rows() != L.cols()) throw std::invalid_argument("lattice matrix must be square");
  if (eps.size() != L.rows()) throw std::invalid_argument("spin bits must match dimension");
  Linv = L.inverse();
  vol = std::abs(L.determinant());
  if (!(vol > 0)) throw std::invalid_argument("degenerate lattice");
}

Vec FlatTorus::wrap(const Vec& x) const {
  Vec u = Linv * x;
  for (int i = 0; i < u.size(); ++i) u[i] -= std::floor(u[i]);
  return L * u;
}

std::vector<IVec> FlatTorus::lattice_ball_coords(double r) const {
  std::vector<IVec> out;
  enumerate_ball(L, r, out);
  return out;
}

std::vector<Vec> FlatTorus::lattice_ball(double r) const {
  std::vector<Vec> out;
  for (const auto& z : lattice_ball_coords(r)) out.push_back(L * z.cast<double>());
  return out;
}

FlatTorus unit_torus(int n, IVec eps) { return FlatTorus(Mat::Identity(n, n), std::move(eps)); }
FlatTorus unit_torus(int n) { return unit_torus(n, IVec::Zero(n)); }

FlatTorus circle(double ell, int eps_bit) {
  Mat L(1, 1);
  L(0, 0) = ell;
  IVec e(1);
  e[0] = eps_bit;
  return FlatTorus(L, e);
}

double heat_kernel(const FlatTorus& X, double t, const Vec& x, const Vec& y) {
  const int n = X.dim();
  Vec d = x - y;
  Vec d0 = d - X.L * (X.Linv * d).array().round().matrix();
  // exp(-40) ~ 4e-18 relative truncation of image terms.
  double r = d0.norm() + std::sqrt(2 * t * 40.0) + 1e-12;
  double s = 0;
  for (const auto& lam : X.lattice_ball(r)) s += std::exp(-(d + lam).squaredNorm() / (2 * t));
  return std::pow(2 * M_PI * t, -0.5 * n) * s;
}

double heat_trace_dual(const FlatTorus& X, double T, bool twisted) {
  Mat B = X.dual_basis();
  Vec shift = Vec::Zero(X.dim());
  if (twisted)
    for (int i = 0; i < X.dim(); ++i) shift += 0.5 * double(X.eps[i]) * B.col(i);
  double r = std::sqrt(40.0 / (2 * M_PI * M_PI * T)) + shift.norm() + 1e-12;
  std::vector<IVec> zs;
  { std::vector<IVec> tmp; enumerate_ball(B, r + shift.norm(), tmp); zs.swap(tmp); }
  double s = 0;
  for (const auto& z : zs) {
    Vec k = B * z.cast<double>() + shift;
    s += std::exp(-T * 2 * M_PI * M_PI * k.squaredNorm());
  }
  return s;
}

double heat_trace_poisson(const FlatTorus& X, double T, bool twisted) {
  double r = std::sqrt(2 * T * 40.0) + 1e-12;
  double s = 0;
  for (const auto& z : X.lattice_ball_coords(r)) {
    Vec lam = X.L * z.cast<double>();
    double sgn = 1;
    if (twisted) {
      long dot = 0;
      for (int i = 0; i < X.dim(); ++i) dot += long(X.eps[i]) * z[i];
      if (dot & 1) sgn = -1;
    }
    s += sgn * std::exp(-lam.squaredNorm() / (2 * T));
  }
  return X.vol * std::pow(2 * M_PI * T, -0.5 * X.dim()) * s;
}

Vec geodesic_displacement(const FlatTorus& X, const Vec& x, const Vec& y) {
  Vec u = X.Linv * (y - x);
  IVec z0 = u.array().round().cast<int>();
  Vec best;
  double best2 = -1;
  const int n = X.dim();
  IVec off = IVec::Constant(n, -1);
  while (true) {
    Vec cand = X.L * (u - (z0 + off).cast<double>());
    double q = cand.squaredNorm();
    if (best2 < 0 || q < best2) { best2 = q; best = cand; }
    int i = 0;
    for (; i < n; ++i) {
      if (off[i] < 1) { ++off[i]; break; }
      off[i] = -1;
    }
    if (i == n) break;
  }
  return best;
}

Vec DiscreteLoop::lift_at(double t) const {
  // Equivariant lift: lift(t + 1) = lift(t) + closing.
  const int m = knots();
  double t0 = times[0];
  double shift = std::floor(t - t0);
  double tt = t - shift;
  if (tt >= t0 + 1) { tt -= 1; shift += 1; }
  for (int j = 0; j < m; ++j) {
    double a = times[j];
    double b = (j + 1 < m) ? times[j + 1] : times[0] + 1;
    if (tt >= a && tt < b) {
      Vec p = lifts[j];
      Vec q = (j + 1 < m) ? lifts[j + 1] : Vec(lifts[0] + closing);
      double w = (tt - a) / (b - a);
      return p + w * (q - p) + shift * closing;
    }
  }
  return lifts[0] + shift * closing;
}

double DiscreteLoop::length() const {
  double s = 0;
  const int m = knots();
  for (int j = 0; j < m; ++j) {
    Vec q = (j + 1 < m) ? lifts[j + 1] : Vec(lifts[0] + closing);
    s += (q - lifts[j]).norm();
  }
  return s;
}

double DiscreteLoop::energy() const {
  double s = 0;
  const int m = knots();
  for (int j = 0; j < m; ++j) {
    double dt = ((j + 1 < m) ? times[j + 1] : times[0] + 1) - times[j];
    Vec q = (j + 1 < m) ? lifts[j + 1] : Vec(lifts[0] + closing);
    s += (q - lifts[j]).squaredNorm() / dt;
  }
  return 0.5 * s;
}

DiscreteLoop constant_loop(const Vec& x, int m) {
  DiscreteLoop l;
  l.times.resize(m);
  l.lifts.assign(m, x);
  for (int j = 0; j < m; ++j) l.times[j] = double(j) / m;
  l.closing = Vec::Zero(x.size());
  return l;
}

DiscreteLoop polygonize(const FlatTorus& X, const DiscreteLoop& loop,
                        const std::vector<double>& partition) {
  const int m = int(partition.size());
  std::vector<Vec> pts(m);
  for (int j = 0; j < m; ++j) pts[j] = X.wrap(loop.lift_at(partition[j]));
  DiscreteLoop out;
  out.times = partition;
  out.lifts.resize(m);
  out.lifts[0] = pts[0];
  for (int j = 0; j + 1 < m; ++j)
    out.lifts[j + 1] = out.lifts[j] + geodesic_displacement(X, pts[j], pts[j + 1]);
  out.closing = out.lifts[m - 1] + geodesic_displacement(X, pts[m - 1], pts[0]) - out.lifts[0];
  return out;
}

IVec winding_coords(const FlatTorus& X, const DiscreteLoop& loop) {
  Vec u = X.Linv * loop.closing;
  return u.array().round().cast<int>();
}

int spin_closing_sign(const FlatTorus& X, const DiscreteLoop& loop) {
  IVec w = winding_coords(X, loop);
  long dot = 0;
  for (int i = 0; i < X.dim(); ++i) dot += long(X.eps[i]) * w[i];
  return (dot & 1) ? -1 : 1;
}

int spin_transport_sign(const FlatTorus& X, const DiscreteLoop& loop, double s, double t) {
  auto cross = [&](double u) {
    Vec lc = X.Linv * loop.lift_at(u);
    IVec m(X.dim());
    for (int i = 0; i < X.dim(); ++i) m[i] = int(std::floor(lc[i]));
    return m;
  };
  IVec d = cross(t) - cross(s);
  long dot = 0;
  for (int i = 0; i < X.dim(); ++i) dot += long(X.eps[i]) * d[i];
  return (dot & 1) ? -1 : 1;
}

double canonical_two_form(const DiscreteLoop& loop, const std::vector<Vec>& v,
                          const std::vector<Vec>& w) {
  const int m = loop.knots();
  double s = 0;
  for (int j = 0; j < m; ++j) {
    int k = (j + 1) % m;
    s += 0.5 * (v[j] + v[k]).dot(w[k] - w[j]);
  }
  return s;
}

}  // namespace loopint
