#include "loopint/bundles.hpp"

#include <cmath>
#include <stdexcept>

namespace loopint {

CliffordMat CliffordMat::identity(int n, int rank) {
  CliffordMat m(n, rank);
  m.comp[0] = MatC::Identity(rank, rank);
  return m;
}

CliffordMat CliffordMat::tensor(const CliffordC& a, const MatC& A) {
  CliffordMat m(a.dim, int(A.rows()));
  for (uint32_t k = 0; k < a.c.size(); ++k)
    if (a.c[k] != cplx(0)) m.comp[k] = a.c[k] * A;
  return m;
}

CliffordMat& CliffordMat::operator+=(const CliffordMat& o) {
  for (size_t k = 0; k < comp.size(); ++k) comp[k] += o.comp[k];
  return *this;
}
CliffordMat& CliffordMat::operator*=(cplx s) {
  for (auto& m : comp) m *= s;
  return *this;
}

double CliffordMat::coeff_l1() const {
  double s = 0;
  for (const auto& m : comp) s += m.norm();
  return s;
}

CliffordMat cm_mul(const CliffordMat& a, const CliffordMat& b) {
  CliffordMat r(a.dim, a.r);
  for (uint32_t ma = 0; ma < a.comp.size(); ++ma) {
    if (a.comp[ma].isZero(0)) continue;
    for (uint32_t mb = 0; mb < b.comp.size(); ++mb) {
      if (b.comp[mb].isZero(0)) continue;
      int sgn = detail::reorder_sign(ma, mb);
      if (std::popcount(ma & mb) & 1) sgn = -sgn;
      r.comp[ma ^ mb] += double(sgn) * (a.comp[ma] * b.comp[mb]);
    }
  }
  return r;
}

CliffordMat cm_exp(const CliffordMat& a) {
  double nrm = a.coeff_l1();
  int s = 0;
  while (nrm > 0.5) { nrm *= 0.5; ++s; }
  CliffordMat x = a;
  x *= cplx(std::pow(0.5, s));
  CliffordMat sum = CliffordMat::identity(a.dim, a.r);
  CliffordMat term = CliffordMat::identity(a.dim, a.r);
  for (int k = 1; k <= 24; ++k) {
    term = cm_mul(term, x);
    term *= cplx(1.0 / k);
    sum += term;
    if (term.coeff_l1() < 1e-18) break;
  }
  for (int i = 0; i < s; ++i) sum = cm_mul(sum, sum);
  return sum;
}

cplx cm_supertrace(const CliffordMat& a, const std::vector<int>& grading) {
  const MatC& top = a.comp[(uint32_t(1) << a.dim) - 1];
  cplx t = 0;
  for (int i = 0; i < a.r; ++i) t += double(grading[i]) * top(i, i);
  return std::pow(std::sqrt(2.0), a.dim) * t;
}

cplx cm_fiber_trace(const CliffordMat& a, const std::vector<int>& grading) {
  cplx t = 0;
  for (int i = 0; i < a.r; ++i) t += double(grading[i]) * a.comp[0](i, i);
  return t;
}

std::vector<int> TwistBundle::gradings() const {
  std::vector<int> g;
  for (const auto& s : summands) g.push_back(s.grading);
  return g;
}

TwistBundle TwistBundle::direct_sum(const TwistBundle& a, const TwistBundle& b) {
  TwistBundle r = a;
  r.summands.insert(r.summands.end(), b.summands.begin(), b.summands.end());
  return r;
}

TwistBundle TwistBundle::graded_trivial(int p, int q) {
  TwistBundle r;
  for (int i = 0; i < p; ++i) r.summands.push_back({0, +1});
  for (int i = 0; i < q; ++i) r.summands.push_back({0, -1});
  return r;
}

cplx flux_segment_phase(int k, const Eigen::Vector2d& p, const Eigen::Vector2d& q) {
  // int_seg A for A = -2 pi k u1 du2 along the straight segment p -> q.
  double d1 = q[0] - p[0], d2 = q[1] - p[1];
  double integral = -2 * M_PI * k * d2 * (p[0] + 0.5 * d1);
  return std::polar(1.0, integral);
}

cplx flux_automorphy(int k, const Eigen::Vector2i& z, const Eigen::Vector2d& u) {
  return std::polar(1.0, -2 * M_PI * k * z[0] * u[1]);
}

namespace {

Eigen::Vector2d lat2(const FlatTorus& X, const Vec& lift) {
  Vec u = X.Linv * lift;
  return {u[0], u[1]};
}

}  // namespace

cplx flux_transport(const FlatTorus& X, int k, const DiscreteLoop& loop, double s, double t) {
  if (X.dim() != 2) throw std::invalid_argument("flux bundle needs a 2-torus");
  if (t < s) throw std::invalid_argument("flux_transport: t < s");
  // Exact phases, broken at the knots where the polygon bends.
  std::vector<double> cuts{s};
  const int m = loop.knots();
  for (int p = -1; p <= 1; ++p)
    for (int j = 0; j < m; ++j) {
      double tj = loop.times[j] + p;
      if (tj > s && tj < t) cuts.push_back(tj);
    }
  cuts.push_back(t);
  std::sort(cuts.begin(), cuts.end());
  cplx acc = 1;
  for (size_t i = 0; i + 1 < cuts.size(); ++i)
    acc *= flux_segment_phase(k, lat2(X, loop.lift_at(cuts[i])),
                              lat2(X, loop.lift_at(cuts[i + 1])));
  return acc;
}

cplx flux_loop_holonomy(const FlatTorus& X, int k, const DiscreteLoop& loop) {
  if (X.dim() != 2) throw std::invalid_argument("flux bundle needs a 2-torus");
  const int m = loop.knots();
  cplx acc = 1;
  Eigen::Vector2d u0 = lat2(X, loop.lifts[0]);
  Eigen::Vector2d prev = u0;
  for (int j = 1; j < m; ++j) {
    Eigen::Vector2d cur = lat2(X, loop.lifts[j]);
    acc *= flux_segment_phase(k, prev, cur);
    prev = cur;
  }
  Eigen::Vector2d uend = lat2(X, Vec(loop.lifts[0] + loop.closing));
  acc *= flux_segment_phase(k, prev, uend);
  IVec w = winding_coords(X, loop);
  acc *= std::conj(flux_automorphy(k, {w[0], w[1]}, u0));
  return acc;
}

MatC curvature_matrix(const FlatTorus& X, const TwistBundle& V) {
  MatC F = MatC::Zero(V.rank(), V.rank());
  for (int j = 0; j < V.rank(); ++j)
    F(j, j) = cplx(0, 2 * M_PI * V.summands[j].flux / X.vol);
  return F;
}

CliffordMat half_clifford_curvature(const FlatTorus& X, const TwistBundle& V) {
  bool has_flux = false;
  for (const auto& s : V.summands) has_flux |= (s.flux != 0);
  const int n = X.dim();
  CliffordMat out(n, V.rank());
  if (!has_flux) return out;
  if (n != 2) throw std::invalid_argument("flux curvature needs a 2-torus");
  MatC F = curvature_matrix(X, V);
  out += CliffordMat::tensor(CliffordC::monomial(n, 0b11, 0.5), F);
  return out;
}

MatC closure_matrix(const FlatTorus& X, const TwistBundle& V, const DiscreteLoop& loop) {
  IVec w = winding_coords(X, loop);
  MatC J = MatC::Identity(V.rank(), V.rank());
  bool has_flux = false;
  for (const auto& s : V.summands) has_flux |= (s.flux != 0);
  if (!has_flux) return J;
  Eigen::Vector2d u0 = lat2(X, loop.lifts[0]);
  for (int j = 0; j < V.rank(); ++j)
    J(j, j) = std::conj(flux_automorphy(V.summands[j].flux, {w[0], w[1]}, u0));
  return J;
}

CliffordMat loop_holonomy(const FlatTorus& X, const TwistBundle& V, const DiscreteLoop& loop,
                          int clifford_dim) {
  MatC H = MatC::Identity(V.rank(), V.rank());
  bool has_flux = false;
  for (const auto& s : V.summands) has_flux |= (s.flux != 0);
  if (has_flux)
    for (int j = 0; j < V.rank(); ++j)
      H(j, j) = flux_loop_holonomy(X, V.summands[j].flux, loop);
  CliffordMat out(clifford_dim, V.rank());
  out.comp[0] = H;
  return out;
}

CliffordMat path_ordered_exp(const FlatTorus& X, const TwistBundle& V, const DiscreteLoop& loop,
                             double T,
                             const std::function<CliffordMat(const Vec&)>& potential,
                             int substeps) {
  const int m = loop.knots();
  const int n = X.dim();
  bool has_flux = false;
  for (const auto& s : V.summands) has_flux |= (s.flux != 0);
  CliffordMat U = CliffordMat::identity(n, V.rank());
  auto half_hol = [&](const Vec& a, const Vec& b) {
    MatC H = MatC::Identity(V.rank(), V.rank());
    if (has_flux) {
      Eigen::Vector2d pa = lat2(X, a), pb = lat2(X, b);
      for (int j = 0; j < V.rank(); ++j)
        H(j, j) = flux_segment_phase(V.summands[j].flux, pa, pb);
    }
    return H;
  };
  auto apply_mat = [&](const MatC& H, CliffordMat& u) {
    for (auto& c : u.comp) c = H * c;
  };
  for (int j = 0; j < m; ++j) {
    double ta = loop.times[j];
    double tb = (j + 1 < m) ? loop.times[j + 1] : loop.times[0] + 1;
    Vec pa = loop.lifts[j];
    Vec pb = (j + 1 < m) ? loop.lifts[j + 1] : Vec(loop.lifts[0] + loop.closing);
    for (int q = 0; q < substeps; ++q) {
      double wa = double(q) / substeps, wb = double(q + 1) / substeps;
      Vec a = pa + wa * (pb - pa), b = pa + wb * (pb - pa);
      Vec mid = 0.5 * (a + b);
      double h = (tb - ta) / substeps;
      apply_mat(half_hol(a, mid), U);
      CliffordMat P = potential(mid);
      P *= cplx(-T * h);
      U = cm_mul(cm_exp(P), U);
      apply_mat(half_hol(mid, b), U);
    }
  }
  return U;
}

MatC GaugeMap::eval(double u) const {
  const int r = rank();
  MatC D = MatC::Zero(r, r);
  for (int j = 0; j < r; ++j) D(j, j) = std::polar(1.0, 2 * M_PI * windings[j] * u);
  if (Q.size() == 0) return D;
  return Q * D * Q.adjoint();
}

MatC GaugeMap::maurer_cartan_coeff() const {
  const int r = rank();
  MatC D = MatC::Zero(r, r);
  for (int j = 0; j < r; ++j) D(j, j) = cplx(0, 2 * M_PI * windings[j]);
  if (Q.size() == 0) return D;
  return Q * D * Q.adjoint();
}

double maurer_cartan_fd_error(const GaugeMap& g, int gridpts, double h) {
  MatC w = g.maurer_cartan_coeff();
  double worst = 0;
  for (int i = 0; i < gridpts; ++i) {
    double u = double(i) / gridpts;
    MatC fd = g.eval(u).adjoint() * (g.eval(u + h) - g.eval(u - h)) / (2 * h);
    worst = std::max(worst, (fd - w).norm());
  }
  return worst;
}

}  // namespace loopint
