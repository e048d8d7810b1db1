#include "loopint/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace loopint {

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton on P_n over [-1,1], cosine initial guess.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1);
    nodes[i] = 0.5 * (1 - x);  // reversed; order is irrelevant to the sums
    weights[i] = 1.0 / ((1 - x * x) * dp * dp);
  }
}

namespace {

// Iterate integer vectors in [-c, c]^n.
struct BoxIter {
  int n, c;
  IVec z;
  bool done = false;
  explicit BoxIter(int n_, int c_) : n(n_), c(c_), z(IVec::Constant(n_, -c_)) {}
  bool next() {
    if (done) return false;
    int i = 0;
    for (; i < n; ++i) {
      if (z[i] < c) { ++z[i]; break; }
      z[i] = -c;
    }
    if (i == n) done = true;
    return true;
  }
};

}  // namespace

cplx heat_insertion_supertrace(const FlatTorus& X, double T, const std::vector<Insertion>& ins,
                               int cutoff, double* tail) {
  const int n = X.dim();
  const int M = int(ins.size());
  for (int j = 0; j + 1 < M; ++j)
    if (ins[j].tau > ins[j + 1].tau)
      throw std::invalid_argument("heat_insertion_supertrace: insertions must be sorted");
  Mat B = X.dual_basis();
  Vec shift = Vec::Zero(n);
  for (int i = 0; i < n; ++i) shift += 0.5 * double(X.eps[i]) * B.col(i);
  auto energy = [&](const IVec& z) {
    Vec k = B * z.cast<double>() + shift;
    return 0.5 * (2 * M_PI) * (2 * M_PI) * k.squaredNorm();
  };

  // One trig term per insertion; the mode path must close up.
  std::vector<int> choice(M, 0);
  cplx total = 0;
  double max_shift = 0;
  while (true) {
    IVec wsum = IVec::Zero(n);
    for (int j = 0; j < M; ++j) wsum += ins[j].field->terms[choice[j]].wave;
    if (wsum.isZero()) {
      // Clifford product c(f_M) ... c(f_1) for this term choice.
      CliffordC prod = CliffordC::scalar(n, 1);
      cplx amp = 1;
      for (int j = 0; j < M; ++j) {
        const TrigTerm& t = ins[j].field->terms[choice[j]];
        prod = cl_mul(CliffordC::monomial(n, t.mask), prod);
        amp *= t.amp;
      }
      cplx strp = supertrace(prod);
      if (amp * strp != cplx(0)) {
        // Mode sum of the heat weights along the shifted path.
        double msum = 0;
        for (BoxIter it(n, cutoff); !it.done; it.next()) {
          IVec z = it.z;
          double e = 0;
          double prev = 0;
          IVec cur = z;
          for (int j = 0; j < M; ++j) {
            e += (ins[j].tau - prev) * energy(cur);
            prev = ins[j].tau;
            cur += ins[j].field->terms[choice[j]].wave;
          }
          e += (1.0 - prev) * energy(cur);
          msum += std::exp(-T * e);
        }
        total += amp * strp * msum;
      }
    }
    for (int j = 0; j < M; ++j) {
      double w = ins[j].field->terms[choice[j]].wave.cast<double>().norm();
      max_shift = std::max(max_shift, w);
    }
    int j = 0;
    for (; j < M; ++j) {
      if (++choice[j] < int(ins[j].field->terms.size())) break;
      choice[j] = 0;
    }
    if (j == M || M == 0) break;
  }
  if (tail) {
    double dmin = 1e300;
    for (int i = 0; i < n; ++i) dmin = std::min(dmin, B.col(i).norm());
    double edge = std::max(0.0, dmin * (cutoff + 1 - max_shift * M));
    double emin = 0.5 * (2 * M_PI) * (2 * M_PI) * edge * edge;
    double count = std::pow(2.0 * cutoff + 3.0, n);
    *tail = count * std::exp(-T * emin);
  }
  return total;
}

std::vector<double> circle_dirac_spectrum(const FlatTorus& S, int cutoff) {
  double ell = S.L(0, 0);
  std::vector<double> out;
  for (int nu = -cutoff; nu <= cutoff; ++nu)
    out.push_back(2 * M_PI / ell * (nu + 0.5 * S.eps[0]));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LandauLevel> landau_levels(const FlatTorus& X, int k, int count) {
  std::vector<LandauLevel> out;
  if (k == 0) return out;
  double B = 2 * M_PI * std::abs(k) / X.vol;
  int chi = k > 0 ? 1 : -1;
  for (int j = 0; j < count; ++j) {
    out.push_back({B * j, std::abs(k), chi});
    out.push_back({B * (j + 1), std::abs(k), -chi});
  }
  std::sort(out.begin(), out.end(),
            [](const LandauLevel& a, const LandauLevel& b) { return a.energy < b.energy; });
  return out;
}

cplx flux_heat_supertrace(const FlatTorus& X, int k, double T) {
  if (k == 0) return 0;
  double B = 2 * M_PI * std::abs(k) / X.vol;
  long J = long(40.0 / (T * B)) + 2;
  double s = 0;
  for (long j = 0; j <= J; ++j) s += std::exp(-T * B * j) - std::exp(-T * B * (j + 1));
  return double(k) * s;
}

std::vector<double> magnetic_sector_levels(const FlatTorus& X, int k, int nu, int count,
                                           int gridpts, double halfwidth) {
  if (X.dim() != 2 || std::abs(X.L(0, 1)) > 1e-14 || std::abs(X.L(1, 0)) > 1e-14)
    throw std::runtime_error("oscillator oracle needs a rectangular 2-torus");
  if (k == 0) throw std::invalid_argument("flux must be nonzero");
  double l1 = X.L(0, 0);
  double B = 2 * M_PI * std::abs(k) / X.vol;
  double c = -double(nu) * l1 / double(k);
  double W = halfwidth > 0 ? halfwidth : 12.0 / std::sqrt(B);
  double h = 2 * W / (gridpts + 1);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(gridpts, gridpts);
  for (int i = 0; i < gridpts; ++i) {
    double y = c - W + (i + 1) * h;
    H(i, i) = 1.0 / (h * h) + 0.5 * B * B * (y - c) * (y - c);
    if (i + 1 < gridpts) H(i, i + 1) = H(i + 1, i) = -0.5 / (h * h);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  std::vector<double> out;
  for (int i = 0; i < count && i < gridpts; ++i) out.push_back(es.eigenvalues()[i]);
  return out;
}

namespace {

Eigen::MatrixXcd scalar_hamiltonian(const FlatTorus& X, const FormField& V, int cutoff,
                                    std::vector<IVec>& modes) {
  const int n = X.dim();
  modes.clear();
  std::map<std::vector<int>, int> index;
  for (BoxIter it(n, cutoff); !it.done; it.next()) {
    std::vector<int> key(it.z.data(), it.z.data() + n);
    index[key] = int(modes.size());
    modes.push_back(it.z);
  }
  Mat B = X.dual_basis();
  const int N = int(modes.size());
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(N, N);
  for (int i = 0; i < N; ++i) {
    Vec k = B * modes[i].cast<double>();
    H(i, i) = 0.5 * (2 * M_PI) * (2 * M_PI) * k.squaredNorm();
    for (const auto& t : V.terms) {
      if (t.mask != 0) throw std::invalid_argument("scalar potential must be a 0-form");
      IVec z2 = modes[i] + t.wave;
      std::vector<int> key(z2.data(), z2.data() + n);
      auto it = index.find(key);
      if (it != index.end()) H(it->second, i) += t.amp;
    }
  }
  return H;
}

}  // namespace

double scalar_heat_trace(const FlatTorus& X, double T, const FormField& V, int cutoff) {
  std::vector<IVec> modes;
  Eigen::MatrixXcd H = scalar_hamiltonian(X, V, cutoff, modes);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  double s = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) s += std::exp(-T * es.eigenvalues()[i]);
  return s;
}

double scalar_heat_kernel_diag(const FlatTorus& X, double T, const FormField& V, int cutoff,
                               const Vec& x) {
  std::vector<IVec> modes;
  Eigen::MatrixXcd H = scalar_hamiltonian(X, V, cutoff, modes);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  Vec u = X.Linv * x;
  const int N = int(modes.size());
  VecC basis(N);
  for (int i = 0; i < N; ++i) {
    double ph = 0;
    for (int d = 0; d < X.dim(); ++d) ph += double(modes[i][d]) * u[d];
    basis[i] = std::polar(1.0 / std::sqrt(X.vol), 2 * M_PI * ph);
  }
  double s = 0;
  for (int j = 0; j < N; ++j) {
    cplx amp = es.eigenvectors().col(j).dot(basis);
    s += std::exp(-T * es.eigenvalues()[j]) * std::norm(amp);
  }
  return s;
}

std::vector<double> circle_family_eigs(const FlatTorus& S, const GaugeMap& g, double s,
                                       int cutoff) {
  double ell = S.L(0, 0);
  std::vector<double> out;
  for (int m : g.windings)
    for (int nu = -cutoff; nu <= cutoff; ++nu)
      out.push_back(2 * M_PI / ell * (nu + 0.5 * S.eps[0] + m * s));
  std::sort(out.begin(), out.end());
  return out;
}

FlowResult spectral_flow_tracked(const std::function<std::vector<double>(double)>& eigs,
                                 int steps) {
  FlowResult r;
  r.min_gap = 1e300;
  std::vector<double> prev = eigs(0.0);
  long nneg_prev = std::count_if(prev.begin(), prev.end(), [](double x) { return x < 0; });
  for (int k = 1; k <= steps; ++k) {
    double s = double(k) / steps;
    std::vector<double> cur = eigs(s);
    if (cur.size() != prev.size())
      throw std::runtime_error("spectral_flow_tracked: spectrum size changed");
    long nneg = std::count_if(cur.begin(), cur.end(), [](double x) { return x < 0; });
    if (nneg != nneg_prev) {
      // Crossing in (s - 1/steps, s]; slope from the curve closest to zero.
      size_t j = 0;
      for (size_t i = 0; i < cur.size(); ++i)
        if (std::abs(cur[i]) < std::abs(cur[j])) j = i;
      double slope = (cur[j] - prev[j]) * steps;
      r.crossings.push_back({s - 0.5 / steps, slope});
    } else {
      for (double x : cur) r.min_gap = std::min(r.min_gap, std::abs(x));
    }
    r.flow += int(nneg_prev - nneg);
    nneg_prev = nneg;
    prev = std::move(cur);
  }
  return r;
}

double getzler_flow_integral(const FlatTorus& S, const GaugeMap& g, double T, int s_nodes,
                             int cutoff) {
  double ell = S.L(0, 0);
  std::vector<double> xs, ws;
  gauss_legendre_01(s_nodes, xs, ws);
  double acc = 0;
  for (int q = 0; q < s_nodes; ++q) {
    double s = xs[q];
    double tr = 0;
    for (int m : g.windings)
      for (int nu = -cutoff; nu <= cutoff; ++nu) {
        double lam = 2 * M_PI / ell * (nu + 0.5 * S.eps[0] + m * s);
        tr += (2 * M_PI * m / ell) * std::exp(-0.5 * T * lam * lam);
      }
    acc += ws[q] * tr;
  }
  return std::sqrt(T / (2 * M_PI)) * acc;
}

double zeta_toy_lhs(double alpha) {
  // Zeta-regularized boundary determinant: |1 - e^{i alpha}|^2.
  return std::norm(1.0 - std::polar(1.0, alpha));
}

double zeta_toy_rhs(double alpha) {
  CliffordC a = CliffordC::scalar(2, std::cos(alpha / 2));
  a.c[0b11] = std::sin(alpha / 2);
  cplx strc = complex_supertrace_even(a);
  cplx rhs = std::pow(-1.0, 1) * strc * strc;  // (-1)^{n/2}, n = 2
  return rhs.real();
}

}  // namespace loopint
