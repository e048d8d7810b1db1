#include "loopint/wiener.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace loopint {

namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;

uint64_t mix64(uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

}  // namespace

RngStream RngStream::make(uint64_t seed, uint64_t id) {
  RngStream r;
  r.key = mix64(mix64(seed + kGolden) ^ (id * 0xD1B54A32D192ED03ull + 1));
  return r;
}

uint64_t RngStream::next_u64() {
  ++ctr;
  return mix64(key + ctr * kGolden);
}

double RngStream::uniform() {
  return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
  if (have_spare) {
    have_spare = false;
    return spare;
  }
  double u1 = uniform(), u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * M_PI * u2;
  spare = r * std::sin(a);
  have_spare = true;
  return r * std::cos(a);
}

void Accumulator::add(double x, double clip) {
  if (std::isnan(x)) {
    has_nan = true;
    return;
  }
  if (std::abs(x) > clip) {
    ++clipped;
    x = std::clamp(x, -clip, clip);
  }
  ++n;
  double d = x - mean;
  mean += d / double(n);
  m2 += d * (x - mean);
}

void Accumulator::merge(const Accumulator& o) {
  if (o.n == 0) {
    has_nan |= o.has_nan;
    return;
  }
  long nt = n + o.n;
  double d = o.mean - mean;
  mean += d * double(o.n) / double(nt);
  m2 += o.m2 + d * d * double(n) * double(o.n) / double(nt);
  n = nt;
  clipped += o.clipped;
  has_nan |= o.has_nan;
}

Estimate Accumulator::finalize(double mass) const {
  Estimate e;
  e.n = n;
  e.mass = mass;
  e.clipped = clipped;
  e.has_nan = has_nan;
  if (n > 0) e.value = mass * mean;
  if (n > 1) e.stderr_ = std::abs(mass) * std::sqrt(m2 / double(n - 1) / double(n));
  return e;
}

LoopSampler::LoopSampler(FlatTorus torus, double T_, int grid_)
    : X(std::move(torus)), T(T_), grid(grid_) {
  if (grid < 2) throw std::invalid_argument("grid too small");
  // Unsigned total mass; spin signs ride along with each sample.
  mass = heat_trace_poisson(X, T, false);
  // Sector weights below 1e-14 of the zero-winding one are dropped.
  double r = std::sqrt(2 * T * std::log(1e14)) + 1e-12;
  double wsum = 0;
  for (const auto& z : X.lattice_ball_coords(r)) {
    double w = std::exp(-(X.L * z.cast<double>()).squaredNorm() / (2 * T));
    winding_coords.push_back(z);
    winding_cdf.push_back(wsum += w);
  }
  for (auto& c : winding_cdf) c /= wsum;
}

std::vector<Vec> sample_bridge(const Vec& a, const Vec& b, double T, int m, RngStream& rng) {
  std::vector<Vec> x(m);
  x[0] = a;
  const double dt = 1.0 / m;
  for (int j = 0; j + 1 < m; ++j) {
    double t = j * dt, tn = t + dt;
    double pull = dt / (1.0 - t);
    double var = T * dt * (1.0 - tn) / (1.0 - t);
    double sd = std::sqrt(var);
    Vec mean = x[j] + pull * (b - x[j]);
    x[j + 1] = mean;
    for (int i = 0; i < a.size(); ++i) x[j + 1][i] += sd * rng.normal();
  }
  return x;
}

DiscreteLoop LoopSampler::sample(RngStream& rng, int* sector_sign) const {
  const int n = X.dim();
  Vec u(n);
  for (int i = 0; i < n; ++i) u[i] = rng.uniform();
  Vec x0 = X.L * u;
  double p = rng.uniform();
  size_t k = std::lower_bound(winding_cdf.begin(), winding_cdf.end(), p) - winding_cdf.begin();
  if (k >= winding_coords.size()) k = winding_coords.size() - 1;
  const IVec& z = winding_coords[k];
  Vec lam = X.L * z.cast<double>();
  DiscreteLoop loop;
  loop.times.resize(grid);
  for (int j = 0; j < grid; ++j) loop.times[j] = double(j) / grid;
  loop.lifts = sample_bridge(x0, x0 + lam, T, grid, rng);
  loop.closing = lam;
  if (sector_sign) {
    long dot = 0;
    for (int i = 0; i < n; ++i) dot += long(X.eps[i]) * z[i];
    *sector_sign = (dot & 1) ? -1 : 1;
  }
  return loop;
}

namespace {

template <typename AddFn>
void run_chunks(long n, int workers, const AddFn& run_chunk) {
  const long chunk = 4096;
  const long nchunks = (n + chunk - 1) / chunk;
  if (workers <= 1) {
    for (long c = 0; c < nchunks; ++c) run_chunk(c, c * chunk, std::min(n, (c + 1) * chunk));
    return;
  }
  std::atomic<long> next{0};
  auto worker = [&] {
    long c;
    while ((c = next.fetch_add(1)) < nchunks)
      run_chunk(c, c * chunk, std::min(n, (c + 1) * chunk));
  };
  std::vector<std::thread> ts;
  for (int w = 0; w < workers; ++w) ts.emplace_back(worker);
  for (auto& t : ts) t.join();
}

}  // namespace

Estimate mc_expect(const LoopSampler& s, const McOptions& opt,
                   const std::function<double(const DiscreteLoop&, int)>& f) {
  const long chunk = 4096;
  const long nchunks = (opt.n + chunk - 1) / chunk;
  std::vector<Accumulator> accs(nchunks);
  run_chunks(opt.n, opt.workers, [&](long c, long lo, long hi) {
    for (long i = lo; i < hi; ++i) {
      RngStream rng = RngStream::make(opt.seed, uint64_t(opt.start + i));
      int sgn = 1;
      DiscreteLoop loop = s.sample(rng, &sgn);
      accs[c].add(f(loop, sgn), opt.clip);
    }
  });
  Accumulator total;
  for (const auto& a : accs) total.merge(a);
  return total.finalize(s.mass);
}

EstimateC mc_expect_c(const LoopSampler& s, const McOptions& opt,
                      const std::function<cplx(const DiscreteLoop&, int)>& f) {
  const long chunk = 4096;
  const long nchunks = (opt.n + chunk - 1) / chunk;
  std::vector<Accumulator> ar(nchunks), ai(nchunks);
  run_chunks(opt.n, opt.workers, [&](long c, long lo, long hi) {
    for (long i = lo; i < hi; ++i) {
      RngStream rng = RngStream::make(opt.seed, uint64_t(opt.start + i));
      int sgn = 1;
      DiscreteLoop loop = s.sample(rng, &sgn);
      cplx v = f(loop, sgn);
      ar[c].add(v.real(), opt.clip);
      ai[c].add(v.imag(), opt.clip);
    }
  });
  Accumulator tr, ti;
  for (long c = 0; c < nchunks; ++c) { tr.merge(ar[c]); ti.merge(ai[c]); }
  EstimateC e;
  e.re = tr.finalize(s.mass);
  e.im = ti.finalize(s.mass);
  return e;
}

EstimateC mc_expect_pinned(const FlatTorus& X, double T, int grid, const Vec& x,
                           const McOptions& opt,
                           const std::function<cplx(const DiscreteLoop&, int)>& f) {
  // Diagonal-kernel sector table (no base-point integration, no vol factor).
  double r = std::sqrt(2 * T * std::log(1e14)) + 1e-12;
  std::vector<IVec> zs;
  std::vector<double> cdf;
  double wsum = 0;
  for (const auto& z : X.lattice_ball_coords(r)) {
    zs.push_back(z);
    cdf.push_back(wsum += std::exp(-(X.L * z.cast<double>()).squaredNorm() / (2 * T)));
  }
  double mass = std::pow(2 * M_PI * T, -0.5 * X.dim()) * wsum;
  for (auto& c : cdf) c /= wsum;

  const long chunk = 4096;
  const long nchunks = (opt.n + chunk - 1) / chunk;
  std::vector<Accumulator> ar(nchunks), ai(nchunks);
  run_chunks(opt.n, opt.workers, [&](long c, long lo, long hi) {
    for (long i = lo; i < hi; ++i) {
      RngStream rng = RngStream::make(opt.seed, uint64_t(opt.start + i));
      double p = rng.uniform();
      size_t k = std::lower_bound(cdf.begin(), cdf.end(), p) - cdf.begin();
      if (k >= zs.size()) k = zs.size() - 1;
      Vec lam = X.L * zs[k].cast<double>();
      DiscreteLoop loop;
      loop.times.resize(grid);
      for (int j = 0; j < grid; ++j) loop.times[j] = double(j) / grid;
      loop.lifts = sample_bridge(x, x + lam, T, grid, rng);
      loop.closing = lam;
      long dot = 0;
      for (int d = 0; d < X.dim(); ++d) dot += long(X.eps[d]) * zs[k][d];
      cplx v = f(loop, (dot & 1) ? -1 : 1);
      ar[c].add(v.real(), opt.clip);
      ai[c].add(v.imag(), opt.clip);
    }
  });
  Accumulator tr, ti;
  for (long c = 0; c < nchunks; ++c) { tr.merge(ar[c]); ti.merge(ai[c]); }
  EstimateC e;
  e.re = tr.finalize(mass);
  e.im = ti.finalize(mass);
  return e;
}

}  // namespace loopint
