#pragma once
// Wiener measure on loop and path spaces over a flat torus.  Loops are
// sampled exactly on a uniform time grid: base point uniform, winding sector
// from the lattice Gaussian, then a Brownian bridge in the universal cover.
// The measure has total mass Z(T) = Tr exp(-T Delta/2); estimators return
// integrals against the unnormalized measure, i.e. Z * (sample mean).

#include <functional>
#include <optional>

#include "loopint/geometry.hpp"

namespace loopint {

// Deterministic counter-based stream: output i of stream (seed, id) depends
// only on (seed, id, i), so worker layout cannot change sampled values.
struct RngStream {
  uint64_t key = 0;
  uint64_t ctr = 0;
  bool have_spare = false;
  double spare = 0;

  static RngStream make(uint64_t seed, uint64_t id);
  uint64_t next_u64();
  double uniform();  // in (0,1)
  double normal();   // standard Gaussian, Box-Muller
};

struct Estimate {
  double value = 0;   // Z * mean
  double stderr_ = 0; // Z * sd / sqrt(n)
  long n = 0;
  double mass = 1;    // the Z factor applied
  long clipped = 0;
  bool has_nan = false;
};

struct EstimateC {
  Estimate re, im;
  cplx value() const { return {re.value, im.value}; }
  double stderr_() const { return std::hypot(re.stderr_, im.stderr_); }
};

// Streaming (count, mean, M2) accumulator with exact pairwise merge.
struct Accumulator {
  long n = 0;
  double mean = 0, m2 = 0;
  long clipped = 0;
  bool has_nan = false;
  void add(double x, double clip);
  void merge(const Accumulator& o);
  Estimate finalize(double mass) const;
};

struct LoopSampler {
  FlatTorus X;
  double T;
  int grid;  // uniform grid times j/grid
  double mass;                      // Z(T), spin-twisted heat trace
  std::vector<IVec> winding_coords; // sector table
  std::vector<double> winding_cdf;  // includes the (-1)^{<eps,w>} sign in mass only

  LoopSampler(FlatTorus torus, double T, int grid);

  // Sign-carrying sector weights: the spin structure makes the loop measure
  // signed, with sector weight (-1)^{<eps,w>} exp(-|lambda_w|^2/(2T)).
  // Sampling uses |weights|; each sample carries sign(w) in `sector_sign`.
  DiscreteLoop sample(RngStream& rng, int* sector_sign = nullptr) const;
};

// Brownian bridge on [0,1]*T from a to b on the grid times {j/m}; returns
// lift positions (m entries, x_0 = a; the implied endpoint b is position m).
std::vector<Vec> sample_bridge(const Vec& a, const Vec& b, double T, int m, RngStream& rng);

struct McOptions {
  long n = 10000;
  uint64_t seed = 1;
  int workers = 1;
  double clip = 1e12;
  long start = 0;  // first sample index; sample i uses stream (seed, start+i)
};

// Integral of f against the unnormalized loop measure: mass * mean f.  The
// integrand receives the loop and the sign of its winding sector.  Chunked
// accumulation in fixed order keeps the result bit-identical for any worker
// count, and per-sample streams make half-run merges exact.
Estimate mc_expect(const LoopSampler& s, const McOptions& opt,
                   const std::function<double(const DiscreteLoop&, int)>& f);
EstimateC mc_expect_c(const LoopSampler& s, const McOptions& opt,
                      const std::function<cplx(const DiscreteLoop&, int)>& f);

// Expectation over pinned loops at base point x (Brownian bridge x -> x,
// windings included): mass is the diagonal heat kernel sum with spin signs.
EstimateC mc_expect_pinned(const FlatTorus& X, double T, int grid, const Vec& x,
                           const McOptions& opt,
                           const std::function<cplx(const DiscreteLoop&, int)>& f);

}  // namespace loopint
