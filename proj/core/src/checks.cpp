#include "loopint/checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "loopint/bismut.hpp"
#include "loopint/localization.hpp"

namespace loopint {

namespace {

CheckResult mk(std::string name, double defect, double tol, std::string detail = "") {
  CheckResult r;
  r.name = std::move(name);
  r.defect = defect;
  r.tolerance = tol;
  r.pass = std::isfinite(defect) && defect <= tol;
  r.detail = std::move(detail);
  return r;
}

cplx rand_cplx(RngStream& rng) {
  return {2 * rng.uniform() - 1, 2 * rng.uniform() - 1};
}

// Random element of fixed parity (coefficients on masks of that popcount
// parity only).
CliffordC rand_homogeneous(int n, int par, RngStream& rng) {
  CliffordC a(n);
  for (uint32_t m = 0; m < a.c.size(); ++m)
    if ((std::popcount(m) & 1) == par) a.c[m] = rand_cplx(rng);
  return a;
}

CliffordC rand_element(int n, RngStream& rng) {
  CliffordC a(n);
  for (uint32_t m = 0; m < a.c.size(); ++m) a.c[m] = rand_cplx(rng);
  return a;
}

DiscreteLoop wiggly_loop(const FlatTorus& X, int m, int winding1, double jitter = 0.1,
                         uint64_t salt = 0) {
  RngStream rng = RngStream::make(911, salt);
  DiscreteLoop l;
  l.times.resize(m);
  l.lifts.resize(m);
  for (int j = 0; j < m; ++j) {
    l.times[j] = double(j) / m;
    Vec p(X.dim());
    for (int i = 0; i < X.dim(); ++i)
      p[i] = 0.3 + jitter * std::sin(2 * M_PI * (j + i) / m + 2 * M_PI * rng.uniform() / m) +
             (i == 0 ? winding1 * double(j) / m : 0.0);
    l.lifts[j] = p;
  }
  l.closing = Vec::Zero(X.dim());
  l.closing[0] = winding1;
  return l;
}

std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(3);
  ss << x;
  return ss.str();
}

}  // namespace

// ---------------------------------------------------------------- 1: algebra

CheckList check_clifford_suite() {
  CheckList out;
  RngStream rng = RngStream::make(101, 0);

  // supertrace is cyclic up to the Koszul sign on parity-homogeneous pairs
  double d_cyc = 0;
  for (int t = 0; t < 1000; ++t) {
    int n = 2 + int(rng.next_u64() % 3);
    int pa = int(rng.next_u64() & 1), pb = int(rng.next_u64() & 1);
    CliffordC a = rand_homogeneous(n, pa, rng), b = rand_homogeneous(n, pb, rng);
    double sgn = (pa & pb) ? -1.0 : 1.0;
    d_cyc = std::max(d_cyc, std::abs(supertrace(cl_mul(a, b)) - sgn * supertrace(cl_mul(b, a))));
  }
  out.push_back(mk("clifford/supertrace-cyclic", d_cyc, 1e-12, "1000 randomized pairs, dim 2-4"));

  // supertrace kills supercommutators of arbitrary (mixed-parity) elements
  double d_scom = 0;
  for (int t = 0; t < 1000; ++t) {
    int n = 2 + int(rng.next_u64() % 3);
    CliffordC a = rand_element(n, rng), b = rand_element(n, rng);
    CliffordC acc(n);
    for (int pa = 0; pa < 2; ++pa)
      for (int pb = 0; pb < 2; ++pb) {
        CliffordC ap(n), bp(n);
        for (uint32_t m = 0; m < acc.c.size(); ++m) {
          if ((std::popcount(m) & 1) == pa) ap.c[m] = a.c[m];
          if ((std::popcount(m) & 1) == pb) bp.c[m] = b.c[m];
        }
        double sgn = (pa & pb) ? -1.0 : 1.0;
        acc += cl_mul(ap, bp) - sgn * cl_mul(bp, ap);
      }
    d_scom = std::max(d_scom, std::abs(supertrace(acc)));
  }
  out.push_back(mk("clifford/supercommutator-str", d_scom, 1e-12, "1000 randomized pairs"));

  // parity selection: str(ab) = 0 unless parity(a)+parity(b) matches dim mod 2
  double d_par = 0;
  for (int t = 0; t < 1000; ++t) {
    int n = 2 + int(rng.next_u64() % 3);
    int pa = int(rng.next_u64() & 1);
    int pb = ((n & 1) ^ pa) ^ 1;  // mismatched combined parity
    CliffordC a = rand_homogeneous(n, pa, rng), b = rand_homogeneous(n, pb, rng);
    d_par = std::max(d_par, std::abs(supertrace(cl_mul(a, b))));
  }
  out.push_back(mk("clifford/supertrace-parity", d_par, 1e-12));

  // Koszul signs: verify super_sign against actual reordering of
  // anticommuting generators, exhaustively over S3 and S4 with every parity
  // assignment (odd slots carry distinct generators, even slots scalars)
  int bad_sign = 0;
  for (int N : {3, 4}) {
    auto perms = all_permutations(N);
    for (const auto& sig : perms)
      for (int pm = 0; pm < (1 << N); ++pm) {
        std::vector<CliffordC> tup;
        for (int i = 0; i < N; ++i)
          tup.push_back((pm >> i) & 1 ? CliffordC::generator(N, i)
                                      : CliffordC::scalar(N, double(i + 2)));
        auto [ot, s] = susy_permute(sig, tup);
        auto prod = [&](const std::vector<CliffordC>& v) {
          CliffordC p = v.back();
          for (int j = N - 2; j >= 0; --j) p = cl_mul(p, v[j]);
          return p;
        };
        CliffordC lhs = prod(ot), rhs = double(s) * prod(tup);
        if (!(lhs - rhs).is_zero(1e-12)) ++bad_sign;
      }
  }
  out.push_back(mk("clifford/koszul-sign-vs-reordering", bad_sign, 0,
                   "exhaustive S3+S4, all parity vectors"));

  // sign cocycle under composition, exhaustive S4 pairs + randomized S6
  int bad_comp = 0;
  auto perms4 = all_permutations(4);
  for (const auto& a : perms4)
    for (const auto& b : perms4)
      for (int pm = 0; pm < 16; ++pm) {
        std::vector<int> p(4);
        for (int i = 0; i < 4; ++i) p[i] = (pm >> i) & 1;
        int lhs = super_sign(compose_perm(b, a), p);
        int rhs = super_sign(b, p) * super_sign(a, permute_parities(b, p));
        if (lhs != rhs) ++bad_comp;
      }
  for (int t = 0; t < 1000; ++t) {
    std::vector<int> a(6), b(6), p(6);
    for (int i = 0; i < 6; ++i) { a[i] = i; b[i] = i; p[i] = int(rng.next_u64() & 1); }
    for (int i = 5; i > 0; --i) {
      std::swap(a[i], a[rng.next_u64() % (i + 1)]);
      std::swap(b[i], b[rng.next_u64() % (i + 1)]);
    }
    int lhs = super_sign(compose_perm(b, a), p);
    int rhs = super_sign(b, p) * super_sign(a, permute_parities(b, p));
    if (lhs != rhs) ++bad_comp;
  }
  out.push_back(mk("clifford/koszul-sign-cocycle", bad_comp, 0, "S4 exhaustive + 1000 in S6"));
  return out;
}

// ---------------------------------------------- 2: coincidence decomposition

CheckList check_decomposition_suite(const RunConfig&) {
  CheckList out;
  RngStream rng = RngStream::make(202, 0);
  FlatTorus X = unit_torus(2, (IVec(2) << 1, 0).finished());
  const int trials = 100;
  double d_val = 0, d_sep = 0, d_lin = 0;
  int residue = 0;  // decomposed blocks still carrying coincident points

  for (int t = 0; t < trials; ++t) {
    // two random single-term fields on complementary index sets
    uint32_t ma = 1u << (rng.next_u64() & 1);
    uint32_t mb = (rng.next_u64() & 1) ? (ma ^ 0b11) : 0;  // disjoint, maybe scalar
    IVec wa(2), wb(2);
    for (int i = 0; i < 2; ++i) {
      wa[i] = int(rng.next_u64() % 3) - 1;
      wb[i] = int(rng.next_u64() % 3) - 1;
    }
    FormField fa = FormField::mode(2, ma, wa, rand_cplx(rng));
    FormField fb = FormField::mode(2, mb, wb, rand_cplx(rng));
    double tau = 0.05 + 0.9 * rng.uniform();

    IntegralForm theta = wedge(insert_at(2, tau, fb), insert_at(2, tau, fa));
    IntegralForm dec = decompose_blocks(theta);
    for (const auto& blk : dec.blocks)
      if (has_coincident_points(blk)) ++residue;

    // the merged insertion carries the half-density jacobian
    // prod sqrt(l_i) / sqrt(L), degree-0 factors contributing 1
    auto jc = [](int d) { return d == 0 ? 1.0 : std::sqrt(double(d)); };
    FormField wf = wedge_fields(fb, fa);
    double jac = jc(int(std::popcount(ma))) * jc(int(std::popcount(mb))) / jc(wf.degree);
    IntegralForm manual = insert_at(2, tau, wf * jac);
    DiscreteLoop l = wiggly_loop(X, 16, int(rng.next_u64() % 2), 0.12, t);
    d_val = std::max(d_val, (q_rel(X, l, dec) - q_rel(X, l, manual)).norm());

    // separated times: decomposition is the identity on the pairing
    IntegralForm sep =
        wedge(insert_at(2, std::fmod(tau + 0.31, 1.0), fb), insert_at(2, tau, fa));
    d_sep = std::max(d_sep, (q_rel(X, l, decompose_blocks(sep)) - q_rel(X, l, sep)).norm());

    // linearity of the decomposition against the pairing
    IntegralForm sum = theta + sep * cplx(0.4, -0.3);
    CliffordC lhs = q_rel(X, l, decompose_blocks(sum));
    CliffordC rhs = q_rel(X, l, dec) + cplx(0.4, -0.3) * q_rel(X, l, decompose_blocks(sep));
    d_lin = std::max(d_lin, (lhs - rhs).norm());
  }
  out.push_back(mk("decomposition/no-coincident-residue", residue, 0, "100 randomized forms"));
  out.push_back(mk("decomposition/merged-value", d_val, 1e-12,
                   "q of split form vs direct merged insertion"));
  out.push_back(mk("decomposition/separated-roundtrip", d_sep, 1e-12));
  out.push_back(mk("decomposition/linearity", d_lin, 1e-12));
  return out;
}

// --------------------------------------------------------- 3: the functional

CheckList check_q_suite(const RunConfig&) {
  CheckList out;
  RngStream rng = RngStream::make(303, 0);
  FlatTorus X = unit_torus(2, (IVec(2) << 1, 1).finished());

  auto rand_factor = [&](bool point) {
    uint32_t mask = uint32_t(rng.next_u64() & 0b11);
    IVec w(2);
    for (int i = 0; i < 2; ++i) w[i] = int(rng.next_u64() % 3) - 1;
    FormField f = FormField::mode(2, mask, w, rand_cplx(rng));
    if (point) return insert_at(2, 0.05 + 0.9 * rng.uniform(), f);
    TrigPoly phi{2 * rng.uniform() - 1, {{rng.uniform() - 0.5, rng.uniform() - 0.5}}};
    return lift_form(2, phi, f);
  };

  // a priori bound |q| <= 2^{n/2} ||theta|| on randomized forms and loops
  double excess = 0;
  LoopSampler s(X, 0.9, 32);
  RngStream lrng = RngStream::make(304, 0);
  for (int t = 0; t < 50; ++t) {
    int order = 1 + int(rng.next_u64() % 3);
    IntegralForm theta = rand_factor(rng.next_u64() & 1);
    for (int j = 1; j < order; ++j) theta = wedge(rand_factor(rng.next_u64() & 1), theta);
    theta = decompose_blocks(theta);
    double bound = q_bound(2, theta);
    for (int i = 0; i < 3; ++i) {
      DiscreteLoop l = s.sample(lrng);
      excess = std::max(excess, std::abs(q_loop(X, l, theta)) - bound);
    }
  }
  out.push_back(mk("q/a-priori-bound", std::max(excess, 0.0), 1e-12,
                   "50 randomized forms x 3 sampled loops"));

  // rotation invariance is exact for point-mass forms on grid shifts
  const int m = 16;
  DiscreteLoop l = wiggly_loop(X, m, 1);
  IntegralForm ptf =
      wedge(insert_at(2, 10.0 / m, FormField::mode(2, 0b10, (IVec(2) << 1, 0).finished(), 1.0)),
            insert_at(2, 4.0 / m, FormField::mode(2, 0b01, (IVec(2) << -1, 0).finished(),
                                                  cplx(0.3, 0.7))));
  double d_rot = 0;
  for (int shift : {1, 5, 11}) {
    DiscreteLoop r;
    r.times = l.times;
    r.lifts.resize(m);
    for (int j = 0; j < m; ++j) {
      int src = (j + shift) % m;
      r.lifts[j] = j + shift < m ? l.lifts[src] : Vec(l.lifts[src] + l.closing);
    }
    r.closing = l.closing;
    d_rot = std::max(d_rot,
                     std::abs(q_loop(X, l, ptf) - q_loop(X, r, rotate_form(ptf, double(shift) / m))));
  }
  out.push_back(mk("q/rotation-invariance", d_rot, 1e-12, "grid shifts 1, 5, 11 of 16"));

  // parity: blocks of odd total degree (or below the top grade) cannot reach
  // the supertrace
  double d_parity = 0;
  for (int t = 0; t < 30; ++t) {
    IntegralForm odd = insert_at(2, 0.1 + 0.8 * rng.uniform(),
                                 FormField::mode(2, 1u << (rng.next_u64() & 1),
                                                 (IVec(2) << 0, 0).finished(), rand_cplx(rng)));
    DiscreteLoop ls = s.sample(lrng);
    d_parity = std::max(d_parity, std::abs(q_loop(X, ls, odd)));
    d_parity = std::max(d_parity, std::abs(q_loop(X, ls, form_scalar(2, rand_cplx(rng)))));
  }
  out.push_back(mk("q/parity-vanishing", d_parity, 1e-12));

  // density quadrature defect stays inside the budget on smooth profiles
  IntegralForm dens =
      wedge(insert_at(2, 0.5, FormField::mode(2, 0b10, (IVec(2) << 0, -1).finished(), 1.0)),
            lift_form(2, TrigPoly{1.0, {{0.3, 0.2}}},
                      FormField::mode(2, 0b01, (IVec(2) << 0, 1).finished(), 0.7)));
  double d_quad = 0;
  LoopSampler s64(X, 0.5, 64);
  for (int i = 0; i < 10; ++i) d_quad = std::max(d_quad, q_defect(X, s64.sample(lrng), dens));
  out.push_back(mk("q/density-quadrature-defect", d_quad, 0.05, "stride 1 vs 2 on grid 64"));
  return out;
}

// ---------------------------------------------------------- 4: measure laws

CheckList check_wiener_suite(const RunConfig& cfg) {
  CheckList out;
  Mat L(2, 2);
  L << 1.1, 0.2, 0.0, 0.9;
  FlatTorus X(L, (IVec(2) << 1, 0).finished());
  double T = 0.7;

  // total mass of the loop measure is the untwisted trace, and the unit
  // integrand reproduces it with zero variance
  LoopSampler samp(X, T, 32);
  double d_mass = std::abs(samp.mass - heat_trace_dual(X, T, false));
  McOptions mo;
  mo.n = 2000;
  mo.seed = cfg.seed;
  Estimate unit = mc_expect(samp, mo, [](const DiscreteLoop&, int) { return 1.0; });
  d_mass = std::max(d_mass, std::abs(unit.value - samp.mass));
  out.push_back(mk("wiener/total-mass", d_mass, 1e-10, "skew lattice, mixed spin bits"));

  // Chapman-Kolmogorov on the exact kernel: p_{t+s} = p_t * p_s
  Vec x(2), y(2);
  x << 0.15, 0.8;
  y << 0.6, 0.35;
  double t1 = 0.3, t2 = 0.4;
  const int G = 48;
  double conv = 0;
  for (int i = 0; i < G; ++i)
    for (int j = 0; j < G; ++j) {
      Vec u(2);
      u << (i + 0.5) / G, (j + 0.5) / G;
      Vec z = X.from_lattice_coords(u);
      conv += heat_kernel(X, t1, x, z) * heat_kernel(X, t2, z, y);
    }
  conv *= X.vol / double(G * G);
  double d_conv = std::abs(conv - heat_kernel(X, t1 + t2, x, y));
  out.push_back(mk("wiener/kernel-convolution", d_conv, 1e-10, "midpoint grid 48x48"));

  // trace relation: vol x diagonal kernel = dual-side trace, both twists,
  // and the two theta-sum routes agree
  double d_tr = std::abs(X.vol * heat_kernel(X, T, x, x) - heat_trace_dual(X, T, false));
  for (bool tw : {false, true})
    d_tr = std::max(d_tr, std::abs(heat_trace_dual(X, T, tw) - heat_trace_poisson(X, T, tw)));
  out.push_back(mk("wiener/trace-relation", d_tr, 1e-10));

  // Feynman-Kac against the Fourier-Galerkin semigroup on the circle
  FlatTorus S = circle(1.0, 0);
  double Tf = 0.8;
  auto Vpot = [](double u) { return 0.8 * std::cos(2 * M_PI * u) + 0.3; };
  FormField Vf = FormField::constant(1, 0, 0.3);
  Vf.terms.push_back({0, (IVec(1) << 1).finished(), 0.4});
  Vf.terms.push_back({0, (IVec(1) << -1).finished(), 0.4});
  double exact = scalar_heat_trace(S, Tf, Vf, 24);
  LoopSampler sf(S, Tf, 64);
  McOptions fo;
  fo.n = cfg.mc_n;
  fo.seed = cfg.seed + 1;
  fo.workers = cfg.workers;
  Estimate fk = mc_expect(sf, fo, [&](const DiscreteLoop& l, int sign) {
    double acc = 0;
    for (int j = 0; j < l.knots(); ++j) acc += Vpot(l.lift_at((j + 0.5) / l.knots())[0]);
    return sign * std::exp(-Tf * acc / l.knots());
  });
  out.push_back(mk("wiener/feynman-kac", std::abs(fk.value - exact), 3 * fk.stderr_ + 2e-3,
                   "n=" + std::to_string(fo.n) + ", stderr " + fmt(fk.stderr_)));
  return out;
}

// ------------------------------------------------- 5: MC vs spectral battery

CheckList check_compare_suite(const RunConfig& cfg) {
  CheckList out;
  FlatTorus X = unit_torus(2, (IVec(2) << 1, 1).finished());
  double T = 0.25;

  auto mode = [](uint32_t m, int w1, int w2, cplx a) {
    return FormField::mode(2, m, (IVec(2) << w1, w2).finished(), a);
  };
  std::vector<std::pair<std::string, IntegralForm>> battery;
  battery.emplace_back("two-point",
                       wedge(insert_at(2, 0.625, mode(0b10, -1, 0, cplx(0.5, -0.4))),
                             insert_at(2, 0.25, mode(0b01, 1, 0, cplx(0.8, 0.1)))));
  battery.emplace_back("point-density",
                       wedge(insert_at(2, 0.5, mode(0b10, 0, -1, 1.0)),
                             lift_form(2, TrigPoly{1.0, {{0.3, 0.0}}}, mode(0b01, 0, 1, 0.7))));
  battery.emplace_back("top-point", insert_at(2, 0.5, mode(0b11, 0, 0, 1.0)));
  battery.emplace_back(
      "three-point",
      wedge(insert_at(2, 0.8, mode(0, 0, -1, cplx(0.9, 0.2))),
            wedge(insert_at(2, 0.5, mode(0b10, -1, 1, 1.0)), insert_at(2, 0.2, mode(0b01, 1, 0, 1.0)))));
  battery.emplace_back("two-density",
                       wedge(lift_form(2, TrigPoly::constant(1.0), mode(0b10, -1, -1, 1.0)),
                             lift_form(2, TrigPoly{1.0, {{0.0, 0.5}}}, mode(0b01, 1, 1, cplx(0, 0.6)))));
  battery.emplace_back("mixed-sum", battery[0].second + battery[2].second * cplx(0.6, 0.2));

  double d_cut = 0;
  int nonvac = 0;
  for (auto& [name, theta] : battery) {
    cplx a = integrate_spectral(X, T, theta, cfg.cutoff, 24);
    cplx b = integrate_spectral(X, T, theta, cfg.cutoff + 8, 24);
    d_cut = std::max(d_cut, std::abs(a - b));
    if (std::abs(a) > 1e-3) ++nonvac;

    IntegratorOptions opt;
    opt.mc.n = cfg.mc_n;
    opt.mc.seed = cfg.seed + 2;
    opt.mc.workers = cfg.workers;
    opt.grid = cfg.grid;
    EstimateC mc = integrate_mc(X, T, theta, opt);
    out.push_back(mk("compare/" + name, std::abs(mc.value() - a), 3 * mc.stderr_() + 2e-3,
                     "exact " + fmt(a.real()) + (a.imag() < 0 ? "-" : "+") +
                         fmt(std::abs(a.imag())) + "i, stderr " + fmt(mc.stderr_())));
  }
  out.push_back(mk("compare/cutoff-stability", d_cut, 1e-8, "cutoff 24 vs 32, gl 16 vs 24"));
  out.push_back(mk("compare/non-vacuous", nonvac >= 4 ? 0 : 4 - nonvac, 0,
                   std::to_string(nonvac) + "/6 forms with |exact| > 1e-3"));
  return out;
}

// ------------------------------------------------------------- 6: flux index

CheckList check_index_suite(const RunConfig& cfg) {
  CheckList out;
  FlatTorus X = unit_torus(2);
  double d_exact = 0, d_tdep = 0;
  for (int k = -2; k <= 2; ++k) {
    cplx base = flux_heat_supertrace(X, k, 0.5);
    d_exact = std::max(d_exact, std::abs(base - double(k)));
    for (double T : {1.0, 2.0})
      d_tdep = std::max(d_tdep, std::abs(flux_heat_supertrace(X, k, T) - base));
  }
  out.push_back(mk("index/spectral-equals-flux", d_exact, 1e-10, "k in -2..2"));
  out.push_back(mk("index/T-independence", d_tdep, 1e-8, "T in {0.5, 1, 2}"));

  double T = 0.5;
  for (int k = -2; k <= 2; ++k) {
    IntegratorOptions opt;
    opt.mc.n = cfg.mc_n;
    opt.mc.seed = cfg.seed + 3;
    opt.mc.workers = cfg.workers;
    opt.grid = cfg.grid;
    EstimateC e = integrate_bch_even(X, TwistBundle::flux_line(k), T, opt);
    cplx want = index_phase_even(2) * double(k);
    out.push_back(mk("index/mc-flux-" + std::to_string(k), std::abs(e.value() - want),
                     3 * e.stderr_() + 0.05, "stderr " + fmt(e.stderr_())));
  }
  return out;
}

// ------------------------------------------------------ 7: localized values

CheckList check_localization_suite(const RunConfig&) {
  CheckList out;
  Mat L = Mat::Identity(2, 2);
  L(0, 0) = 1.4;
  L(1, 1) = 0.8;
  FlatTorus X(L, IVec::Zero(2));

  double d_even = 0, d_even_t = 0;
  for (int k : {-2, -1, 1, 2}) {
    cplx base = localized_rhs_even(X, TwistBundle::flux_line(k), 1.0);
    for (double T : {0.2, 1.0, 5.0}) {
      cplx loc = localized_rhs_even(X, TwistBundle::flux_line(k), T);
      d_even = std::max(d_even,
                        std::abs(loc - index_phase_even(2) * flux_heat_supertrace(X, k, T)));
      d_even_t = std::max(d_even_t, std::abs(loc - base));
    }
  }
  out.push_back(mk("localization/even-vs-spectral-index", d_even, 1e-8,
                   "A-hat x chern vs heat supertrace, k in -2..2"));
  out.push_back(mk("localization/even-T-independence", d_even_t, 1e-12));

  FlatTorus S = circle(1.0, 1);
  double d_odd = 0, d_odd_t = 0;
  for (int m = -2; m <= 2; ++m) {
    GaugeMap g{{m}, {}};
    int sf = spectral_flow_tracked(
                 [&](double s) { return circle_family_eigs(S, g, s, 24); }, 120)
                 .flow;
    cplx base = std::sqrt(0.5 / (2 * M_PI)) * localized_rhs_odd(S, g, 0.5);
    for (double T : {0.3, 1.0, 2.0}) {
      cplx loc = localized_rhs_odd(S, g, T);
      d_odd = std::max(d_odd,
                       std::abs(loc - index_phase_odd(1) * std::sqrt(2 * M_PI / T) * double(sf)));
      d_odd_t = std::max(d_odd_t, std::abs(std::sqrt(T / (2 * M_PI)) * loc - base));
    }
  }
  out.push_back(mk("localization/odd-vs-tracked-flow", d_odd, 1e-12, "m in -2..2"));
  out.push_back(mk("localization/odd-T-independence", d_odd_t, 1e-12, "after the sqrt(T) rescale"));
  return out;
}

// ---------------------------------------------------------- 8: spectral flow

CheckList check_spectral_flow_suite(const RunConfig& cfg) {
  CheckList out;
  FlatTorus S = circle(1.0, 1);

  int d_track = 0;
  double min_gap = 1e9;
  for (int m = -3; m <= 3; ++m) {
    GaugeMap g{{m}, {}};
    FlowResult fr =
        spectral_flow_tracked([&](double s) { return circle_family_eigs(S, g, s, 24); }, 160);
    d_track = std::max(d_track, std::abs(fr.flow - m));
    min_gap = std::min(min_gap, fr.min_gap);
  }
  GaugeMap g2{{2, -1}, {}};
  FlowResult fr2 =
      spectral_flow_tracked([&](double s) { return circle_family_eigs(S, g2, s, 24); }, 160);
  d_track = std::max(d_track, std::abs(fr2.flow - 1));
  out.push_back(mk("flow/tracked-equals-winding", d_track, 0,
                   "|m| <= 3 and rank-2 {2,-1}; min gap " + fmt(min_gap)));

  double d_getz = 0;
  for (int m : {-2, 1, 3}) {
    GaugeMap g{{m}, {}};
    d_getz = std::max(d_getz, std::abs(getzler_flow_integral(S, g, 0.8, 24, 48) - m));
  }
  out.push_back(mk("flow/eta-integral", d_getz, 1e-3, "m in {-2, 1, 3}"));

  double T = 0.6;
  for (int m : {-2, 1, 3}) {
    GaugeMap g{{m}, {}};
    IntegratorOptions opt;
    opt.mc.n = cfg.mc_n;
    opt.mc.seed = cfg.seed + 4;
    opt.mc.workers = cfg.workers;
    opt.grid = 16;
    EstimateC e = integrate_bch_odd(S, g, T, opt);
    cplx want = index_phase_odd(1) * std::sqrt(2 * M_PI / T) * double(m);
    double scaled = std::abs(std::sqrt(T / (2 * M_PI)) * e.value() - cplx(0, 1) * double(m));
    out.push_back(mk("flow/mc-winding-" + std::to_string(m), std::abs(e.value() - want),
                     3 * e.stderr_() + 1e-9,
                     "rescaled defect " + fmt(scaled) + ", stderr " + fmt(e.stderr_())));
  }
  return out;
}

// -------------------------------------------------- 9: partition refinement

CheckList check_refinement_suite(const RunConfig& cfg) {
  CheckList out;
  FlatTorus X = unit_torus(2);
  double T = 0.5;
  TwistBundle V = TwistBundle::flux_line(1);
  std::vector<int> parts = cfg.refine_partitions;
  std::sort(parts.begin(), parts.end());
  int fine = std::max(cfg.refine_fine, parts.back());

  // shared fine-grid samples of the flux-holonomy current, re-evaluated on
  // each coarser uniform partition
  LoopSampler samp(X, T, fine);
  RngStream rng = RngStream::make(cfg.seed + 5, 0);
  long n = std::min<long>(cfg.mc_n, 20000);
  std::vector<cplx> sums(parts.size(), 0.0);
  double var = 0;  // finest partition only
  std::vector<std::vector<double>> grids(parts.size());
  for (size_t i = 0; i < parts.size(); ++i)
    for (int j = 0; j < parts[i]; ++j) grids[i].push_back(double(j) / parts[i]);
  for (long s = 0; s < n; ++s) {
    DiscreteLoop l = samp.sample(rng);
    for (size_t i = 0; i < parts.size(); ++i) {
      cplx q = bch_even_q(X, V, polygonize(X, l, grids[i]), T);
      sums[i] += q;
      if (i + 1 == parts.size()) var += std::norm(q);
    }
  }
  std::vector<cplx> vals(parts.size());
  for (size_t i = 0; i < parts.size(); ++i) vals[i] = samp.mass * sums[i] / double(n);
  cplx mean = sums.back() / double(n);
  double sd = std::sqrt(std::max(var / n - std::norm(mean), 0.0) / n) * samp.mass;

  std::string ladder;
  std::vector<double> defect(parts.size() - 1);
  for (size_t i = 0; i + 1 < parts.size(); ++i) {
    defect[i] = std::abs(vals[i] - vals[i + 1]);
    ladder += (i ? ", " : "") + fmt(defect[i]);
  }
  double d_mono = 0;
  for (size_t i = 0; i + 1 < defect.size(); ++i)
    d_mono = std::max(d_mono, defect[i + 1] - defect[i]);
  out.push_back(mk("refine/defect-decreasing", d_mono, 1e-4, "grid-to-grid: " + ladder));
  cplx want = index_phase_even(2) * 1.0;
  out.push_back(mk("refine/finest-vs-spectral", std::abs(vals.back() - want), 3 * sd + 0.05,
                   "n=" + std::to_string(n) + ", stderr " + fmt(sd)));
  return out;
}

// --------------------------------------- 10: variation + the relative map

CheckList check_variation_suite(const RunConfig& cfg) {
  CheckList out;

  // first-order holonomy variation against the curvature contraction, with
  // the expected first-order convergence of the finite difference
  FlatTorus X = unit_torus(2);
  TwistBundle V = TwistBundle::flux_line(2);
  const int m = 12;
  DiscreteLoop l;
  l.times.resize(m);
  l.lifts.resize(m);
  for (int j = 0; j < m; ++j) {
    l.times[j] = double(j) / m;
    l.lifts[j] = (Vec(2) << 0.3 + double(j) / m + 0.05 * std::sin(4.0 * M_PI * j / m),
                  0.6 + 0.15 * std::sin(2.0 * M_PI * j / m)).finished();
  }
  l.closing = (Vec(2) << 1, 0).finished();
  std::vector<Vec> v(m);
  for (int j = 0; j < m; ++j)
    v[j] = (Vec(2) << 0.1 * std::sin(2 * M_PI * j / m),
            0.25 * (1.0 - std::cos(2 * M_PI * j / m))).finished();
  EquivarianceCheck c1 = equivariance_residual(X, V, l, v, 1e-3);
  EquivarianceCheck c2 = equivariance_residual(X, V, l, v, 5e-4);
  out.push_back(mk("variation/residual-small", c1.defect(), 0.05 * std::abs(c1.rhs),
                   "rhs " + fmt(std::abs(c1.rhs))));
  double ratio = c1.defect() / c2.defect();
  out.push_back(mk("variation/fd-halving-ratio", std::abs(ratio - 2.0), 0.2,
                   "ratio " + fmt(ratio)));

  // the relative map integrates to the scalar map (constant-field block, so
  // the relative value is base-point independent and one point suffices)
  FlatTorus Xe = unit_torus(2, (IVec(2) << 1, 1).finished());
  double T = 0.35;
  IntegralForm theta = wedge(insert_at(2, 0.5, FormField::constant(2, 0b10, 1.0)),
                             insert_at(2, 0.25, FormField::constant(2, 0b01, 1.0)));
  IntegratorOptions opt;
  opt.mc.n = std::min<long>(cfg.mc_n, 60000);
  opt.mc.seed = cfg.seed + 6;
  opt.grid = 32;
  Vec x(2);
  x << 0.2, 0.7;
  RelativeEstimate rel = integrate_relative(Xe, T, x, theta, opt);
  cplx scalar = integrate_spectral(Xe, T, theta, 20);
  out.push_back(mk("variation/relative-integrates-to-scalar",
                   std::abs(rel.value.c[0b11] * Xe.vol - scalar),
                   3 * rel.stderr_ * Xe.vol + 2e-3, "stderr " + fmt(rel.stderr_)));

  // fiber integration carries the 1/sqrt(2) jacobian per insertion: a single
  // constant insertion over pinned loops has zero variance and the exactly
  // computable value 2^{n/2} x diagonal mass / sqrt(2)
  FlatTorus Xu = unit_torus(2);
  double Tp = 0.5;
  IntegralForm one = insert_at(2, 0.25, FormField::constant(2, 0b01, 1.0));
  IntegratorOptions po;
  po.mc.n = 500;
  po.grid = 16;
  RelativeEstimate r = integrate_relative(Xu, Tp, x, one, po);
  double diag = 0;
  for (const auto& lam : Xu.lattice_ball(40 * std::sqrt(Tp)))
    diag += std::exp(-lam.squaredNorm() / (2 * Tp)) / (2 * M_PI * Tp);
  double d_fib = std::abs(r.value.c[0b01] - cplx(2.0 * diag / std::sqrt(2.0)));
  d_fib = std::max(d_fib, r.stderr_);
  out.push_back(mk("variation/fiber-sqrt2-factor", d_fib, 1e-10, "zero-variance pinned value"));
  return out;
}

// -------------------------------------------------------- 11: determinant toy

CheckList check_zeta_toy_suite(const RunConfig&) {
  CheckList out;
  double d = 0;
  for (int j = 0; j < 32; ++j) {
    double alpha = 2 * M_PI * (j + 0.5) / 32.0;
    double want = 4 * std::pow(std::sin(alpha / 2), 2);
    d = std::max(d, std::abs(zeta_toy_lhs(alpha) - want));
    d = std::max(d, std::abs(zeta_toy_lhs(alpha) - zeta_toy_rhs(alpha)));
  }
  out.push_back(mk("zeta/toy-determinant-sweep", d, 1e-10, "32-point alpha sweep"));
  return out;
}

bool all_pass(const CheckList& l) {
  for (const auto& c : l)
    if (!c.pass) return false;
  return true;
}

}  // namespace loopint
