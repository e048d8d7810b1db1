#pragma once
// Clifford algebra Cl_n over R^n with the relation v*v = -|v|^2, together with
// the exterior algebra on the same coefficient space.  Elements are stored as
// dense coefficient vectors indexed by subset masks of {0,..,n-1}; the mask
// {i1<..<ik} stands for the ordered monomial e_{i1}...e_{ik} (equivalently
// e_{i1}^..^e_{ik}).  The quantization map that sends a wedge monomial to the
// corresponding Clifford product is therefore the identity on coefficients.

#include <cassert>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace loopint {

using cplx = std::complex<double>;

namespace detail {

// Sign incurred by sorting the concatenation e_A e_B into subset order,
// ignoring repeated generators.
inline int reorder_sign(uint32_t a, uint32_t b) {
  int swaps = 0;
  uint32_t t = a >> 1;
  while (t) {
    swaps += std::popcount(t & b);
    t >>= 1;
  }
  return (swaps & 1) ? -1 : 1;
}

}  // namespace detail

// i^k for integer k (also negative).
inline cplx ipow(long k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

template <typename S>
struct CliffordElement {
  int dim = 0;
  std::vector<S> c;  // size 1<<dim

  CliffordElement() = default;
  explicit CliffordElement(int n) : dim(n), c(size_t(1) << n, S(0)) {
    if (n < 0 || n > 12) throw std::invalid_argument("clifford dim out of range");
  }

  static CliffordElement scalar(int n, S v) {
    CliffordElement e(n);
    e.c[0] = v;
    return e;
  }
  static CliffordElement generator(int n, int i) {
    CliffordElement e(n);
    e.c[uint32_t(1) << i] = S(1);
    return e;
  }
  static CliffordElement monomial(int n, uint32_t mask, S v = S(1)) {
    CliffordElement e(n);
    e.c[mask] = v;
    return e;
  }
  // Grade-1 element from a vector of components in the orthonormal frame.
  template <typename Vec>
  static CliffordElement vector_element(int n, const Vec& v) {
    CliffordElement e(n);
    for (int i = 0; i < n; ++i) e.c[uint32_t(1) << i] = S(v[i]);
    return e;
  }

  uint32_t full_mask() const { return (uint32_t(1) << dim) - 1; }

  CliffordElement& operator+=(const CliffordElement& o) {
    assert(dim == o.dim);
    for (size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
  }
  CliffordElement& operator-=(const CliffordElement& o) {
    assert(dim == o.dim);
    for (size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
    return *this;
  }
  CliffordElement& operator*=(S s) {
    for (auto& x : c) x *= s;
    return *this;
  }
  friend CliffordElement operator+(CliffordElement a, const CliffordElement& b) { return a += b; }
  friend CliffordElement operator-(CliffordElement a, const CliffordElement& b) { return a -= b; }
  friend CliffordElement operator*(CliffordElement a, S s) { return a *= s; }
  friend CliffordElement operator*(S s, CliffordElement a) { return a *= s; }

  // Monomial basis is declared orthonormal; this fixes <.,.> on the algebra.
  S inner(const CliffordElement& o) const {
    assert(dim == o.dim);
    S acc(0);
    for (size_t i = 0; i < c.size(); ++i) {
      if constexpr (std::is_same_v<S, cplx>)
        acc += std::conj(c[i]) * o.c[i];
      else
        acc += c[i] * o.c[i];
    }
    return acc;
  }
  double norm() const { return std::sqrt(std::abs(inner(*this))); }
  // Sum of coefficient magnitudes; submultiplicative upper bound for the
  // operator norm in any representation where generators act by isometries.
  double coeff_l1() const {
    double s = 0;
    for (auto& x : c) s += std::abs(x);
    return s;
  }

  bool is_zero(double tol = 0) const {
    for (auto& x : c)
      if (std::abs(x) > tol) return false;
    return true;
  }

  // -1: not homogeneous, otherwise the common degree.
  int degree(double tol = 1e-14) const {
    int d = -1;
    for (uint32_t m = 0; m < c.size(); ++m) {
      if (std::abs(c[m]) <= tol) continue;
      int g = std::popcount(m);
      if (d == -1) d = g;
      else if (d != g) return -1;
    }
    return d < 0 ? 0 : d;
  }
  // 0 even, 1 odd, -1 mixed.
  int parity(double tol = 1e-14) const {
    int p = -2;
    for (uint32_t m = 0; m < c.size(); ++m) {
      if (std::abs(c[m]) <= tol) continue;
      int g = std::popcount(m) & 1;
      if (p == -2) p = g;
      else if (p != g) return -1;
    }
    return p == -2 ? 0 : p;
  }

  CliffordElement grade_part(int k) const {
    CliffordElement r(dim);
    for (uint32_t m = 0; m < c.size(); ++m)
      if (std::popcount(m) == k) r.c[m] = c[m];
    return r;
  }

  template <typename T>
  CliffordElement<T> cast() const {
    CliffordElement<T> r(dim);
    for (size_t i = 0; i < c.size(); ++i) r.c[i] = T(c[i]);
    return r;
  }
};

using CliffordR = CliffordElement<double>;
using CliffordC = CliffordElement<cplx>;

// Clifford product (e_i e_i = -1).
template <typename S>
CliffordElement<S> cl_mul(const CliffordElement<S>& a, const CliffordElement<S>& b) {
  assert(a.dim == b.dim);
  CliffordElement<S> r(a.dim);
  for (uint32_t ma = 0; ma < a.c.size(); ++ma) {
    if (a.c[ma] == S(0)) continue;
    for (uint32_t mb = 0; mb < b.c.size(); ++mb) {
      if (b.c[mb] == S(0)) continue;
      int sgn = detail::reorder_sign(ma, mb);
      if (std::popcount(ma & mb) & 1) sgn = -sgn;
      r.c[ma ^ mb] += S(double(sgn)) * a.c[ma] * b.c[mb];
    }
  }
  return r;
}

// Exterior product on the same coefficient space.
template <typename S>
CliffordElement<S> wedge_mul(const CliffordElement<S>& a, const CliffordElement<S>& b) {
  assert(a.dim == b.dim);
  CliffordElement<S> r(a.dim);
  for (uint32_t ma = 0; ma < a.c.size(); ++ma) {
    if (a.c[ma] == S(0)) continue;
    for (uint32_t mb = 0; mb < b.c.size(); ++mb) {
      if (b.c[mb] == S(0) || (ma & mb)) continue;
      int sgn = detail::reorder_sign(ma, mb);
      r.c[ma | mb] += S(double(sgn)) * a.c[ma] * b.c[mb];
    }
  }
  return r;
}

// Quantization of an exterior element and its inverse (the symbol map).  Both
// are the identity on coefficient vectors by the basis convention above; they
// exist as named functions so call sites read as the intended structure map.
template <typename S>
CliffordElement<S> quantize(const CliffordElement<S>& a) { return a; }
template <typename S>
CliffordElement<S> symbol(const CliffordElement<S>& a) { return a; }

// Supercommutator [a,b] = ab - (-1)^{|a||b|} ba for homogeneous-parity a, b.
template <typename S>
CliffordElement<S> super_commutator(const CliffordElement<S>& a, const CliffordElement<S>& b) {
  int pa = a.parity(), pb = b.parity();
  if (pa < 0 || pb < 0) throw std::invalid_argument("super_commutator: mixed parity");
  auto r = cl_mul(a, b);
  auto s = cl_mul(b, a);
  if (pa == 1 && pb == 1) return r + s;
  return r - s;
}

// Canonical supertrace on Cl_n: str(a) = 2^{n/2} * <a, e_1...e_n>.
template <typename S>
S supertrace(const CliffordElement<S>& a) {
  return S(std::pow(std::sqrt(2.0), a.dim)) * a.c[a.full_mask()];
}

// Trace on the complex spinor representation.
// Even n: the complex supertrace str_C(a) = (-i)^{n/2} str(a).
// Odd n = 2m+1: tr_C(a) = i (2i)^m <a, vol> + 2^m <a, 1>.
inline cplx complex_supertrace_even(const CliffordC& a) {
  if (a.dim % 2) throw std::invalid_argument("complex_supertrace_even: odd dim");
  return ipow(-a.dim / 2) * supertrace(a);
}
inline cplx complex_trace_odd(const CliffordC& a) {
  if (a.dim % 2 == 0) throw std::invalid_argument("complex_trace_odd: even dim");
  int m = (a.dim - 1) / 2;
  cplx two_i_pow = std::pow(cplx(0, 2), m);
  return cplx(0, 1) * two_i_pow * a.c[a.full_mask()] + std::pow(2.0, m) * a.c[0];
}

// Koszul sign of a permutation acting on factors with the given parities:
// reordering f_{sig[N-1]} ... f_{sig[0]} into f_{N-1} ... f_{0} in a
// supercommutative algebra.  sig[j] is the factor occupying slot j.
inline int super_sign(const std::vector<int>& sig, const std::vector<int>& parities) {
  int n = int(sig.size());
  int s = 1;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      if (sig[j] > sig[k] && (parities[sig[j]] & 1) && (parities[sig[k]] & 1)) s = -s;
  return s;
}

// compose(a, b)[j] = a[b[j]]: apply b first, then a, as slot relabellings.
inline std::vector<int> compose_perm(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r(a.size());
  for (size_t j = 0; j < a.size(); ++j) r[j] = a[b[j]];
  return r;
}

// Parities seen after applying sig: slot j now carries factor sig[j].
inline std::vector<int> permute_parities(const std::vector<int>& sig, const std::vector<int>& p) {
  std::vector<int> r(sig.size());
  for (size_t j = 0; j < sig.size(); ++j) r[j] = p[sig[j]];
  return r;
}

// Action of the supersymmetry operator on an ordered tuple of algebra
// elements: returns the permuted tuple and the Koszul sign, using the actual
// parities of the entries.
template <typename S>
std::pair<std::vector<CliffordElement<S>>, int> susy_permute(
    const std::vector<int>& sig, const std::vector<CliffordElement<S>>& tuple) {
  std::vector<int> p(tuple.size());
  for (size_t i = 0; i < tuple.size(); ++i) {
    int pi = tuple[i].parity();
    if (pi < 0) throw std::invalid_argument("susy_permute: mixed parity entry");
    p[i] = pi;
  }
  std::vector<CliffordElement<S>> out(tuple.size());
  for (size_t j = 0; j < sig.size(); ++j) out[j] = tuple[sig[j]];
  return {out, super_sign(sig, p)};
}

std::vector<std::vector<int>> all_permutations(int n);

}  // namespace loopint
