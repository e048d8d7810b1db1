#include "loopint/loopforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace loopint {

double TrigPoly::eval(double t) const {
  double s = a0;
  for (size_t k = 0; k < ab.size(); ++k) {
    double w = 2 * M_PI * double(k + 1) * t;
    s += ab[k].first * std::cos(w) + ab[k].second * std::sin(w);
  }
  return s;
}

TrigPoly TrigPoly::shifted(double sh) const {
  TrigPoly r;
  r.a0 = a0;
  r.ab.resize(ab.size());
  for (size_t k = 0; k < ab.size(); ++k) {
    double w = 2 * M_PI * double(k + 1) * sh;
    double c = std::cos(w), s = std::sin(w);
    r.ab[k].first = ab[k].first * c + ab[k].second * s;
    r.ab[k].second = ab[k].second * c - ab[k].first * s;
  }
  return r;
}

double TrigPoly::total_variation(int gridpts) const {
  double s = 0;
  for (int i = 0; i < gridpts; ++i) s += std::abs(eval((i + 0.5) / gridpts));
  return s / gridpts;
}

TimeProfile TimeProfile::rotated(double t) const {
  if (is_point()) {
    double nt = tau() - t;
    nt -= std::floor(nt);
    return {PointMass{nt}};
  }
  return {density().shifted(t)};
}

CliffordC FormField::eval_lat(const Vec& u) const {
  CliffordC out(dim);
  for (const auto& tm : terms) {
    double ph = 0;
    for (int i = 0; i < dim; ++i) ph += double(tm.wave[i]) * u[i];
    out.c[tm.mask] += tm.amp * std::polar(1.0, 2 * M_PI * ph);
  }
  return out;
}

double FormField::sup_norm_bound() const {
  double s = 0;
  for (const auto& tm : terms) s += std::abs(tm.amp);
  return s;
}

FormField FormField::constant(int n, uint32_t mask, cplx amp) {
  return {n, std::popcount(mask), {{mask, IVec::Zero(n), amp}}};
}

FormField FormField::mode(int n, uint32_t mask, IVec wave, cplx amp) {
  return {n, std::popcount(mask), {{mask, std::move(wave), amp}}};
}

FormField operator*(FormField f, cplx s) {
  for (auto& t : f.terms) t.amp *= s;
  return f;
}

FormField wedge_fields(const FormField& a, const FormField& b) {
  if (a.dim != b.dim) throw std::invalid_argument("wedge_fields: dim mismatch");
  FormField r{a.dim, a.degree + b.degree, {}};
  for (const auto& ta : a.terms)
    for (const auto& tb : b.terms) {
      if (ta.mask & tb.mask) continue;
      int sgn = detail::reorder_sign(ta.mask, tb.mask);
      r.terms.push_back({ta.mask | tb.mask, ta.wave + tb.wave, double(sgn) * ta.amp * tb.amp});
    }
  return r;
}

int BlockTerm::degree() const {
  int d = 0;
  for (const auto& f : factors) d += f.degree();
  return d;
}

std::vector<int> BlockTerm::parities() const {
  std::vector<int> p;
  for (const auto& f : factors) p.push_back(f.degree());
  return p;
}

double BlockTerm::norm_bound() const {
  double s = std::abs(prefactor);
  for (const auto& f : factors) {
    double jac = f.degree() == 0 ? 1.0 : std::sqrt(double(f.degree()));
    s *= jac * f.profile.total_variation() * f.field.sup_norm_bound();
  }
  return s;
}

int IntegralForm::max_order() const {
  int m = 0;
  for (const auto& b : blocks) m = std::max(m, b.order());
  return m;
}

double IntegralForm::norm_bound() const {
  double s = 0;
  for (const auto& b : blocks) s += b.norm_bound();
  return s;
}

IntegralForm lift_form(int dim, const TrigPoly& phi, const FormField& field) {
  IntegralForm f;
  f.dim = dim;
  f.blocks.push_back({1.0, {Factor{{phi}, field}}});
  return f;
}

IntegralForm insert_at(int dim, double tau, const FormField& field) {
  IntegralForm f;
  f.dim = dim;
  f.blocks.push_back({1.0, {Factor{{PointMass{tau}}, field}}});
  return f;
}

IntegralForm form_scalar(int dim, cplx c) {
  IntegralForm f;
  f.dim = dim;
  f.blocks.push_back({c, {}});
  return f;
}

IntegralForm operator+(const IntegralForm& a, const IntegralForm& b) {
  if (a.dim != b.dim) throw std::invalid_argument("form sum: dim mismatch");
  IntegralForm r = a;
  r.blocks.insert(r.blocks.end(), b.blocks.begin(), b.blocks.end());
  return r;
}

IntegralForm operator*(const IntegralForm& a, cplx s) {
  IntegralForm r = a;
  for (auto& b : r.blocks) b.prefactor *= s;
  return r;
}

IntegralForm wedge(const IntegralForm& a, const IntegralForm& b) {
  if (a.dim != b.dim) throw std::invalid_argument("wedge: dim mismatch");
  IntegralForm r;
  r.dim = a.dim;
  for (const auto& ba : a.blocks)
    for (const auto& bb : b.blocks) {
      BlockTerm t;
      t.prefactor = ba.prefactor * bb.prefactor;
      t.factors = bb.factors;  // right wedge factor supplies the right slots
      t.factors.insert(t.factors.end(), ba.factors.begin(), ba.factors.end());
      r.blocks.push_back(std::move(t));
    }
  return r;
}

IntegralForm rotate_form(const IntegralForm& a, double t) {
  IntegralForm r = a;
  for (auto& b : r.blocks)
    for (auto& f : b.factors) f.profile = f.profile.rotated(t);
  return r;
}

IntegralForm average_rotations(const IntegralForm& a, int K) {
  IntegralForm r;
  r.dim = a.dim;
  for (int k = 0; k < K; ++k) {
    IntegralForm rot = rotate_form(a, double(k) / K) * cplx(1.0 / K);
    r.blocks.insert(r.blocks.end(), rot.blocks.begin(), rot.blocks.end());
  }
  return r;
}

bool has_coincident_points(const BlockTerm& b) {
  std::vector<double> taus;
  for (const auto& f : b.factors)
    if (f.profile.is_point()) taus.push_back(f.profile.tau());
  std::sort(taus.begin(), taus.end());
  return std::adjacent_find(taus.begin(), taus.end()) != taus.end();
}

IntegralForm decompose_blocks(const IntegralForm& a) {
  IntegralForm out;
  out.dim = a.dim;
  for (const auto& blk : a.blocks) {
    if (!has_coincident_points(blk)) {
      out.blocks.push_back(blk);
      continue;
    }
    const int M = blk.order();
    // Bring point factors into time order (densities first, order kept),
    // tracking the Koszul sign of the rearrangement.
    std::vector<int> perm;
    for (int i = 0; i < M; ++i)
      if (!blk.factors[i].profile.is_point()) perm.push_back(i);
    std::vector<int> pts;
    for (int i = 0; i < M; ++i)
      if (blk.factors[i].profile.is_point()) pts.push_back(i);
    std::stable_sort(pts.begin(), pts.end(), [&](int i, int j) {
      return blk.factors[i].profile.tau() < blk.factors[j].profile.tau();
    });
    perm.insert(perm.end(), pts.begin(), pts.end());
    int sgn = super_sign(perm, blk.parities());

    BlockTerm nb;
    nb.prefactor = double(sgn) * blk.prefactor;
    for (size_t p = 0; p < perm.size();) {
      const Factor& f = blk.factors[perm[p]];
      if (!f.profile.is_point()) {
        nb.factors.push_back(f);
        ++p;
        continue;
      }
      size_t q = p + 1;
      while (q < perm.size() && blk.factors[perm[q]].profile.is_point() &&
             blk.factors[perm[q]].profile.tau() == f.profile.tau())
        ++q;
      if (q == p + 1) {
        nb.factors.push_back(f);
        ++p;
        continue;
      }
      // Merge the run: field = (prod sqrt(l_i) / sqrt(L)) f_left ^ .. ^ f_right.
      FormField merged = f.field;
      double jac = f.degree() == 0 ? 1.0 : std::sqrt(double(f.degree()));
      for (size_t u = p + 1; u < q; ++u) {
        const Factor& g = blk.factors[perm[u]];
        merged = wedge_fields(g.field, merged);
        jac *= g.degree() == 0 ? 1.0 : std::sqrt(double(g.degree()));
      }
      int L = merged.degree;
      double jl = L == 0 ? 1.0 : std::sqrt(double(L));
      nb.factors.push_back(Factor{{PointMass{f.profile.tau()}}, merged * cplx(jac / jl)});
      p = q;
    }
    out.blocks.push_back(std::move(nb));
  }
  return out;
}

}  // namespace loopint
