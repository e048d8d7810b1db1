#pragma once
// Integral differential forms on the loop space of a flat torus: finite sums
// of block terms, each a wedge of factors (time profile, form field on X).
// A factor with a point-mass profile inserts its field at a fixed loop time;
// a density profile smears it.  Factor lists are stored right to left: the
// entry at index 0 is the rightmost wedge factor.  The measure-space maps
// K_l behind each factor carry a sqrt(l) Jacobian per factor, which shows up
// in the recorded norm and in the coincident-time merge bookkeeping.

#include <variant>

#include "loopint/geometry.hpp"

namespace loopint {

// Real trigonometric polynomial on [0,1).
struct TrigPoly {
  double a0 = 0;
  std::vector<std::pair<double, double>> ab;  // (cos, sin) amplitudes, freq 1..K

  double eval(double t) const;
  static TrigPoly constant(double c) { return {c, {}}; }
  TrigPoly shifted(double s) const;  // t -> eval(t + s)
  double total_variation(int gridpts = 512) const;  // int_0^1 |phi| dt
};

struct PointMass { double tau = 0; };

struct TimeProfile {
  std::variant<PointMass, TrigPoly> v;
  bool is_point() const { return std::holds_alternative<PointMass>(v); }
  double tau() const { return std::get<PointMass>(v).tau; }
  const TrigPoly& density() const { return std::get<TrigPoly>(v); }
  double total_variation() const { return is_point() ? 1.0 : density().total_variation(); }
  TimeProfile rotated(double t) const;
};

// Differential form on the torus with trig-polynomial coefficients in the
// constant orthonormal frame: sum of terms amp * e^{2 pi i <wave, u>} dx_mask,
// u the lattice coordinates of the point.
struct TrigTerm {
  uint32_t mask = 0;
  IVec wave;
  cplx amp = 0;
};

struct FormField {
  int dim = 0;
  int degree = 0;
  std::vector<TrigTerm> terms;

  CliffordC eval_lat(const Vec& u) const;   // at lattice coordinates
  CliffordC eval(const FlatTorus& X, const Vec& x) const { return eval_lat(X.Linv * x); }
  double sup_norm_bound() const;  // sum of |amp|, sup over X of coefficient l1

  static FormField constant(int n, uint32_t mask, cplx amp);
  static FormField mode(int n, uint32_t mask, IVec wave, cplx amp);
  friend FormField operator*(FormField f, cplx s);
};

FormField wedge_fields(const FormField& a, const FormField& b);

// One wedge factor of a block term.
struct Factor {
  TimeProfile profile;
  FormField field;
  int degree() const { return field.degree; }
};

struct BlockTerm {
  cplx prefactor = 1;
  std::vector<Factor> factors;  // index 0 = rightmost factor

  int order() const { return int(factors.size()); }
  int degree() const;
  std::vector<int> parities() const;
  // |prefactor| * prod_j sqrt(deg_j) * TV(profile_j) * sup|field_j|.
  double norm_bound() const;
};

struct IntegralForm {
  int dim = 0;
  std::vector<BlockTerm> blocks;

  int max_order() const;
  double norm_bound() const;
};

// A density factor smearing the field over the loop: theta = K(phi, field).
IntegralForm lift_form(int dim, const TrigPoly& phi, const FormField& field);
// Point insertion at loop time tau.
IntegralForm insert_at(int dim, double tau, const FormField& field);
IntegralForm form_scalar(int dim, cplx c);  // order-0 block

IntegralForm operator+(const IntegralForm& a, const IntegralForm& b);
IntegralForm operator*(const IntegralForm& a, cplx s);
// theta ^ zeta; factor lists concatenate (zeta supplies the right factors).
IntegralForm wedge(const IntegralForm& a, const IntegralForm& b);

// Pullback under loop rotation by t: profiles shift, fields are untouched.
IntegralForm rotate_form(const IntegralForm& a, double t);
// Average over K equally spaced rotations.
IntegralForm average_rotations(const IntegralForm& a, int K);

// Rewrite every block so that no two point masses share a time: coincident
// point insertions merge into a single higher-degree insertion of
// (prod sqrt(l_i) / sqrt(L)) * wedge of fields, with the Koszul sign of the
// time-sorting permutation.  Leaves density factors alone.
IntegralForm decompose_blocks(const IntegralForm& a);
bool has_coincident_points(const BlockTerm& b);

}  // namespace loopint
