#include <doctest.h>

#include <cmath>

#include "loopint/loopforms.hpp"

using namespace loopint;

TEST_CASE("trig polynomials: eval, shift, total variation") {
  TrigPoly p{0.5, {{1.0, 0.3}, {0.0, -0.7}}};
  for (double t : {0.0, 0.13, 0.6, 0.99}) {
    double direct = 0.5 + std::cos(2 * M_PI * t) + 0.3 * std::sin(2 * M_PI * t)
                    - 0.7 * std::sin(4 * M_PI * t);
    CHECK(p.eval(t) == doctest::Approx(direct).epsilon(1e-14));
    CHECK(p.shifted(0.21).eval(t) == doctest::Approx(p.eval(t + 0.21)).epsilon(1e-12));
  }
  CHECK(TrigPoly::constant(-0.4).total_variation() == doctest::Approx(0.4));
  TrigPoly c{0, {{1.0, 0.0}}};
  CHECK(c.total_variation(2048) == doctest::Approx(2.0 / M_PI).epsilon(1e-5));
}

TEST_CASE("form fields evaluate and wedge like clifford exterior products") {
  const int n = 3;
  FormField a = FormField::mode(n, 0b011, (IVec(3) << 1, 0, -2).finished(), cplx(0.5, 0.1));
  a.terms.push_back({0b100, (IVec(3) << 0, 1, 0).finished(), cplx(-0.3, 0.0)});
  a.degree = -1;  // mixed degree is fine for evaluation
  FormField b = FormField::mode(n, 0b100, (IVec(3) << 2, 0, 0).finished(), cplx(0, 1));
  Vec u(3);
  u << 0.17, 0.52, 0.83;
  CliffordC va = a.eval_lat(u), vb = b.eval_lat(u);
  CliffordC direct = wedge_mul(va, vb);
  CliffordC viaw = wedge_fields(a, b).eval_lat(u);
  for (uint32_t m = 0; m < 8u; ++m) CHECK(std::abs(viaw.c[m] - direct.c[m]) < 1e-13);
  // sup bound is the amplitude l1 norm
  CHECK(a.sup_norm_bound() == doctest::Approx(std::abs(cplx(0.5, 0.1)) + 0.3));
}

TEST_CASE("block norm bound multiplies the factor data") {
  const int n = 2;
  BlockTerm blk;
  blk.prefactor = cplx(0, 2);
  blk.factors.push_back(Factor{{TrigPoly::constant(0.8)},
                               FormField::constant(n, 0b11, 0.5)});
  blk.factors.push_back(Factor{{PointMass{0.3}}, FormField::constant(n, 0b01, 0.3)});
  CHECK(blk.degree() == 3);
  CHECK(blk.parities() == std::vector<int>{2, 1});
  double expect = 2.0 * (std::sqrt(2.0) * 0.8 * 0.5) * (1.0 * 1.0 * 0.3);
  CHECK(blk.norm_bound() == doctest::Approx(expect).epsilon(1e-14));
  // order-0 factors contribute no sqrt jacobian
  BlockTerm c;
  c.factors.push_back(Factor{{PointMass{0.1}}, FormField::constant(n, 0, 2.0)});
  CHECK(c.norm_bound() == doctest::Approx(2.0));
}

TEST_CASE("wedge concatenates factor lists right to left") {
  const int n = 2;
  IntegralForm a = insert_at(n, 0.7, FormField::constant(n, 0b01, 1.0)) * cplx(2.0);
  IntegralForm b = insert_at(n, 0.2, FormField::constant(n, 0b10, 1.0)) +
                   form_scalar(n, 3.0);
  IntegralForm w = wedge(a, b);
  REQUIRE(w.blocks.size() == 2);
  // right operand supplies the rightmost (index 0) factors
  CHECK(w.blocks[0].factors.size() == 2);
  CHECK(w.blocks[0].factors[0].profile.tau() == 0.2);
  CHECK(w.blocks[0].factors[1].profile.tau() == 0.7);
  CHECK(w.blocks[0].prefactor == cplx(2.0));
  CHECK(w.blocks[1].factors.size() == 1);
  CHECK(w.blocks[1].prefactor == cplx(6.0));
  CHECK(w.max_order() == 2);
}

TEST_CASE("rotation shifts profiles and averaging splits the mass") {
  const int n = 1;
  IntegralForm p = insert_at(n, 0.3, FormField::constant(n, 0b1, 1.0));
  IntegralForm r = rotate_form(p, 0.1);
  CHECK(r.blocks[0].factors[0].profile.tau() == doctest::Approx(0.2));
  // rotating back is the identity
  IntegralForm rr = rotate_form(r, -0.1);
  CHECK(rr.blocks[0].factors[0].profile.tau() == doctest::Approx(0.3));
  // wrap-around stays in [0,1)
  CHECK(rotate_form(p, 0.5).blocks[0].factors[0].profile.tau() == doctest::Approx(0.8));
  // density profiles shift forward: rotated by t evaluates at s + t
  TrigPoly phi{0, {{1.0, 0.0}}};
  IntegralForm d = lift_form(n, phi, FormField::constant(n, 0b1, 1.0));
  IntegralForm dr = rotate_form(d, 0.25);
  const TrigPoly& shifted = dr.blocks[0].factors[0].profile.density();
  CHECK(shifted.eval(0.1) == doctest::Approx(phi.eval(0.35)).epsilon(1e-12));

  IntegralForm av = average_rotations(p, 4);
  REQUIRE(av.blocks.size() == 4);
  cplx total = 0;
  for (const auto& b : av.blocks) total += b.prefactor;
  CHECK(std::abs(total - cplx(1.0)) < 1e-14);
  CHECK(av.blocks[2].factors[0].profile.tau() == doctest::Approx(0.8));
}

TEST_CASE("coincident point insertions merge with the jacobian factor") {
  const int n = 2;
  FormField dx1 = FormField::constant(n, 0b01, 1.0);
  FormField dx2 = FormField::constant(n, 0b10, 1.0);
  // theta = dx2(0.25) ^ dx1(0.25); factor index 0 is dx1
  IntegralForm theta = wedge(insert_at(n, 0.25, dx2), insert_at(n, 0.25, dx1));
  CHECK(has_coincident_points(theta.blocks[0]));
  IntegralForm dec = decompose_blocks(theta);
  REQUIRE(dec.blocks.size() == 1);
  REQUIRE(dec.blocks[0].factors.size() == 1);
  CHECK(!has_coincident_points(dec.blocks[0]));
  const Factor& f = dec.blocks[0].factors[0];
  CHECK(f.profile.tau() == doctest::Approx(0.25));
  CHECK(f.degree() == 2);
  REQUIRE(f.field.terms.size() == 1);
  CHECK(f.field.terms[0].mask == 0b11);
  // dx2 ^ dx1 = -dx1^dx2, scaled by sqrt(1)sqrt(1)/sqrt(2)
  CHECK(std::abs(f.field.terms[0].amp - cplx(-1.0 / std::sqrt(2.0))) < 1e-14);
}

TEST_CASE("merging a run inside a longer block keeps the koszul sign") {
  const int n = 3;
  FormField A = FormField::constant(n, 0b001, 1.0);
  FormField B = FormField::constant(n, 0b010, 1.0);
  FormField C = FormField::constant(n, 0b100, 1.0);
  // factors, rightmost first: A at 0.5, B at 0.2, C at 0.5
  BlockTerm blk;
  blk.prefactor = 1.0;
  blk.factors = {Factor{{PointMass{0.5}}, A}, Factor{{PointMass{0.2}}, B},
                 Factor{{PointMass{0.5}}, C}};
  IntegralForm theta{n, {blk}};
  IntegralForm dec = decompose_blocks(theta);
  REQUIRE(dec.blocks.size() == 1);
  const BlockTerm& nb = dec.blocks[0];
  REQUIRE(nb.factors.size() == 2);
  // time-sorting permutation [B, A, C] of three odd factors is odd
  CHECK(nb.prefactor == cplx(-1.0));
  CHECK(nb.factors[0].profile.tau() == doctest::Approx(0.2));
  CHECK(nb.factors[1].profile.tau() == doctest::Approx(0.5));
  CHECK(nb.factors[1].degree() == 2);
  // norm bound of the merged form is still finite and recorded
  CHECK(dec.norm_bound() > 0);
}
