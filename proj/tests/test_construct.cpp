#include <gtest/gtest.h>

#include "cubics/construct.hpp"
#include "cubics/error.hpp"

using namespace cubics;
using namespace cubics::construct;
using classify::VerdictKind;

class ExplicitTest : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(ExplicitTest, UniqueReducibleMemberIsT) {
  const auto q = GetParam();
  const auto w = explicit_construction(q, 1);
  EXPECT_EQ(w.system.member_count(), (q * q * q * q - 1) / (q - 1));
  ASSERT_EQ(w.scan.reducible.size(), 1u);
  const auto& m = w.scan.reducible[0];
  EXPECT_TRUE(m.form.projectively_equal(w.descent.back()));
  EXPECT_EQ(m.verdict.kind, VerdictKind::FqIrreducibleGeomReducible);
  EXPECT_TRUE(m.verdict.orbit);
  EXPECT_EQ(m.verdict.factors.size(), 3u);
  const auto& t = *w.tower;
  EXPECT_EQ(forms::frobenius_form(w.F, t), w.G);
  EXPECT_EQ(forms::frobenius_form(w.G, t), w.H);
  EXPECT_EQ(forms::frobenius_form(w.H, t), w.F);
  EXPECT_EQ(forms::frobenius_form(w.T, t), w.T);
  for (const auto& R : w.descent) {
    const auto lifted = R.lifted(t.base_to_cubic());
    EXPECT_EQ(forms::frobenius_form(lifted, t), lifted);
  }
  EXPECT_FALSE(gf::determinant(w.coordinate_change).is_zero());
  // substitution sends the monomial system to F, G, H, T
  auto ext = t.cubic();
  EXPECT_EQ(forms::substitute(forms::parse_cubic("x^2*y", ext), w.coordinate_change), w.F);
  EXPECT_EQ(forms::substitute(forms::parse_cubic("y^2*z", ext), w.coordinate_change), w.G);
  EXPECT_EQ(forms::substitute(forms::parse_cubic("z^2*x", ext), w.coordinate_change), w.H);
  EXPECT_EQ(forms::substitute(forms::parse_cubic("x*y*z", ext), w.coordinate_change), w.T);
  EXPECT_EQ(w.alpha, t.find_normal_element());
}

INSTANTIATE_TEST_SUITE_P(SmallQ, ExplicitTest, ::testing::Values(2, 3, 4, 5));

TEST(Explicit, Guard) { EXPECT_THROW(explicit_construction(17), GuardExceeded); }

TEST(Orbit, WitnessShape) {
  for (std::uint64_t q : {2, 3}) {
    const auto w = galois_orbit_construction(q, 0, 1);
    const auto& t = *w.tower;
    EXPECT_EQ(point_degree(w.point, t), 6u);
    EXPECT_EQ(w.orbit.size(), 6u);
    EXPECT_TRUE(orbit_avoids_conics(w.orbit));
    EXPECT_EQ(w.through_dimension, 4u);
    ASSERT_EQ(w.scan.reducible.size(), 1u);
    EXPECT_TRUE(w.scan.reducible[0].form.projectively_equal(w.reducible_member));
    for (const auto& m : w.scan.reducible) EXPECT_NE(m.verdict.kind, VerdictKind::FqReducible);
    for (int i = 0; i < 3; ++i) {
      const auto& L = w.opposite_lines[i];
      EXPECT_EQ(forms::frobenius_form(L, t, 3), L);
      EXPECT_NE(forms::frobenius_form(L, t), L);
      EXPECT_TRUE(forms::evaluate(L, w.orbit[i]).is_zero());
      EXPECT_TRUE(forms::evaluate(L, w.orbit[i + 3]).is_zero());
    }
    const auto prod = forms::multiply(w.opposite_lines[0], w.opposite_lines[1], w.opposite_lines[2]);
    EXPECT_TRUE(prod.projectively_equal(w.reducible_member.lifted(t.base_to_top())));
  }
}

TEST(Orbit, SeedReproducible) {
  const auto a = galois_orbit_construction(3, 42, 1);
  const auto b = galois_orbit_construction(3, 42, 1);
  EXPECT_EQ(a.point, b.point);
  EXPECT_EQ(a.candidates, b.candidates);
}

TEST(Orbit, SmallOrbitsAndConicPointsRejected) {
  auto t = gf::Tower::make(2);
  const auto& top = t->top();
  // [1:0:0] is rational; [1:a:0] with a in F_4 has degree 2
  EXPECT_EQ(point_degree(forms::point_at(top, 0), *t), 1u);
  const auto a4 = t->quadratic_to_top()(t->quadratic()->generator());
  EXPECT_EQ(point_degree(forms::ProjectivePoint(top, {top->one(), a4, top->zero()}), *t), 2u);
  // a degree-6 point on the line z = 0 (a degenerate conic over F_q)
  const auto g = top->generator();
  const forms::ProjectivePoint P(top, {top->one(), g, top->zero()});
  ASSERT_EQ(point_degree(P, *t), 6u);
  std::vector<forms::ProjectivePoint> orbit = {P};
  for (int i = 1; i < 6; ++i) orbit.push_back(forms::frobenius_form(orbit.back(), *t));
  EXPECT_FALSE(orbit_avoids_conics(orbit));
}

TEST(Orbit, BudgetAndGuard) {
  EXPECT_THROW(galois_orbit_construction(2, 0, 1, 0), BudgetExhausted);
  EXPECT_THROW(galois_orbit_construction(8, 0, 1), GuardExceeded);
}

TEST(Lemma, ExamplesAndCounts) {
  for (std::uint64_t q : {2, 3, 4, 5}) {
    const auto r = lemma31_check(q, 1);
    EXPECT_EQ(r.tuples, q * q * q * q - 1);
    EXPECT_EQ(r.counterexamples, 0u);
    std::uint64_t sum = 0;
    for (const auto& [k, n] : r.tuples_by_kind) sum += n;
    EXPECT_EQ(sum, r.tuples);
  }
  auto t = gf::Tower::make(5);
  auto f = t->base();
  EXPECT_TRUE(classify::is_geometrically_irreducible(forms::parse_cubic("x^2*y + y^2*z + z^2*x", f), *t));
  EXPECT_FALSE(classify::is_geometrically_irreducible(forms::parse_cubic("x^2*y", f), *t));
  EXPECT_FALSE(classify::is_geometrically_irreducible(forms::parse_cubic("x*y*z", f), *t));
  EXPECT_THROW(lemma31_check(8), GuardExceeded);
}
