#include <gtest/gtest.h>

#include <random>

#include "cubics/construct.hpp"
#include "cubics/error.hpp"
#include "cubics/linsys.hpp"
#include "cubics/search.hpp"
#include "oracles.hpp"

using namespace cubics;
using namespace cubics::linsys;
using forms::parse_cubic;

namespace {

LinearSystem system_of(const gf::FieldPtr& f, std::initializer_list<const char*> texts) {
  std::vector<CubicForm> basis;
  for (auto t : texts) basis.push_back(parse_cubic(t, f));
  return LinearSystem(f, basis);
}

LinearSystem random_system(const gf::FieldPtr& f, std::mt19937_64& rng) {
  for (;;) {
    std::vector<CubicForm> basis;
    for (int i = 0; i < 4; ++i) {
      CubicForm F(f);
      for (std::size_t j = 0; j < 10; ++j) F[j] = {rng() % f->size()};
      basis.push_back(F);
    }
    if (independence_rank(basis) == 4) return LinearSystem(f, basis);
  }
}

std::vector<std::uint64_t> ordinals(const ScanReport& r, std::uint64_t q) {
  std::vector<std::uint64_t> out;
  for (const auto& m : r.reducible) out.push_back(m.index.ordinal(q));
  return out;
}

}  // namespace

TEST(LinearSystem, MemberCountsAndOrder) {
  auto f = gf::Field::make(2, 1);
  const auto S = system_of(f, {"x^3", "y^3", "z^3", "x*y*z"});
  EXPECT_EQ(S.member_count(), 15u);
  std::uint64_t n = 0;
  for_each_member(S, [&](const MemberIndex& idx, const CubicForm& F) {
    EXPECT_EQ(idx.ordinal(2), n);
    EXPECT_EQ(MemberIndex::at(2, 4, n), idx);
    EXPECT_EQ(S.member(idx), F);
    ++n;
  });
  EXPECT_EQ(n, 15u);
  EXPECT_EQ(S.member(MemberIndex::at(2, 4, 0)), parse_cubic("x^3", f));
  auto f11 = gf::Field::make(11, 1);
  EXPECT_EQ(system_of(f11, {"x^3", "y^3", "z^3", "x*y*z"}).member_count(), 1464u);
}

TEST(LinearSystem, RejectsDependentOrMixedBasis) {
  auto f = gf::Field::make(5, 1);
  EXPECT_THROW(system_of(f, {"x^3", "2*x^3"}), std::invalid_argument);
  EXPECT_THROW(LinearSystem(f, {}), std::invalid_argument);
  std::vector<CubicForm> mixed = {parse_cubic("x^3", f), parse_cubic("y^3", gf::Field::make(3, 1))};
  EXPECT_THROW(LinearSystem(f, mixed), std::invalid_argument);
}

TEST(LinearSystem, IndependenceRank) {
  auto f = gf::Field::make(5, 1);
  std::vector<CubicForm> a = {parse_cubic("x^3", f), parse_cubic("y^3", f), parse_cubic("z^3", f),
                              parse_cubic("x*y*z", f)};
  EXPECT_EQ(independence_rank(a), 4u);
  std::vector<CubicForm> b = {parse_cubic("x^3", f), parse_cubic("2*x^3", f)};
  EXPECT_EQ(independence_rank(b), 1u);
  const auto& row = search::witness_table().back();
  ASSERT_EQ(row.q, 11u);
  auto f11 = gf::Field::make(11, 1);
  std::vector<CubicForm> c;
  for (auto t : row.forms) c.push_back(parse_cubic(t, f11));
  EXPECT_EQ(independence_rank(c), 4u);
}

TEST(Scan, CommonFactorMakesEveryMemberReducible) {
  auto t = gf::Tower::make(2);
  const auto S = system_of(t->base(), {"x^3", "x*y^2", "x*z^2", "x^2*y"});
  const auto r = scan_reducible_members(S, *t, {1, false});
  EXPECT_EQ(r.reducible.size(), 15u);
  for (const auto& m : r.reducible) EXPECT_EQ(m.verdict.kind, classify::VerdictKind::FqReducible);
  EXPECT_EQ(r.lines_total, 64u + 8 + 1);  // q^6 + q^3 + 1
}

TEST(Scan, KernelMatchesNaiveOnRandomSystems) {
  std::mt19937_64 rng(11);
  for (std::uint64_t q : {2, 3}) {
    auto t = gf::Tower::make(q);
    for (int it = 0; it < 3; ++it) {
      const auto S = random_system(t->base(), rng);
      const auto fast = scan_reducible_members(S, *t, {1, false});
      const auto slow = scan_naive(S, *t);
      EXPECT_EQ(ordinals(fast, q), ordinals(slow, q));
      ASSERT_EQ(fast.reducible.size(), slow.reducible.size());
      for (std::size_t i = 0; i < fast.reducible.size(); ++i) {
        EXPECT_EQ(fast.reducible[i].verdict.kind, slow.reducible[i].verdict.kind);
        EXPECT_EQ(fast.reducible[i].form, slow.reducible[i].form);
      }
      EXPECT_EQ(fast.lines_scanned, q * q * q * q * q * q + q * q * q + 1);
    }
  }
}

TEST(Scan, KernelMatchesNaiveOnTableRows) {
  for (const auto& row : search::witness_table()) {
    if (row.q > 4) continue;
    auto t = gf::Tower::make(row.q);
    std::vector<CubicForm> basis;
    for (auto s : row.forms) basis.push_back(parse_cubic(s, t->base()));
    const LinearSystem S(t->base(), basis);
    EXPECT_TRUE(scan_naive(S, *t).all_irreducible());
    EXPECT_TRUE(scan_reducible_members(S, *t, {1, false}).all_irreducible());
  }
}

TEST(Scan, PerLineMembersMatchDivisibility) {
  std::mt19937_64 rng(12);
  auto t = gf::Tower::make(3);
  // a system with plenty of reducible members
  const auto S = system_of(t->base(), {"x^2*y", "y^2*z", "z^2*x", "x*y*z"});
  const auto& cubic = t->cubic();
  const auto n = forms::plane_size(cubic->size());
  int nonempty = 0;
  for (int it = 0; it < 100; ++it) {
    // half the lines from the start of the enumeration, where the coordinate axes live
    const std::uint64_t idx = it < 50 ? n - 1 - static_cast<std::uint64_t>(it) * 7 : rng() % n;
    const auto L = forms::line_at(cubic, idx);
    const auto got = members_divisible_by(S, *t, L);
    std::vector<MemberIndex> want;
    for_each_member(S, [&](const MemberIndex& m, const CubicForm& F) {
      if (oracle::line_divides_by_expansion(L, F.lifted(t->base_to_cubic()))) want.push_back(m);
    });
    EXPECT_EQ(got, want) << forms::to_bracket(L);
    nonempty += !want.empty();
  }
  EXPECT_GT(nonempty, 0);
}

TEST(Scan, ThreadCountDoesNotChangeResult) {
  auto t = gf::Tower::make(3);
  const auto S = system_of(t->base(), {"x^2*y", "y^2*z", "z^2*x", "x*y*z"});
  const auto one = scan_reducible_members(S, *t, {1, false});
  for (unsigned th : {2u, 3u, 8u}) {
    const auto many = scan_reducible_members(S, *t, {th, false});
    EXPECT_EQ(ordinals(one, 3), ordinals(many, 3));
    EXPECT_EQ(one.incidences, many.incidences);
    for (std::size_t i = 0; i < one.reducible.size(); ++i)
      EXPECT_EQ(one.reducible[i].verdict.factors.size(), many.reducible[i].verdict.factors.size());
  }
}

TEST(Scan, EarlyAbortAgreesWithFullScan) {
  for (std::uint64_t q : {2, 3}) {
    auto t = gf::Tower::make(q);
    for (std::uint64_t i = 1; i <= 20; ++i) {
      const auto c = search::draw_candidate(t->base(), 99, i);
      std::vector<CubicForm> basis(c.begin(), c.end());
      if (independence_rank(basis) < 4) continue;
      const LinearSystem S(t->base(), basis);
      const auto full = scan_reducible_members(S, *t, {1, false});
      const auto fast = scan_reducible_members(S, *t, {1, true});
      EXPECT_EQ(full.all_irreducible(), fast.all_irreducible());
      EXPECT_EQ(fast.aborted, !full.all_irreducible());
      if (fast.aborted) EXPECT_LE(fast.lines_scanned, full.lines_scanned);
    }
  }
}

TEST(CubicsThroughPoints, OrbitProperties) {
  for (std::uint64_t q : {2, 3}) {
    const auto w = construct::galois_orbit_construction(q, 5, 1);
    const auto& t = *w.tower;
    const auto S = cubics_through_points(w.orbit, t);
    EXPECT_EQ(S.basis().size(), 4u);
    for (const auto& F : S.basis())
      for (const auto& P : w.orbit) EXPECT_TRUE(forms::evaluate(F, P, t.base_to_top()).is_zero());
    // product of opposite lines lies in the span
    auto basis = S.basis();
    basis.push_back(w.reducible_member);
    EXPECT_EQ(independence_rank(basis), 4u);
  }
}

TEST(CubicsThroughPoints, RejectsNonOrbits) {
  auto t = gf::Tower::make(2);
  const auto& top = t->top();
  std::vector<forms::ProjectivePoint> pts;
  for (std::uint64_t i = 0; i < 6; ++i) pts.push_back(forms::point_at(top, i));
  EXPECT_THROW(cubics_through_points(pts, *t), std::invalid_argument);
  pts.pop_back();
  EXPECT_THROW(cubics_through_points(pts, *t), std::invalid_argument);
}
