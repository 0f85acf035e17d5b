#include <gtest/gtest.h>

#include "cubics/gf/matrix.hpp"
#include "cubics/gf/tower.hpp"

using namespace cubics::gf;

namespace {

class TowerTest : public ::testing::TestWithParam<std::uint64_t> {};

void expect_homomorphism(const Embedding& e) {
  const auto& src = *e.source();
  const auto& dst = *e.target();
  for (std::uint64_t a = 0; a < src.size(); ++a)
    for (std::uint64_t b = 0; b < src.size(); ++b) {
      ASSERT_EQ(e(src.add({a}, {b})), dst.add(e({a}), e({b})));
      ASSERT_EQ(e(src.mul({a}, {b})), dst.mul(e({a}), e({b})));
    }
  EXPECT_EQ(e(src.one()), dst.one());
}

}  // namespace

TEST_P(TowerTest, EmbeddingsAreInjectiveHomomorphisms) {
  auto t = Tower::make(GetParam());
  expect_homomorphism(t->base_to_quadratic());
  expect_homomorphism(t->base_to_cubic());
  expect_homomorphism(t->base_to_top());
  // quadratic and cubic fields are too large for the full square at q > 4
  const auto& e = t->cubic_to_top();
  const auto& src = *e.source();
  for (std::uint64_t a = 0; a < src.size(); a += 1 + src.size() / 97) {
    auto pre = e.preimage(e({a}));
    ASSERT_TRUE(pre);
    EXPECT_EQ(pre->code, a);
  }
}

TEST_P(TowerTest, PathsToTopAgree) {
  auto t = Tower::make(GetParam());
  for (std::uint64_t a = 0; a < t->q(); ++a) {
    const Elem x{a};
    EXPECT_EQ(t->cubic_to_top()(t->base_to_cubic()(x)), t->base_to_top()(x));
    EXPECT_EQ(t->quadratic_to_top()(t->base_to_quadratic()(x)), t->base_to_top()(x));
  }
}

TEST_P(TowerTest, FrobeniusOrderAndFixedField) {
  auto t = Tower::make(GetParam());
  const auto& top = *t->top();
  for (std::uint64_t a = 0; a < top.size(); a += 1 + top.size() / 211) {
    const Elem z{a};
    EXPECT_EQ(t->frobenius(z), top.pow(z, t->q()));
    EXPECT_EQ(t->frobenius(z, 6), z);
    const bool fixed = t->frobenius(z) == z;
    EXPECT_EQ(fixed, t->base_to_top().preimage(z).has_value());
    EXPECT_EQ(t->in_subfield(z, 1), fixed);
    EXPECT_EQ(t->in_subfield(z, 3), t->frobenius(z, 3) == z);
    EXPECT_EQ(t->in_subfield(z, 3), t->cubic_to_top().preimage(z).has_value());
    EXPECT_EQ(t->in_subfield(z, 2), t->quadratic_to_top().preimage(z).has_value());
  }
}

TEST_P(TowerTest, FrobeniusCommutesWithEmbedding) {
  auto t = Tower::make(GetParam());
  const auto& cubic = *t->cubic();
  for (std::uint64_t a = 0; a < cubic.size(); a += 1 + cubic.size() / 101) {
    const Elem z{a};
    EXPECT_EQ(t->cubic_to_top()(t->frobenius(cubic, z)), t->frobenius(t->cubic_to_top()(z)));
  }
}

TEST_P(TowerTest, NormalElementIsFirstWithIndependentConjugates) {
  auto t = Tower::make(GetParam());
  const auto& cubic = t->cubic();
  auto independent = [&](Elem a) {
    Matrix m(t->base(), 3, 3);
    Elem z = a;
    for (std::size_t i = 0; i < 3; ++i) {
      const auto c = t->cubic_coordinates().coordinates(z);
      for (std::size_t j = 0; j < 3; ++j) m.at(i, j) = c[j];
      z = t->frobenius(*cubic, z);
    }
    return rank(m) == 3;
  };
  const Elem n = t->find_normal_element();
  EXPECT_TRUE(independent(n));
  for (std::uint64_t a = 0; a < n.code; ++a) EXPECT_FALSE(independent({a}));
}

TEST_P(TowerTest, CoordinatesRoundTrip) {
  auto t = Tower::make(GetParam());
  for (const SubfieldCoordinates* sc : {&t->cubic_coordinates(), &t->top_coordinates()}) {
    const auto& ext = *sc->extension();
    for (std::uint64_t a = 0; a < ext.size(); a += 1 + ext.size() / 151) {
      const auto c = sc->coordinates({a});
      EXPECT_EQ(c, sc->coordinates_solve({a}));
      EXPECT_EQ(sc->combine(c).code, a);
    }
  }
  EXPECT_TRUE(t->cubic_coordinates().has_table());
}

INSTANTIATE_TEST_SUITE_P(SmallQ, TowerTest, ::testing::Values(2, 3, 4, 5, 7));

TEST(Embedding, RequiresDivisibleDegree) {
  EXPECT_THROW(Embedding::find(Field::make(2, 2), Field::make(2, 3)), std::invalid_argument);
  EXPECT_THROW(Embedding::find(Field::make(2, 1), Field::make(3, 2)), std::invalid_argument);
}

TEST(Embedding, IntoNonTowerExtension) {
  // F_4 -> F_16 and F_8 -> F_64 used by the extension check
  for (auto [k, K] : std::initializer_list<std::pair<unsigned, unsigned>>{{2, 4}, {3, 6}, {1, 4}}) {
    auto e = Embedding::find(Field::make(2, k), Field::make(2, K));
    expect_homomorphism(e);
  }
}

TEST(Tower, RejectsNonPrimePower) { EXPECT_THROW(Tower::make(6), std::invalid_argument); }
