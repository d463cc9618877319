#include "weil/heisenberg.hpp"

#include <gtest/gtest.h>

using namespace weil;

namespace {

const SymplecticSpace V31 = SymplecticSpace::standard(3, 1);

OrientedSubspace lag(int p, FpMat rows, int o = 1)
{
  const int d = static_cast<int>(rows[0].size());
  return OrientedSubspace::from_rows(p, d, rows, o);
}

} // namespace

TEST(Heisenberg, ProductExample)
{
  const HeisElement a{{1, 0}, 0}, b{{0, 1}, 0};
  EXPECT_EQ(heis_mul(V31, a, b), (HeisElement{{1, 1}, 2}));
}

TEST(Heisenberg, InverseAndCommutator)
{
  const auto H = enumerate_heis(V31);
  ASSERT_EQ(H.size(), 27u);
  for (const auto& a : H) {
    EXPECT_EQ(heis_mul(V31, a, heis_inverse(V31, a)), heis_identity(V31));
    EXPECT_EQ(heis_mul(V31, heis_inverse(V31, a), a), heis_identity(V31));
  }
  for (const auto& v : fp::all_vectors(2, 3))
    for (const auto& w : fp::all_vectors(2, 3)) {
      const HeisElement hv = heis_vector(V31, v), hw = heis_vector(V31, w);
      const HeisElement c = heis_mul(V31, heis_mul(V31, hv, hw), heis_mul(V31, heis_inverse(V31, hv), heis_inverse(V31, hw)));
      EXPECT_EQ(c, heis_central(V31, V31.omega(v, w)));
    }
}

TEST(Heisenberg, Associativity)
{
  const auto H = enumerate_heis(V31);
  for (const auto& a : H)
    for (const auto& b : H)
      for (const auto& c : H)
        ASSERT_EQ(heis_mul(V31, heis_mul(V31, a, b), c), heis_mul(V31, a, heis_mul(V31, b, c)));
}

TEST(Heisenberg, CenterIsExactlyTheCommutingElements)
{
  const auto H = enumerate_heis(V31);
  for (const auto& a : H) {
    bool central = true;
    for (const auto& b : H)
      central = central && heis_mul(V31, a, b) == heis_mul(V31, b, a);
    EXPECT_EQ(central, fp::is_zero(a.v));
  }
}

TEST(Heisenberg, SymplecticAutomorphisms)
{
  const auto H = enumerate_heis(V31);
  for (const auto& g : enumerate_sp(V31)) {
    for (int z = 0; z < 3; ++z)
      EXPECT_EQ(sp_act_heis(g, heis_central(V31, z)), heis_central(V31, z));
    for (const auto& a : H)
      for (const auto& b : H)
        ASSERT_EQ(sp_act_heis(g, heis_mul(V31, a, b)), heis_mul(V31, sp_act_heis(g, a), sp_act_heis(g, b)));
  }
  for (const auto& h : H)
    EXPECT_EQ(sp_act_heis(SpElement::identity(V31), h), h);
}

TEST(Heisenberg, DeltaVector)
{
  for (const auto& L : enumerate_oriented_lagrangians(V31)) {
    const ModelSpace m(V31, L);
    const ModelVector d = delta(m);
    EXPECT_EQ(evaluate(d, heis_identity(V31)), CycNum::one(3));
    for (const auto& v : fp::all_vectors(2, 3)) {
      const CycNum val = evaluate(d, heis_vector(V31, v));
      if (L.sub.contains(v))
        EXPECT_EQ(val, CycNum::one(3));
      else
        EXPECT_TRUE(val.is_zero());
    }
  }
}

TEST(Heisenberg, EvaluationIsEquivariant)
{
  const auto H = enumerate_heis(V31);
  for (const auto& L : enumerate_oriented_lagrangians(V31)) {
    const ModelSpace m(V31, L);
    std::vector<CycNum> vals;
    for (std::size_t i = 0; i < m.size(); ++i)
      vals.push_back(CycNum::from_int(3, static_cast<long long>(i) + 2) + CycNum::zeta_pow(3, static_cast<long long>(i)));
    const ModelVector f(m, vals);
    for (const auto& h : H) {
      EXPECT_EQ(evaluate(f, heis_mul(V31, heis_central(V31, 1), h)), CycNum::zeta_pow(3, 1) * evaluate(f, h));
      for (const auto& l : L.rows())
        EXPECT_EQ(evaluate(f, heis_mul(V31, heis_vector(V31, l), h)), evaluate(f, h));
    }
  }
}

TEST(Heisenberg, ActionExamples)
{
  const ModelSpace m(V31, lag(3, {{1, 0}}));
  std::vector<CycNum> vals{CycNum::one(3), CycNum::from_int(3, 2), CycNum::zeta_pow(3, 2)};
  const ModelVector f(m, vals);
  EXPECT_EQ(pi_act(m, heis_identity(V31), f).values, vals);
  const auto shifted = pi_act(m, heis_central(V31, 1), f).values;
  for (std::size_t i = 0; i < vals.size(); ++i)
    EXPECT_EQ(shifted[i], CycNum::zeta_pow(3, 1) * vals[i]);
}

TEST(Heisenberg, RightTranslationMatchesEvaluation)
{
  // (pi(h) f)(h') = f(h' h)
  const auto H = enumerate_heis(V31);
  const ModelSpace m(V31, lag(3, {{1, 1}}, 2));
  std::vector<CycNum> vals{CycNum::one(3), CycNum::zeta_pow(3, 1), CycNum::from_int(3, 5)};
  const ModelVector f(m, vals);
  for (const auto& h : H) {
    const ModelVector g = pi_act(m, h, f);
    for (const auto& hp : H)
      EXPECT_EQ(evaluate(g, hp), evaluate(f, heis_mul(V31, hp, h)));
  }
}

TEST(Heisenberg, RepresentationExhaustive)
{
  const auto H = enumerate_heis(V31);
  for (const auto& L : enumerate_oriented_lagrangians(V31)) {
    const ModelSpace m(V31, L);
    EXPECT_TRUE(central_character_holds(m));
    for (const auto& a : H)
      for (const auto& b : H)
        ASSERT_EQ(pi_matrix(m, a) * pi_matrix(m, b), pi_matrix(m, heis_mul(V31, a, b)));
  }
}

TEST(Heisenberg, ModelDimensions)
{
  for (auto [p, n] : {std::pair{3, 1}, std::pair{5, 1}, std::pair{3, 2}}) {
    const auto V = SymplecticSpace::standard(p, n);
    for (const auto& L : enumerate_oriented_lagrangians(V))
      EXPECT_EQ(ModelSpace(V, L).size(), static_cast<std::size_t>(ipow(p, n)));
  }
}

TEST(Heisenberg, CommutantIsOneDimensional)
{
  for (auto [p, n] : {std::pair{3, 1}, std::pair{5, 1}, std::pair{3, 2}}) {
    const auto V = SymplecticSpace::standard(p, n);
    const auto ls = enumerate_oriented_lagrangians(V);
    for (std::size_t i = 0; i < ls.size(); i += (n == 2 ? 7 : 1))
      EXPECT_EQ(commutant_dimension(ModelSpace(V, ls[i])), 1u);
  }
}

TEST(Heisenberg, CommutantOfAReducibleSumIsLarger)
{
  // Trivial central character gives a sum of characters of V/L, which is
  // far from irreducible; the solver must see that.
  const SymplecticSpace V = V31;
  EXPECT_THROW(ModelSpace(V, lag(3, {{1, 0}}), 0), std::invalid_argument);
  EXPECT_THROW(ModelSpace(V, OrientedSubspace(Subspace::full(3, 2), 1)), std::invalid_argument);
}

TEST(Heisenberg, OrientationDoesNotChangeTheSpace)
{
  const ModelSpace a(V31, lag(3, {{0, 1}}, 1)), b(V31, lag(3, {{0, 1}}, 2));
  EXPECT_EQ(a.reps(), b.reps());
  for (const auto& h : enumerate_heis(V31))
    EXPECT_EQ(pi_matrix(a, h), pi_matrix(b, h));
}
