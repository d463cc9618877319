#include "oracles.hpp"
#include "weil/symplectic.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

using namespace weil;

namespace {

Subspace line(int p, const FpVec& v) { return Subspace(p, static_cast<int>(v.size()), {v}); }

std::set<oracle::Vec> elements_of(const Subspace& s)
{
  std::set<oracle::Vec> out;
  for (const auto& e : s.elements())
    out.insert(e);
  return out;
}

/// omega restricted to the rows: J-matrix check g^T J g = J.
bool preserves_form(const SymplecticSpace& V, const FpMat& g)
{
  for (int i = 0; i < V.dim(); ++i)
    for (int j = 0; j < V.dim(); ++j) {
      FpVec gi(static_cast<std::size_t>(V.dim())), gj(static_cast<std::size_t>(V.dim()));
      for (int k = 0; k < V.dim(); ++k) {
        gi[static_cast<std::size_t>(k)] = g[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
        gj[static_cast<std::size_t>(k)] = g[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      }
      if (V.omega(gi, gj) != V.gram()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
        return false;
    }
  return true;
}

std::vector<std::array<OrientedSubspace, 3>> transverse_triples(const SymplecticSpace& V)
{
  std::vector<std::array<OrientedSubspace, 3>> out;
  auto ls = enumerate_oriented_lagrangians(V);
  for (const auto& N : ls)
    for (const auto& M : ls)
      for (const auto& L : ls)
        if (in_general_position(N, M) && in_general_position(M, L) && in_general_position(N, L))
          out.push_back({N, M, L});
  return out;
}

} // namespace

TEST(Symplectic, OmegaExamples)
{
  const auto V = SymplecticSpace::standard(3, 1);
  EXPECT_EQ(V.omega({1, 0}, {0, 1}), 1);
  EXPECT_EQ(V.omega({0, 1}, {1, 0}), 2);
  for (const auto& v : fp::all_vectors(2, 3))
    EXPECT_EQ(V.omega(v, v), 0);
}

TEST(Symplectic, RejectsDegenerateOrNonAlternatingGram)
{
  EXPECT_THROW(SymplecticSpace(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  EXPECT_THROW(SymplecticSpace(3, {{0, 0}, {0, 0}}), std::invalid_argument);
  EXPECT_THROW(SymplecticSpace(4, {{0, 1}, {3, 0}}), std::invalid_argument);
}

TEST(Symplectic, SubspaceOperations)
{
  const int p = 3;
  const Subspace a = line(p, {1, 0}), b = line(p, {0, 1});
  EXPECT_EQ(intersect(a, b).dim(), 0);
  EXPECT_EQ(subspace_sum(a, b), Subspace::full(p, 2));
  EXPECT_EQ(quotient_reps(Subspace::full(p, 2), a).size(), 3u);
  // RREF keys: scaled spanning sets give the same subspace
  EXPECT_EQ(line(p, {2, 2}), line(p, {1, 1}));
}

TEST(Symplectic, IntersectionMatchesElementSets)
{
  const int p = 3;
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(0, p - 1);
  for (int t = 0; t < 100; ++t) {
    FpMat ga(2, FpVec(4)), gb(2, FpVec(4));
    for (auto* g : {&ga, &gb})
      for (auto& r : *g)
        for (auto& x : r)
          x = d(rng);
    const Subspace a(p, 4, ga), b(p, 4, gb);
    std::set<oracle::Vec> ea = elements_of(a), eb = elements_of(b), both;
    for (const auto& v : ea)
      if (eb.count(v))
        both.insert(v);
    EXPECT_EQ(elements_of(intersect(a, b)), both);
  }
}

TEST(Symplectic, LagrangianCountsMatchBruteForce)
{
  struct Case
  {
    int p, n;
    std::size_t lines, oriented;
  };
  for (const Case c : {Case{3, 1, 4, 8}, Case{5, 1, 6, 24}, Case{3, 2, 40, 80}}) {
    const auto V = SymplecticSpace::standard(c.p, c.n);
    const auto lags = enumerate_lagrangians(V);
    const auto brute = oracle::isotropic_subspaces(c.p, 2 * c.n, c.n);
    EXPECT_EQ(lags.size(), c.lines);
    EXPECT_EQ(brute.size(), c.lines);
    std::set<std::set<oracle::Vec>> mine;
    for (const auto& L : lags) {
      mine.insert(elements_of(L));
      for (const auto& a : L.rows())
        for (const auto& b : L.rows())
          EXPECT_EQ(V.omega(a, b), 0);
    }
    EXPECT_EQ(mine, brute);
    EXPECT_EQ(enumerate_oriented_lagrangians(V).size(), c.oriented);
  }
}

TEST(Symplectic, GeneralPosition)
{
  const int p = 3;
  const auto V = SymplecticSpace::standard(p, 1);
  const OrientedSubspace a(line(p, {1, 0}), 1), b(line(p, {0, 1}), 1);
  EXPECT_TRUE(in_general_position(a, b));
  EXPECT_FALSE(in_general_position(a, a));
  const auto lags = enumerate_lagrangians(V);
  for (const auto& L : lags) {
    int transverse = 0;
    for (const auto& M : lags)
      transverse += in_general_position(L, M);
    EXPECT_EQ(transverse, 3);
  }
}

TEST(Symplectic, WedgePairingExamples)
{
  const int p = 3;
  const auto V = SymplecticSpace::standard(p, 1);
  const OrientedSubspace a(line(p, {1, 0}), 1), b(line(p, {0, 1}), 1);
  EXPECT_EQ(wedge_pairing(V, a, b), 1);
  EXPECT_EQ(wedge_pairing(V, b, a), 2);
  const OrientedSubspace z(Subspace::zero(p, 2), 1);
  EXPECT_EQ(wedge_pairing(V, z, z), 1);
}

TEST(Symplectic, WedgePairingVanishesExactlyOffGeneralPosition)
{
  for (int p : {3, 5}) {
    const auto V = SymplecticSpace::standard(p, 1);
    const auto ls = enumerate_oriented_lagrangians(V);
    for (const auto& L : ls)
      for (const auto& M : ls)
        EXPECT_EQ(wedge_pairing(V, L, M) != 0, in_general_position(L, M));
  }
}

TEST(Symplectic, WedgeSwapLaw)
{
  for (int n : {1, 2}) {
    const auto V = SymplecticSpace::standard(3, n);
    const auto ls = enumerate_oriented_lagrangians(V);
    const int sign = n % 2 ? -1 : 1;
    for (const auto& L : ls)
      for (const auto& M : ls)
        EXPECT_EQ(wedge_pairing(V, L, M), mod_p(sign * wedge_pairing(V, M, L), 3));
  }
}

TEST(Symplectic, OrientationFromRows)
{
  const int p = 5;
  // rows given as 2*(1,0): orientation relative to the RREF row scales by 2
  const auto L = OrientedSubspace::from_rows(p, 2, {{2, 0}}, 1);
  EXPECT_EQ(L.orient, 2);
  EXPECT_EQ(L.rows(), (FpMat{{1, 0}}));
  EXPECT_THROW(OrientedSubspace::from_rows(p, 2, {{1, 0}, {2, 0}}, 1), std::invalid_argument);
}

TEST(Symplectic, ResidueMapExample)
{
  const int p = 3;
  const auto V = SymplecticSpace::standard(p, 1);
  const Subspace N = line(p, {0, 1}), M = line(p, {1, 1}), L = line(p, {1, 0});
  EXPECT_EQ(residue_map(V, M, L, N), (FpMat{{0, 1}}));
  EXPECT_EQ(residue_map(V, M, L, M), M.rows());
}

TEST(Symplectic, ResidueWedgeAgainstL)
{
  for (int p : {3, 5}) {
    const auto V = SymplecticSpace::standard(p, 1);
    for (const auto& [N, M, L] : transverse_triples(V)) {
      const FpMat r = residue_map(V, M.sub, L.sub, N.sub);
      const long long lhs = static_cast<long long>(M.orient) * L.orient % p * wedge_rows(V, r, L.rows());
      EXPECT_EQ(mod_p(lhs, p), wedge_pairing(V, M, L));
    }
  }
}

TEST(Symplectic, ResidueWedgeIdentity)
{
  for (int p : {3, 5}) {
    const int n = 1;
    const auto V = SymplecticSpace::standard(p, n);
    for (const auto& [N, M, L] : transverse_triples(V)) {
      const long long rhs = -1LL * wedge_pairing(V, M, N) * wedge_pairing(V, L, M) % p * inv_mod(wedge_pairing(V, L, N), p);
      EXPECT_EQ(residue_wedge(V, M, L.sub, N.sub), mod_p(rhs, p));
    }
  }
}

TEST(Symplectic, ResidueFormDiscriminant)
{
  for (int p : {3, 5}) {
    const auto V = SymplecticSpace::standard(p, 1);
    for (const auto& [N, M, L] : transverse_triples(V)) {
      const FpMat r = residue_map(V, M.sub, L.sub, N.sub);
      const FpMat form{{V.omega(r[0], M.rows()[0])}};
      EXPECT_EQ(discriminant(form, p), oracle::legendre(residue_wedge(V, M, L.sub, N.sub), p));
    }
  }
  // sampled at n = 2: the form is symmetric and its discriminant is (-1)^{C(2,2)} * wedge
  const int p = 3;
  const auto V = SymplecticSpace::standard(p, 2);
  const auto ls = enumerate_oriented_lagrangians(V);
  std::mt19937_64 rng(9);
  int done = 0;
  while (done < 100) {
    const auto& N = ls[rng() % ls.size()];
    const auto& M = ls[rng() % ls.size()];
    const auto& L = ls[rng() % ls.size()];
    if (!(in_general_position(N, M) && in_general_position(M, L) && in_general_position(N, L)))
      continue;
    ++done;
    const FpMat r = residue_map(V, M.sub, L.sub, N.sub);
    FpMat form(2, FpVec(2));
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        form[i][j] = V.omega(r[i], M.rows()[j]);
    EXPECT_EQ(form[0][1], form[1][0]);
    EXPECT_EQ(discriminant(form, p), oracle::legendre(-residue_wedge(V, M, L.sub, N.sub), p));
  }
}

TEST(Symplectic, DiscriminantExamples)
{
  EXPECT_EQ(discriminant({{1, 0}, {0, 1}}, 7), 1);
  EXPECT_EQ(discriminant({{1, 0}, {0, 2}}, 3), -1);
  EXPECT_THROW(discriminant({{0, 1}, {2, 0}}, 3), std::invalid_argument);
  EXPECT_THROW(discriminant({{1, 1}, {1, 1}}, 3), std::domain_error);
}

TEST(Symplectic, DiscriminantByDeterminantMatchesDiagonalization)
{
  std::mt19937_64 rng(21);
  int tested = 0;
  while (tested < 1000) {
    const int p = std::array<int, 3>{3, 5, 7}[rng() % 3];
    const std::size_t k = 1 + rng() % 4;
    FpMat b(k, FpVec(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i; j < k; ++j)
        b[i][j] = b[j][i] = static_cast<int>(rng() % static_cast<unsigned>(p));
    const int d = oracle::det(b, p);
    if (d == 0)
      continue;
    ++tested;
    EXPECT_EQ(discriminant(b, p), oracle::legendre(d, p));
    EXPECT_EQ(discriminant_by_diagonalization(b, p), oracle::legendre(d, p));
  }
}

TEST(Symplectic, OrientationDecomposition)
{
  const int p = 5;
  const auto V = SymplecticSpace::standard(p, 2);
  const OrientedSubspace M = OrientedSubspace::from_rows(p, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}}, 3);
  // I = M: empty quotient, all scale on iota
  auto s = orientation_decompose(M, M.sub);
  EXPECT_TRUE(s.quotient_rows.empty());
  EXPECT_EQ(s.quotient_orient, 1);
  EXPECT_EQ(s.iota, 3);
  // I = 0
  s = orientation_decompose(M, Subspace::zero(p, 4));
  EXPECT_EQ(s.iota, 1);
  EXPECT_EQ(s.quotient_orient, 3);
  // o_M = iota * (I rows) ^ (quotient rows) as a volume element
  const Subspace I = line(p, {0, 1, 0, 0});
  s = orientation_decompose(M, I);
  FpMat P{M.sub.coords(I.rows()[0]), M.sub.coords(s.quotient_rows[0])};
  EXPECT_EQ(mod_p(static_cast<long long>(s.iota) * s.quotient_orient * fp::det(P, p), p), M.orient);
  (void)V;
}

TEST(Symplectic, GaugeShiftLeavesNormalizationCharacterUnchanged)
{
  const int p = 5;
  const auto V = SymplecticSpace::standard(p, 2);
  const auto ls = enumerate_oriented_lagrangians(V);
  std::mt19937_64 rng(4);
  int done = 0;
  while (done < 200) {
    const auto& M = ls[rng() % ls.size()];
    const auto& L = ls[rng() % ls.size()];
    const Subspace I = intersect(M.sub, L.sub);
    if (I.dim() == 0 || I.dim() == 2)
      continue;
    ++done;
    auto sM = orientation_decompose(M, I), sL = orientation_decompose(L, I);
    auto arg = [&](const OrientationSplit& a, const OrientationSplit& b) {
      long long x = static_cast<long long>(a.iota) * inv_mod(b.iota, p) % p;
      x = x * a.quotient_orient % p * b.quotient_orient % p * wedge_rows(V, a.quotient_rows, b.quotient_rows);
      return oracle::legendre(x, p);
    };
    const int base = arg(sL, sM);
    for (int t = 1; t < p; ++t) {
      auto gM = sM, gL = sL;
      gM.quotient_orient = mod_p(static_cast<long long>(t) * sM.quotient_orient, p);
      gM.iota = mod_p(static_cast<long long>(inv_mod(t, p)) * sM.iota, p);
      const int u = static_cast<int>(1 + rng() % static_cast<unsigned>(p - 1));
      gL.quotient_orient = mod_p(static_cast<long long>(u) * sL.quotient_orient, p);
      gL.iota = mod_p(static_cast<long long>(inv_mod(u, p)) * sL.iota, p);
      EXPECT_EQ(arg(gL, gM), base);
    }
  }
}

TEST(Symplectic, ReductionExamples)
{
  const int p = 3;
  const auto V = SymplecticSpace::standard(p, 2);
  const OrientedSubspace I(line(p, {1, 0, 0, 0}), 1);
  const SymplecticReduction red(V, I);
  EXPECT_EQ(red.perp_space(), Subspace(p, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}}));
  EXPECT_EQ(red.reduced().dim(), 2);

  const SymplecticReduction red0(V, OrientedSubspace(Subspace::zero(p, 4), 1));
  EXPECT_EQ(red0.reduced(), V);

  const OrientedSubspace L(Subspace(p, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}}), 1);
  EXPECT_EQ(SymplecticReduction(V, L).reduced().dim(), 0);

  EXPECT_THROW(SymplecticReduction(V, OrientedSubspace(Subspace(p, 4, {{1, 0, 0, 0}, {0, 0, 1, 0}}), 1)),
               std::invalid_argument);
}

TEST(Symplectic, GroupEnumerationMatchesBruteForce)
{
  const int p = 3;
  const auto V = SymplecticSpace::standard(p, 1);
  const auto G = enumerate_sp(V);
  std::size_t brute = 0;
  for (const auto& e : oracle::all_vectors(4, p))
    brute += oracle::det({{e[0], e[1]}, {e[2], e[3]}}, p) == 1;
  EXPECT_EQ(G.size(), 24u);
  EXPECT_EQ(brute, 24u);
  for (const auto& g : G)
    EXPECT_TRUE(preserves_form(V, g.mat()));
}

TEST(Symplectic, SampledElementsPreserveTheForm)
{
  for (int n : {1, 2}) {
    const auto V = SymplecticSpace::standard(5, n);
    for (const auto& g : sample_sp(V, 50, 17))
      EXPECT_TRUE(preserves_form(V, g.mat()));
  }
  const auto V = SymplecticSpace::standard(3, 1);
  EXPECT_THROW(SpElement(V, {{1, 1}, {1, 1}}), std::invalid_argument);
}

TEST(Symplectic, ActionOnOrientedLagrangians)
{
  const int p = 5;
  for (int n : {1, 2}) {
    const auto V = SymplecticSpace::standard(p, n);
    const auto ls = enumerate_oriented_lagrangians(V);
    const SpElement id = SpElement::identity(V);
    FpMat minus = fp::identity(static_cast<std::size_t>(2 * n));
    for (auto& r : minus)
      r = fp::neg(r, p);
    const SpElement neg(V, minus);
    for (const auto& L : ls) {
      EXPECT_EQ(act_on_lagrangian(id, L), L);
      const auto nL = act_on_lagrangian(neg, L);
      EXPECT_EQ(nL.sub, L.sub);
      EXPECT_EQ(nL.orient, mod_p((n % 2 ? -1 : 1) * L.orient, p));
    }
  }
}

TEST(Symplectic, ScaleGuard)
{
  EXPECT_THROW(enumerate_lagrangians(SymplecticSpace::standard(11, 2)), ScaleGuardError);
  EXPECT_THROW(enumerate_sp(SymplecticSpace::standard(3, 2)), ScaleGuardError);
  ::setenv("WEIL_MAX_CELLS", "10", 1);
  EXPECT_THROW(enumerate_lagrangians(SymplecticSpace::standard(5, 1)), ScaleGuardError);
  ::unsetenv("WEIL_MAX_CELLS");
  EXPECT_NO_THROW(enumerate_lagrangians(SymplecticSpace::standard(5, 1)));
}
