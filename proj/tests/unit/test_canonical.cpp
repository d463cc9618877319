#include "weil/canonical.hpp"

#include <gtest/gtest.h>

using namespace weil;

namespace {

const SymplecticSpace V31 = SymplecticSpace::standard(3, 1);
const SymplecticSpace V32 = SymplecticSpace::standard(3, 2);

} // namespace

TEST(Canonical, DefaultBase)
{
  const CanonicalSpace c(V32);
  EXPECT_EQ(c.base(), OrientedSubspace(Subspace(3, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}}), 1));
  EXPECT_EQ(c.dim(), 9u);
}

TEST(Canonical, ComponentsAreConsistentAcrossLabels)
{
  const CanonicalSpace c(V31);
  const auto ls = enumerate_oriented_lagrangians(V31);
  const auto v = delta(c.base_model()).values;
  for (const auto& M : ls)
    for (const auto& L : ls)
      EXPECT_EQ(c.transport(M, L).apply(c.component(v, L)), c.component(v, M));
  // evaluation at L is a bijection
  for (const auto& L : ls)
    EXPECT_EQ(c.transport(L, c.base()).rank(), 3u);
}

TEST(Canonical, PullbackByIdentity)
{
  for (const auto& L : enumerate_oriented_lagrangians(V31))
    EXPECT_EQ(pullback_matrix(SpElement::identity(V31).iso(), L), CycMatrix::identity(3, 3));
}

TEST(Canonical, PullbackIsContravariant)
{
  const auto gs = sample_sp(V31, 20, 5);
  const auto fs = sample_sp(V31, 20, 6);
  const auto ls = enumerate_oriented_lagrangians(V31);
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const SpElement& g = gs[i];
    const SpElement& f = fs[i];
    const auto& L = ls[i % ls.size()];
    const auto fL = act_on_lagrangian(f, L);
    EXPECT_EQ(pullback_matrix((g * f).iso(), L), pullback_matrix(f.iso(), L) * pullback_matrix(g.iso(), fL));
  }
}

TEST(Canonical, PullbackCommutesWithCanonicalOperators)
{
  const auto ls = enumerate_oriented_lagrangians(V31);
  const CanonicalSpace c(V31);
  for (const auto& g : sample_sp(V31, 5, 8))
    for (const auto& M : ls)
      for (const auto& L : ls) {
        const auto gM = act_on_lagrangian(g, M), gL = act_on_lagrangian(g, L);
        EXPECT_EQ(c.transport(M, L) * pullback_matrix(g.iso(), L),
                  pullback_matrix(g.iso(), M) * c.transport(gM, gL));
      }
}

TEST(Canonical, WeilRepresentationOfIdentity)
{
  for (const auto& V : {V31, V32}) {
    const CanonicalSpace c(V);
    EXPECT_EQ(weil_rep(c, SpElement::identity(V)).mat, CycMatrix::identity(3, c.dim()));
  }
}

TEST(Canonical, HomomorphismOnAllPairs)
{
  const CanonicalSpace c(V31);
  const auto G = enumerate_sp(V31);
  std::map<FpMat, CycMatrix> rho;
  for (const auto& g : G)
    rho.emplace(g.mat(), weil_rep(c, g).mat);
  std::size_t pairs = 0;
  for (const auto& a : G)
    for (const auto& b : G) {
      ASSERT_EQ(rho.at((a * b).mat()), rho.at(a.mat()) * rho.at(b.mat()));
      ++pairs;
    }
  EXPECT_EQ(pairs, 576u);
}

TEST(Canonical, HomomorphismSampled)
{
  for (const auto& V : {SymplecticSpace::standard(5, 1), V32}) {
    const CanonicalSpace c(V);
    const auto A = sample_sp(V, 30, 1), B = sample_sp(V, 30, 2);
    for (std::size_t i = 0; i < A.size(); ++i)
      EXPECT_EQ(weil_rep(c, A[i] * B[i]).mat, weil_rep(c, A[i]).mat * weil_rep(c, B[i]).mat);
  }
}

TEST(Canonical, EgorovExhaustive)
{
  const CanonicalSpace c(V31);
  const ModelSpace m = c.base_model();
  const auto H = enumerate_heis(V31);
  for (const auto& g : enumerate_sp(V31)) {
    const CycMatrix r = weil_rep(c, g).mat;
    const CycMatrix rinv = r.inverse();
    for (const auto& h : H)
      ASSERT_EQ(r * pi_matrix(m, h) * rinv, pi_matrix(m, sp_act_heis(g, h)));
  }
}

TEST(Canonical, ChangeOfBaseConjugates)
{
  const auto ls = enumerate_oriented_lagrangians(V31);
  const CanonicalSpace c(V31);
  for (const auto& B2 : ls) {
    const CanonicalSpace c2(V31, B2);
    const CycMatrix P = c.transport(B2, c.base());
    for (const auto& g : sample_sp(V31, 3, 4))
      EXPECT_EQ(weil_rep(c2, g).mat * P, P * weil_rep(c, g).mat);
  }
}

TEST(Canonical, TotalIdempotent)
{
  const CanonicalSpace c(V31);
  const GammaSpace G = gamma_space(c);
  ASSERT_EQ(G.dim(), 24u);
  const CycMatrix T = total_idempotent(c, G);
  EXPECT_EQ(T * T, T);
  EXPECT_EQ(T.rank(), 3u);
  const CycMatrix Tc = CycMatrix::identity(3, 24) - T;
  EXPECT_EQ(Tc * Tc, Tc);
  EXPECT_EQ(Tc.rank(), 21u);
  for (const auto& g : enumerate_sp(V31))
    EXPECT_EQ(gamma_action(c, G, g) * T, T * gamma_action(c, G, g));
}

TEST(Canonical, GammaActionIsAnAction)
{
  const CanonicalSpace c(V31);
  const GammaSpace G = gamma_space(c);
  const auto A = sample_sp(V31, 5, 10), B = sample_sp(V31, 5, 11);
  for (std::size_t i = 0; i < A.size(); ++i)
    EXPECT_EQ(gamma_action(c, G, A[i] * B[i]), gamma_action(c, G, A[i]) * gamma_action(c, G, B[i]));
}

TEST(Canonical, TensorCompatibility)
{
  const CanonicalSpace c1(V31), c2(V31);
  const CanonicalSpace c12 = product_canonical(c1, c2);
  EXPECT_EQ(c12.dim(), c1.dim() * c2.dim());
  const CycMatrix alpha = tensor_alpha(c12, c1, c2);
  EXPECT_EQ(alpha.rank(), 9u);
  std::vector<CycNum> dd(9, CycNum::zero(3));
  dd[0] = CycNum::one(3);
  EXPECT_EQ(alpha.apply(delta(c12.base_model()).values), dd);
  const auto A = sample_sp(V31, 50, 100), B = sample_sp(V31, 50, 200);
  for (std::size_t i = 0; i < A.size(); ++i) {
    const SpElement g = product_element(c12.space(), A[i], B[i]);
    EXPECT_EQ(alpha * weil_rep(c12, g).mat, kron(weil_rep(c1, A[i]).mat, weil_rep(c2, B[i]).mat) * alpha);
  }
}

TEST(Canonical, DualityPairing)
{
  const CanonicalSpace c(V31);
  const CanonicalSpace bar = dual_canonical(c), conj = conjugate_canonical(c);
  EXPECT_EQ(bar.space().gram(), (FpMat{{0, 2}, {1, 0}}));
  const auto d = delta(c.base_model()).values;
  EXPECT_EQ(duality_pairing(bar, c, d, d, c.base()), CycNum::one(3));
  const CycMatrix G = duality_gram(bar, c, c.base());
  EXPECT_EQ(G.rank(), 3u);
  const auto ls = enumerate_oriented_lagrangians(V31);
  for (const auto& L : ls)
    EXPECT_EQ(duality_gram(bar, c, L), G);
  for (const auto& M : ls)
    for (const auto& L : ls)
      EXPECT_EQ(flip_matrix(bar, conj, M) * bar.transport(M, L), conj.transport(M, L) * flip_matrix(bar, conj, L));
}

TEST(Canonical, DualityPairingIsInvariant)
{
  // <rho_bar(g) a, rho(g) b> = <a, b>
  const CanonicalSpace c(V31);
  const CanonicalSpace bar = dual_canonical(c);
  const CycMatrix G = duality_gram(bar, c, c.base());
  for (const auto& g : enumerate_sp(V31)) {
    const SpElement gb(bar.space(), g.mat());
    EXPECT_EQ(weil_rep(bar, gb).mat.transpose() * G * weil_rep(c, g).mat, G);
  }
}

TEST(Canonical, ReductionByALine)
{
  const CanonicalSpace c(V32);
  const OrientedSubspace I(Subspace(3, 4, {{1, 0, 0, 0}}), 1);
  const SymplecticReduction red(V32, I);
  const CanonicalSpace cr(red.reduced());
  const CycMatrix inv = invariant_subspace(c, I.sub);
  EXPECT_EQ(inv.cols(), 3u);
  for (std::size_t j = 0; j < inv.cols(); ++j)
    EXPECT_TRUE(is_invariant(c, I.sub, inv.column(j)));
  const CycMatrix alpha = reduction_alpha(c, red, cr);
  EXPECT_EQ((alpha * inv).rank(), 3u);
}

TEST(Canonical, ReductionByZeroIsIdentity)
{
  for (const auto& V : {V31, V32}) {
    const CanonicalSpace c(V);
    const SymplecticReduction red(V, OrientedSubspace(Subspace::zero(3, V.dim()), 1));
    const CanonicalSpace cr(red.reduced());
    EXPECT_EQ(reduction_alpha(c, red, cr), CycMatrix::identity(3, c.dim()));
  }
}

TEST(Canonical, DistinguishedVectors)
{
  for (const auto& V : {V31, V32}) {
    const CanonicalSpace c(V);
    for (const auto& L : enumerate_oriented_lagrangians(V)) {
      const auto v = distinguished_vector(c, L);
      EXPECT_EQ(invariant_subspace(c, L.sub).cols(), 1u);
      EXPECT_TRUE(is_invariant(c, L.sub, v));
      EXPECT_EQ(c.component(v, L), delta(c.model(L)).values);
      const SymplecticReduction red(V, L);
      const CanonicalSpace cr(red.reduced());
      const auto a = reduction_alpha(c, red, cr).apply(v);
      ASSERT_EQ(a.size(), 1u);
      EXPECT_EQ(a[0], CycNum::one(3));
    }
  }
}
