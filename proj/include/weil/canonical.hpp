#pragma once

// The canonical space of a symplectic space: compatible systems of model
// vectors, stored by their component at a base oriented Lagrangian. Hosts
// the Weil representation and the product, duality and reduction maps.

#include "weil/intertwine.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace weil {

/// span{e_1..e_n} with orientation 1 when it is Lagrangian, otherwise the
/// first Lagrangian in enumeration order.
inline OrientedSubspace default_base(const SymplecticSpace& V)
{
  FpMat rows;
  for (int i = 0; i < V.n(); ++i)
    rows.push_back(fp::unit(static_cast<std::size_t>(V.dim()), static_cast<std::size_t>(i)));
  Subspace B(V.p(), V.dim(), rows);
  if (is_lagrangian(V, B))
    return OrientedSubspace(B, 1);
  auto lags = enumerate_lagrangians(V);
  if (lags.empty())
    throw std::logic_error("symplectic space without Lagrangians");
  return OrientedSubspace(lags.front(), 1);
}

class CanonicalSpace
{
public:
  explicit CanonicalSpace(SymplecticSpace V, std::optional<OrientedSubspace> base = std::nullopt, int chi = 1)
      : space_(std::move(V)), base_(base ? *base : default_base(space_)), chi_(mod_p(chi, space_.p()))
  {
    if (!is_lagrangian(space_, base_.sub))
      throw std::invalid_argument("canonical space: base is not Lagrangian");
  }

  const SymplecticSpace& space() const { return space_; }
  const OrientedSubspace& base() const { return base_; }
  int chi() const { return chi_; }
  int p() const { return space_.p(); }
  std::size_t dim() const { return static_cast<std::size_t>(ipow(space_.p(), space_.n())); }

  ModelSpace model(const OrientedSubspace& L) const { return ModelSpace(space_, L, chi_); }
  ModelSpace base_model() const { return model(base_); }

  /// Canonical operator H_L -> H_M (cached).
  const CycMatrix& transport(const OrientedSubspace& M, const OrientedSubspace& L) const
  {
    auto key = std::make_pair(M, L);
    auto it = cache_.find(key);
    if (it == cache_.end())
      it = cache_.emplace(key, canonical_T(space_, M, L, Method::closed_form, chi_).mat).first;
    return it->second;
  }

  /// The L-component of the system whose base component is v.
  std::vector<CycNum> component(const std::vector<CycNum>& v, const OrientedSubspace& L) const
  {
    return transport(L, base_).apply(v);
  }

private:
  SymplecticSpace space_;
  OrientedSubspace base_;
  int chi_;
  mutable std::map<std::pair<OrientedSubspace, OrientedSubspace>, CycMatrix> cache_;
};

/// Matrix of w -> w o r with r(v,z) = (f v, z): H_{f L}(target) -> H_L(source).
inline CycMatrix pullback_matrix(const SymplecticIso& f, const OrientedSubspace& L, int chi = 1)
{
  ModelSpace src(f.source, L, chi);
  ModelSpace tgt(f.target, push_forward(f, L), chi);
  CycMatrix R(f.source.p(), src.size(), tgt.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    auto d = tgt.decompose(heis_vector(f.target, f.apply(src.rep(j))));
    R(j, d.index) = tgt.character(d.z);
  }
  return R;
}

/// H(f): H(V2) -> H(V1) for f: V1 -> V2, in base coordinates.
inline CycMatrix functor_matrix(const SymplecticIso& f, const CanonicalSpace& c1, const CanonicalSpace& c2)
{
  if (f.source != c1.space() || f.target != c2.space() || c1.chi() != c2.chi())
    throw std::invalid_argument("functor: map does not match the canonical spaces");
  const OrientedSubspace fB = push_forward(f, c1.base());
  return pullback_matrix(f, c1.base(), c1.chi()) * c2.transport(fB, c2.base());
}

struct WeilMatrix
{
  SpElement g;
  CycMatrix mat;
};

/// rho(g) = H(g^{-1}) on the base model.
inline WeilMatrix weil_rep(const CanonicalSpace& c, const SpElement& g)
{
  if (g.space() != c.space())
    throw std::invalid_argument("weil_rep: element of another space");
  return {g, functor_matrix(g.inverse().iso(), c, c)};
}

// ---------------------------------------------------------------------------
// Total idempotent on the direct sum of all models

struct GammaSpace
{
  std::vector<OrientedSubspace> labels;
  std::size_t block = 0; // p^n
  std::size_t dim() const { return labels.size() * block; }
};

inline GammaSpace gamma_space(const CanonicalSpace& c)
{
  return {enumerate_oriented_lagrangians(c.space()), c.dim()};
}

inline std::size_t label_index(const GammaSpace& g, const OrientedSubspace& L)
{
  for (std::size_t i = 0; i < g.labels.size(); ++i)
    if (g.labels[i] == L)
      return i;
  throw std::invalid_argument("label not found: " + L.to_string());
}

inline void set_block(CycMatrix& m, std::size_t bi, std::size_t bj, std::size_t block, const CycMatrix& b)
{
  for (std::size_t i = 0; i < block; ++i)
    for (std::size_t j = 0; j < block; ++j)
      m(bi * block + i, bj * block + j) = b(i, j);
}

/// Block (M, L) equal to T_{M,L} / #labels.
inline CycMatrix total_idempotent(const CanonicalSpace& c, const GammaSpace& g)
{
  const std::size_t k = g.labels.size();
  if (g.dim() > 2000)
    throw ScaleGuardError("total_idempotent: dimension " + std::to_string(g.dim()) + " too large");
  const CycNum w = CycNum::from_rational(c.p(), Rational(1, static_cast<unsigned long>(k)));
  CycMatrix T(c.p(), g.dim(), g.dim());
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      set_block(T, a, b, g.block, w * c.transport(g.labels[a], g.labels[b]));
  return T;
}

/// (Phi(g) v)_{gL} = v_L o g^{-1}.
inline CycMatrix gamma_action(const CanonicalSpace& c, const GammaSpace& gs, const SpElement& g)
{
  CycMatrix P(c.p(), gs.dim(), gs.dim());
  const SymplecticIso ginv = g.inverse().iso();
  for (std::size_t b = 0; b < gs.labels.size(); ++b) {
    const OrientedSubspace gL = act_on_lagrangian(g, gs.labels[b]);
    set_block(P, label_index(gs, gL), b, gs.block, pullback_matrix(ginv, gL, c.chi()));
  }
  return P;
}

// ---------------------------------------------------------------------------
// Products

inline SymplecticSpace product_space(const SymplecticSpace& a, const SymplecticSpace& b)
{
  if (a.p() != b.p())
    throw std::invalid_argument("product: spaces over different fields");
  const auto da = static_cast<std::size_t>(a.dim()), db = static_cast<std::size_t>(b.dim());
  FpMat g(da + db, FpVec(da + db, 0));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      g[i][j] = a.gram()[i][j];
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j)
      g[da + i][da + j] = b.gram()[i][j];
  return SymplecticSpace(a.p(), std::move(g));
}

inline FpVec concat(const FpVec& a, const FpVec& b)
{
  FpVec v = a;
  v.insert(v.end(), b.begin(), b.end());
  return v;
}

/// L1 x L2 with orientation o1 ^ o2.
inline OrientedSubspace product_lagrangian(const OrientedSubspace& a, const OrientedSubspace& b)
{
  const int p = a.p();
  FpMat rows;
  for (const auto& r : a.rows())
    rows.push_back(concat(r, fp::zeros(static_cast<std::size_t>(b.sub.ambient()))));
  for (const auto& r : b.rows())
    rows.push_back(concat(fp::zeros(static_cast<std::size_t>(a.sub.ambient())), r));
  return OrientedSubspace::from_rows(p, a.sub.ambient() + b.sub.ambient(), rows,
                                     static_cast<int>(static_cast<long long>(a.orient) * b.orient % p));
}

inline SpElement product_element(const SymplecticSpace& V12, const SpElement& g1, const SpElement& g2)
{
  const auto d1 = static_cast<std::size_t>(g1.space().dim()), d2 = static_cast<std::size_t>(g2.space().dim());
  FpMat m(d1 + d2, FpVec(d1 + d2, 0));
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d1; ++j)
      m[i][j] = g1.mat()[i][j];
  for (std::size_t i = 0; i < d2; ++i)
    for (std::size_t j = 0; j < d2; ++j)
      m[d1 + i][d1 + j] = g2.mat()[i][j];
  return SpElement(V12, std::move(m));
}

/// Canonical space of V1 x V2 based at B1 x B2.
inline CanonicalSpace product_canonical(const CanonicalSpace& c1, const CanonicalSpace& c2)
{
  return CanonicalSpace(product_space(c1.space(), c2.space()), product_lagrangian(c1.base(), c2.base()), c1.chi());
}

/// H_{B1 x B2} -> H_{B1} (x) H_{B2}: value at ((v1_j, v2_k), 0) in row j * dim2 + k.
inline CycMatrix tensor_alpha(const CanonicalSpace& c12, const CanonicalSpace& c1, const CanonicalSpace& c2)
{
  if (c12.base() != product_lagrangian(c1.base(), c2.base()))
    throw std::invalid_argument("tensor: product space is not based at the product of the bases");
  const ModelSpace m12 = c12.base_model(), m1 = c1.base_model(), m2 = c2.base_model();
  CycMatrix A(c12.p(), m1.size() * m2.size(), m12.size());
  for (std::size_t j = 0; j < m1.size(); ++j)
    for (std::size_t k = 0; k < m2.size(); ++k) {
      auto d = m12.decompose(heis_vector(c12.space(), concat(m1.rep(j), m2.rep(k))));
      A(j * m2.size() + k, d.index) = m12.character(d.z);
    }
  return A;
}

// ---------------------------------------------------------------------------
// Duality

/// The space with negated form, same base and character.
inline CanonicalSpace dual_canonical(const CanonicalSpace& c)
{
  return CanonicalSpace(c.space().negated(), c.base(), c.chi());
}

/// V with the inverse character.
inline CanonicalSpace conjugate_canonical(const CanonicalSpace& c)
{
  return CanonicalSpace(c.space(), c.base(), c.p() - c.chi());
}

/// Matrix of f -> f o r^{-1} from H_L(V-bar, psi) to H_L(V, psi^{-1}),
/// r(v, z) = (v, -z).
inline CycMatrix flip_matrix(const CanonicalSpace& bar, const CanonicalSpace& conj, const OrientedSubspace& L)
{
  const ModelSpace mb = bar.model(L), mc = conj.model(L);
  CycMatrix S(bar.p(), mc.size(), mb.size());
  for (std::size_t j = 0; j < mc.size(); ++j) {
    HeisElement h = heis_vector(conj.space(), mc.rep(j));
    h.z = mod_p(-h.z, bar.p());
    auto d = mb.decompose(h);
    S(j, d.index) = mb.character(d.z);
  }
  return S;
}

/// Gram matrix of the pairing H(V-bar) x H(V) -> Q(zeta) computed at L:
/// G[a][b] = sum over V/L of (flip a_L)(v) b_L(v).
inline CycMatrix duality_gram(const CanonicalSpace& bar, const CanonicalSpace& c, const OrientedSubspace& L)
{
  const CanonicalSpace conj = conjugate_canonical(c);
  const CycMatrix A = flip_matrix(bar, conj, L) * bar.transport(L, bar.base());
  const CycMatrix B = c.transport(L, c.base());
  return A.transpose() * B;
}

inline CycNum duality_pairing(const CanonicalSpace& bar, const CanonicalSpace& c, const std::vector<CycNum>& a,
                              const std::vector<CycNum>& b, const OrientedSubspace& L)
{
  const CycMatrix G = duality_gram(bar, c, L);
  const std::vector<CycNum> Gb = G.apply(b);
  CycNum acc = CycNum::zero(c.p());
  for (std::size_t i = 0; i < a.size(); ++i)
    acc += a[i] * Gb[i];
  return acc;
}

// ---------------------------------------------------------------------------
// Reduction

/// Basis (as columns) of the vectors of H_B fixed by pi((i,0)), i in I.
inline CycMatrix invariant_subspace(const CanonicalSpace& c, const Subspace& I)
{
  const ModelSpace m = c.base_model();
  const std::size_t d = m.size();
  const CycMatrix id = CycMatrix::identity(c.p(), d);
  CycMatrix sys(c.p(), d * static_cast<std::size_t>(I.dim()), d);
  for (std::size_t k = 0; k < static_cast<std::size_t>(I.dim()); ++k) {
    const CycMatrix D = pi_matrix(m, heis_vector(c.space(), I.rows()[k])) - id;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        sys(k * d + i, j) = D(i, j);
  }
  if (I.dim() == 0)
    return id;
  return sys.nullspace();
}

inline bool is_invariant(const CanonicalSpace& c, const Subspace& I, const std::vector<CycNum>& v)
{
  const ModelSpace m = c.base_model();
  for (const auto& i : I.rows())
    if (pi_matrix(m, heis_vector(c.space(), i)).apply(v) != v)
      return false;
  return true;
}

/// H(V) -> H(I^perp/I) in base coordinates: take the component at the
/// preimage of the reduced base, restrict to Z I^perp and descend.
inline CycMatrix reduction_alpha(const CanonicalSpace& c, const SymplecticReduction& red, const CanonicalSpace& cr)
{
  if (red.ambient() != c.space() || red.reduced() != cr.space() || c.chi() != cr.chi())
    throw std::invalid_argument("reduction: spaces do not match");
  const OrientedSubspace L = red.preimage(cr.base());
  const ModelSpace mL = c.model(L), mr = cr.base_model();
  CycMatrix R(c.p(), mr.size(), mL.size());
  for (std::size_t j = 0; j < mr.size(); ++j) {
    auto d = mL.decompose(heis_vector(c.space(), red.lift(mr.rep(j))));
    R(j, d.index) = mL.character(d.z);
  }
  return R * c.transport(L, c.base());
}

/// The I-invariant generator whose L-component is delta_L (L Lagrangian).
inline std::vector<CycNum> distinguished_vector(const CanonicalSpace& c, const OrientedSubspace& L)
{
  if (!is_lagrangian(c.space(), L.sub))
    throw std::invalid_argument("distinguished vector: subspace is not Lagrangian");
  return c.transport(c.base(), L).apply(delta(c.model(L)).values);
}

} // namespace weil
