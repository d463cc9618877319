#pragma once

// Canonical intertwining operators between Lagrangian models and the
// kernel calculus that presents them.

#include "weil/heisenberg.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace weil {

/// Operator H_source -> H_target in the representative bases.
struct Intertwiner
{
  ModelSpace source;
  ModelSpace target;
  CycMatrix mat;

  Intertwiner(ModelSpace s, ModelSpace t, CycMatrix m) : source(std::move(s)), target(std::move(t)), mat(std::move(m))
  {
    if (mat.rows() != target.size() || mat.cols() != source.size())
      throw std::invalid_argument("intertwiner: matrix shape does not match the models");
  }

  /// this after other
  friend Intertwiner operator*(const Intertwiner& a, const Intertwiner& b)
  {
    if (a.source != b.target)
      throw std::invalid_argument("intertwiner: composition of incompatible operators");
    return Intertwiner(b.source, a.target, a.mat * b.mat);
  }

  ModelVector operator()(const ModelVector& f) const
  {
    if (f.model != source)
      throw std::invalid_argument("intertwiner: vector belongs to another model");
    return ModelVector(target, mat.apply(f.values));
  }
};

/// Sum of psi_chi^{count[z]}-weighted roots of unity.
inline CycNum root_sum(const std::vector<long long>& counts, int p)
{
  std::vector<Rational> c(static_cast<std::size_t>(p - 1));
  const long long top = counts[static_cast<std::size_t>(p - 1)];
  for (std::size_t k = 0; k + 1 < static_cast<std::size_t>(p); ++k)
    c[k] = Rational(static_cast<long>(counts[k] - top));
  return CycNum(p, std::move(c));
}

/// F[f](h) = sum over m in M/(M cap L) of f((m,0) h), as a matrix H_L -> H_M.
inline CycMatrix averaging_matrix(const ModelSpace& target, const ModelSpace& source)
{
  if (target.space() != source.space() || target.chi() != source.chi())
    throw std::invalid_argument("averaging: models of different Heisenberg groups");
  const SymplecticSpace& V = target.space();
  const int p = V.p();
  const Subspace I = intersect(target.lagrangian(), source.lagrangian());
  const auto ms = quotient_reps(target.lagrangian(), I);
  const std::size_t d = target.size();
  // counts[i][j][e]: number of terms contributing zeta^e to entry (i, j)
  std::vector<std::vector<std::vector<long long>>> counts(
      d, std::vector<std::vector<long long>>(d, std::vector<long long>(static_cast<std::size_t>(p), 0)));
  for (std::size_t i = 0; i < d; ++i) {
    const HeisElement r = heis_vector(V, target.rep(i));
    for (const auto& m : ms) {
      auto dec = source.decompose(heis_mul(V, heis_vector(V, m), r));
      const int e = mod_p(static_cast<long long>(source.chi()) * dec.z, p);
      ++counts[i][dec.index][static_cast<std::size_t>(e)];
    }
  }
  CycMatrix F(p, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      F(i, j) = root_sum(counts[i][j], p);
  return F;
}

inline ModelVector averaging(const ModelSpace& target, const ModelVector& f)
{
  return ModelVector(target, averaging_matrix(target, f.model).apply(f.values));
}

inline CycNum sigma(long long a, int p)
{
  const int s = legendre(a, p);
  if (s == 0)
    throw std::domain_error("normalization: quadratic character evaluated at 0");
  return CycNum::from_int(p, s);
}

/// A_{M,L} for an arbitrary pair of oriented Lagrangians (target M, source L):
/// (G/p)^{n_I} sigma((-1)^{C(n_I,2)} (iota_L/iota_M) omega_wedge(o_{L/I}, o_{M/I})).
inline CycNum normalization(const SymplecticSpace& V, const OrientedSubspace& M, const OrientedSubspace& L, int chi = 1)
{
  const int p = V.p();
  const Subspace I = intersect(M.sub, L.sub);
  const int nI = V.n() - I.dim();
  const OrientationSplit sM = orientation_decompose(M, I);
  const OrientationSplit sL = orientation_decompose(L, I);
  long long w = wedge_rows(V, sL.quotient_rows, sM.quotient_rows);
  w = w * sL.quotient_orient % p * sM.quotient_orient % p;
  long long arg = static_cast<long long>(binom2_sign(nI)) * sL.iota % p * inv_mod(sM.iota, p) % p * w % p;
  const CycNum g = (Rational(1, static_cast<unsigned long>(p)) * gauss_sum(p, chi)).pow(nI);
  return g * sigma(arg, p);
}

/// A_{M,L} for a transverse pair: (G/p)^n sigma((-1)^{C(n,2)} omega_wedge(o_L, o_M)).
inline CycNum transverse_normalization(const SymplecticSpace& V, const OrientedSubspace& M, const OrientedSubspace& L,
                                       int chi = 1)
{
  if (!in_general_position(M, L))
    throw std::invalid_argument("transverse normalization: pair not in general position");
  const int p = V.p();
  const long long arg = static_cast<long long>(binom2_sign(V.n())) * wedge_pairing(V, L, M);
  const CycNum g = (Rational(1, static_cast<unsigned long>(p)) * gauss_sum(p, chi)).pow(V.n());
  return g * sigma(arg, p);
}

/// A F for a transverse pair.
inline Intertwiner ansatz_T(const SymplecticSpace& V, const OrientedSubspace& M, const OrientedSubspace& L, int chi = 1)
{
  ModelSpace tm(V, M, chi), sm(V, L, chi);
  CycMatrix F = averaging_matrix(tm, sm);
  return Intertwiner(sm, tm, transverse_normalization(V, M, L, chi) * F);
}

enum class Method
{
  closed_form,
  chained
};

/// First Lagrangian (orientation 1) in enumeration order transverse to both.
inline std::optional<OrientedSubspace> first_transverse_middle(const SymplecticSpace& V, const Subspace& a,
                                                               const Subspace& b)
{
  for (const auto& S : enumerate_lagrangians(V))
    if (in_general_position(S, a) && in_general_position(S, b))
      return OrientedSubspace(S, 1);
  return std::nullopt;
}

/// T_{N,S} T_{S,L} through a middle transverse to both ends.
inline Intertwiner chained_T(const SymplecticSpace& V, const OrientedSubspace& N, const OrientedSubspace& L,
                             const OrientedSubspace& S, int chi = 1)
{
  if (!in_general_position(N, S) || !in_general_position(S, L))
    throw std::invalid_argument("chained_T: middle " + S.to_string() + " is not transverse to both ends");
  return ansatz_T(V, N, S, chi) * ansatz_T(V, S, L, chi);
}

inline Intertwiner canonical_T(const SymplecticSpace& V, const OrientedSubspace& M, const OrientedSubspace& L,
                               Method method = Method::closed_form, int chi = 1)
{
  if (method == Method::chained) {
    auto S = first_transverse_middle(V, M.sub, L.sub);
    if (!S)
      throw std::logic_error("chained_T: no transverse middle Lagrangian");
    return chained_T(V, M, L, *S, chi);
  }
  ModelSpace tm(V, M, chi), sm(V, L, chi);
  CycMatrix F = averaging_matrix(tm, sm);
  return Intertwiner(sm, tm, normalization(V, M, L, chi) * F);
}

struct CocycleValue
{
  CycNum closed;          // G^n sigma((-1)^{C(n,2)} omega_wedge(r(o_M), o_M))
  CycNum operator_value;  // F_{N,M} F_{M,L} delta_L evaluated at the identity
  CycNum gauss_sum_value; // sum over m in M of psi(omega(r(m), m)/2)
};

inline void require_pairwise_transverse(const OrientedSubspace& N, const OrientedSubspace& M, const OrientedSubspace& L)
{
  if (!in_general_position(N, M) || !in_general_position(M, L) || !in_general_position(N, L))
    throw std::invalid_argument("triple is not pairwise transverse");
}

inline CocycleValue cocycle_C(const SymplecticSpace& V, const OrientedSubspace& N, const OrientedSubspace& M,
                              const OrientedSubspace& L, int chi = 1)
{
  require_pairwise_transverse(N, M, L);
  const int p = V.p();
  const int n = V.n();
  const long long arg = static_cast<long long>(binom2_sign(n)) * residue_wedge(V, M, L.sub, N.sub);
  CycNum closed = gauss_sum(p, chi).pow(n) * sigma(arg, p);

  ModelSpace nm(V, N, chi), mm(V, M, chi), lm(V, L, chi);
  CycMatrix FF = averaging_matrix(nm, mm) * averaging_matrix(mm, lm);
  CycNum op = FF.apply(delta(lm).values)[0];

  const FpMat r = residue_map(V, M.sub, L.sub, N.sub);
  std::vector<long long> counts(static_cast<std::size_t>(p), 0);
  for (const auto& c : fp::all_vectors(n, p)) {
    FpVec m = fp::combine(c, M.rows(), static_cast<std::size_t>(V.dim()), p);
    FpVec rm = fp::combine(c, r, static_cast<std::size_t>(V.dim()), p);
    long long e = static_cast<long long>(chi) * half_mod(p) % p * V.omega(rm, m) % p;
    ++counts[static_cast<std::size_t>(e)];
  }
  return {closed, op, root_sum(counts, p)};
}

// ---------------------------------------------------------------------------
// Kernels

/// Function on H(V) with K(z h) = psi_chi(z) K(h) and K(m h l) = K(h) for
/// m in M (target), l in L (source). Stored densely in heis_index order.
class Kernel
{
public:
  Kernel(SymplecticSpace V, OrientedSubspace target, OrientedSubspace source, int chi, std::vector<CycNum> values)
      : space_(std::move(V)), target_(std::move(target)), source_(std::move(source)), chi_(mod_p(chi, space_.p())),
        values_(std::move(values))
  {
    if (values_.size() != heis_order(space_))
      throw std::invalid_argument("kernel: expected one value per group element");
    validate();
  }

  const SymplecticSpace& space() const { return space_; }
  const OrientedSubspace& target() const { return target_; }
  const OrientedSubspace& source() const { return source_; }
  int chi() const { return chi_; }
  const std::vector<CycNum>& values() const { return values_; }

  const CycNum& at(const HeisElement& h) const { return values_[heis_index(space_, h)]; }

  friend Kernel operator*(const CycNum& c, const Kernel& k)
  {
    std::vector<CycNum> vals;
    vals.reserve(k.values_.size());
    for (const auto& v : k.values_)
      vals.push_back(v.is_zero() ? v : c * v);
    return Kernel(k.space_, k.target_, k.source_, k.chi_, std::move(vals));
  }

  friend bool operator==(const Kernel& a, const Kernel& b)
  {
    return a.space_ == b.space_ && a.target_ == b.target_ && a.source_ == b.source_ && a.chi_ == b.chi_ &&
           a.values_ == b.values_;
  }

private:
  void validate() const
  {
    const int p = space_.p();
    const CycNum zc = psi_chi(1, chi_, p);
    for (const auto& h : enumerate_heis(space_)) {
      const CycNum& k = at(h);
      if (at(heis_mul(space_, heis_central(space_, 1), h)) != zc * k)
        throw std::invalid_argument("kernel: central equivariance violated at " + h.to_string());
      for (const auto& m : target_.rows())
        if (at(heis_mul(space_, heis_vector(space_, m), h)) != k)
          throw std::invalid_argument("kernel: left invariance violated at " + h.to_string());
      for (const auto& l : source_.rows())
        if (at(heis_mul(space_, h, heis_vector(space_, l))) != k)
          throw std::invalid_argument("kernel: right invariance violated at " + h.to_string());
    }
  }

  SymplecticSpace space_;
  OrientedSubspace target_;
  OrientedSubspace source_;
  int chi_;
  std::vector<CycNum> values_;
};

/// psi_chi(z - omega(m,l)/2) on (m + l, z), zero off M + L.
inline Kernel basis_kernel(const SymplecticSpace& V, const OrientedSubspace& M, const OrientedSubspace& L, int chi = 1)
{
  const int p = V.p();
  FpMat gens = M.rows();
  gens.insert(gens.end(), L.rows().begin(), L.rows().end());
  const FpMat sys = fp::transpose(gens, static_cast<std::size_t>(V.dim()));
  const auto dim = static_cast<std::size_t>(V.dim());
  std::vector<CycNum> vals;
  for (const auto& h : enumerate_heis(V)) {
    auto x = fp::solve(sys, h.v, gens.size(), p);
    if (!x) {
      vals.push_back(CycNum::zero(p));
      continue;
    }
    FpVec cm(x->begin(), x->begin() + M.dim());
    FpVec cl(x->begin() + M.dim(), x->end());
    const FpVec m = fp::combine(cm, M.rows(), dim, p);
    const FpVec l = fp::combine(cl, L.rows(), dim, p);
    vals.push_back(psi_chi(h.z - static_cast<long long>(half_mod(p)) * V.omega(m, l), chi, p));
  }
  return Kernel(V, M, L, chi, std::move(vals));
}

/// The canonical kernel A_{M,L} times the basis kernel.
inline Kernel ansatz_kernel(const SymplecticSpace& V, const OrientedSubspace& M, const OrientedSubspace& L, int chi = 1)
{
  return normalization(V, M, L, chi) * basis_kernel(V, M, L, chi);
}

/// Matrix of f -> K * f, H_L -> H_M; the convolution sums once over each
/// right coset of Z L, using the representatives (v_j, 0) of V/L.
inline CycMatrix transform_matrix(const Kernel& K)
{
  const SymplecticSpace& V = K.space();
  ModelSpace tm(V, K.target(), K.chi()), sm(V, K.source(), K.chi());
  CycMatrix T(V.p(), tm.size(), sm.size());
  for (std::size_t j = 0; j < sm.size(); ++j) {
    const FpVec vj = sm.rep(j);
    const CycNum& k = K.at(heis_vector(V, vj));
    if (k.is_zero())
      continue;
    const HeisElement inv = heis_vector(V, fp::neg(vj, V.p()));
    for (std::size_t i = 0; i < tm.size(); ++i) {
      auto d = sm.decompose(heis_mul(V, inv, heis_vector(V, tm.rep(i))));
      T(i, d.index) += k * sm.character(d.z);
    }
  }
  return T;
}

inline Intertwiner transform(const Kernel& K)
{
  const SymplecticSpace& V = K.space();
  return Intertwiner(ModelSpace(V, K.source(), K.chi()), ModelSpace(V, K.target(), K.chi()), transform_matrix(K));
}

/// (K1 * K2)(h) = sum_j K1((v_j,0)) K2((-v_j,0) h), v_j over V/M.
inline Kernel convolve(const Kernel& k1, const Kernel& k2)
{
  if (k1.space() != k2.space() || k1.chi() != k2.chi())
    throw std::invalid_argument("convolve: kernels on different groups");
  if (k1.source() != k2.target())
    throw std::invalid_argument("convolve: middle labels differ");
  const SymplecticSpace& V = k1.space();
  ModelSpace mid(V, k1.source(), k1.chi());
  std::vector<std::pair<CycNum, HeisElement>> terms;
  for (std::size_t j = 0; j < mid.size(); ++j) {
    const FpVec vj = mid.rep(j);
    const CycNum& a = k1.at(heis_vector(V, vj));
    if (!a.is_zero())
      terms.emplace_back(a, heis_vector(V, fp::neg(vj, V.p())));
  }
  std::vector<CycNum> vals;
  for (const auto& h : enumerate_heis(V)) {
    CycNum acc = CycNum::zero(V.p());
    for (const auto& [a, inv] : terms) {
      const CycNum& b = k2.at(heis_mul(V, inv, h));
      if (!b.is_zero())
        acc += a * b;
    }
    vals.push_back(std::move(acc));
  }
  return Kernel(V, k1.target(), k2.source(), k1.chi(), std::move(vals));
}

/// The kernel whose transform is T. The space of kernels for a pair is
/// one-dimensional, spanned by the basis kernel.
inline Kernel kernel_of(const Intertwiner& T)
{
  const SymplecticSpace& V = T.source.space();
  Kernel base = basis_kernel(V, T.target.label(), T.source.label(), T.source.chi());
  const CycMatrix F = transform_matrix(base);
  for (std::size_t i = 0; i < F.rows(); ++i)
    for (std::size_t j = 0; j < F.cols(); ++j)
      if (!F(i, j).is_zero()) {
        const CycNum c = T.mat(i, j) / F(i, j);
        if (c * F != T.mat)
          throw std::invalid_argument("kernel_of: operator is not an intertwiner for this pair");
        return c * base;
      }
  throw std::logic_error("kernel_of: basis kernel has zero transform");
}

} // namespace weil
