#pragma once

// The Heisenberg group H(V) = V x F_p and its Schrodinger-type models
// indexed by (oriented) Lagrangians.

#include "weil/cyc_matrix.hpp"
#include "weil/symplectic.hpp"

#include <cstddef>
#include <iterator>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace weil {

struct HeisElement
{
  FpVec v;
  int z = 0;

  std::string to_string() const { return "v=" + fp::vec_to_string(v) + "|z=" + std::to_string(z); }

  friend bool operator==(const HeisElement& a, const HeisElement& b) { return a.v == b.v && a.z == b.z; }
  friend bool operator!=(const HeisElement& a, const HeisElement& b) { return !(a == b); }
};

inline HeisElement heis_identity(const SymplecticSpace& V)
{
  return {fp::zeros(static_cast<std::size_t>(V.dim())), 0};
}

inline HeisElement heis_central(const SymplecticSpace& V, int z)
{
  return {fp::zeros(static_cast<std::size_t>(V.dim())), mod_p(z, V.p())};
}

/// (v, 0)
inline HeisElement heis_vector(const SymplecticSpace& V, const FpVec& v) { return {fp::normalize(v, V.p()), 0}; }

/// (v,z)(v',z') = (v+v', z+z'+omega(v,v')/2)
inline HeisElement heis_mul(const SymplecticSpace& V, const HeisElement& a, const HeisElement& b)
{
  const int p = V.p();
  const long long c = static_cast<long long>(half_mod(p)) * V.omega(a.v, b.v);
  return {fp::add(a.v, b.v, p), mod_p(a.z + b.z + c, p)};
}

inline HeisElement heis_inverse(const SymplecticSpace& V, const HeisElement& a)
{
  return {fp::neg(a.v, V.p()), mod_p(-a.z, V.p())};
}

inline HeisElement sp_act_heis(const SpElement& g, const HeisElement& h) { return {g.apply(h.v), h.z}; }

/// Index of h in the enumeration order: v in lexicographic order, then z.
inline std::size_t heis_index(const SymplecticSpace& V, const HeisElement& h)
{
  std::size_t idx = 0;
  for (int x : h.v)
    idx = idx * static_cast<std::size_t>(V.p()) + static_cast<std::size_t>(x);
  return idx * static_cast<std::size_t>(V.p()) + static_cast<std::size_t>(h.z);
}

inline std::size_t heis_order(const SymplecticSpace& V)
{
  return static_cast<std::size_t>(ipow(V.p(), V.dim() + 1));
}

inline std::vector<HeisElement> enumerate_heis(const SymplecticSpace& V)
{
  std::vector<HeisElement> out;
  for (const auto& v : fp::all_vectors(V.dim(), V.p()))
    for (int z = 0; z < V.p(); ++z)
      out.push_back({v, z});
  return out;
}

/// psi_chi(z) = zeta^{chi z}
inline CycNum psi_chi(long long z, int chi, int p) { return CycNum::zeta_pow(p, static_cast<long long>(chi) * mod_p(z, p)); }

/// The model of ψ_chi-equivariant, left-L-invariant functions on H(V),
/// stored by their values at the representatives (v_j, 0), v_j running over
/// vectors supported on the non-pivot columns of L.
class ModelSpace
{
public:
  ModelSpace(SymplecticSpace V, OrientedSubspace L, int chi = 1)
      : space_(std::move(V)), label_(std::move(L)), chi_(mod_p(chi, space_.p()))
  {
    if (!is_lagrangian(space_, label_.sub))
      throw std::invalid_argument("model: label " + label_.to_string() + " is not Lagrangian");
    if (chi_ == 0)
      throw std::invalid_argument("model: trivial central character");
    free_ = label_.sub.free_columns();
    size_ = static_cast<std::size_t>(ipow(space_.p(), static_cast<int>(free_.size())));
  }

  const SymplecticSpace& space() const { return space_; }
  const OrientedSubspace& label() const { return label_; }
  const Subspace& lagrangian() const { return label_.sub; }
  int chi() const { return chi_; }
  int p() const { return space_.p(); }
  std::size_t size() const { return size_; }
  const std::vector<int>& free_columns() const { return free_; }

  FpVec rep(std::size_t i) const
  {
    FpVec v(static_cast<std::size_t>(space_.dim()), 0);
    for (std::size_t k = free_.size(); k-- > 0;) {
      v[static_cast<std::size_t>(free_[k])] = static_cast<int>(i % static_cast<std::size_t>(p()));
      i /= static_cast<std::size_t>(p());
    }
    return v;
  }

  std::vector<FpVec> reps() const
  {
    std::vector<FpVec> out;
    for (std::size_t i = 0; i < size_; ++i)
      out.push_back(rep(i));
    return out;
  }

  std::size_t rep_index(const FpVec& r) const
  {
    std::size_t idx = 0;
    for (int c : free_)
      idx = idx * static_cast<std::size_t>(p()) + static_cast<std::size_t>(r[static_cast<std::size_t>(c)]);
    return idx;
  }

  struct Decomposition
  {
    std::size_t index; // representative r
    int z;             // h = (0, z)(l, 0)(r, 0)
  };

  Decomposition decompose(const HeisElement& h) const
  {
    const FpVec r = label_.sub.reduce(h.v);
    const FpVec l = fp::sub(h.v, r, p());
    const long long c = static_cast<long long>(half_mod(p())) * space_.omega(l, r);
    return {rep_index(r), mod_p(h.z - c, p())};
  }

  /// Scalar psi_chi(z) with h = (0,z)(l,0)(r,0), so f(h) = psi_chi(z) f(r).
  CycNum character(int z) const { return psi_chi(z, chi_, p()); }

  friend bool operator==(const ModelSpace& a, const ModelSpace& b)
  {
    return a.space_ == b.space_ && a.label_ == b.label_ && a.chi_ == b.chi_;
  }
  friend bool operator!=(const ModelSpace& a, const ModelSpace& b) { return !(a == b); }

private:
  SymplecticSpace space_;
  OrientedSubspace label_;
  int chi_;
  std::vector<int> free_;
  std::size_t size_ = 0;
};

struct ModelVector
{
  ModelSpace model;
  std::vector<CycNum> values;

  ModelVector(ModelSpace m, std::vector<CycNum> vals) : model(std::move(m)), values(std::move(vals))
  {
    if (values.size() != model.size())
      throw std::invalid_argument("model vector: expected " + std::to_string(model.size()) + " values");
  }
};

inline ModelVector delta(const ModelSpace& m)
{
  std::vector<CycNum> vals(m.size(), CycNum::zero(m.p()));
  vals[0] = CycNum::one(m.p());
  return ModelVector(m, std::move(vals));
}

inline CycNum evaluate(const ModelVector& f, const HeisElement& h)
{
  auto d = f.model.decompose(h);
  const CycNum& val = f.values[d.index];
  if (val.is_zero())
    return val;
  return f.model.character(d.z) * val;
}

/// Matrix of the linear map f -> f(h) on the representative basis: one row.
inline CycMatrix evaluation_row(const ModelSpace& m, const HeisElement& h)
{
  CycMatrix r(m.p(), 1, m.size());
  auto d = m.decompose(h);
  r(0, d.index) = m.character(d.z);
  return r;
}

/// pi(h) f (h') = f(h' h), a monomial matrix.
inline CycMatrix pi_matrix(const ModelSpace& m, const HeisElement& h)
{
  CycMatrix r(m.p(), m.size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto d = m.decompose(heis_mul(m.space(), heis_vector(m.space(), m.rep(i)), h));
    r(i, d.index) = m.character(d.z);
  }
  return r;
}

inline ModelVector pi_act(const ModelSpace& m, const HeisElement& h, const ModelVector& f)
{
  if (f.model != m)
    throw std::invalid_argument("pi_act: vector belongs to another model");
  return ModelVector(m, pi_matrix(m, h).apply(f.values));
}

/// Generators (e_i, 0) and (0, 1) of H(V).
inline std::vector<HeisElement> heis_generators(const SymplecticSpace& V)
{
  std::vector<HeisElement> gens;
  for (int i = 0; i < V.dim(); ++i)
    gens.push_back(heis_vector(V, fp::unit(static_cast<std::size_t>(V.dim()), static_cast<std::size_t>(i))));
  gens.push_back(heis_central(V, 1));
  return gens;
}

/// pi((0,z)) = psi_chi(z) Id for every z.
inline bool central_character_holds(const ModelSpace& m)
{
  for (int z = 0; z < m.p(); ++z)
    if (pi_matrix(m, heis_central(m.space(), z)) != m.character(z) * CycMatrix::identity(m.p(), m.size()))
      return false;
  return true;
}

/// Dimension of {A : A pi(h) = pi(h) A for all h}, solved over Q(zeta_p)
/// on the generators of H(V).
inline std::size_t commutant_dimension(const ModelSpace& m)
{
  const std::size_t d = m.size();
  if (d > 125)
    throw ScaleGuardError("commutant_dimension: model dimension " + std::to_string(d) + " exceeds 125");
  SparseEliminator elim(m.p());
  for (const auto& g : heis_generators(m.space())) {
    const CycMatrix P = pi_matrix(m, g);
    // P is monomial: col_of[i] is the nonzero column in row i, row_of[j] the nonzero row in column j.
    std::vector<std::size_t> col_of(d), row_of(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (!P(i, j).is_zero()) {
          col_of[i] = j;
          row_of[j] = i;
        }
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        // (A P)_{ij} - (P A)_{ij} = A_{i,row_of[j]} P_{row_of[j], j} - P_{i, col_of[i]} A_{col_of[i], j}
        SparseEliminator::Row row;
        const std::size_t u1 = i * d + row_of[j];
        const std::size_t u2 = col_of[i] * d + j;
        row.try_emplace(u1, CycNum::zero(m.p())).first->second += P(row_of[j], j);
        row.try_emplace(u2, CycNum::zero(m.p())).first->second -= P(i, col_of[i]);
        elim.add(std::move(row));
      }
  }
  return d * d - elim.rank();
}

} // namespace weil
