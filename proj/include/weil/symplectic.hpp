#pragma once

// Symplectic vector spaces over F_p: subspaces in canonical RREF form,
// oriented Lagrangians, the symplectic group, orientation pairings and
// symplectic reduction.

#include "weil/fp.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace weil {

class ScaleGuardError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Largest admissible p^{2n}; WEIL_MAX_CELLS overrides the default 10^4.
inline long long scale_limit()
{
  if (const char* env = std::getenv("WEIL_MAX_CELLS")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && v > 0)
      return v;
  }
  return 10000;
}

inline long long ipow(long long b, int e)
{
  long long r = 1;
  for (int i = 0; i < e; ++i)
    r *= b;
  return r;
}

inline void check_scale(int p, int dim, const std::string& what)
{
  if (ipow(p, dim) > scale_limit())
    throw ScaleGuardError(what + ": p^dim = " + std::to_string(ipow(p, dim)) + " exceeds the limit " +
                          std::to_string(scale_limit()) + " (set WEIL_MAX_CELLS to override)");
}

/// (-1)^{k(k-1)/2}
inline int binom2_sign(int k) { return ((k * (k - 1) / 2) % 2) ? -1 : 1; }

class SymplecticSpace
{
public:
  SymplecticSpace(int p, FpMat gram) : p_(p), gram_(fp::normalize(std::move(gram), p))
  {
    require_odd_prime(p);
    const std::size_t d = gram_.size();
    if (d % 2 != 0)
      throw std::invalid_argument("symplectic space: odd dimension " + std::to_string(d));
    for (std::size_t i = 0; i < d; ++i) {
      if (gram_[i].size() != d)
        throw std::invalid_argument("symplectic space: gram matrix is not square");
      if (gram_[i][i] != 0)
        throw std::invalid_argument("symplectic space: gram matrix has nonzero diagonal");
      for (std::size_t j = 0; j < d; ++j)
        if (mod_p(gram_[i][j] + gram_[j][i], p) != 0)
          throw std::invalid_argument("symplectic space: gram matrix is not antisymmetric");
    }
    if (d > 0 && fp::det(gram_, p) == 0)
      throw std::invalid_argument("symplectic space: degenerate form");
    n_ = static_cast<int>(d / 2);
  }

  /// Standard form with omega(e_i, e_{n+i}) = 1.
  static SymplecticSpace standard(int p, int n)
  {
    if (n < 0)
      throw std::invalid_argument("symplectic space: negative half-dimension");
    const auto d = static_cast<std::size_t>(2 * n);
    FpMat j(d, FpVec(d, 0));
    for (int i = 0; i < n; ++i) {
      j[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + i)] = 1;
      j[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i)] = p - 1;
    }
    return SymplecticSpace(p, std::move(j));
  }

  int p() const { return p_; }
  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  const FpMat& gram() const { return gram_; }

  int omega(const FpVec& v, const FpVec& w) const
  {
    if (v.size() != gram_.size() || w.size() != gram_.size())
      throw std::invalid_argument("omega: dimension mismatch");
    long long acc = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0)
        continue;
      for (std::size_t j = 0; j < w.size(); ++j)
        acc += static_cast<long long>(v[i]) * gram_[i][j] * w[j];
      acc %= p_;
    }
    return mod_p(acc, p_);
  }

  /// The same vector space with the form negated.
  SymplecticSpace negated() const
  {
    FpMat g = gram_;
    for (auto& row : g)
      for (int& x : row)
        x = mod_p(-x, p_);
    return SymplecticSpace(p_, std::move(g));
  }

  friend bool operator==(const SymplecticSpace& a, const SymplecticSpace& b)
  {
    return a.p_ == b.p_ && a.gram_ == b.gram_;
  }
  friend bool operator!=(const SymplecticSpace& a, const SymplecticSpace& b) { return !(a == b); }

private:
  int p_;
  int n_ = 0;
  FpMat gram_;
};

/// Subspace of F_p^d stored by its reduced row-echelon basis.
class Subspace
{
public:
  Subspace(int p, int ambient, const FpMat& spanning) : p_(p), ambient_(ambient)
  {
    for (const auto& row : spanning)
      if (static_cast<int>(row.size()) != ambient)
        throw std::invalid_argument("subspace: row length " + std::to_string(row.size()) + " != " +
                                    std::to_string(ambient));
    fp::Echelon e = fp::rref(fp::normalize(spanning, p), p);
    rows_ = std::move(e.rows);
    pivots_ = std::move(e.pivots);
  }

  static Subspace zero(int p, int ambient) { return Subspace(p, ambient, {}); }
  static Subspace full(int p, int ambient) { return Subspace(p, ambient, fp::identity(static_cast<std::size_t>(ambient))); }

  int p() const { return p_; }
  int ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  const FpMat& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }

  std::vector<int> free_columns() const
  {
    std::vector<int> out;
    std::size_t k = 0;
    for (int c = 0; c < ambient_; ++c) {
      if (k < pivots_.size() && pivots_[k] == c)
        ++k;
      else
        out.push_back(c);
    }
    return out;
  }

  /// v minus its component along the basis, read off at the pivots; the
  /// result vanishes on the pivot columns and is zero iff v is in the span.
  FpVec reduce(FpVec v) const
  {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const int c = v[static_cast<std::size_t>(pivots_[r])];
      if (c != 0)
        fp::axpy(v, -c, rows_[r], p_);
    }
    return v;
  }

  bool contains(const FpVec& v) const { return fp::is_zero(reduce(fp::normalize(v, p_))); }

  bool contains(const Subspace& o) const
  {
    for (const auto& row : o.rows_)
      if (!contains(row))
        return false;
    return true;
  }

  /// Coordinates of v in the RREF basis (v must lie in the subspace).
  FpVec coords(const FpVec& v) const
  {
    if (!contains(v))
      throw std::invalid_argument("subspace: vector " + fp::vec_to_string(v) + " not contained");
    FpVec c(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r)
      c[r] = mod_p(v[static_cast<std::size_t>(pivots_[r])], p_);
    return c;
  }

  /// All p^dim elements, in lexicographic order of their coordinates.
  std::vector<FpVec> elements() const
  {
    std::vector<FpVec> out;
    for (const auto& c : fp::all_vectors(dim(), p_))
      out.push_back(fp::combine(c, rows_, static_cast<std::size_t>(ambient_), p_));
    return out;
  }

  std::string to_string() const { return fp::mat_to_string(rows_); }

  friend bool operator==(const Subspace& a, const Subspace& b)
  {
    return a.p_ == b.p_ && a.ambient_ == b.ambient_ && a.rows_ == b.rows_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }
  friend bool operator<(const Subspace& a, const Subspace& b)
  {
    if (a.rows_.size() != b.rows_.size())
      return a.rows_.size() < b.rows_.size();
    return a.rows_ < b.rows_;
  }

private:
  int p_;
  int ambient_;
  FpMat rows_;
  std::vector<int> pivots_;
};

/// A subspace with a top-degree orientation `orient * (b_1 ^ ... ^ b_k)`,
/// b_i the RREF rows.
struct OrientedSubspace
{
  Subspace sub;
  int orient = 1;

  OrientedSubspace(Subspace s, int o) : sub(std::move(s)), orient(mod_p(o, sub.p()))
  {
    if (orient == 0)
      throw std::invalid_argument("oriented subspace: orientation must be nonzero");
  }

  /// Orientation `o` given relative to the wedge of the supplied rows.
  static OrientedSubspace from_rows(int p, int ambient, const FpMat& rows, int o)
  {
    Subspace s(p, ambient, rows);
    if (s.dim() != static_cast<int>(rows.size()))
      throw std::invalid_argument("oriented subspace: rows are linearly dependent");
    FpMat coords;
    for (const auto& r : rows)
      coords.push_back(s.coords(fp::normalize(r, p)));
    return OrientedSubspace(std::move(s), static_cast<int>(static_cast<long long>(mod_p(o, p)) *
                                                           fp::det(coords, p) % p));
  }

  int p() const { return sub.p(); }
  int dim() const { return sub.dim(); }
  const FpMat& rows() const { return sub.rows(); }

  std::string to_string() const { return "rows=" + sub.to_string() + "|o=" + std::to_string(orient); }

  friend bool operator==(const OrientedSubspace& a, const OrientedSubspace& b)
  {
    return a.sub == b.sub && a.orient == b.orient;
  }
  friend bool operator!=(const OrientedSubspace& a, const OrientedSubspace& b) { return !(a == b); }
  friend bool operator<(const OrientedSubspace& a, const OrientedSubspace& b)
  {
    if (a.sub != b.sub)
      return a.sub < b.sub;
    return a.orient < b.orient;
  }
};

// ---------------------------------------------------------------------------
// Subspace operations

inline void check_compatible(const Subspace& a, const Subspace& b)
{
  if (a.p() != b.p() || a.ambient() != b.ambient())
    throw std::invalid_argument("subspaces live in different ambient spaces");
}

inline Subspace subspace_sum(const Subspace& a, const Subspace& b)
{
  check_compatible(a, b);
  FpMat rows = a.rows();
  rows.insert(rows.end(), b.rows().begin(), b.rows().end());
  return Subspace(a.p(), a.ambient(), rows);
}

inline Subspace intersect(const Subspace& a, const Subspace& b)
{
  check_compatible(a, b);
  const int p = a.p();
  // Solve sum c_i a_i = sum d_j b_j.
  FpMat stacked = a.rows();
  for (const auto& r : b.rows())
    stacked.push_back(fp::neg(r, p));
  if (stacked.empty())
    return Subspace::zero(p, a.ambient());
  FpMat sys = fp::transpose(stacked, static_cast<std::size_t>(a.ambient()));
  FpMat ker = fp::nullspace(sys, stacked.size(), p);
  FpMat out;
  for (const auto& k : ker) {
    FpVec c(k.begin(), k.begin() + a.dim());
    out.push_back(fp::combine(c, a.rows(), static_cast<std::size_t>(a.ambient()), p));
  }
  return Subspace(p, a.ambient(), out);
}

/// RREF rows spanning a complement of `sub` inside `outer` (requires
/// sub to be contained in outer). The rows vanish on the pivots of `sub`.
inline FpMat complement_basis(const Subspace& outer, const Subspace& sub)
{
  check_compatible(outer, sub);
  if (!outer.contains(sub))
    throw std::invalid_argument("complement_basis: subspace not contained");
  FpMat reduced;
  for (const auto& row : outer.rows())
    reduced.push_back(sub.reduce(row));
  return fp::rref(reduced, outer.p()).rows;
}

/// p^{dim a - dim b} coset representatives of a/b in lexicographic order of
/// their coordinates over the complement pivots.
inline std::vector<FpVec> quotient_reps(const Subspace& a, const Subspace& b)
{
  FpMat comp = complement_basis(a, b);
  std::vector<FpVec> out;
  for (const auto& c : fp::all_vectors(static_cast<int>(comp.size()), a.p()))
    out.push_back(fp::combine(c, comp, static_cast<std::size_t>(a.ambient()), a.p()));
  return out;
}

inline void check_in(const SymplecticSpace& V, const Subspace& s)
{
  if (s.p() != V.p() || s.ambient() != V.dim())
    throw std::invalid_argument("subspace does not belong to the symplectic space");
}

inline bool is_isotropic(const SymplecticSpace& V, const Subspace& s)
{
  check_in(V, s);
  for (const auto& a : s.rows())
    for (const auto& b : s.rows())
      if (V.omega(a, b) != 0)
        return false;
  return true;
}

inline bool is_lagrangian(const SymplecticSpace& V, const Subspace& s)
{
  return s.dim() == V.n() && is_isotropic(V, s);
}

/// {v : omega(v, s) = 0 for all s in S}
inline Subspace perp(const SymplecticSpace& V, const Subspace& s)
{
  check_in(V, s);
  FpMat sys;
  for (const auto& row : s.rows())
    sys.push_back(fp::apply(fp::transpose(V.gram(), static_cast<std::size_t>(V.dim())), row, V.p()));
  return Subspace(V.p(), V.dim(), fp::nullspace(sys, static_cast<std::size_t>(V.dim()), V.p()));
}

inline bool in_general_position(const Subspace& a, const Subspace& b)
{
  return subspace_sum(a, b).dim() == a.ambient();
}

inline bool in_general_position(const OrientedSubspace& a, const OrientedSubspace& b)
{
  return in_general_position(a.sub, b.sub);
}

// ---------------------------------------------------------------------------
// Enumeration

/// All k-dimensional subspaces of F_p^d, sorted.
inline std::vector<Subspace> enumerate_subspaces(int p, int d, int k)
{
  check_scale(p, d, "subspace enumeration");
  std::vector<Subspace> out;
  if (k < 0 || k > d)
    return out;
  std::vector<int> piv(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i)
    piv[static_cast<std::size_t>(i)] = i;
  while (true) {
    // Free slots: row i, column c > piv[i], c not a pivot.
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < k; ++i)
      for (int c = piv[static_cast<std::size_t>(i)] + 1; c < d; ++c)
        if (std::find(piv.begin(), piv.end(), c) == piv.end())
          slots.emplace_back(i, c);
    for (const auto& fill : fp::all_vectors(static_cast<int>(slots.size()), p)) {
      FpMat rows(static_cast<std::size_t>(k), FpVec(static_cast<std::size_t>(d), 0));
      for (int i = 0; i < k; ++i)
        rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(piv[static_cast<std::size_t>(i)])] = 1;
      for (std::size_t s = 0; s < slots.size(); ++s)
        rows[static_cast<std::size_t>(slots[s].first)][static_cast<std::size_t>(slots[s].second)] = fill[s];
      out.emplace_back(p, d, rows);
    }
    int i = k - 1;
    while (i >= 0 && piv[static_cast<std::size_t>(i)] == d - k + i)
      --i;
    if (i < 0)
      break;
    ++piv[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      piv[static_cast<std::size_t>(j)] = piv[static_cast<std::size_t>(j - 1)] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Subspace> enumerate_isotropic(const SymplecticSpace& V, int k)
{
  std::vector<Subspace> out;
  for (auto& s : enumerate_subspaces(V.p(), V.dim(), k))
    if (is_isotropic(V, s))
      out.push_back(std::move(s));
  return out;
}

inline std::vector<Subspace> enumerate_lagrangians(const SymplecticSpace& V) { return enumerate_isotropic(V, V.n()); }

/// Every Lagrangian paired with each orientation 1..p-1.
inline std::vector<OrientedSubspace> enumerate_oriented_lagrangians(const SymplecticSpace& V)
{
  std::vector<OrientedSubspace> out;
  for (const auto& L : enumerate_lagrangians(V))
    for (int o = 1; o < V.p(); ++o)
      out.emplace_back(L, o);
  return out;
}

// ---------------------------------------------------------------------------
// Orientation calculus

/// Pairing of the top wedges a_1^...^a_k and b_1^...^b_k induced by omega
/// on the k-th exterior power, normalized as a volume pairing:
/// (-1)^{k(k-1)/2} det[omega(a_i, b_j)]. For k = 0 it is 1.
inline int wedge_rows(const SymplecticSpace& V, const FpMat& a, const FpMat& b)
{
  if (a.size() != b.size())
    throw std::invalid_argument("wedge pairing: dimension mismatch");
  const std::size_t k = a.size();
  FpMat m(k, FpVec(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      m[i][j] = V.omega(a[i], b[j]);
  const int d = k == 0 ? 1 : fp::det(m, V.p());
  return mod_p(binom2_sign(static_cast<int>(k)) * d, V.p());
}

inline int wedge_pairing(const SymplecticSpace& V, const OrientedSubspace& a, const OrientedSubspace& b)
{
  check_in(V, a.sub);
  check_in(V, b.sub);
  if (a.dim() != b.dim())
    throw std::invalid_argument("wedge pairing: dimension mismatch");
  const long long s = static_cast<long long>(a.orient) * b.orient % V.p();
  return mod_p(s * wedge_rows(V, a.rows(), b.rows()), V.p());
}

/// Images r(m) of the given vectors under the map defined by
/// r(m) in N and r(m) - m in L. Requires N and L to intersect trivially and
/// each m to lie in N + L.
inline FpMat residue_images(const SymplecticSpace& V, const FpMat& ms, const Subspace& L, const Subspace& N)
{
  check_in(V, L);
  check_in(V, N);
  if (intersect(N, L).dim() != 0)
    throw std::invalid_argument("residue map: target and kernel subspaces are not transverse");
  FpMat gens = N.rows();
  gens.insert(gens.end(), L.rows().begin(), L.rows().end());
  FpMat sys = fp::transpose(gens, static_cast<std::size_t>(V.dim()));
  FpMat out;
  for (const auto& m : ms) {
    auto x = fp::solve(sys, fp::normalize(m, V.p()), gens.size(), V.p());
    if (!x)
      throw std::invalid_argument("residue map: vector " + fp::vec_to_string(m) + " outside N + L");
    FpVec c(x->begin(), x->begin() + N.dim());
    out.push_back(fp::combine(c, N.rows(), static_cast<std::size_t>(V.dim()), V.p()));
  }
  return out;
}

/// The residue map on the RREF basis of M.
inline FpMat residue_map(const SymplecticSpace& V, const Subspace& M, const Subspace& L, const Subspace& N)
{
  return residue_images(V, M.rows(), L, N);
}

/// omega_wedge(r_wedge(o_M), o_M) for the residue map r: M -> N along L.
inline int residue_wedge(const SymplecticSpace& V, const OrientedSubspace& M, const Subspace& L, const Subspace& N)
{
  FpMat r = residue_map(V, M.sub, L, N);
  const long long o2 = static_cast<long long>(M.orient) * M.orient % V.p();
  return mod_p(o2 * wedge_rows(V, r, M.rows()), V.p());
}

inline void check_symmetric(const FpMat& form, int p)
{
  for (std::size_t i = 0; i < form.size(); ++i) {
    if (form[i].size() != form.size())
      throw std::invalid_argument("symmetric form: matrix not square");
    for (std::size_t j = 0; j < form.size(); ++j)
      if (mod_p(form[i][j] - form[j][i], p) != 0)
        throw std::invalid_argument("symmetric form: matrix not symmetric");
  }
}

/// det modulo squares, as a Legendre symbol.
inline int discriminant(const FpMat& form, int p)
{
  check_symmetric(form, p);
  const int d = form.empty() ? 1 : fp::det(fp::normalize(form, p), p);
  if (d == 0)
    throw std::domain_error("discriminant: degenerate form");
  return legendre(d, p);
}

/// Diagonal entries of a congruent diagonal form (Q^T B Q = D).
inline FpVec congruence_diagonalize(FpMat b, int p)
{
  check_symmetric(b, p);
  b = fp::normalize(std::move(b), p);
  const std::size_t n = b.size();
  FpVec diag;
  auto add_to = [&](std::size_t i, std::size_t j, long long c) {
    // basis change e_i += c e_j: row i += c row j, col i += c col j
    for (std::size_t k = 0; k < n; ++k)
      b[i][k] = mod_p(b[i][k] + c * b[j][k], p);
    for (std::size_t k = 0; k < n; ++k)
      b[k][i] = mod_p(b[k][i] + c * b[k][j], p);
  };
  for (std::size_t s = 0; s < n; ++s) {
    std::size_t piv = s;
    while (piv < n && b[piv][piv] == 0)
      ++piv;
    if (piv == n) {
      bool found = false;
      for (std::size_t i = s; i < n && !found; ++i)
        for (std::size_t j = i + 1; j < n && !found; ++j)
          if (b[i][j] != 0) {
            add_to(i, j, 1); // b[i][i] becomes 2 b[i][j] (+ b[j][j] = 0)
            piv = i;
            found = true;
          }
      if (!found) {
        for (std::size_t i = s; i < n; ++i)
          diag.push_back(0);
        return diag;
      }
    }
    if (piv != s) {
      std::swap(b[piv], b[s]);
      for (auto& row : b)
        std::swap(row[piv], row[s]);
    }
    const int inv = inv_mod(b[s][s], p);
    for (std::size_t j = s + 1; j < n; ++j)
      if (b[j][s] != 0)
        add_to(j, s, -static_cast<long long>(b[j][s]) * inv);
    diag.push_back(b[s][s]);
  }
  return diag;
}

inline int discriminant_by_diagonalization(const FpMat& form, int p)
{
  long long prod = 1;
  for (int d : congruence_diagonalize(form, p))
    prod = prod * d % p;
  if (prod == 0)
    throw std::domain_error("discriminant: degenerate form");
  return legendre(prod, p);
}

/// o_M written as iota (in the top wedge of I, against the RREF wedge of I)
/// tensor an orientation of M/I carried by complement rows.
struct OrientationSplit
{
  int iota = 1;
  FpMat quotient_rows; // complement of I in M, representing a basis of M/I
  int quotient_orient = 1;
};

inline OrientationSplit orientation_decompose(const OrientedSubspace& M, const Subspace& I)
{
  check_compatible(M.sub, I);
  if (!M.sub.contains(I))
    throw std::invalid_argument("orientation_decompose: I is not contained in M");
  const int p = M.p();
  OrientationSplit out;
  out.quotient_rows = complement_basis(M.sub, I);
  if (I.dim() == 0) {
    out.iota = 1;
    out.quotient_orient = M.orient;
    return out;
  }
  // o_M = orient * wedge(M rows) = orient / det(P) * wedge(I rows) ^ wedge(C)
  FpMat P;
  for (const auto& r : I.rows())
    P.push_back(M.sub.coords(r));
  for (const auto& r : out.quotient_rows)
    P.push_back(M.sub.coords(r));
  out.iota = static_cast<int>(static_cast<long long>(M.orient) * inv_mod(fp::det(P, p), p) % p);
  out.quotient_orient = 1;
  return out;
}

// ---------------------------------------------------------------------------
// Symplectic group

/// Linear map between symplectic spaces preserving the forms.
struct SymplecticIso
{
  SymplecticSpace source;
  SymplecticSpace target;
  FpMat mat; // target.dim() x source.dim(), acting on column vectors

  SymplecticIso(SymplecticSpace s, SymplecticSpace t, FpMat m)
      : source(std::move(s)), target(std::move(t)), mat(fp::normalize(std::move(m), source.p()))
  {
    if (source.p() != target.p() || source.dim() != target.dim())
      throw std::invalid_argument("symplectic map: incompatible spaces");
    if (mat.size() != static_cast<std::size_t>(target.dim()))
      throw std::invalid_argument("symplectic map: wrong number of rows");
    for (const auto& r : mat)
      if (r.size() != static_cast<std::size_t>(source.dim()))
        throw std::invalid_argument("symplectic map: wrong number of columns");
    const int p = source.p();
    const std::size_t d = static_cast<std::size_t>(source.dim());
    FpMat lhs = fp::mul(fp::mul(fp::transpose(mat, d), target.gram(), p), mat, p);
    if (lhs != source.gram())
      throw std::invalid_argument("symplectic map: form not preserved");
  }

  FpVec apply(const FpVec& v) const { return fp::apply(mat, v, source.p()); }

  SymplecticIso inverse() const { return SymplecticIso(target, source, fp::inverse(mat, source.p())); }
};

class SpElement
{
public:
  SpElement(SymplecticSpace V, FpMat m) : iso_(V, V, std::move(m)) {}

  static SpElement identity(const SymplecticSpace& V)
  {
    return SpElement(V, fp::identity(static_cast<std::size_t>(V.dim())));
  }

  const SymplecticSpace& space() const { return iso_.source; }
  const FpMat& mat() const { return iso_.mat; }
  const SymplecticIso& iso() const { return iso_; }

  FpVec apply(const FpVec& v) const { return iso_.apply(v); }

  SpElement inverse() const { return SpElement(space(), fp::inverse(mat(), space().p())); }

  /// (a * b)(v) = a(b(v))
  friend SpElement operator*(const SpElement& a, const SpElement& b)
  {
    if (a.space() != b.space())
      throw std::invalid_argument("Sp: elements of different spaces");
    return SpElement(a.space(), fp::mul(a.mat(), b.mat(), a.space().p()));
  }

  friend bool operator==(const SpElement& a, const SpElement& b)
  {
    return a.space() == b.space() && a.mat() == b.mat();
  }

  std::string to_string() const { return "g=" + fp::mat_to_string(mat()); }

private:
  SymplecticIso iso_;
};

/// x -> x + c omega(x, u) u
inline SpElement transvection(const SymplecticSpace& V, const FpVec& u, int c)
{
  const auto d = static_cast<std::size_t>(V.dim());
  FpMat m = fp::identity(d);
  for (std::size_t j = 0; j < d; ++j) {
    const long long w = static_cast<long long>(c) * V.omega(fp::unit(d, j), u);
    for (std::size_t i = 0; i < d; ++i)
      m[i][j] = mod_p(m[i][j] + w * u[i], V.p());
  }
  return SpElement(V, std::move(m));
}

/// All elements of Sp(V) for dim V = 2, in lexicographic order of entries.
inline std::vector<SpElement> enumerate_sp(const SymplecticSpace& V)
{
  if (V.dim() != 2)
    throw ScaleGuardError("Sp enumeration is only supported for dim 2, got dim " + std::to_string(V.dim()));
  const int p = V.p();
  std::vector<SpElement> out;
  for (const auto& e : fp::all_vectors(4, p))
    if (mod_p(static_cast<long long>(e[0]) * e[3] - static_cast<long long>(e[1]) * e[2], p) == 1)
      out.emplace_back(V, FpMat{{e[0], e[1]}, {e[2], e[3]}});
  return out;
}

/// Deterministic generator; draws are reduced with % to stay reproducible
/// across standard library implementations.
class Rng
{
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  int below(int n) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }

private:
  std::mt19937_64 eng_;
};

inline FpVec random_nonzero_vector(Rng& rng, int d, int p)
{
  while (true) {
    FpVec v(static_cast<std::size_t>(d));
    for (int& x : v)
      x = rng.below(p);
    if (!fp::is_zero(v))
      return v;
  }
}

/// Product of `word_length` random transvections.
inline SpElement random_sp(const SymplecticSpace& V, Rng& rng, int word_length = 20)
{
  SpElement g = SpElement::identity(V);
  if (V.dim() == 0)
    return g;
  for (int i = 0; i < word_length; ++i) {
    FpVec u = random_nonzero_vector(rng, V.dim(), V.p());
    int c = 1 + rng.below(V.p() - 1);
    g = transvection(V, u, c) * g;
  }
  return g;
}

inline std::vector<SpElement> sample_sp(const SymplecticSpace& V, int count, std::uint64_t seed)
{
  Rng rng(seed);
  std::vector<SpElement> out;
  for (int i = 0; i < count; ++i)
    out.push_back(random_sp(V, rng));
  return out;
}

/// Image of an oriented subspace; the orientation is transported by the
/// determinant of f restricted to the subspace against the target RREF basis.
inline OrientedSubspace push_forward(const SymplecticIso& f, const OrientedSubspace& L)
{
  check_in(f.source, L.sub);
  FpMat images;
  for (const auto& r : L.rows())
    images.push_back(f.apply(r));
  return OrientedSubspace::from_rows(f.source.p(), f.target.dim(), images, L.orient);
}

inline OrientedSubspace act_on_lagrangian(const SpElement& g, const OrientedSubspace& L)
{
  return push_forward(g.iso(), L);
}

inline Subspace push_forward(const SymplecticIso& f, const Subspace& S)
{
  FpMat images;
  for (const auto& r : S.rows())
    images.push_back(f.apply(r));
  return Subspace(f.source.p(), f.target.dim(), images);
}

// ---------------------------------------------------------------------------
// Symplectic reduction

/// I^perp / I for an oriented isotropic I, with coordinates given by a
/// complement of I in I^perp.
class SymplecticReduction
{
public:
  SymplecticReduction(const SymplecticSpace& V, const OrientedSubspace& I)
      : ambient_(V), iso_(I), perp_(perp(V, I.sub)), comp_(), reduced_(SymplecticSpace::standard(V.p(), 0))
  {
    if (!is_isotropic(V, I.sub))
      throw std::invalid_argument("symplectic reduction: subspace is not isotropic");
    comp_ = complement_basis(perp_, I.sub);
    const std::size_t m = comp_.size();
    FpMat g(m, FpVec(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        g[i][j] = V.omega(comp_[i], comp_[j]);
    reduced_ = SymplecticSpace(V.p(), std::move(g));
    for (const auto& r : comp_) {
      std::size_t c = 0;
      while (r[c] == 0)
        ++c;
      comp_pivots_.push_back(static_cast<int>(c));
    }
  }

  const SymplecticSpace& ambient() const { return ambient_; }
  const SymplecticSpace& reduced() const { return reduced_; }
  const OrientedSubspace& isotropic() const { return iso_; }
  const Subspace& perp_space() const { return perp_; }
  const FpMat& complement() const { return comp_; }

  FpVec lift(const FpVec& w) const
  {
    return fp::combine(w, comp_, static_cast<std::size_t>(ambient_.dim()), ambient_.p());
  }

  /// Class of v in I^perp/I.
  FpVec project(const FpVec& v) const
  {
    if (!perp_.contains(v))
      throw std::invalid_argument("reduction: vector not in I^perp");
    FpVec r = iso_.sub.reduce(fp::normalize(v, ambient_.p()));
    FpVec w(comp_.size());
    for (std::size_t i = 0; i < comp_.size(); ++i)
      w[i] = r[static_cast<std::size_t>(comp_pivots_[i])];
    return w;
  }

  /// The oriented Lagrangian pr^{-1}(L) of V with orientation o_I ^ o_L.
  OrientedSubspace preimage(const OrientedSubspace& L) const
  {
    check_in(reduced_, L.sub);
    FpMat rows = iso_.rows();
    for (const auto& r : L.rows())
      rows.push_back(lift(r));
    const long long o = static_cast<long long>(iso_.orient) * L.orient;
    return OrientedSubspace::from_rows(ambient_.p(), ambient_.dim(), rows, static_cast<int>(o % ambient_.p()));
  }

  /// Map induced on reductions by f: V -> target with f(I) = other.I.
  SymplecticIso induced(const SymplecticIso& f, const SymplecticReduction& other) const
  {
    if (push_forward(f, iso_.sub) != other.iso_.sub)
      throw std::invalid_argument("reduction: map does not carry the isotropic subspace");
    const auto m = static_cast<std::size_t>(reduced_.dim());
    FpMat mat(m, FpVec(m));
    for (std::size_t j = 0; j < m; ++j) {
      FpVec img = other.project(f.apply(comp_[j]));
      for (std::size_t i = 0; i < m; ++i)
        mat[i][j] = img[i];
    }
    return SymplecticIso(reduced_, other.reduced_, std::move(mat));
  }

private:
  SymplecticSpace ambient_;
  OrientedSubspace iso_;
  Subspace perp_;
  FpMat comp_;
  std::vector<int> comp_pivots_;
  SymplecticSpace reduced_;
};

} // namespace weil
