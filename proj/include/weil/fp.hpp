#pragma once

// Dense linear algebra over the prime field F_p. Vectors and matrices hold
// representatives in [0, p).

#include "weil/cyclotomic.hpp"

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace weil {

using FpVec = std::vector<int>;
using FpMat = std::vector<FpVec>;

namespace fp {

inline FpVec zeros(std::size_t n) { return FpVec(n, 0); }

inline FpVec unit(std::size_t n, std::size_t i)
{
  FpVec v(n, 0);
  v[i] = 1;
  return v;
}

inline FpMat identity(std::size_t n)
{
  FpMat m(n, FpVec(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    m[i][i] = 1;
  return m;
}

inline bool is_zero(const FpVec& v)
{
  for (int x : v)
    if (x != 0)
      return false;
  return true;
}

inline FpVec normalize(FpVec v, int p)
{
  for (int& x : v)
    x = mod_p(x, p);
  return v;
}

inline FpMat normalize(FpMat m, int p)
{
  for (auto& row : m)
    for (int& x : row)
      x = mod_p(x, p);
  return m;
}

inline FpVec add(const FpVec& a, const FpVec& b, int p)
{
  if (a.size() != b.size())
    throw std::invalid_argument("fp::add: length mismatch");
  FpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = (a[i] + b[i]) % p;
  return r;
}

inline FpVec sub(const FpVec& a, const FpVec& b, int p)
{
  if (a.size() != b.size())
    throw std::invalid_argument("fp::sub: length mismatch");
  FpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = mod_p(a[i] - b[i], p);
  return r;
}

inline FpVec scale(const FpVec& a, long long c, int p)
{
  const int s = mod_p(c, p);
  FpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = static_cast<int>(static_cast<long long>(a[i]) * s % p);
  return r;
}

inline FpVec neg(const FpVec& a, int p) { return scale(a, -1, p); }

/// a += c * b
inline void axpy(FpVec& a, long long c, const FpVec& b, int p)
{
  const int s = mod_p(c, p);
  if (s == 0)
    return;
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] = static_cast<int>((a[i] + static_cast<long long>(s) * b[i]) % p);
}

inline int dot(const FpVec& a, const FpVec& b, int p)
{
  if (a.size() != b.size())
    throw std::invalid_argument("fp::dot: length mismatch");
  long long acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    acc = (acc + static_cast<long long>(a[i]) * b[i]) % p;
  return static_cast<int>(acc);
}

inline std::size_t cols(const FpMat& m, std::size_t fallback = 0) { return m.empty() ? fallback : m[0].size(); }

inline FpMat transpose(const FpMat& m, std::size_t ncols = 0)
{
  const std::size_t c = cols(m, ncols);
  FpMat t(c, FpVec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < c; ++j)
      t[j][i] = m[i][j];
  return t;
}

inline FpMat mul(const FpMat& a, const FpMat& b, int p)
{
  const std::size_t inner = b.size();
  const std::size_t c = cols(b);
  FpMat r(a.size(), FpVec(c, 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != inner)
      throw std::invalid_argument("fp::mul: shape mismatch");
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0)
        continue;
      for (std::size_t j = 0; j < c; ++j)
        r[i][j] = static_cast<int>((r[i][j] + static_cast<long long>(a[i][k]) * b[k][j]) % p);
    }
  }
  return r;
}

/// m * v with v a column vector.
inline FpVec apply(const FpMat& m, const FpVec& v, int p)
{
  FpVec r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    r[i] = dot(m[i], v, p);
  return r;
}

struct Echelon
{
  FpMat rows;              // nonzero rows of the reduced row-echelon form
  std::vector<int> pivots; // pivot column of each row
};

/// Reduced row-echelon form; zero rows are dropped. `ncols` is used when m
/// has no rows.
inline Echelon rref(FpMat m, int p)
{
  const std::size_t c = cols(m);
  std::size_t r = 0;
  std::vector<int> pivots;
  for (std::size_t col = 0; col < c && r < m.size(); ++col) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][col] == 0)
      ++piv;
    if (piv == m.size())
      continue;
    std::swap(m[piv], m[r]);
    m[r] = scale(m[r], inv_mod(m[r][col], p), p);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (i != r && m[i][col] != 0)
        axpy(m[i], -m[i][col], m[r], p);
    pivots.push_back(static_cast<int>(col));
    ++r;
  }
  m.resize(r);
  return {std::move(m), std::move(pivots)};
}

inline int rank(const FpMat& m, int p) { return static_cast<int>(rref(m, p).rows.size()); }

inline int det(FpMat m, int p)
{
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n)
      throw std::invalid_argument("fp::det: matrix not square");
  long long d = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0)
      ++piv;
    if (piv == n)
      return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      d = -d;
    }
    d = mod_p(d * m[col][col], p);
    const int inv = inv_mod(m[col][col], p);
    for (std::size_t i = col + 1; i < n; ++i)
      if (m[i][col] != 0)
        axpy(m[i], -static_cast<long long>(m[i][col]) * inv, m[col], p);
  }
  return mod_p(d, p);
}

inline FpMat inverse(const FpMat& m, int p)
{
  const std::size_t n = m.size();
  FpMat aug(n, FpVec(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n)
      throw std::invalid_argument("fp::inverse: matrix not square");
    for (std::size_t j = 0; j < n; ++j)
      aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  Echelon e = rref(aug, p);
  if (e.rows.size() != n || (n > 0 && e.pivots.back() >= static_cast<int>(n)))
    throw std::domain_error("fp::inverse: singular matrix");
  FpMat inv(n, FpVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      inv[i][j] = e.rows[i][n + j];
  return inv;
}

/// Basis (in RREF) of {x : m x = 0}; `ncols` gives the number of unknowns.
inline FpMat nullspace(const FpMat& m, std::size_t ncols, int p)
{
  Echelon e = rref(m, p);
  std::vector<bool> is_pivot(ncols, false);
  for (int c : e.pivots)
    is_pivot[static_cast<std::size_t>(c)] = true;
  FpMat basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f])
      continue;
    FpVec x(ncols, 0);
    x[f] = 1;
    for (std::size_t r = 0; r < e.rows.size(); ++r)
      x[static_cast<std::size_t>(e.pivots[r])] = mod_p(-e.rows[r][f], p);
    basis.push_back(std::move(x));
  }
  return rref(basis, p).rows;
}

/// Some x with m x = b, if one exists.
inline std::optional<FpVec> solve(const FpMat& m, const FpVec& b, std::size_t ncols, int p)
{
  FpMat aug = m;
  for (std::size_t i = 0; i < aug.size(); ++i)
    aug[i].push_back(b[i]);
  Echelon e = rref(aug, p);
  FpVec x(ncols, 0);
  for (std::size_t r = 0; r < e.rows.size(); ++r) {
    const auto c = static_cast<std::size_t>(e.pivots[r]);
    if (c == ncols)
      return std::nullopt;
    x[c] = e.rows[r][ncols];
  }
  return x;
}

inline std::string vec_to_string(const FpVec& v)
{
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i)
    os << (i ? "," : "") << v[i];
  return os.str();
}

inline std::string mat_to_string(const FpMat& m)
{
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i)
    s += (i ? ";" : "") + vec_to_string(m[i]);
  return s;
}

/// All vectors of F_p^n in lexicographic order (first coordinate most
/// significant).
inline std::vector<FpVec> all_vectors(int n, int p)
{
  std::vector<FpVec> out;
  FpVec v(static_cast<std::size_t>(n), 0);
  while (true) {
    out.push_back(v);
    int i = n - 1;
    while (i >= 0 && v[static_cast<std::size_t>(i)] == p - 1)
      v[static_cast<std::size_t>(i--)] = 0;
    if (i < 0)
      break;
    ++v[static_cast<std::size_t>(i)];
  }
  return out;
}

/// Sum of coeffs[i] * rows[i].
inline FpVec combine(const FpVec& coeffs, const FpMat& rows, std::size_t ncols, int p)
{
  FpVec v(ncols, 0);
  for (std::size_t i = 0; i < rows.size(); ++i)
    axpy(v, coeffs[i], rows[i], p);
  return v;
}

} // namespace fp
} // namespace weil
