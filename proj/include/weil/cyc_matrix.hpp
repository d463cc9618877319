#pragma once

// Dense matrices over Q(zeta_p) and a sparse incremental eliminator for
// large homogeneous systems.

#include "weil/cyclotomic.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace weil {

class CycMatrix
{
public:
  CycMatrix(int p, std::size_t rows, std::size_t cols)
      : p_(p), rows_(rows), cols_(cols), a_(rows * cols, CycNum::zero(p))
  {}

  static CycMatrix identity(int p, std::size_t n)
  {
    CycMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = CycNum::one(p);
    return m;
  }

  int order() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  CycNum& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const CycNum& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool is_zero() const
  {
    for (const auto& x : a_)
      if (!x.is_zero())
        return false;
    return true;
  }

  friend CycMatrix operator*(const CycMatrix& a, const CycMatrix& b)
  {
    if (a.cols_ != b.rows_ || a.p_ != b.p_)
      throw std::invalid_argument("CycMatrix: shape mismatch in product");
    CycMatrix r(a.p_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const CycNum& x = a(i, k);
        if (x.is_zero())
          continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const CycNum& y = b(k, j);
          if (!y.is_zero())
            r(i, j) += x * y;
        }
      }
    return r;
  }

  friend CycMatrix operator+(CycMatrix a, const CycMatrix& b)
  {
    a.check_shape(b);
    for (std::size_t i = 0; i < a.a_.size(); ++i)
      a.a_[i] += b.a_[i];
    return a;
  }

  friend CycMatrix operator-(CycMatrix a, const CycMatrix& b)
  {
    a.check_shape(b);
    for (std::size_t i = 0; i < a.a_.size(); ++i)
      a.a_[i] -= b.a_[i];
    return a;
  }

  friend CycMatrix operator*(const CycNum& s, CycMatrix a)
  {
    for (auto& x : a.a_)
      if (!x.is_zero())
        x = s * x;
    return a;
  }

  friend bool operator==(const CycMatrix& a, const CycMatrix& b)
  {
    return a.p_ == b.p_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const CycMatrix& a, const CycMatrix& b) { return !(a == b); }

  CycMatrix transpose() const
  {
    CycMatrix t(p_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<CycNum> apply(const std::vector<CycNum>& v) const
  {
    if (v.size() != cols_)
      throw std::invalid_argument("CycMatrix: vector length mismatch");
    std::vector<CycNum> r(rows_, CycNum::zero(p_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!(*this)(i, j).is_zero() && !v[j].is_zero())
          r[i] += (*this)(i, j) * v[j];
    return r;
  }

  std::vector<CycNum> column(std::size_t j) const
  {
    std::vector<CycNum> c;
    for (std::size_t i = 0; i < rows_; ++i)
      c.push_back((*this)(i, j));
    return c;
  }

  /// Kronecker product, rows of a major.
  friend CycMatrix kron(const CycMatrix& a, const CycMatrix& b)
  {
    CycMatrix r(a.p_, a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) {
        if (a(i, j).is_zero())
          continue;
        for (std::size_t k = 0; k < b.rows_; ++k)
          for (std::size_t l = 0; l < b.cols_; ++l)
            if (!b(k, l).is_zero())
              r(i * b.rows_ + k, j * b.cols_ + l) = a(i, j) * b(k, l);
      }
    return r;
  }

  /// Submatrix of the given columns.
  CycMatrix columns(const std::vector<std::size_t>& idx) const
  {
    CycMatrix r(p_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j)
        r(i, j) = (*this)(i, idx[j]);
    return r;
  }

  /// Reduced row-echelon form (in place on a copy); returns pivot columns.
  std::pair<CycMatrix, std::vector<std::size_t>> rref() const
  {
    CycMatrix m = *this;
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t pr = r;
      while (pr < rows_ && m(pr, c).is_zero())
        ++pr;
      if (pr == rows_)
        continue;
      m.swap_rows(pr, r);
      const CycNum inv = m(r, c).inverse();
      for (std::size_t j = c; j < cols_; ++j)
        if (!m(r, j).is_zero())
          m(r, j) = inv * m(r, j);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || m(i, c).is_zero())
          continue;
        const CycNum f = m(i, c);
        for (std::size_t j = c; j < cols_; ++j)
          if (!m(r, j).is_zero())
            m(i, j) -= f * m(r, j);
      }
      piv.push_back(c);
      ++r;
    }
    return {std::move(m), std::move(piv)};
  }

  std::size_t rank() const { return rref().second.size(); }

  CycMatrix inverse() const
  {
    if (rows_ != cols_)
      throw std::invalid_argument("CycMatrix: inverse of non-square matrix");
    const std::size_t n = rows_;
    CycMatrix aug(p_, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        aug(i, j) = (*this)(i, j);
      aug(i, n + i) = CycNum::one(p_);
    }
    auto [e, piv] = aug.rref();
    if (piv.size() != n || (n > 0 && piv.back() >= n))
      throw std::domain_error("CycMatrix: singular matrix");
    CycMatrix inv(p_, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        inv(i, j) = e(i, n + j);
    return inv;
  }

  /// Basis of {x : M x = 0}, one column per basis vector.
  CycMatrix nullspace() const
  {
    auto [e, piv] = rref();
    std::vector<bool> is_piv(cols_, false);
    for (auto c : piv)
      is_piv[c] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < cols_; ++c)
      if (!is_piv[c])
        free.push_back(c);
    CycMatrix basis(p_, cols_, free.size());
    for (std::size_t k = 0; k < free.size(); ++k) {
      basis(free[k], k) = CycNum::one(p_);
      for (std::size_t r = 0; r < piv.size(); ++r)
        basis(piv[r], k) = -e(r, free[k]);
    }
    return basis;
  }

private:
  void swap_rows(std::size_t a, std::size_t b)
  {
    if (a == b)
      return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap(a_[a * cols_ + j], a_[b * cols_ + j]);
  }

  void check_shape(const CycMatrix& b) const
  {
    if (p_ != b.p_ || rows_ != b.rows_ || cols_ != b.cols_)
      throw std::invalid_argument("CycMatrix: shape mismatch");
  }

  int p_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<CycNum> a_;
};

/// Incremental Gaussian elimination on sparse rows over Q(zeta_p). Rows are
/// kept with a unit leading coefficient; adding a row reduces it against
/// the stored pivots and keeps it if anything survives.
class SparseEliminator
{
public:
  using Row = std::map<std::size_t, CycNum>;

  explicit SparseEliminator(int p) : p_(p) {}

  /// Returns true if the row increased the rank.
  bool add(Row row)
  {
    drop_zeros(row);
    while (!row.empty()) {
      auto lead = row.begin();
      auto it = pivots_.find(lead->first);
      if (it == pivots_.end()) {
        const CycNum inv = lead->second.inverse();
        for (auto& [c, v] : row)
          v = inv * v;
        pivots_.emplace(lead->first, std::move(row));
        return true;
      }
      const CycNum f = lead->second;
      for (const auto& [c, v] : it->second) {
        auto [pos, inserted] = row.try_emplace(c, CycNum::zero(p_));
        pos->second -= f * v;
        if (pos->second.is_zero())
          row.erase(pos);
      }
    }
    return false;
  }

  std::size_t rank() const { return pivots_.size(); }

private:
  static void drop_zeros(Row& row)
  {
    for (auto it = row.begin(); it != row.end();)
      it = it->second.is_zero() ? row.erase(it) : std::next(it);
  }

  int p_;
  std::map<std::size_t, Row> pivots_;
};

} // namespace weil
