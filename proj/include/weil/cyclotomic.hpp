#pragma once

// Exact arithmetic in the cyclotomic field Q(zeta_p) for an odd prime p,
// together with the additive character psi, the Legendre character and the
// quadratic Gauss sum.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace weil {

using Rational = mpq_class;

inline bool is_odd_prime(long long p)
{
  if (p < 3 || p % 2 == 0)
    return false;
  for (long long d = 3; d * d <= p; d += 2)
    if (p % d == 0)
      return false;
  return true;
}

inline void require_odd_prime(long long p)
{
  if (!is_odd_prime(p))
    throw std::invalid_argument("modulus must be an odd prime, got " + std::to_string(p));
}

inline int mod_p(long long a, int p)
{
  long long r = a % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

inline int pow_mod(long long base, long long e, int p)
{
  long long result = 1 % p;
  long long b = mod_p(base, p);
  while (e > 0) {
    if (e & 1)
      result = result * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<int>(result);
}

inline int inv_mod(long long a, int p)
{
  int r = mod_p(a, p);
  if (r == 0)
    throw std::domain_error("inverse of zero in F_" + std::to_string(p));
  return pow_mod(r, p - 2, p);
}

/// The element 1/2 of F_p.
inline int half_mod(int p) { return inv_mod(2, p); }

/// Legendre symbol (a/p): +1 on nonzero squares, -1 on non-squares, 0 at zero.
inline int legendre(long long a, int p)
{
  int r = mod_p(a, p);
  if (r == 0)
    return 0;
  return pow_mod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

/// Element sum_{k=0}^{p-2} c_k zeta^k of Q(zeta_p), zeta = e^{2 pi i / p}.
///
/// The power basis 1, zeta, ..., zeta^{p-2} is a Q-basis; zeta^{p-1} is
/// rewritten as -(1 + zeta + ... + zeta^{p-2}). Equality is therefore
/// coefficientwise.
class CycNum
{
public:
  explicit CycNum(int p) : p_(p), c_(static_cast<std::size_t>(p > 1 ? p - 1 : 0))
  {
    if (p < 3 || p % 2 == 0)
      throw std::invalid_argument("cyclotomic order must be an odd prime, got " + std::to_string(p));
  }

  CycNum(int p, std::vector<Rational> coeffs) : CycNum(p)
  {
    if (coeffs.size() != c_.size())
      throw std::invalid_argument("CycNum: expected " + std::to_string(c_.size()) + " coefficients");
    c_ = std::move(coeffs);
  }

  static CycNum zero(int p) { return CycNum(p); }

  static CycNum one(int p) { return from_rational(p, Rational(1)); }

  static CycNum from_rational(int p, const Rational& q)
  {
    CycNum r(p);
    r.c_[0] = q;
    return r;
  }

  static CycNum from_int(int p, long long v) { return from_rational(p, Rational(static_cast<long>(v))); }

  /// zeta^k, any integer k.
  static CycNum zeta_pow(int p, long long k)
  {
    CycNum r(p);
    int e = mod_p(k, p);
    if (e < p - 1) {
      r.c_[static_cast<std::size_t>(e)] = 1;
    } else {
      for (auto& c : r.c_)
        c = -1;
    }
    return r;
  }

  int order() const { return p_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const
  {
    for (const auto& c : c_)
      if (sgn(c) != 0)
        return false;
    return true;
  }

  bool is_rational() const
  {
    for (std::size_t k = 1; k < c_.size(); ++k)
      if (sgn(c_[k]) != 0)
        return false;
    return true;
  }

  CycNum& operator+=(const CycNum& o)
  {
    check_same(o);
    for (std::size_t k = 0; k < c_.size(); ++k)
      c_[k] += o.c_[k];
    return *this;
  }

  CycNum& operator-=(const CycNum& o)
  {
    check_same(o);
    for (std::size_t k = 0; k < c_.size(); ++k)
      c_[k] -= o.c_[k];
    return *this;
  }

  CycNum& operator*=(const CycNum& o) { return *this = *this * o; }
  CycNum& operator/=(const CycNum& o) { return *this = *this / o; }

  CycNum operator-() const
  {
    CycNum r(*this);
    for (auto& c : r.c_)
      c = -c;
    return r;
  }

  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }

  friend CycNum operator*(const CycNum& a, const CycNum& b)
  {
    a.check_same(b);
    const int p = a.p_;
    std::vector<Rational> full(static_cast<std::size_t>(p));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (sgn(a.c_[i]) == 0)
        continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (sgn(b.c_[j]) == 0)
          continue;
        full[(i + j) % static_cast<std::size_t>(p)] += a.c_[i] * b.c_[j];
      }
    }
    return reduce(p, full);
  }

  friend CycNum operator*(const Rational& q, CycNum a)
  {
    for (auto& c : a.c_)
      c *= q;
    return a;
  }

  /// Exact quotient; the inverse of b is found by solving b * x = 1 in the
  /// power basis.
  friend CycNum operator/(const CycNum& a, const CycNum& b)
  {
    a.check_same(b);
    return a * b.inverse();
  }

  CycNum inverse() const
  {
    if (is_zero())
      throw std::domain_error("CycNum: division by zero");
    if (is_rational())
      return from_rational(p_, 1 / c_[0]);
    const std::size_t d = c_.size();
    // Column k of the multiplication matrix is (*this) * zeta^k.
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1));
    for (std::size_t k = 0; k < d; ++k) {
      CycNum col = *this * zeta_pow(p_, static_cast<long long>(k));
      for (std::size_t i = 0; i < d; ++i)
        m[i][k] = col.c_[i];
    }
    m[0][d] = 1;
    for (std::size_t col = 0; col < d; ++col) {
      std::size_t piv = col;
      while (piv < d && sgn(m[piv][col]) == 0)
        ++piv;
      if (piv == d)
        throw std::domain_error("CycNum: singular multiplication matrix");
      std::swap(m[piv], m[col]);
      Rational s = 1 / m[col][col];
      for (auto& x : m[col])
        x *= s;
      for (std::size_t r = 0; r < d; ++r) {
        if (r == col || sgn(m[r][col]) == 0)
          continue;
        Rational f = m[r][col];
        for (std::size_t c = col; c <= d; ++c)
          m[r][c] -= f * m[col][c];
      }
    }
    CycNum x(p_);
    for (std::size_t i = 0; i < d; ++i)
      x.c_[i] = m[i][d];
    return x;
  }

  CycNum pow(long long e) const
  {
    if (e < 0)
      return inverse().pow(-e);
    CycNum result = one(p_);
    CycNum base = *this;
    while (e > 0) {
      if (e & 1)
        result *= base;
      e >>= 1;
      if (e > 0)
        base = base * base;
    }
    return result;
  }

  /// Complex conjugation, zeta^k -> zeta^{p-k}.
  CycNum conj() const
  {
    std::vector<Rational> full(static_cast<std::size_t>(p_));
    for (std::size_t k = 0; k < c_.size(); ++k)
      full[(static_cast<std::size_t>(p_) - k) % static_cast<std::size_t>(p_)] += c_[k];
    return reduce(p_, full);
  }

  /// Evaluation at zeta = e^{2 pi i / p} in double precision.
  std::complex<double> to_complex() const
  {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (sgn(c_[k]) == 0)
        continue;
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / p_;
      acc += c_[k].get_d() * std::complex<double>(std::cos(theta), std::sin(theta));
    }
    return acc;
  }

  /// Human-readable form, e.g. "1 + 2*z^2" (z stands for zeta_p).
  std::string to_string() const
  {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      const Rational& c = c_[k];
      if (sgn(c) == 0)
        continue;
      Rational mag = abs(c);
      if (first)
        os << (sgn(c) < 0 ? "-" : "");
      else
        os << (sgn(c) < 0 ? " - " : " + ");
      first = false;
      if (k == 0) {
        os << mag.get_str();
        continue;
      }
      if (mag != 1)
        os << mag.get_str() << "*";
      os << "z";
      if (k > 1)
        os << "^" << k;
    }
    return first ? "0" : os.str();
  }

  friend bool operator==(const CycNum& a, const CycNum& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
  friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

private:
  static CycNum reduce(int p, const std::vector<Rational>& full)
  {
    CycNum r(p);
    const Rational& top = full[static_cast<std::size_t>(p - 1)];
    for (std::size_t k = 0; k + 1 < static_cast<std::size_t>(p); ++k)
      r.c_[k] = full[k] - top;
    return r;
  }

  void check_same(const CycNum& o) const
  {
    if (p_ != o.p_)
      throw std::invalid_argument("CycNum: mismatched cyclotomic orders " + std::to_string(p_) + " and " +
                                  std::to_string(o.p_));
  }

  int p_;
  std::vector<Rational> c_;
};

/// The additive character psi(z) = zeta_p^z.
inline CycNum psi(long long z, int p)
{
  require_odd_prime(p);
  return CycNum::zeta_pow(p, z);
}

/// G_1 = sum_z psi(chi * z^2 / 2). chi selects the central character
/// psi_chi(z) = psi(chi z); chi = 1 is the standard one.
inline CycNum gauss_sum(int p, int chi = 1)
{
  require_odd_prime(p);
  if (mod_p(chi, p) == 0)
    throw std::invalid_argument("gauss_sum: trivial character");
  const int h = half_mod(p);
  CycNum acc(p);
  for (int z = 0; z < p; ++z)
    acc += CycNum::zeta_pow(p, static_cast<long long>(chi) * h % p * z % p * z);
  return acc;
}

} // namespace weil
