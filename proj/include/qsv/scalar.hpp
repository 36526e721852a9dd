#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "qsv/polynomial.hpp"

namespace qsv {

/// Element of Q(i)(s, h, hb, c), with q represented as s^2.
///
/// Canonical form: numerator and denominator coprime, denominator monic under
/// the graded lex order, zero stored as 0/1. Equality is structural on the
/// canonical form.
class Scalar {
 public:
  Scalar() : den_(1) {}
  Scalar(long v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)
  Scalar(GaussRational v) : num_(std::move(v)), den_(1) {}  // NOLINT(google-explicit-constructor)
  Scalar(Polynomial num, Polynomial den);
  static Scalar rational(long p, long q);
  static Scalar param(Param p, int exponent = 1);
  static Scalar s(int exponent = 1) { return param(Param::s, exponent); }
  /// q^e = s^(2e).
  static Scalar q(int exponent = 1) { return s(2 * exponent); }
  static Scalar i_unit() { return Scalar(GaussRational::i_unit()); }

  const Polynomial& numerator() const noexcept { return num_; }
  const Polynomial& denominator() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const noexcept { return num_.is_one() && den_.is_one(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  Scalar inverse() const;
  Scalar pow(int e) const;

  /// Gaussian conjugation of coefficients; parameters are fixed.
  Scalar conjugate() const;

  /// Simultaneous substitution of parameters.
  Scalar substitute(const std::map<Param, Scalar>& bindings) const;

  /// Limit as `p` tends to the rational `value`; throws PoleError on a pole.
  Scalar limit_at(Param p, const mpq_class& value) const;

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Grammar-compatible text, e.g. `(s^2 + 1)/s`.
  std::string to_string() const;
  std::size_t hash() const { return num_.hash() * 1000003u ^ den_.hash(); }

 private:
  struct Canonical {};
  Scalar(Polynomial num, Polynomial den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}

  Polynomial num_;
  Polynomial den_;
};

}  // namespace qsv
