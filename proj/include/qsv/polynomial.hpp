#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qsv/gaussian.hpp"

namespace qsv {

/// Coefficient-field parameters. `s` is the square root of q.
enum class Param : int { s = 0, h = 1, hb = 2, c = 3 };

inline constexpr int kNumParams = 4;

const char* param_name(Param p);

using Monomial = std::array<int, kNumParams>;

/// Graded lexicographic order with s < h < hb < c. Returns <0, 0, >0.
int compare_monomials(const Monomial& a, const Monomial& b);

/// Sparse polynomial in s, h, hb, c over the Gaussian rationals. Terms are kept
/// sorted in strictly descending monomial order with no zero coefficients.
class Polynomial {
 public:
  using Term = std::pair<Monomial, GaussRational>;

  Polynomial() = default;
  Polynomial(long constant);  // NOLINT(google-explicit-constructor)
  Polynomial(GaussRational constant);  // NOLINT(google-explicit-constructor)
  static Polynomial variable(Param p, int exponent = 1);
  static Polynomial monomial(const Monomial& m, GaussRational coeff);
  /// Takes unsorted terms, merging duplicates.
  static Polynomial from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  bool is_one() const noexcept;
  bool is_monomial() const noexcept { return terms_.size() == 1; }

  const Monomial& leading_monomial() const { return terms_.front().first; }
  const GaussRational& leading_coefficient() const { return terms_.front().second; }
  int total_degree() const;
  int degree_in(Param p) const;
  /// Componentwise minimum exponent over all terms.
  Monomial min_exponents() const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const GaussRational& c) const;
  Polynomial times_monomial(const Monomial& m) const;
  /// Divides every exponent by `m`; requires m | every term.
  Polynomial divided_by_monomial(const Monomial& m) const;

  /// Exact multivariate division; throws if b does not divide *this.
  Polynomial divide_exact(const Polynomial& b) const;

  /// Divides by the leading coefficient.
  Polynomial monic() const;

  Polynomial conj() const;

  /// Coefficients as a univariate polynomial in `p`; index = degree.
  std::vector<Polynomial> coefficients_in(Param p) const;
  static Polynomial from_coefficients(Param p, const std::vector<Polynomial>& coeffs);

  /// Substitutes `p` := value (a Gaussian rational).
  Polynomial evaluate(Param p, const GaussRational& value) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  std::string to_string() const;
  std::size_t hash() const;

 private:
  std::vector<Term> terms_;
};

/// Monic greatest common divisor over Q(i)[s,h,hb,c].
Polynomial gcd(const Polynomial& a, const Polynomial& b);

}  // namespace qsv
