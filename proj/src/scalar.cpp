#include "qsv/scalar.hpp"

#include "qsv/errors.hpp"

namespace qsv {

namespace {

/// Divides out the gcd and makes the denominator monic.
std::pair<Polynomial, Polynomial> canonicalize(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw DivisionByZero();
  if (num.is_zero()) return {Polynomial(), Polynomial(1)};
  if (!den.is_constant()) {
    Polynomial g = gcd(num, den);
    if (!g.is_one()) {
      num = num.divide_exact(g);
      den = den.divide_exact(g);
    }
  }
  if (!den.leading_coefficient().is_one()) {
    GaussRational inv = den.leading_coefficient().inverse();
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  return {std::move(num), std::move(den)};
}

}  // namespace

Scalar::Scalar(Polynomial num, Polynomial den) {
  auto [n, d] = canonicalize(std::move(num), std::move(den));
  num_ = std::move(n);
  den_ = std::move(d);
}

Scalar Scalar::rational(long p, long q) { return Scalar(GaussRational(mpq_class(p, q))); }

Scalar Scalar::param(Param p, int exponent) {
  if (exponent >= 0) return Scalar(Polynomial::variable(p, exponent), Polynomial(1), Canonical{});
  return Scalar(Polynomial(1), Polynomial::variable(p, -exponent), Canonical{});
}

Scalar Scalar::operator-() const { return Scalar(-num_, den_, Canonical{}); }

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) {
    if (a.den_.is_one()) return Scalar(a.num_ + b.num_, a.den_, Scalar::Canonical{});
    return Scalar(a.num_ + b.num_, a.den_);
  }
  if (a.den_.is_monomial() && b.den_.is_monomial()) {
    // Both denominators are monic monomials: use their lcm.
    Monomial ma = a.den_.leading_monomial();
    Monomial mb = b.den_.leading_monomial();
    Monomial l{};
    for (int i = 0; i < kNumParams; ++i) l[i] = std::max(ma[i], mb[i]);
    Monomial fa{};
    Monomial fb{};
    for (int i = 0; i < kNumParams; ++i) {
      fa[i] = l[i] - ma[i];
      fb[i] = l[i] - mb[i];
    }
    return Scalar(a.num_.times_monomial(fa) + b.num_.times_monomial(fb),
                  Polynomial::monomial(l, GaussRational(1)));
  }
  Polynomial g = gcd(a.den_, b.den_);
  Polynomial bd = b.den_.divide_exact(g);
  Polynomial ad = a.den_.divide_exact(g);
  return Scalar(a.num_ * bd + b.num_ * ad, a.den_ * bd);
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.den_.is_one() && b.den_.is_one()) return Scalar(a.num_ * b.num_, Polynomial(1), Scalar::Canonical{});
  Polynomial g1 = gcd(a.num_, b.den_);
  Polynomial g2 = gcd(b.num_, a.den_);
  Polynomial n = a.num_.divide_exact(g1) * b.num_.divide_exact(g2);
  Polynomial d = a.den_.divide_exact(g2) * b.den_.divide_exact(g1);
  if (!d.leading_coefficient().is_one()) {
    GaussRational inv = d.leading_coefficient().inverse();
    n = n.scaled(inv);
    d = d.scaled(inv);
  }
  return Scalar(std::move(n), std::move(d), Scalar::Canonical{});
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverting zero scalar");
  GaussRational inv = num_.leading_coefficient().inverse();
  return Scalar(den_.scaled(inv), num_.scaled(inv), Canonical{});
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

Scalar Scalar::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar result(1);
  Scalar base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Scalar Scalar::conjugate() const { return Scalar(num_.conj(), den_.conj()); }

namespace {

Scalar evaluate_with(const Polynomial& p, const std::map<Param, Scalar>& bindings) {
  Scalar total;
  for (const auto& [m, c] : p.terms()) {
    Monomial rest = m;
    Scalar factor(c);
    for (const auto& [param, value] : bindings) {
      int idx = static_cast<int>(param);
      if (rest[idx] == 0) continue;
      factor = factor * value.pow(rest[idx]);
      rest[idx] = 0;
    }
    total += factor * Scalar(Polynomial::monomial(rest, GaussRational(1)), Polynomial(1));
  }
  return total;
}

}  // namespace

Scalar Scalar::substitute(const std::map<Param, Scalar>& bindings) const {
  Scalar n = evaluate_with(num_, bindings);
  Scalar d = evaluate_with(den_, bindings);
  if (d.is_zero()) throw DivisionByZero("denominator vanishes after substitution");
  return n / d;
}

Scalar Scalar::limit_at(Param p, const mpq_class& value) const {
  // Canonical form is already coprime, so (p - value) divides at most one side.
  GaussRational v(value);
  Polynomial d = den_.evaluate(p, v);
  if (d.is_zero()) {
    throw PoleError(std::string("pole at ") + param_name(p) + " = " + value.get_str() + " in " + to_string());
  }
  return Scalar(num_.evaluate(p, v), d);
}

std::string Scalar::to_string() const {
  if (den_.is_one()) return num_.to_string();
  std::string n = num_.to_string();
  if (num_.terms().size() > 1) n = "(" + n + ")";
  std::string d = den_.to_string();
  bool single_power = den_.is_monomial() && d.find('*') == std::string::npos;
  if (!single_power) d = "(" + d + ")";
  return n + "/" + d;
}

}  // namespace qsv
