#include "qsv/polynomial.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "qsv/errors.hpp"

namespace qsv {

GaussRational GaussRational::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (sgn(im) == 0) return {1 / re, mpq_class(0)};
  mpq_class norm = re * re + im * im;
  return {re / norm, -im / norm};
}

std::string GaussRational::to_string() const {
  if (sgn(im) == 0) return re.get_str();
  if (sgn(re) == 0) {
    if (im == 1) return "I";
    if (im == -1) return "-I";
    return im.get_str() + "*I";
  }
  std::string imag = (im == 1) ? "I" : (im == -1) ? "-I" : im.get_str() + "*I";
  if (sgn(im) > 0) imag = "+" + imag;
  return "(" + re.get_str() + imag + ")";
}

std::size_t GaussRational::hash() const {
  std::hash<std::string> h;
  return h(re.get_str()) * 31 + h(im.get_str());
}

const char* param_name(Param p) {
  switch (p) {
    case Param::s:
      return "s";
    case Param::h:
      return "h";
    case Param::hb:
      return "hb";
    case Param::c:
      return "c";
  }
  return "?";
}

int compare_monomials(const Monomial& a, const Monomial& b) {
  int da = 0;
  int db = 0;
  for (int i = 0; i < kNumParams; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (int i = kNumParams - 1; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

namespace {

bool divides(const Monomial& d, const Monomial& m) {
  for (int i = 0; i < kNumParams; ++i)
    if (d[i] > m[i]) return false;
  return true;
}

Monomial mono_sub(const Monomial& a, const Monomial& b) {
  Monomial r{};
  for (int i = 0; i < kNumParams; ++i) r[i] = a[i] - b[i];
  return r;
}

Monomial mono_add(const Monomial& a, const Monomial& b) {
  Monomial r{};
  for (int i = 0; i < kNumParams; ++i) r[i] = a[i] + b[i];
  return r;
}

}  // namespace

Polynomial::Polynomial(long constant) {
  if (constant != 0) terms_.emplace_back(Monomial{}, GaussRational(constant));
}

Polynomial::Polynomial(GaussRational constant) {
  if (!constant.is_zero()) terms_.emplace_back(Monomial{}, std::move(constant));
}

Polynomial Polynomial::variable(Param p, int exponent) {
  Monomial m{};
  m[static_cast<int>(p)] = exponent;
  return monomial(m, GaussRational(1));
}

Polynomial Polynomial::monomial(const Monomial& m, GaussRational coeff) {
  Polynomial r;
  if (!coeff.is_zero()) r.terms_.emplace_back(m, std::move(coeff));
  return r;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return compare_monomials(a.first, b.first) > 0;
  });
  Polynomial r;
  for (auto& t : terms) {
    if (!r.terms_.empty() && r.terms_.back().first == t.first) {
      r.terms_.back().second += t.second;
      if (r.terms_.back().second.is_zero()) r.terms_.pop_back();
    } else if (!t.second.is_zero()) {
      r.terms_.push_back(std::move(t));
    }
  }
  return r;
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().first == Monomial{});
}

bool Polynomial::is_one() const noexcept {
  return terms_.size() == 1 && terms_.front().first == Monomial{} && terms_.front().second.is_one();
}

int Polynomial::total_degree() const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (int v : terms_.front().first) d += v;
  return d;
}

int Polynomial::degree_in(Param p) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[static_cast<int>(p)]);
  return d;
}

Monomial Polynomial::min_exponents() const {
  if (terms_.empty()) return Monomial{};
  Monomial r = terms_.front().first;
  for (const auto& [m, c] : terms_)
    for (int i = 0; i < kNumParams; ++i) r[i] = std::min(r[i], m[i]);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  Polynomial r;
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  auto i = a.terms_.begin();
  auto j = b.terms_.begin();
  while (i != a.terms_.end() || j != b.terms_.end()) {
    if (j == b.terms_.end()) {
      r.terms_.push_back(*i++);
      continue;
    }
    if (i == a.terms_.end()) {
      r.terms_.push_back(*j++);
      continue;
    }
    int cmp = compare_monomials(i->first, j->first);
    if (cmp > 0) {
      r.terms_.push_back(*i++);
    } else if (cmp < 0) {
      r.terms_.push_back(*j++);
    } else {
      GaussRational c = i->second + j->second;
      if (!c.is_zero()) r.terms_.emplace_back(i->first, std::move(c));
      ++i;
      ++j;
    }
  }
  return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (b.is_monomial()) return a.times_monomial(b.terms_.front().first).scaled(b.terms_.front().second);
  if (a.is_monomial()) return b.times_monomial(a.terms_.front().first).scaled(a.terms_.front().second);
  std::vector<Polynomial::Term> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) terms.emplace_back(mono_add(ma, mb), ca * cb);
  return Polynomial::from_terms(std::move(terms));
}

Polynomial Polynomial::scaled(const GaussRational& c) const {
  if (c.is_zero()) return {};
  if (c.is_one()) return *this;
  Polynomial r = *this;
  for (auto& t : r.terms_) t.second = t.second * c;
  return r;
}

Polynomial Polynomial::times_monomial(const Monomial& m) const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.first = mono_add(t.first, m);
  return r;
}

Polynomial Polynomial::divided_by_monomial(const Monomial& m) const {
  Polynomial r = *this;
  for (auto& t : r.terms_) {
    if (!divides(m, t.first)) throw Error("divided_by_monomial: not divisible");
    t.first = mono_sub(t.first, m);
  }
  return r;
}

Polynomial Polynomial::divide_exact(const Polynomial& b) const {
  if (b.is_zero()) throw DivisionByZero();
  if (b.is_monomial()) {
    return divided_by_monomial(b.terms_.front().first).scaled(b.terms_.front().second.inverse());
  }
  Polynomial quotient;
  Polynomial rem = *this;
  const auto& [lm_b, lc_b] = b.terms_.front();
  GaussRational inv_lc = lc_b.inverse();
  std::vector<Term> q_terms;
  while (!rem.is_zero()) {
    const auto& [lm_r, lc_r] = rem.terms_.front();
    if (!divides(lm_b, lm_r)) throw Error("divide_exact: polynomial is not a multiple");
    Monomial m = mono_sub(lm_r, lm_b);
    GaussRational c = lc_r * inv_lc;
    rem = rem - b.times_monomial(m).scaled(c);
    q_terms.emplace_back(m, std::move(c));
  }
  return from_terms(std::move(q_terms));
}

Polynomial Polynomial::monic() const {
  if (is_zero() || leading_coefficient().is_one()) return *this;
  return scaled(leading_coefficient().inverse());
}

Polynomial Polynomial::conj() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.second = t.second.conj();
  return r;
}

std::vector<Polynomial> Polynomial::coefficients_in(Param p) const {
  const int idx = static_cast<int>(p);
  std::vector<std::vector<Term>> buckets(std::max(degree_in(p), 0) + 1);
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    rest[idx] = 0;
    buckets[m[idx]].emplace_back(rest, c);
  }
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
  return out;
}

Polynomial Polynomial::from_coefficients(Param p, const std::vector<Polynomial>& coeffs) {
  std::vector<Term> terms;
  for (std::size_t d = 0; d < coeffs.size(); ++d) {
    for (const auto& [m, c] : coeffs[d].terms_) {
      Monomial mm = m;
      mm[static_cast<int>(p)] += static_cast<int>(d);
      terms.emplace_back(mm, c);
    }
  }
  return from_terms(std::move(terms));
}

Polynomial Polynomial::evaluate(Param p, const GaussRational& value) const {
  const int idx = static_cast<int>(p);
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    GaussRational f(1);
    for (int k = 0; k < m[idx]; ++k) f = f * value;
    Monomial mm = m;
    mm[idx] = 0;
    terms.emplace_back(mm, c * f);
  }
  return from_terms(std::move(terms));
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    bool is_const = (m == Monomial{});
    std::string coeff;
    bool negative = false;
    if (c.is_real()) {
      negative = sgn(c.re) < 0;
      mpq_class a = abs(c.re);
      coeff = a.get_str();
    } else {
      coeff = c.to_string();
      if (coeff.front() == '-') {
        negative = true;
        coeff = coeff.substr(1);
      }
    }
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (is_const || coeff != "1") {
      out << coeff;
      wrote = true;
    }
    for (int i = 0; i < kNumParams; ++i) {
      if (m[i] == 0) continue;
      if (wrote) out << "*";
      out << param_name(static_cast<Param>(i));
      if (m[i] != 1) out << "^" << m[i];
      wrote = true;
    }
  }
  return out.str();
}

std::size_t Polynomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (const auto& [m, c] : terms_) {
    for (int e : m) h = (h ^ static_cast<std::size_t>(e)) * 1099511628211ull;
    h = (h ^ c.hash()) * 1099511628211ull;
  }
  return h;
}

namespace {

Polynomial content_in(const std::vector<Polynomial>& coeffs) {
  Polynomial g;
  for (const auto& c : coeffs) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

int univariate_degree(const std::vector<Polynomial>& c) {
  for (int d = static_cast<int>(c.size()) - 1; d >= 0; --d)
    if (!c[d].is_zero()) return d;
  return -1;
}

/// Pseudo-remainder of a by b as univariate polynomials in p.
std::vector<Polynomial> pseudo_remainder(std::vector<Polynomial> a, const std::vector<Polynomial>& b) {
  const int n = univariate_degree(b);
  const Polynomial& lc_b = b[n];
  int da = univariate_degree(a);
  int e = da - n + 1;
  while (da >= n) {
    Polynomial lc_a = a[da];
    for (auto& c : a) c = c * lc_b;
    for (int i = 0; i <= n; ++i) a[da - n + i] = a[da - n + i] - lc_a * b[i];
    --e;
    da = univariate_degree(a);
  }
  if (e > 0) {
    Polynomial f = 1;
    for (int i = 0; i < e; ++i) f = f * lc_b;
    for (auto& c : a) c = c * f;
  }
  a.resize(std::max(da + 1, 0));
  return a;
}

std::vector<Polynomial> primitive_part(const std::vector<Polynomial>& c) {
  Polynomial cont = content_in(c);
  std::vector<Polynomial> r;
  r.reserve(c.size());
  for (const auto& x : c) r.push_back(x.divide_exact(cont));
  return r;
}

using Dense = std::vector<GaussRational>;

void trim(Dense& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

/// Degree of gcd(a, b) for dense univariate polynomials over Q(i).
int dense_gcd_degree(Dense a, Dense b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a <- a mod b
    const GaussRational inv = b.back().inverse();
    while (a.size() >= b.size()) {
      GaussRational f = a.back() * inv;
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
      a.pop_back();
      trim(a);
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

/// Specializes every parameter except `keep` at a fixed point.
Dense specialize(const Polynomial& p, Param keep, const std::array<long, kNumParams>& point) {
  const int k = static_cast<int>(keep);
  Dense out(std::max(p.degree_in(keep), 0) + 1);
  for (const auto& [m, c] : p.terms()) {
    mpz_class f = 1;
    for (int i = 0; i < kNumParams; ++i) {
      if (i == k) continue;
      for (int e = 0; e < m[i]; ++e) f *= point[i];
    }
    out[m[k]] += c * GaussRational(mpq_class(f));
  }
  return out;
}

/// True when a cheap evaluation argument proves gcd(a, b) = 1.
bool provably_coprime(const Polynomial& a, const Polynomial& b) {
  static constexpr std::array<long, kNumParams> kPoint{7, 11, 13, 17};
  for (int i = 0; i < kNumParams; ++i) {
    auto v = static_cast<Param>(i);
    if (a.degree_in(v) <= 0 || b.degree_in(v) <= 0) continue;
    Dense da = specialize(a, v, kPoint);
    Dense db = specialize(b, v, kPoint);
    trim(da);
    trim(db);
    // Leading coefficients must survive the specialization.
    if (static_cast<int>(da.size()) - 1 != a.degree_in(v)) return false;
    if (static_cast<int>(db.size()) - 1 != b.degree_in(v)) return false;
    if (dense_gcd_degree(da, db) > 0) return false;
  }
  return true;
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  if (a.is_monomial() || b.is_monomial()) {
    Monomial ma = a.min_exponents();
    Monomial mb = b.min_exponents();
    Monomial m{};
    for (int i = 0; i < kNumParams; ++i) m[i] = std::min(ma[i], mb[i]);
    return Polynomial::monomial(m, GaussRational(1));
  }
  if (a == b) return a.monic();
  if (provably_coprime(a, b)) return Polynomial(1);

  Param var = Param::s;
  for (int i = kNumParams - 1; i >= 0; --i) {
    auto p = static_cast<Param>(i);
    if (a.degree_in(p) > 0 || b.degree_in(p) > 0) {
      var = p;
      break;
    }
  }
  auto ca = a.coefficients_in(var);
  auto cb = b.coefficients_in(var);
  if (ca.size() == 1) return gcd(a, content_in(cb));
  if (cb.size() == 1) return gcd(content_in(ca), b);

  Polynomial cont = gcd(content_in(ca), content_in(cb));
  auto pa = primitive_part(ca);
  auto pb = primitive_part(cb);
  if (univariate_degree(pa) < univariate_degree(pb)) std::swap(pa, pb);
  // Subresultant PRS: exact divisions keep coefficient growth polynomial.
  Polynomial g = 1;
  Polynomial hh = 1;
  while (true) {
    const int delta = univariate_degree(pa) - univariate_degree(pb);
    auto r = pseudo_remainder(pa, pb);
    const int dr = univariate_degree(r);
    if (dr < 0) break;
    if (dr == 0) {
      pb = {Polynomial(1)};
      break;
    }
    Polynomial divisor = g;
    for (int i = 0; i < delta; ++i) divisor = divisor * hh;
    for (auto& x : r) x = x.divide_exact(divisor);
    pa = std::move(pb);
    pb = std::move(r);
    g = pa[univariate_degree(pa)];
    if (delta == 0) {
      // hh unchanged
    } else {
      Polynomial num = 1;
      for (int i = 0; i < delta; ++i) num = num * g;
      Polynomial den = 1;
      for (int i = 0; i < delta - 1; ++i) den = den * hh;
      hh = num.divide_exact(den);
    }
  }
  Polynomial result = Polynomial::from_coefficients(var, primitive_part(pb));
  return (result * cont).monic();
}

}  // namespace qsv
