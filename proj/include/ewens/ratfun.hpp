#pragma once

// Univariate polynomials and rational functions over exact rationals. The
// indeterminate is the permutation size N (or X for the telescoping product).

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ewens/error.hpp"
#include "ewens/rational.hpp"

namespace ewens {

// Degree with a distinguished minus infinity for the zero function.
class Degree {
 public:
  constexpr Degree(long value) : value_(value) {}  // NOLINT: implicit on purpose
  static constexpr Degree minus_infinity() { return Degree(kMinusInf); }

  constexpr bool is_minus_infinity() const { return value_ == kMinusInf; }
  constexpr long value() const { return value_; }

  friend constexpr bool operator==(Degree, Degree) = default;
  friend constexpr auto operator<=>(Degree a, Degree b) { return a.value_ <=> b.value_; }

  std::string to_string() const { return is_minus_infinity() ? "-inf" : std::to_string(value_); }

 private:
  static constexpr long kMinusInf = std::numeric_limits<long>::min();
  long value_;
};

class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c) {  // NOLINT
    if (!ewens::is_zero(c)) coeffs_.push_back(c);
  }
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT
  explicit Poly(std::vector<Rational> ascending) : coeffs_(std::move(ascending)) { trim(); }

  static Poly variable() { return Poly(std::vector<Rational>{Rational(0), Rational(1)}); }

  // x - root
  static Poly linear_root(const Rational& root) {
    return Poly(std::vector<Rational>{-root, Rational(1)});
  }

  bool is_zero() const { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int k) const {
    return k >= 0 && k < static_cast<int>(coeffs_.size()) ? coeffs_[k] : Rational(0);
  }
  Rational leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

  Rational eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a) {
    Poly out = a;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Poly(std::move(c));
  }
  Poly scaled(const Rational& s) const {
    if (ewens::is_zero(s)) return Poly();
    Poly out = *this;
    for (auto& c : out.coeffs_) c *= s;
    return out;
  }

  // Quotient and remainder of long division; divisor must be nonzero.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DivisionError("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(), a};
    std::vector<Rational> rem = a.coeffs_;
    std::vector<Rational> quo(a.coeffs_.size() - b.coeffs_.size() + 1, Rational(0));
    const Rational lead = b.leading();
    for (int k = static_cast<int>(quo.size()) - 1; k >= 0; --k) {
      const Rational q = rem[k + b.degree()] / lead;
      quo[k] = q;
      if (ewens::is_zero(q)) continue;
      for (int j = 0; j <= b.degree(); ++j) rem[k + j] -= q * b.coeffs_[j];
    }
    rem.resize(b.coeffs_.size() - 1);
    return {Poly(std::move(quo)), Poly(std::move(rem))};
  }

  Poly monic() const { return is_zero() ? Poly() : scaled(1 / leading()); }

  // Monic gcd; gcd(0, 0) = 0.
  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = divmod(a, b).second;
      a = std::move(b);
      b = r.monic();
    }
    return a.monic();
  }

  friend bool operator==(const Poly&, const Poly&) = default;

  // "(c0,c1,...)" ascending.
  std::string coeff_list() const {
    std::string out = "(";
    if (is_zero()) return "(0)";
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (k) out += ',';
      out += to_string(coeffs_[k]);
    }
    return out + ")";
  }

 private:
  void trim() {
    for (auto& c : coeffs_) c.canonicalize();
    while (!coeffs_.empty() && ewens::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

namespace detail {

inline std::string superscript(int k) {
  static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string out;
  for (char c : std::to_string(k)) out += digits[c - '0'];
  return out;
}

inline const std::string kMinus = "−";

// Positive integer divisors of |v| when |v| is small enough to factor quickly.
inline std::optional<std::vector<Integer>> small_divisors(const Integer& v) {
  Integer a = abs(v);
  if (a > Integer("1000000000000")) return std::nullopt;
  std::vector<Integer> out;
  unsigned long n = a.get_ui();
  for (unsigned long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    out.emplace_back(d);
    if (d * d != n) out.emplace_back(n / d);
  }
  return out;
}

// Splits p into scalar * prod (x - r)^m * rest with rest monic and free of
// rational roots (as far as the candidate search reaches).
struct Factored {
  Rational scalar;
  std::map<Rational, int> roots;
  Poly rest;
};

inline Factored factor_rational_roots(const Poly& p) {
  Factored f{p.leading(), {}, p.monic()};
  Poly& q = f.rest;
  // Zero roots first.
  while (q.degree() >= 1 && is_zero(q.coeff(0))) {
    q = Poly::divmod(q, Poly::variable()).first;
    ++f.roots[Rational(0)];
  }
  if (q.degree() < 1) return f;
  // Integer coefficients: multiply by the lcm of denominators.
  Integer l(1);
  for (const auto& c : q.coeffs()) l = lcm(l, c.get_den());
  auto lead = small_divisors(Integer(q.leading() * l));
  auto tail = small_divisors(Integer(q.coeff(0) * l));
  if (!lead || !tail) return f;
  std::vector<Rational> candidates;
  for (const auto& num : *tail) {
    for (const auto& den : *lead) {
      Rational r(num, den);
      r.canonicalize();
      candidates.push_back(r);
      candidates.push_back(-r);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const auto& r : candidates) {
    while (q.degree() >= 1 && is_zero(q.eval(r))) {
      q = Poly::divmod(q, Poly::linear_root(r)).first;
      ++f.roots[r];
    }
  }
  return f;
}

inline std::string poly_in(const Poly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    const Rational c = p.coeff(k);
    if (is_zero(c)) continue;
    const bool neg = sgn(c) < 0;
    const Rational a = neg ? Rational(-c) : c;
    if (out.empty()) {
      if (neg) out += kMinus;
    } else {
      out += neg ? kMinus : "+";
    }
    if (k == 0 || a != 1) out += to_string(a);
    if (k >= 1) out += var;
    if (k >= 2) out += superscript(k);
  }
  return out;
}

// Factors of a monic factored polynomial, e.g. "N²(N−1)"; count of factors
// returned alongside so callers know whether to parenthesize.
inline std::pair<std::string, int> factor_string(const Factored& f, const std::string& var) {
  std::string out;
  int count = 0;
  for (const auto& [r, m] : f.roots) {
    std::string base;
    if (is_zero(r)) {
      base = var;
    } else {
      base = "(" + var + (sgn(r) > 0 ? kMinus : "+") + to_string(abs(r)) + ")";
    }
    out += base;
    if (m > 1) out += superscript(m);
    count += 1;
  }
  if (f.rest.degree() >= 1) {
    out += "(" + poly_in(f.rest, var) + ")";
    count += 1;
  }
  return {out, count};
}

}  // namespace detail

// num/den kept coprime with monic den; zero is 0/1.
class RatFun {
 public:
  RatFun() : den_(1) {}
  RatFun(const Rational& c) : num_(c), den_(1) {}  // NOLINT
  RatFun(long c) : RatFun(Rational(c)) {}          // NOLINT
  RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionError("rational function with zero denominator");
    canonicalize();
  }

  static RatFun variable() { return RatFun(Poly::variable(), Poly(1)); }

  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  Degree degree() const {
    if (is_zero()) return Degree::minus_infinity();
    return Degree(num_.degree() - den_.degree());
  }

  Rational eval(const Rational& x) const {
    const Rational d = den_.eval(x);
    if (ewens::is_zero(d)) throw DivisionError("rational function has a pole at " + to_string(x));
    return num_.eval(x) / d;
  }

  friend RatFun operator+(const RatFun& a, const RatFun& b) {
    if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
    return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFun operator-(const RatFun& a) { return RatFun(-a.num_, a.den_, Canonical{}); }
  friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
  friend RatFun operator*(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw DivisionError("division by the zero rational function");
    return RatFun(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }

  friend bool operator==(const RatFun&, const RatFun&) = default;

  // "(c0,c1,..)/(d0,d1,..)", ascending coefficients.
  std::string to_text() const { return num_.coeff_list() + "/" + den_.coeff_list(); }

  // Factored display such as "1/(N²(N−1))".
  std::string pretty(const std::string& var = "N") const {
    if (is_zero()) return "0";
    auto fn = detail::factor_rational_roots(num_);
    auto fd = detail::factor_rational_roots(den_);
    const Rational scalar = fn.scalar / fd.scalar;
    const Integer p = scalar.get_num();
    const Integer q = scalar.get_den();
    auto [ns, ncount] = detail::factor_string(fn, var);
    auto [ds, dcount] = detail::factor_string(fd, var);

    std::string top;
    if (ncount == 0) {
      top = (sgn(p) < 0 ? detail::kMinus : "") + Integer(abs(p)).get_str();
    } else {
      if (p == -1) {
        top = detail::kMinus;
      } else if (p != 1) {
        top = (sgn(p) < 0 ? detail::kMinus : "") + Integer(abs(p)).get_str();
      }
      top += ns;
    }
    if (dcount == 0 && q == 1) return top;
    std::string bottom = (q != 1 ? q.get_str() : "") + ds;
    const bool bare = q != 1 ? dcount == 0 : dcount == 1;
    return top + "/" + (bare ? bottom : "(" + bottom + ")");
  }

 private:
  struct Canonical {};
  RatFun(Poly num, Poly den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}

  void canonicalize() {
    if (num_.is_zero()) {
      den_ = Poly(1);
      return;
    }
    if (den_.degree() > 0 && num_.degree() > 0) {
      Poly g = Poly::gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = Poly::divmod(num_, g).first;
        den_ = Poly::divmod(den_, g).first;
      }
    }
    const Rational lead = den_.leading();
    if (lead != 1) {
      num_ = num_.scaled(1 / lead);
      den_ = den_.scaled(1 / lead);
    }
  }

  Poly num_;
  Poly den_;
};

inline bool is_zero_value(const RatFun& f) { return f.is_zero(); }

inline constexpr int kMaxTechProductLength = 6;

// prod over subsets d of the index list of (X - sum_{j in d} a_j)^{(-1)^{|d|}}.
inline RatFun tech_product(const std::vector<int>& a) {
  if (a.size() > static_cast<std::size_t>(kMaxTechProductLength)) {
    throw CapacityError("telescoping product takes at most " +
                        std::to_string(kMaxTechProductLength) + " entries");
  }
  for (int v : a) {
    if (v <= 0) throw ValidationError("telescoping product entries must be positive");
  }
  if (a.empty()) return RatFun(1);
  Poly num(1), den(1);
  for (std::uint32_t d = 0; d < (1u << a.size()); ++d) {
    long shift = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (d >> j & 1u) shift += a[j];
    }
    Poly factor = Poly::linear_root(Rational(shift));
    if (std::popcount(d) % 2 == 0) {
      num = num * factor;
    } else {
      den = den * factor;
    }
  }
  return RatFun(num, den);
}

}  // namespace ewens
