#pragma once

// Exact scalar fields: the rationals, cyclotomic fields Q(q) with q a
// primitive n-th root of unity, and the rational function field Q(q).

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "hopfquiver/error.hpp"

namespace hopfquiver {

using Rational = mpq_class;

inline std::string rational_to_string(const Rational& r) { return r.get_str(); }

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }),
          s.end());
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0) throw ParseError("malformed rational '" + std::string(text) + "'");
  if (r.get_den() == 0) throw DivisionByZero();
  r.canonicalize();
  return r;
}

/// Dense univariate polynomial over Q in the indeterminate q; coefficient i
/// multiplies q^i. Trailing zero coefficients are never stored, so the zero
/// polynomial has an empty coefficient vector.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  static Poly constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }
  static Poly monomial(const Rational& c, std::size_t degree) {
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return Poly(std::move(v));
  }
  static Poly indeterminate() { return monomial(1, 1); }

  bool is_zero() const { return coeffs_.empty(); }
  // Degree of the zero polynomial is -1.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  const Rational& leading() const { return coeffs_.back(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r[i] += b.coeffs_[i];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a) {
    std::vector<Rational> r(a.coeffs_);
    for (auto& c : r) c = -c;
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Poly(std::move(r));
  }
  Poly scaled(const Rational& c) const {
    std::vector<Rational> r(coeffs_);
    for (auto& x : r) x *= c;
    return Poly(std::move(r));
  }

  // Euclidean division: a = quotient * b + remainder, deg remainder < deg b.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DivisionByZero();
    if (a.degree() < b.degree()) return {Poly{}, a};
    std::vector<Rational> rem(a.coeffs_);
    std::vector<Rational> quot(a.coeffs_.size() - b.coeffs_.size() + 1);
    const Rational& lead = b.leading();
    for (int k = static_cast<int>(quot.size()) - 1; k >= 0; --k) {
      Rational factor = rem[k + b.coeffs_.size() - 1] / lead;
      quot[k] = factor;
      if (factor == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) rem[k + j] -= factor * b.coeffs_[j];
    }
    rem.resize(b.coeffs_.size() - 1);
    return {Poly(std::move(quot)), Poly(std::move(rem))};
  }

  Poly monic() const {
    if (is_zero()) return {};
    return scaled(1 / leading());
  }

  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  // Ascending-degree text such as "1+q+2q^2-(1/3)q^3".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const Rational& c = coeffs_[i];
      if (c == 0) continue;
      Rational mag = abs(c);
      bool negative = c < 0;
      if (!out.empty()) out += negative ? "-" : "+";
      else if (negative) out += "-";
      std::string mono = i == 0 ? "" : (i == 1 ? "q" : "q^" + std::to_string(i));
      if (i == 0) {
        out += mag.get_str();
      } else if (mag == 1) {
        out += mono;
      } else if (mag.get_den() == 1) {
        out += mag.get_str() + mono;
      } else {
        out += "(" + mag.get_str() + ")" + mono;
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Rational> coeffs_;
};

inline Poly pow(const Poly& p, unsigned e) {
  Poly result = Poly::constant(1), base = p;
  while (e) {
    if (e & 1u) result = result * base;
    base = base * base;
    e >>= 1u;
  }
  return result;
}

/// The n-th cyclotomic polynomial, by dividing q^n - 1 by every Phi_d with d
/// a proper divisor of n.
inline const Poly& cyclotomic_polynomial(int n) {
  if (n < 1) throw ValidationError("cyclotomic order must be positive");
  static std::mutex mutex;
  static std::map<int, Poly> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  Poly p = Poly::monomial(1, static_cast<std::size_t>(n)) - Poly::constant(1);
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    auto [quot, rem] = Poly::divmod(p, cyclotomic_polynomial(d));
    if (!rem.is_zero()) throw InvariantViolation("cyclotomic division left a remainder");
    p = std::move(quot);
  }
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(n, std::move(p)).first->second;
}

/// Element of Q(zeta_n), stored as a polynomial in q of degree < phi(n)
/// reduced modulo Phi_n.
class Cyclotomic {
 public:
  Cyclotomic(int order, Poly value) : order_(order), value_(reduce(order, std::move(value))) {}
  int order() const { return order_; }
  const Poly& value() const { return value_; }
  // Coefficient vector padded to length phi(n).
  std::vector<Rational> coefficients() const {
    std::vector<Rational> v(static_cast<std::size_t>(cyclotomic_polynomial(order_).degree()));
    for (std::size_t i = 0; i < value_.coefficients().size(); ++i) v[i] = value_.coefficients()[i];
    return v;
  }

  Cyclotomic inverse() const {
    if (value_.is_zero()) throw DivisionByZero();
    // Extended Euclid on (value, Phi_n); Phi_n is irreducible so the gcd is 1.
    Poly r0 = cyclotomic_polynomial(order_), r1 = value_;
    Poly s0, s1 = Poly::constant(1);
    while (!r1.is_zero()) {
      auto [quot, rem] = Poly::divmod(r0, r1);
      Poly s2 = s0 - quot * s1;
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    if (r0.degree() != 0) throw InvariantViolation("cyclotomic inverse: non-unit gcd");
    return Cyclotomic(order_, s0.scaled(1 / r0.leading()));
  }

  static Poly reduce(int order, Poly value) {
    const Poly& phi = cyclotomic_polynomial(order);
    if (value.degree() < phi.degree()) return value;
    return Poly::divmod(value, phi).second;
  }

 private:
  int order_;
  Poly value_;
};

/// Quotient of coprime polynomials with monic denominator.
class RationalFunction {
 public:
  RationalFunction() : num_(), den_(Poly::constant(1)) {}
  explicit RationalFunction(Poly num) : num_(std::move(num)), den_(Poly::constant(1)) {}
  RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }
  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }

 private:
  void normalize() {
    if (den_.is_zero()) throw DivisionByZero();
    if (num_.is_zero()) {
      den_ = Poly::constant(1);
      return;
    }
    Poly g = Poly::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = Poly::divmod(num_, g).first;
      den_ = Poly::divmod(den_, g).first;
    }
    Rational lead = den_.leading();
    if (lead != 1) {
      num_ = num_.scaled(1 / lead);
      den_ = den_.scaled(1 / lead);
    }
  }
  Poly num_, den_;
};

enum class FieldKind { rational, cyclotomic, rational_function };

class Scalar;

/// Descriptor of one of the supported field models. Two scalars may only be
/// combined when their fields compare equal.
class Field {
 public:
  Field() = default;
  static Field rational() { return Field(FieldKind::rational, 0); }
  static Field cyclotomic(int order) {
    if (order < 1) throw ValidationError("cyclotomic order must be positive");
    return Field(FieldKind::cyclotomic, order);
  }
  static Field rational_function() { return Field(FieldKind::rational_function, 0); }

  FieldKind kind() const { return kind_; }
  int order() const { return order_; }
  friend bool operator==(const Field&, const Field&) = default;

  std::string name() const {
    switch (kind_) {
      case FieldKind::rational: return "rational";
      case FieldKind::cyclotomic: return "cyclotomic:" + std::to_string(order_);
      case FieldKind::rational_function: return "rational_function";
    }
    return "?";
  }

  inline Scalar zero() const;
  inline Scalar one() const;
  inline Scalar integer(long value) const;
  inline Scalar from_rational(const Rational& value) const;
  // Distinguished element q: the primitive root for cyclotomic fields, the
  // indeterminate for rational functions. The rationals have none.
  inline Scalar generator() const;
  bool has_generator() const { return kind_ != FieldKind::rational; }
  inline Scalar parse(std::string_view text) const;

  // Order m of a primitive m-th root of unity this field is known to contain
  // (used for character enumeration): divisors of n (cyclotomic n), or +-1.
  bool contains_roots_of_unity(std::int64_t m) const {
    if (m == 1 || m == 2) return true;
    return kind_ == FieldKind::cyclotomic && order_ % m == 0;
  }
  inline Scalar primitive_root_of_unity(std::int64_t m) const;

 private:
  Field(FieldKind kind, int order) : kind_(kind), order_(order) {}
  FieldKind kind_ = FieldKind::rational;
  int order_ = 0;
};

/// An exact scalar in one of the three field models. Immutable value type.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  explicit Scalar(Rational r) : value_(std::move(r)) {}
  explicit Scalar(Cyclotomic c) : value_(std::move(c)) {}
  explicit Scalar(RationalFunction f) : value_(std::move(f)) {}

  Field field() const {
    switch (value_.index()) {
      case 0: return Field::rational();
      case 1: return Field::cyclotomic(std::get<1>(value_).order());
      default: return Field::rational_function();
    }
  }

  bool is_zero() const {
    switch (value_.index()) {
      case 0: return std::get<0>(value_) == 0;
      case 1: return std::get<1>(value_).value().is_zero();
      default: return std::get<2>(value_).numerator().is_zero();
    }
  }
  bool is_one() const {
    switch (value_.index()) {
      case 0: return std::get<0>(value_) == 1;
      case 1: return std::get<1>(value_).value().is_one();
      default: {
        const auto& f = std::get<2>(value_);
        return f.numerator().is_one() && f.denominator().is_one();
      }
    }
  }

  const Rational* as_rational() const { return std::get_if<Rational>(&value_); }
  const Cyclotomic* as_cyclotomic() const { return std::get_if<Cyclotomic>(&value_); }
  const RationalFunction* as_rational_function() const { return std::get_if<RationalFunction>(&value_); }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.value_.index() != b.value_.index()) return false;
    switch (a.value_.index()) {
      case 0: return std::get<0>(a.value_) == std::get<0>(b.value_);
      case 1: {
        const auto& x = std::get<1>(a.value_);
        const auto& y = std::get<1>(b.value_);
        return x.order() == y.order() && x.value() == y.value();
      }
      default: {
        const auto& x = std::get<2>(a.value_);
        const auto& y = std::get<2>(b.value_);
        return x.numerator() == y.numerator() && x.denominator() == y.denominator();
      }
    }
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    switch (a.value_.index()) {
      case 0: return Scalar(Rational(std::get<0>(a.value_) + std::get<0>(b.value_)));
      case 1: {
        const auto& x = std::get<1>(a.value_);
        return Scalar(Cyclotomic(x.order(), x.value() + std::get<1>(b.value_).value()));
      }
      default: {
        const auto& x = std::get<2>(a.value_);
        const auto& y = std::get<2>(b.value_);
        if (x.denominator() == y.denominator())
          return Scalar(RationalFunction(x.numerator() + y.numerator(), x.denominator()));
        return Scalar(RationalFunction(x.numerator() * y.denominator() + y.numerator() * x.denominator(),
                                       x.denominator() * y.denominator()));
      }
    }
  }
  friend Scalar operator-(const Scalar& a) {
    switch (a.value_.index()) {
      case 0: return Scalar(Rational(-std::get<0>(a.value_)));
      case 1: {
        const auto& x = std::get<1>(a.value_);
        return Scalar(Cyclotomic(x.order(), -x.value()));
      }
      default: {
        const auto& x = std::get<2>(a.value_);
        return Scalar(RationalFunction(-x.numerator(), x.denominator()));
      }
    }
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    switch (a.value_.index()) {
      case 0: return Scalar(Rational(std::get<0>(a.value_) * std::get<0>(b.value_)));
      case 1: {
        const auto& x = std::get<1>(a.value_);
        return Scalar(Cyclotomic(x.order(), x.value() * std::get<1>(b.value_).value()));
      }
      default: {
        const auto& x = std::get<2>(a.value_);
        const auto& y = std::get<2>(b.value_);
        return Scalar(
            RationalFunction(x.numerator() * y.numerator(), x.denominator() * y.denominator()));
      }
    }
  }
  Scalar inverse() const {
    if (is_zero()) throw DivisionByZero();
    switch (value_.index()) {
      case 0: return Scalar(Rational(1 / std::get<0>(value_)));
      case 1: return Scalar(std::get<1>(value_).inverse());
      default: {
        const auto& x = std::get<2>(value_);
        return Scalar(RationalFunction(x.denominator(), x.numerator()));
      }
    }
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    return a * b.inverse();
  }

  // Integer embedding: the only implicit coercion between models.
  friend Scalar operator*(const Scalar& a, long k) { return a * a.field().integer(k); }
  friend Scalar operator*(long k, const Scalar& a) { return a * k; }

  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  std::string to_string() const {
    switch (value_.index()) {
      case 0: return std::get<0>(value_).get_str();
      case 1: return std::get<1>(value_).value().to_string();
      default: {
        const auto& x = std::get<2>(value_);
        if (x.denominator().is_one()) return x.numerator().to_string();
        return "(" + x.numerator().to_string() + ")/(" + x.denominator().to_string() + ")";
      }
    }
  }

  // True when to_string() is a single signed monomial, so it can prefix a
  // product without parentheses.
  bool prints_as_monomial() const {
    std::string s = to_string();
    for (std::size_t i = 1; i < s.size(); ++i)
      if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '^') return false;
    return s.find(")/(") == std::string::npos;
  }

 private:
  static void check_same(const Scalar& a, const Scalar& b) {
    if (a.value_.index() != b.value_.index() ||
        (a.value_.index() == 1 && std::get<1>(a.value_).order() != std::get<1>(b.value_).order()))
      throw FieldMismatch("cannot combine scalars from " + a.field().name() + " and " + b.field().name());
  }

  std::variant<Rational, Cyclotomic, RationalFunction> value_;
};

inline Scalar pow(const Scalar& s, long e) {
  if (e < 0) return pow(s.inverse(), -e);
  Scalar result = s.field().one(), base = s;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

inline Scalar Field::from_rational(const Rational& value) const {
  switch (kind_) {
    case FieldKind::rational: return Scalar(value);
    case FieldKind::cyclotomic: return Scalar(Cyclotomic(order_, Poly::constant(value)));
    case FieldKind::rational_function: return Scalar(RationalFunction(Poly::constant(value)));
  }
  return Scalar(value);
}
inline Scalar Field::zero() const { return from_rational(0); }
inline Scalar Field::one() const { return from_rational(1); }
inline Scalar Field::integer(long value) const { return from_rational(Rational(value)); }
inline Scalar Field::generator() const {
  switch (kind_) {
    case FieldKind::cyclotomic: return Scalar(Cyclotomic(order_, Poly::indeterminate()));
    case FieldKind::rational_function: return Scalar(RationalFunction(Poly::indeterminate()));
    default: throw UnsupportedOperation("the rational field has no distinguished generator q");
  }
}
inline Scalar Field::primitive_root_of_unity(std::int64_t m) const {
  if (m == 1) return one();
  if (kind_ == FieldKind::cyclotomic && order_ % m == 0) return pow(generator(), order_ / m);
  if (m == 2) return integer(-1);
  throw UnsupportedOperation("field " + name() + " has no primitive " + std::to_string(m) +
                             "-th root of unity");
}

namespace detail {

// Recursive-descent parser for scalar expressions over a field: integers,
// rationals, q, + - * / ^, parentheses, and implicit multiplication ("2q^2").
class ScalarParser {
 public:
  ScalarParser(const Field& field, std::string_view text) : field_(field), text_(text) {}

  Scalar parse() {
    Scalar v = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected character");
    return v;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  [[noreturn]] void fail(const std::string& why) {
    throw ParseError("scalar '" + std::string(text_) + "': " + why + " at offset " + std::to_string(pos_));
  }

  Scalar expr() {
    Scalar v = term();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      Scalar rhs = term();
      v = c == '+' ? v + rhs : v - rhs;
    }
    return v;
  }
  Scalar term() {
    Scalar v = unary();
    for (;;) {
      char c = peek();
      if (c == '*' || c == '/') {
        ++pos_;
        Scalar rhs = unary();
        v = c == '*' ? v * rhs : v / rhs;
      } else if (c == 'q' || c == '(') {
        v = v * power();
      } else {
        return v;
      }
    }
  }
  Scalar unary() {
    char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }
  Scalar power() {
    Scalar base = primary();
    if (peek() == '^') {
      ++pos_;
      bool negative = false;
      if (peek() == '-') {
        negative = true;
        ++pos_;
      }
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      long e = std::stol(std::string(text_.substr(start, pos_ - start)));
      return pow(base, negative ? -e : e);
    }
    return base;
  }
  Scalar primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Scalar v = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return v;
    }
    if (c == 'q') {
      ++pos_;
      if (!field_.has_generator()) fail("q is not defined over the rationals");
      return field_.generator();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return field_.from_rational(Rational(std::string(text_.substr(start, pos_ - start))));
    }
    fail("expected number, q or '('");
  }

  Field field_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Scalar Field::parse(std::string_view text) const { return detail::ScalarParser(*this, text).parse(); }

/// Parses a field declaration: "rational", "cyclotomic:N", "zetaN",
/// "rational_function" or "generic".
inline Field parse_field(std::string_view text) {
  std::string s(text);
  if (s == "rational" || s == "Q") return Field::rational();
  if (s == "rational_function" || s == "generic" || s == "ratfunc") return Field::rational_function();
  std::string digits;
  if (s.rfind("cyclotomic:", 0) == 0) digits = s.substr(11);
  else if (s.rfind("zeta", 0) == 0) digits = s.substr(4);
  else throw ParseError("unknown field '" + s + "'");
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](unsigned char ch) { return std::isdigit(ch); }))
    throw ParseError("bad cyclotomic order in '" + s + "'");
  return Field::cyclotomic(std::stoi(digits));
}

}  // namespace hopfquiver
