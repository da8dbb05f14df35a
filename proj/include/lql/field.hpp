#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <string>

#include "lql/errors.hpp"

namespace lql {

using BigInt = boost::multiprecision::cpp_int;

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t p = 3; p * p <= n; p += 2)
    if (n % p == 0) return false;
  return true;
}

// A prime finite field F_d, identified by its modulus.
struct FieldSpec {
  std::int64_t modulus;

  explicit FieldSpec(std::int64_t d) : modulus(d) {
    if (!is_prime(d))
      throw ValidationError("field order " + std::to_string(d) + " is not prime");
  }

  bool operator==(const FieldSpec& o) const { return modulus == o.modulus; }
  bool operator!=(const FieldSpec& o) const { return modulus != o.modulus; }
};

// An element of F_d.  Values are kept reduced into [0, d-1]; operations on
// elements of different fields throw FieldMismatch.
class Fp {
public:
  using Context = FieldSpec;

  Fp(std::int64_t value, FieldSpec field) : field_(field) {
    std::int64_t d = field.modulus;
    value_ = value % d;
    if (value_ < 0) value_ += d;
  }

  static Fp zero(const Context& ctx) { return Fp(0, ctx); }
  static Fp one(const Context& ctx) { return Fp(1, ctx); }

  std::int64_t value() const { return value_; }
  const FieldSpec& field() const { return field_; }
  const Context& context() const { return field_; }

  bool is_zero() const { return value_ == 0; }
  bool is_one() const { return value_ == 1; }

  Fp operator+(const Fp& o) const {
    check(o);
    return Fp(value_ + o.value_, field_);
  }
  Fp operator-(const Fp& o) const {
    check(o);
    return Fp(value_ - o.value_, field_);
  }
  Fp operator-() const { return Fp(-value_, field_); }
  Fp operator*(const Fp& o) const {
    check(o);
    return Fp(value_ * o.value_, field_);
  }

  // Multiplicative inverse via the extended Euclidean algorithm.
  Fp inverse() const {
    if (value_ == 0) throw InverseOfZero("inverse of 0 requested in F_" +
                                         std::to_string(field_.modulus));
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = field_.modulus, new_r = value_;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::swap(t -= q * new_t, new_t);
      std::swap(r -= q * new_r, new_r);
    }
    return Fp(t, field_);
  }

  Fp operator/(const Fp& o) const {
    check(o);
    return *this * o.inverse();
  }

  Fp pow(std::int64_t e) const {
    if (e < 0) return inverse().pow(-e);
    Fp acc = one(field_);
    Fp base = *this;
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  bool operator==(const Fp& o) const { return field_ == o.field_ && value_ == o.value_; }
  bool operator!=(const Fp& o) const { return !(*this == o); }
  bool operator<(const Fp& o) const { return value_ < o.value_; }

  std::string to_string() const { return std::to_string(value_); }

private:
  void check(const Fp& o) const {
    if (field_ != o.field_)
      throw FieldMismatch("operands from F_" + std::to_string(field_.modulus) +
                          " and F_" + std::to_string(o.field_.modulus));
  }

  std::int64_t value_;
  FieldSpec field_;
};

// Exact rational number, always in lowest terms with positive denominator.
class Rational {
public:
  struct Context {
    bool operator==(const Context&) const { return true; }
    bool operator!=(const Context&) const { return false; }
  };

  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(BigInt n) : num_(std::move(n)), den_(1) {}
  Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  static Rational zero(const Context&) { return Rational(0); }
  static Rational one(const Context&) { return Rational(1); }

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }
  Context context() const { return {}; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  bool is_integer() const { return den_ == 1; }
  bool is_negative() const { return num_ < 0; }

  Rational operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  Rational operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  Rational operator-() const { return Rational(-num_, den_); }
  Rational operator*(const Rational& o) const {
    return Rational(num_ * o.num_, den_ * o.den_);
  }
  Rational operator/(const Rational& o) const {
    if (o.is_zero()) throw InverseOfZero("division by zero rational");
    return Rational(num_ * o.den_, den_ * o.num_);
  }
  Rational inverse() const {
    if (is_zero()) throw InverseOfZero("inverse of zero rational");
    return Rational(den_, num_);
  }

  Rational pow(std::int64_t e) const {
    if (e < 0) return inverse().pow(-e);
    Rational acc(1), base = *this;
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const { return num_ * o.den_ < o.num_ * den_; }
  bool operator<=(const Rational& o) const { return num_ * o.den_ <= o.num_ * den_; }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }

  std::string to_string() const {
    std::string s = num_.str();
    if (den_ != 1) s += "/" + den_.str();
    return s;
  }

private:
  void normalize() {
    if (den_ == 0) throw InverseOfZero("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  BigInt num_;
  BigInt den_;  // > 0
};

// If `r` is the square of a rational, returns true and stores the
// nonnegative square root in `out`.
inline bool rational_sqrt(const Rational& r, Rational& out) {
  if (r.is_negative()) return false;
  BigInt sn = boost::multiprecision::sqrt(r.numerator());
  BigInt sd = boost::multiprecision::sqrt(r.denominator());
  if (sn * sn != r.numerator() || sd * sd != r.denominator()) return false;
  out = Rational(sn, sd);
  return true;
}

}  // namespace lql
