#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "grasslab/error.hpp"

namespace grasslab {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Coefficient field of the algebra: either the rationals or a prime field
/// GF(p) with p an odd prime. GF(2) is rejected at construction because the
/// algebra's commutator identities divide by 2.
class Field {
 public:
  /// The rationals.
  static Field rationals() { return Field(0); }

  /// GF(p) for an odd prime p (3 <= p < 2^31).
  static Field gf(std::int64_t p);

  bool is_rationals() const { return p_ == 0; }
  bool is_finite() const { return p_ != 0; }

  /// 0 for the rationals, otherwise p.
  std::int64_t characteristic() const { return p_; }

  /// "Q" or "GF(p)".
  std::string str() const;

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }
  friend bool operator!=(const Field& a, const Field& b) { return a.p_ != b.p_; }

 private:
  explicit Field(std::int64_t p) : p_(p) {}
  std::int64_t p_;
};

/// An exact field element. Rationals are kept reduced with positive
/// denominator (cpp_rational canonicalizes); GF(p) values are residues in
/// [0, p). Binary operations require both operands from the same field.
class Scalar {
 public:
  /// Rational zero. Prefer the factory functions below, which fix the field.
  Scalar() : field_(Field::rationals()), value_(0) {}

  static Scalar zero(const Field& f) { return Scalar(f, Rational(0)); }
  static Scalar one(const Field& f) { return of_int(f, 1); }
  static Scalar of_int(const Field& f, std::int64_t v);

  /// num/den in the given field. DivisionByZero if den vanishes there.
  static Scalar ratio(const Field& f, std::int64_t num, std::int64_t den);

  /// Embeds a rational: identity over Q; over GF(p) reduces num * den^{-1}
  /// and rejects denominators divisible by p.
  static Scalar from_rational(const Field& f, const Rational& r);

  const Field& field() const { return field_; }
  bool is_zero() const { return value_.is_zero(); }
  bool is_one() const { return value_ == 1; }

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;  // DivisionByZero on zero divisor
  Scalar inverse() const;                   // DivisionByZero on zero

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// Total order used for deterministic output: rational order over Q,
  /// residue order over GF(p). Returns <0, 0, >0.
  int compare(const Scalar& o) const;

  /// Canonical text: reduced "a" or "a/b" over Q, the residue over GF(p).
  std::string str() const;

  /// Underlying rational (over Q) or residue as a rational integer (GF(p)).
  const Rational& value() const { return value_; }

  /// Residue in [0, p); only valid over a finite field.
  std::int64_t residue() const;

 private:
  Scalar(const Field& f, Rational v) : field_(f), value_(std::move(v)) {}
  static void require_same(const Field& a, const Field& b);

  Field field_;
  Rational value_;
};

}  // namespace grasslab
