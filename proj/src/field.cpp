#include "grasslab/field.hpp"

namespace grasslab {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CharacteristicTwo: return "CharacteristicTwo";
    case ErrorKind::InvalidField: return "InvalidField";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::WrongArity: return "WrongArity";
    case ErrorKind::ScalarPartPresent: return "ScalarPartPresent";
    case ErrorKind::RelationViolation: return "RelationViolation";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NonOddElement: return "NonOddElement";
    case ErrorKind::ZeroScalar: return "ZeroScalar";
    case ErrorKind::NotAutomorphism: return "NotAutomorphism";
    case ErrorKind::FactorizationFailed: return "FactorizationFailed";
    case ErrorKind::ClassificationAnomaly: return "ClassificationAnomaly";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::InvalidForm: return "InvalidForm";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

// Residue of r mod p for a cpp_int, result in [0, p).
std::int64_t mod_reduce(const BigInt& v, std::int64_t p) {
  BigInt m = v % p;
  if (m < 0) m += p;
  return m.convert_to<std::int64_t>();
}

// x^{-1} mod p via the extended Euclidean algorithm. x in [1, p).
std::int64_t mod_inverse(std::int64_t x, std::int64_t p) {
  std::int64_t r0 = p, r1 = x, s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    std::int64_t s2 = s0 - q * s1;
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
  }
  return s0 < 0 ? s0 + p : s0;
}

}  // namespace

Field Field::gf(std::int64_t p) {
  if (p == 2) {
    throw Error(ErrorKind::CharacteristicTwo,
                "GF(2) is unsupported: the algebra requires division by 2");
  }
  if (p < 2 || p >= (std::int64_t(1) << 31)) {
    throw Error(ErrorKind::InvalidField,
                "field modulus must be an odd prime below 2^31, got " +
                    std::to_string(p));
  }
  if (!is_prime(p)) {
    throw Error(ErrorKind::InvalidField,
                std::to_string(p) + " is not prime");
  }
  return Field(p);
}

std::string Field::str() const {
  return is_rationals() ? "Q" : "GF(" + std::to_string(p_) + ")";
}

void Scalar::require_same(const Field& a, const Field& b) {
  if (a != b) {
    throw Error(ErrorKind::FieldMismatch,
                "operands over " + a.str() + " and " + b.str());
  }
}

Scalar Scalar::of_int(const Field& f, std::int64_t v) {
  if (f.is_rationals()) return Scalar(f, Rational(v));
  return Scalar(f, Rational(mod_reduce(BigInt(v), f.characteristic())));
}

Scalar Scalar::ratio(const Field& f, std::int64_t num, std::int64_t den) {
  return of_int(f, num) / of_int(f, den);
}

Scalar Scalar::from_rational(const Field& f, const Rational& r) {
  if (f.is_rationals()) return Scalar(f, r);
  std::int64_t p = f.characteristic();
  std::int64_t den = mod_reduce(denominator(r), p);
  if (den == 0) {
    throw Error(ErrorKind::DivisionByZero,
                "denominator of " + r.str() + " vanishes in " + f.str());
  }
  std::int64_t num = mod_reduce(numerator(r), p);
  return Scalar(f, Rational(num * mod_inverse(den, p) % p));
}

Scalar Scalar::operator-() const {
  if (field_.is_rationals()) return Scalar(field_, -value_);
  if (is_zero()) return *this;
  return Scalar(field_, Rational(field_.characteristic() - numerator(value_)));
}

Scalar Scalar::operator+(const Scalar& o) const {
  require_same(field_, o.field_);
  if (field_.is_rationals()) return Scalar(field_, value_ + o.value_);
  BigInt sum = numerator(value_) + numerator(o.value_);
  return Scalar(field_, Rational(mod_reduce(sum, field_.characteristic())));
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  require_same(field_, o.field_);
  if (field_.is_rationals()) return Scalar(field_, value_ * o.value_);
  BigInt prod = numerator(value_) * numerator(o.value_);
  return Scalar(field_, Rational(mod_reduce(prod, field_.characteristic())));
}

Scalar Scalar::operator/(const Scalar& o) const {
  return *this * o.inverse();
}

Scalar Scalar::inverse() const {
  if (is_zero()) {
    throw Error(ErrorKind::DivisionByZero, "inverse of zero in " + field_.str());
  }
  if (field_.is_rationals()) return Scalar(field_, 1 / value_);
  std::int64_t r = numerator(value_).convert_to<std::int64_t>();
  return Scalar(field_, Rational(mod_inverse(r, field_.characteristic())));
}

bool Scalar::operator==(const Scalar& o) const {
  require_same(field_, o.field_);
  return value_ == o.value_;
}

int Scalar::compare(const Scalar& o) const {
  require_same(field_, o.field_);
  if (value_ < o.value_) return -1;
  if (value_ > o.value_) return 1;
  return 0;
}

std::string Scalar::str() const { return value_.str(); }

std::int64_t Scalar::residue() const {
  if (!field_.is_finite()) {
    throw Error(ErrorKind::InvalidArgument, "residue() over the rationals");
  }
  return numerator(value_).convert_to<std::int64_t>();
}

}  // namespace grasslab
