#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "grasslab/field.hpp"

using namespace grasslab;

TEST_CASE("field construction") {
  Field q = Field::rationals();
  CHECK(q.is_rationals());
  CHECK(!q.is_finite());
  CHECK(q.characteristic() == 0);
  CHECK(q.str() == "Q");

  Field f7 = Field::gf(7);
  CHECK(f7.is_finite());
  CHECK(f7.characteristic() == 7);
  CHECK(f7.str() == "GF(7)");

  CHECK(q == Field::rationals());
  CHECK(f7 != Field::gf(3));
}

TEST_CASE("characteristic two and bad moduli are rejected") {
  CHECK_THROWS_AS(Field::gf(2), Error);
  try {
    Field::gf(2);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CharacteristicTwo);
  }

  for (std::int64_t bad : {0LL, 1LL, 4LL, 9LL, 15LL, 221LL, -3LL}) {
    CAPTURE(bad);
    try {
      Field::gf(bad);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidField);
    }
  }

  // 2^31 is out of range even if it were prime; 2147483647 is prime and in.
  CHECK_THROWS_AS(Field::gf(std::int64_t(1) << 31), Error);
  CHECK(Field::gf(2147483647).characteristic() == 2147483647);
}

TEST_CASE("rational arithmetic stays reduced") {
  Field q = Field::rationals();
  Scalar half = Scalar::ratio(q, 1, 2);
  Scalar third = Scalar::ratio(q, 1, 3);
  Scalar sum = half + third;
  CHECK(sum.str() == "5/6");
  CHECK((half * third).str() == "1/6");
  CHECK((half - half).is_zero());
  CHECK((half / third).str() == "3/2");
  CHECK((-half).str() == "-1/2");
  CHECK(Scalar::ratio(q, 2, 4) == half);
  CHECK(Scalar::ratio(q, -1, -2) == half);   // positive denominator
  CHECK(Scalar::ratio(q, 1, -2) == -half);
  CHECK(Scalar::of_int(q, 6).str() == "6");
  CHECK(half.inverse() == Scalar::of_int(q, 2));
  CHECK(half.compare(third) > 0);
  CHECK(third.compare(half) < 0);
  CHECK(half.compare(half) == 0);
}

TEST_CASE("GF(7) arithmetic") {
  Field f = Field::gf(7);
  Scalar a = Scalar::of_int(f, 5);
  Scalar b = Scalar::of_int(f, 4);
  CHECK((a + b).residue() == 2);
  CHECK((a * b).residue() == 6);
  CHECK((a - b).residue() == 1);
  CHECK((b - a).residue() == 6);  // never negative
  CHECK((-a).residue() == 2);
  CHECK(a.inverse().residue() == 3);  // 5*3 = 15 = 1
  CHECK((a / b).residue() == 3);      // 5 * 4^{-1} = 5*2 = 10 = 3
  CHECK(Scalar::of_int(f, 7).is_zero());
  CHECK(Scalar::of_int(f, -1).residue() == 6);
  CHECK(Scalar::one(f).is_one());
  CHECK(a.str() == "5");
}

TEST_CASE("division by zero") {
  Field q = Field::rationals();
  Scalar one = Scalar::one(q);
  CHECK_THROWS_AS(one / Scalar::zero(q), Error);
  CHECK_THROWS_AS(Scalar::zero(q).inverse(), Error);
  try {
    Scalar::ratio(q, 1, 0);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivisionByZero);
  }
  // Denominator divisible by p vanishes in GF(p).
  CHECK_THROWS_AS(Scalar::ratio(Field::gf(3), 1, 6), Error);
}

TEST_CASE("from_rational embeds into GF(p)") {
  Field f3 = Field::gf(3);
  CHECK(Scalar::from_rational(f3, Rational(1, 2)).residue() == 2);  // 2*2=4=1
  CHECK(Scalar::from_rational(f3, Rational(7, 1)).residue() == 1);
  CHECK(Scalar::from_rational(f3, Rational(-1, 4)).residue() == 2);
  CHECK_THROWS_AS(Scalar::from_rational(f3, Rational(1, 3)), Error);

  Field q = Field::rationals();
  CHECK(Scalar::from_rational(q, Rational(22, 7)).str() == "22/7");
}

TEST_CASE("mixed-field operations are rejected") {
  Scalar a = Scalar::one(Field::rationals());
  Scalar b = Scalar::one(Field::gf(5));
  try {
    (void)(a + b);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::FieldMismatch);
  }
  CHECK_THROWS_AS((void)(a * b), Error);
  CHECK_THROWS_AS((void)(a == b), Error);
}

TEST_CASE("GF(p) matches rational arithmetic mod p") {
  // Random p-free rational expressions reduced mod p agree with the GF(p)
  // computation done natively.
  Field q = Field::rationals();
  Field f5 = Field::gf(5);
  std::uint64_t state = 1;
  auto next_int = [&]() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return std::int64_t(state >> 40) % 20 - 10;
  };
  for (int trial = 0; trial < 500; ++trial) {
    std::int64_t x = next_int(), y = next_int(), z = next_int();
    Scalar qa = Scalar::of_int(q, x), qb = Scalar::of_int(q, y),
           qc = Scalar::of_int(q, z);
    Scalar fa = Scalar::of_int(f5, x), fb = Scalar::of_int(f5, y),
           fc = Scalar::of_int(f5, z);
    Scalar qres = qa * qb + qc - qa;
    Scalar fres = fa * fb + fc - fa;
    CHECK(Scalar::from_rational(f5, qres.value()) == fres);
  }
}
