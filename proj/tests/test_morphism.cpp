#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <random>
#include <vector>

#include "grasslab/morphism.hpp"
#include "grasslab/random.hpp"

using namespace grasslab;

namespace {

const Field Q = Field::rationals();

Multivector e(int n, int i) { return Multivector::generator(n, Q, i); }

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& err) {
    return err.kind();
  }
  return ErrorKind::InvalidArgument;  // sentinel misuse; tests assert a throw
}

}  // namespace

TEST_CASE("make validates images") {
  CHECK(AlgebraMap::make({e(3, 1), e(3, 2), e(3, 3)}) ==
        AlgebraMap::identity(3, Q));
  CHECK(AlgebraMap::make({e(3, 2), e(3, 1), e(3, 3)}) ==
        transposition(3, Q, 1, 2));

  CHECK(kind_of([] {
          AlgebraMap::make({e(2, 1) + Multivector::unit(2, Q), e(2, 2)});
        }) == ErrorKind::ScalarPartPresent);
  CHECK(kind_of([] { AlgebraMap::make({e(2, 1)}); }) == ErrorKind::WrongArity);
  CHECK(kind_of([] { AlgebraMap::make({}); }) == ErrorKind::WrongArity);
  // e1 + e{2,3} squares to 2 e{1,2,3}.
  CHECK(kind_of([] {
          AlgebraMap::make(
              {e(3, 1) + Multivector::blade(3, Q, 0b110), e(3, 2), e(3, 3)});
        }) == ErrorKind::RelationViolation);
  // e{1,2} and e3 commute instead of anticommuting.
  CHECK(kind_of([] {
          AlgebraMap::make({Multivector::blade(3, Q, 0b011), e(3, 3), e(3, 2)});
        }) == ErrorKind::RelationViolation);
  CHECK(!AlgebraMap::try_make({e(2, 1)}).has_value());
  CHECK(AlgebraMap::try_make({e(2, 1), e(2, 2)}).has_value());
}

TEST_CASE("apply") {
  AlgebraMap id = AlgebraMap::identity(3, Q);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    Multivector x = random_multivector(rng, 3, Q);
    CHECK(id.apply(x) == x);
  }
  CHECK(id.apply(Multivector::unit(3, Q)) == Multivector::unit(3, Q));

  AlgebraMap flip = sign_flip(2, Q, {1});
  CHECK(flip.apply(e(2, 1)) == -e(2, 1));
  CHECK(flip.apply(e(2, 2)) == e(2, 2));
  CHECK(flip.apply(Multivector::blade(2, Q, 0b11)) ==
        -Multivector::blade(2, Q, 0b11));

  AlgebraMap swap12 = transposition(2, Q, 1, 2);
  CHECK(swap12.apply(Multivector::blade(2, Q, 0b11)) ==
        -Multivector::blade(2, Q, 0b11));
}

TEST_CASE("named maps and index checks") {
  CHECK(transposition(3, Q, 1, 2).image(1) == e(3, 2));
  CHECK(cubic_shear(4, Q, 2).image(1) ==
        e(4, 1) + Multivector::blade(4, Q, 0b1101));
  CHECK(cubic_shear(4, Q, 2) == shear(4, Q, 3, 4));

  CHECK(kind_of([] { transposition(3, Q, 0, 2); }) ==
        ErrorKind::IndexOutOfRange);
  CHECK(kind_of([] { transposition(3, Q, 2, 2); }) ==
        ErrorKind::InvalidArgument);
  CHECK(kind_of([] { sign_flip(3, Q, {4}); }) == ErrorKind::IndexOutOfRange);
  CHECK(kind_of([] { cubic_shear(3, Q, 2); }) == ErrorKind::IndexOutOfRange);
  CHECK(kind_of([] { cubic_shear(5, Q, 3); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { shear(3, Q, 1, 2); }) == ErrorKind::IndexOutOfRange);
}

TEST_CASE("is_automorphism and invert") {
  AlgebraMap sh = cubic_shear(4, Q, 2);
  CHECK(is_automorphism(sh));
  AlgebraMap inv = invert(sh);
  CHECK(inv.image(1) == e(4, 1) - Multivector::blade(4, Q, 0b1101));
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    Multivector x = random_multivector(rng, 4, Q);
    CHECK(inv.apply(sh.apply(x)) == x);
  }

  AlgebraMap degenerate =
      AlgebraMap::make({e(3, 1) + e(3, 2), e(3, 1) + e(3, 2), e(3, 3)});
  CHECK(!is_automorphism(degenerate));
  CHECK(kind_of([&] { invert(degenerate); }) == ErrorKind::NotInvertible);

  AlgebraMap phi = sign_flip(3, Q, {1, 3});
  CHECK(invert(phi) == phi);  // involution
}

TEST_CASE("compose") {
  AlgebraMap id = AlgebraMap::identity(3, Q);
  AlgebraMap t = transposition(3, Q, 1, 3);
  CHECK(compose(id, t) == t);
  CHECK(compose(t, id) == t);
  CHECK(compose(t, t) == id);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    AlgebraMap f = random_automorphism(3, Q, 100 + trial);
    AlgebraMap g = random_automorphism(3, Q, 200 + trial);
    Multivector x = random_multivector(rng, 3, Q);
    CHECK(compose(f, g).apply(x) == f.apply(g.apply(x)));
  }
}

TEST_CASE("inner automorphisms") {
  CHECK(inner_automorphism(Multivector(3, Q)) == AlgebraMap::identity(3, Q));
  AlgebraMap inner1 = inner_automorphism(e(2, 1));
  CHECK(inner1.apply(e(2, 2)) ==
        e(2, 2) + Multivector::term(2, Q, 0b11, Scalar::of_int(Q, 2)));
  CHECK(inner1.apply(e(2, 1)) == e(2, 1));
  CHECK(is_automorphism(inner1));

  CHECK(kind_of([] {
          inner_automorphism(Multivector::blade(3, Q, 0b011));
        }) == ErrorKind::NonOddElement);
  CHECK(kind_of([] {
          inner_automorphism(Multivector::unit(3, Q) + e(3, 1));
        }) == ErrorKind::NonOddElement);

  // N1 is abelian: inner(a) . inner(b) = inner(b) . inner(a) = inner(a+b).
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + int(random_below(rng, 4));
    Multivector a = random_odd(rng, n, Q);
    Multivector b = random_odd(rng, n, Q);
    AlgebraMap ab = compose(inner_automorphism(a), inner_automorphism(b));
    CHECK(ab == compose(inner_automorphism(b), inner_automorphism(a)));
    CHECK(ab == inner_automorphism(a + b));
  }
}

TEST_CASE("exp_inner") {
  Multivector a = e(3, 1) + Multivector::blade(3, Q, 0b111);
  CHECK(exp_inner(Scalar::one(Q), a) == inner_automorphism(a));
  CHECK(exp_inner(Scalar::of_int(Q, 5), Multivector(3, Q)) ==
        AlgebraMap::identity(3, Q));
  CHECK(kind_of([&] { exp_inner(Scalar::zero(Q), a); }) ==
        ErrorKind::ZeroScalar);
  CHECK(kind_of([] {
          exp_inner(Scalar::one(Q), Multivector::blade(3, Q, 0b011));
        }) == ErrorKind::NonOddElement);

  // The derivation [a,-] squares to zero, so the series truncates.
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + int(random_below(rng, 5));
    Multivector odd = random_odd(rng, n, Q);
    Multivector x = random_multivector(rng, n, Q);
    CHECK(commutator(odd, commutator(odd, x)).is_zero());
  }

  Field f3 = Field::gf(3);
  Multivector g = Multivector::generator(2, f3, 1);
  AlgebraMap m = exp_inner(Scalar::of_int(f3, 2), g);
  CHECK(m.apply(Multivector::generator(2, f3, 2)) ==
        Multivector::generator(2, f3, 2) +
            Multivector::term(2, f3, 0b11, Scalar::one(f3)));  // 2*2 = 4 = 1
}

TEST_CASE("nested commutators vanish") {
  // Exhaustive at n <= 4 over odd basis monomials.
  for (int n = 1; n <= 4; ++n) {
    std::uint32_t total = std::uint32_t(1) << n;
    for (std::uint32_t am = 0; am < total; ++am) {
      if (!(std::popcount(am) & 1)) continue;
      for (std::uint32_t bm = 0; bm < total; ++bm) {
        if (!(std::popcount(bm) & 1)) continue;
        for (std::uint32_t xm = 0; xm < total; ++xm) {
          Multivector a = Multivector::blade(n, Q, am);
          Multivector b = Multivector::blade(n, Q, bm);
          Multivector x = Multivector::blade(n, Q, xm);
          CHECK(commutator(a, commutator(b, x)).is_zero());
        }
      }
    }
  }
  // Randomized at n <= 6.
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 1 + int(random_below(rng, 6));
    Multivector a = random_odd(rng, n, Q);
    Multivector b = random_odd(rng, n, Q);
    Multivector x = random_multivector(rng, n, Q);
    CHECK(commutator(a, commutator(b, x)).is_zero());
  }
}

TEST_CASE("multiplicativity and grading filtration") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + int(random_below(rng, 4));
    AlgebraMap m = random_automorphism(n, Q, 7000 + trial);
    Multivector x = random_multivector(rng, n, Q);
    Multivector y = random_multivector(rng, n, Q);
    CHECK(m.apply(wedge(x, y)) == wedge(m.apply(x), m.apply(y)));

    // Image of a grade-s monomial has no component below grade s.
    std::uint32_t total = std::uint32_t(1) << n;
    for (std::uint32_t mask = 0; mask < total; ++mask) {
      Multivector img = m.apply(Multivector::blade(n, Q, mask));
      for (int t = 0; t < std::popcount(mask); ++t) {
        CHECK(grade_project(img, t).is_zero());
      }
    }
  }
}

TEST_CASE("parity preservation predicate") {
  CHECK(is_parity_preserving(AlgebraMap::identity(3, Q)));
  CHECK(is_parity_preserving(transposition(3, Q, 1, 2)));
  CHECK(is_parity_preserving(sign_flip(3, Q, {2})));
  CHECK(is_parity_preserving(cubic_shear(4, Q, 2)));
  CHECK(!is_parity_preserving(inner_automorphism(e(2, 1))));
}

TEST_CASE("factorization into inner and parity-preserving parts") {
  AlgebraMap phi = transposition(3, Q, 1, 2);
  Factorization f0 = factor_n1_f0(phi);
  CHECK(f0.inner_part.is_zero());
  CHECK(f0.parity_map == phi);

  AlgebraMap mixed = compose(inner_automorphism(e(3, 1)), phi);
  Factorization f1 = factor_n1_f0(mixed);
  CHECK(f1.inner_part == e(3, 1));
  CHECK(f1.parity_map == phi);
  CHECK(compose(inner_automorphism(f1.inner_part), f1.parity_map) == mixed);

  // The top monomial is central for odd n, so the inner part is recovered
  // with that coefficient normalized to zero.
  AlgebraMap inner_amb =
      inner_automorphism(e(3, 1) + Multivector::blade(3, Q, 0b111));
  Factorization f2 = factor_n1_f0(inner_amb);
  CHECK(f2.inner_part == e(3, 1));
  CHECK(f2.parity_map == AlgebraMap::identity(3, Q));

  AlgebraMap degenerate =
      AlgebraMap::make({e(3, 1) + e(3, 2), e(3, 1) + e(3, 2), e(3, 3)});
  CHECK(kind_of([&] { factor_n1_f0(degenerate); }) ==
        ErrorKind::NotAutomorphism);
}

TEST_CASE("factorization round-trip on random automorphisms") {
  Field f5 = Field::gf(5);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + trial % 4;
    const Field& f = (trial % 2 == 0) ? Q : f5;
    AlgebraMap m = random_automorphism(n, f, 9000 + trial);
    Factorization fact = factor_n1_f0(m);
    CHECK(parity_part(fact.inner_part, Parity::Even).is_zero());
    CHECK(is_parity_preserving(fact.parity_map));
    CHECK(compose(inner_automorphism(fact.inner_part), fact.parity_map) == m);
  }
}

TEST_CASE("random sampling profiles") {
  AlgebraMap a = random_automorphism(4, Q, 42);
  AlgebraMap b = random_automorphism(4, Q, 42);
  CHECK(a == b);  // determinism
  CHECK(is_automorphism(a));

  AutomorphismSampler linear(4, Q, 1, RandomProfile::linear_only());
  for (int t = 0; t < 10; ++t) {
    AlgebraMap m = linear.next();
    CHECK(is_automorphism(m));
    for (const Multivector& g : m.images()) {
      CHECK(g == grade_project(g, 1));
    }
  }

  AutomorphismSampler inner(4, Q, 2, RandomProfile::inner_only());
  for (int t = 0; t < 10; ++t) {
    AlgebraMap m = inner.next();
    CHECK(is_automorphism(m));
    // Inner maps fix the generator's own commutator direction: e_i image
    // differs from e_i by [a, e_i], an even element.
    for (int i = 1; i <= 4; ++i) {
      Multivector diff = m.image(i) - Multivector::generator(4, Q, i);
      CHECK(parity_part(diff, Parity::Odd).is_zero());
    }
  }

  Field f7 = Field::gf(7);
  AlgebraMap c = random_automorphism(3, f7, 99);
  CHECK(c == random_automorphism(3, f7, 99));
  CHECK(is_automorphism(c));
}
