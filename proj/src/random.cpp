#include "grasslab/random.hpp"

#include <bit>

namespace grasslab {

std::uint64_t random_below(std::mt19937_64& rng, std::uint64_t bound) {
  return bound == 0 ? 0 : rng() % bound;
}

Scalar random_scalar(std::mt19937_64& rng, const Field& field, bool nonzero) {
  if (field.is_rationals()) {
    std::int64_t v = static_cast<std::int64_t>(random_below(rng, 7)) - 3;
    if (nonzero && v == 0) v = 1 + static_cast<std::int64_t>(random_below(rng, 3));
    return Scalar::of_int(field, v);
  }
  std::uint64_t p = static_cast<std::uint64_t>(field.characteristic());
  std::uint64_t r = nonzero ? 1 + random_below(rng, p - 1) : random_below(rng, p);
  return Scalar::of_int(field, static_cast<std::int64_t>(r));
}

Multivector random_multivector(std::mt19937_64& rng, int n, const Field& field,
                               int max_terms) {
  check_generator_count(n);
  Multivector result(n, field);
  std::uint64_t total = std::uint64_t(1) << n;
  int terms = 1 + static_cast<int>(random_below(rng, std::uint64_t(max_terms)));
  for (int t = 0; t < terms; ++t) {
    std::uint32_t mask = static_cast<std::uint32_t>(random_below(rng, total));
    result = result + Multivector::term(n, field, mask,
                                        random_scalar(rng, field));
  }
  return result;
}

Multivector random_odd(std::mt19937_64& rng, int n, const Field& field,
                       int max_terms) {
  check_generator_count(n);
  std::vector<std::uint32_t> odd_masks;
  for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << n); ++mask) {
    if (std::popcount(mask) & 1) odd_masks.push_back(mask);
  }
  Multivector result(n, field);
  int terms = 1 + static_cast<int>(random_below(rng, std::uint64_t(max_terms)));
  for (int t = 0; t < terms; ++t) {
    std::uint32_t mask = odd_masks[random_below(rng, odd_masks.size())];
    result = result + Multivector::term(n, field, mask,
                                        random_scalar(rng, field, true));
  }
  if (result.is_zero()) {
    result = Multivector::generator(n, field,
                                    1 + static_cast<int>(random_below(rng, n)));
  }
  return result;
}

Subspace random_subspace(std::mt19937_64& rng, int n, const Field& field,
                         int vectors) {
  std::vector<CoordVector> rows;
  for (int i = 0; i < vectors; ++i) {
    rows.push_back(to_coords(random_multivector(rng, n, field)));
  }
  return rref(n, field, std::move(rows));
}

AutomorphismSampler::AutomorphismSampler(int n, const Field& field,
                                         std::uint64_t seed,
                                         RandomProfile profile)
    : n_(n), field_(field), profile_(profile), rng_(seed) {
  check_generator_count(n);
}

AlgebraMap AutomorphismSampler::random_linear() {
  while (true) {
    std::vector<Multivector> images;
    for (int j = 0; j < n_; ++j) {
      Multivector g(n_, field_);
      for (int i = 1; i <= n_; ++i) {
        Scalar c = random_scalar(rng_, field_);
        if (!c.is_zero()) {
          g = g + Multivector::generator(n_, field_, i).scale(c);
        }
      }
      images.push_back(std::move(g));
    }
    std::optional<AlgebraMap> m = AlgebraMap::try_make(std::move(images));
    if (m && is_automorphism(*m)) return *m;
  }
}

AlgebraMap AutomorphismSampler::random_shear() {
  // Identity plus random odd terms of grade >= 3 on random generators. Purely
  // odd images anticommute automatically, and the linear part stays the
  // identity, so every draw is an automorphism.
  std::vector<std::uint32_t> high_odd;
  for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << n_); ++mask) {
    int g = std::popcount(mask);
    if ((g & 1) && g >= 3) high_odd.push_back(mask);
  }
  std::vector<Multivector> images;
  for (int i = 1; i <= n_; ++i) {
    images.push_back(Multivector::generator(n_, field_, i));
  }
  if (!high_odd.empty()) {
    int additions = 1 + static_cast<int>(random_below(rng_, 3));
    for (int t = 0; t < additions; ++t) {
      std::size_t target = random_below(rng_, std::uint64_t(n_));
      std::uint32_t mask = high_odd[random_below(rng_, high_odd.size())];
      images[target] = images[target] + Multivector::term(
          n_, field_, mask, random_scalar(rng_, field_, true));
    }
  }
  return AlgebraMap::make(std::move(images));
}

AlgebraMap AutomorphismSampler::random_inner() {
  return inner_automorphism(random_odd(rng_, n_, field_));
}

AlgebraMap AutomorphismSampler::next() {
  unsigned total = profile_.linear_weight + profile_.shear_weight +
                   profile_.inner_weight;
  if (total == 0) return AlgebraMap::identity(n_, field_);
  int depth = 1 + static_cast<int>(random_below(
      rng_, std::uint64_t(std::max(1, profile_.max_depth))));
  AlgebraMap result = AlgebraMap::identity(n_, field_);
  for (int d = 0; d < depth; ++d) {
    std::uint64_t pick = random_below(rng_, total);
    AlgebraMap piece = pick < profile_.linear_weight
        ? random_linear()
        : (pick < profile_.linear_weight + profile_.shear_weight
               ? random_shear()
               : random_inner());
    result = compose(result, piece);
  }
  return result;
}

AlgebraMap random_automorphism(int n, const Field& field, std::uint64_t seed,
                               const RandomProfile& profile) {
  return AutomorphismSampler(n, field, seed, profile).next();
}

}  // namespace grasslab
