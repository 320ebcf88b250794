#pragma once

#include <cstdint>
#include <random>

#include "grasslab/morphism.hpp"

namespace grasslab {

/// Mixture weights for random automorphism sampling. Components:
///  - linear: invertible substitution on the generators,
///  - shear:  parity-preserving perturbation adding odd terms of grade >= 3,
///  - inner:  Id + [a, -] for a random purely odd a.
/// A draw composes between 1 and max_depth components.
struct RandomProfile {
  unsigned linear_weight = 1;
  unsigned shear_weight = 1;
  unsigned inner_weight = 1;
  int max_depth = 2;

  static RandomProfile general() { return {}; }
  static RandomProfile linear_only() { return {1, 0, 0, 1}; }
  static RandomProfile inner_only() { return {0, 0, 1, 1}; }
};

/// Deterministic stream of random automorphisms: the same (n, field, seed,
/// profile) always reproduces the same sequence.
class AutomorphismSampler {
 public:
  AutomorphismSampler(int n, const Field& field, std::uint64_t seed,
                      RandomProfile profile = RandomProfile::general());

  AlgebraMap next();
  std::mt19937_64& rng() { return rng_; }

 private:
  AlgebraMap random_linear();
  AlgebraMap random_shear();
  AlgebraMap random_inner();

  int n_;
  Field field_;
  RandomProfile profile_;
  std::mt19937_64 rng_;
};

/// Single draw with a fresh sampler.
AlgebraMap random_automorphism(int n, const Field& field, std::uint64_t seed,
                               const RandomProfile& profile =
                                   RandomProfile::general());

/// Uniform helpers, deliberately engine-based (not std distributions) so the
/// byte stream is identical across standard library implementations.
std::uint64_t random_below(std::mt19937_64& rng, std::uint64_t bound);

/// Small random scalar: integers in [-3, 3] over Q, a uniform residue over
/// GF(p); never zero when nonzero is set.
Scalar random_scalar(std::mt19937_64& rng, const Field& field,
                     bool nonzero = false);

/// Random element with up to max_terms monomials of arbitrary grade.
Multivector random_multivector(std::mt19937_64& rng, int n, const Field& field,
                               int max_terms = 4);

/// Random purely odd element (never zero).
Multivector random_odd(std::mt19937_64& rng, int n, const Field& field,
                       int max_terms = 3);

/// Random subspace spanned by `vectors` random elements.
Subspace random_subspace(std::mt19937_64& rng, int n, const Field& field,
                         int vectors);

}  // namespace grasslab
