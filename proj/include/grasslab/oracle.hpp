#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "grasslab/classify.hpp"

namespace grasslab {

/// Bound on exhaustive search spaces (candidate tuples / subspaces).
inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// Number of k-dimensional subspaces of GF(p)^m.
BigInt gaussian_binomial(int m, int k, std::int64_t p);

/// Total subspace count of GF(p)^dim, all dimensions.
BigInt count_subspaces(int dim, std::int64_t p);

/// Every automorphism over GF(p), found by running over all tuples of
/// generator images inside the maximal ideal and keeping the tuples that
/// anticommute with an invertible linear part. No classification results are
/// used. Throws BudgetExceeded when p^{n(2^n-1)} exceeds the budget.
std::vector<AlgebraMap> enumerate_automorphisms(
    int n, std::int64_t p, std::uint64_t budget = kDefaultBudget);

/// Visits every subspace of the 2^n-dimensional coordinate space over GF(p)
/// exactly once, each in canonical RREF form, ordered by (dim, pivot set,
/// entries). Throws BudgetExceeded when the subspace count exceeds the budget.
void for_each_subspace(int n, std::int64_t p,
                       const std::function<void(const Subspace&)>& visit,
                       std::uint64_t budget = kDefaultBudget);

/// Ground truth with no reference to the classification: the subspaces
/// preserved by every single automorphism, sorted canonically.
std::vector<Subspace> exhaustive_stable_set(
    int n, std::int64_t p, std::uint64_t budget = kDefaultBudget);

struct StabilityReport {
  bool violation_found = false;
  std::optional<Witness> witness;
  std::string line;  // CHECK randomized_stability ... -> PASS|FAIL ...
};

/// Applies the full witness family, then `trials` seeded random
/// automorphisms; reports the first violation. Deterministic under a fixed
/// seed.
StabilityReport randomized_stability(const Subspace& B, int trials,
                                     std::uint64_t seed);

struct CrossValidation {
  std::vector<std::string> lines;  // CHECK / DISCREPANCY entries, in order
  int failures = 0;                // number of FAIL lines

  bool all_passed() const { return failures == 0; }
  std::string text() const;
};

/// The full verification harness at one (n, field): center formula vs brute
/// force, commutator subalgebra, the nested-commutator identity, inner-map
/// properties, factorization round-trips, enumeration soundness and graded
/// completeness, subalgebra closure (with discrepancy entries), and — when
/// the field is finite and small enough — the exhaustive ground truth
/// comparison with automorphism/subspace counting.
CrossValidation cross_validate(int n, const Field& field,
                               std::uint64_t seed = kDefaultSeed,
                               int trials = 100);

}  // namespace grasslab
