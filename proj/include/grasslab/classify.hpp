#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "grasslab/morphism.hpp"
#include "grasslab/random.hpp"

namespace grasslab {

inline constexpr std::uint64_t kDefaultSeed = 1729;
inline constexpr int kDefaultWitnessTrials = 200;

/// Shapes of stable subspaces and subalgebras.
///  - Zero: the zero subspace.
///  - FormA: even ladder E_j + E_{j+2} + ... for even j > 0.
///  - FormB: odd-grade tail given by S plus an even ladder from i.
///  - FormC: k adjoined to a Zero/FormA/FormB inner form.
///  - SubalgA: k + even ladder (the unital even subalgebra shape).
///  - SubalgB: subalgebra variant of FormB, subject to closure filtering.
enum class FormKind { Zero, FormA, FormB, FormC, SubalgA, SubalgB };

struct CanonicalForm {
  FormKind kind = FormKind::Zero;
  int j = 0;                                   // FormA/FormB/SubalgA/SubalgB
  std::set<int> S;                             // FormB/SubalgB
  int i = 0;                                   // FormB/SubalgB
  std::shared_ptr<const CanonicalForm> inner;  // FormC

  static CanonicalForm zero();
  static CanonicalForm form_a(int j);
  static CanonicalForm form_b(int j, std::set<int> S, int i);
  static CanonicalForm form_c(CanonicalForm inner);
  static CanonicalForm subalg_a(int j);
  static CanonicalForm subalg_b(int j, std::set<int> S, int i);
};

/// Throws InvalidForm unless the parameters satisfy the shape invariants:
/// FormA/SubalgA need even j > 0; FormB/SubalgB need odd j = min S, S a set
/// of grades >= j, and even 0 < i <= j+1; FormC wraps Zero/FormA/FormB only.
void validate_form(const CanonicalForm& form);

/// Human-readable shape, e.g. "B(j=1,S={1,3},i=2)" or "C(A(j=2))".
std::string describe(const CanonicalForm& form);

/// Grades realized at ambient n (0 stands for the unit line). Members of S
/// and ladder steps beyond n contribute nothing.
std::set<int> form_grades(const CanonicalForm& form, int n);

/// The explicit subspace: the direct sum of the full graded components named
/// by the form. Validates the form.
Subspace realize(const CanonicalForm& form, int n, const Field& field);

struct GradedProfile {
  std::set<int> grades;        // 0 < i <= n with E_i contained in B
  bool contains_unit = false;  // E_0 contained in B
  bool exact = false;          // dim B equals the sum of those components
};

GradedProfile graded_profile(const Subspace& B);

/// Stability test for a set of grades (0 allowed and ignored: the unit line
/// is preserved by every automorphism and receives no other contributions).
/// A sum of full components is stable iff each present grade s >= 1 drags in
/// s+2 (when s+2 <= n) and, for odd s, also s+1 (when s < n): the first is
/// forced by cubic shears, the second by inner automorphisms.
bool stable_grade_set(const std::set<int>& grades, int n);

/// Wedge-closure test at the graded level: E_s ^ E_t is nonzero exactly when
/// s + t <= n, in which case it spans all of E_{s+t}.
bool sum_closed_grade_set(const std::set<int>& grades, int n);

/// All stable subspaces, as (form, realization) pairs, deduplicated by
/// subspace equality and sorted by (dim, lexicographic RREF).
std::vector<std::pair<CanonicalForm, Subspace>> enumerate_stable_subspaces(
    int n, const Field& field);

struct NamedAutomorphism {
  std::string name;
  AlgebraMap map;
};

/// The deterministic witness family: single-generator sign flips, all
/// transpositions, inner automorphisms by each generator, and the shears
/// e_1 -> e_1 + e_1^e_a^e_b. For sums of full graded components this family
/// alone detects every instability.
std::vector<NamedAutomorphism> witness_family(int n, const Field& field);

enum class Verdict { Stable, Unstable };

struct Witness {
  std::string sigma_name;
  AlgebraMap sigma;
  Multivector element;  // in B
  Multivector image;    // sigma(element), not in B
};

struct StabilityCertificate {
  Verdict verdict = Verdict::Unstable;
  std::optional<CanonicalForm> matched_form;  // set iff stable
  std::optional<Witness> witness;             // set iff unstable
};

/// Decides by matching against the classification, then hunts a witness for
/// the unstable case: the deterministic family first, then `random_trials`
/// seeded draws. Throws ClassificationAnomaly if neither side settles it.
StabilityCertificate decide_stable(const Subspace& B,
                                   int random_trials = kDefaultWitnessTrials,
                                   std::uint64_t seed = kDefaultSeed);

/// Smallest stable subspace containing B: every grade touched by an element
/// of B contributes its full component (scalar parts contribute the unit
/// line), and the grade set is then closed under the stability rules. A
/// verification pass re-applies the witness family and grows the result if
/// any image escapes, so the returned subspace always satisfies decide_stable.
Subspace stable_hull(const Subspace& B);

/// Direct basis-pair check; when unital is set, additionally requires 1 in B.
bool is_wedge_closed(const Subspace& B, bool unital);

struct DiscrepancyEntry {
  int n = 0;
  CanonicalForm form;
  std::string reason;
};

std::string format_discrepancy(const DiscrepancyEntry& entry);

struct SubalgebraEnumeration {
  std::vector<std::pair<CanonicalForm, Subspace>> results;
  std::vector<DiscrepancyEntry> discrepancies;
};

/// Stable subalgebras. Candidates come from the canonical shapes (with the
/// literal reading of SubalgB when unital is false, and the unit line
/// adjoined when unital is true; bare even ladders are included as non-unital
/// candidates). Every candidate is tested for wedge closure and stability
/// directly; the arithmetic shift condition {s+i | s in S, s+i <= n} <= S is
/// evaluated alongside, and any candidate where the two judgements disagree
/// is recorded as a discrepancy instead of being trusted. Emitted results are
/// re-verified with is_wedge_closed.
SubalgebraEnumeration enumerate_stable_subalgebras(int n, const Field& field,
                                                   bool unital);

}  // namespace grasslab
