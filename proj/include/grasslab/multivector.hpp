#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "grasslab/linalg.hpp"

namespace grasslab {

/// Sign of e_S ^ e_T for basis masks: 0 when the masks overlap, otherwise
/// (-1)^{#{(s,t) in S x T : s > t}}. Computed from prefix popcounts.
int wedge_sign(std::uint32_t s, std::uint32_t t);

enum class Parity { Even, Odd };

/// An element of the Grassmann algebra on generators e_1..e_n, stored as a
/// sparse map from basis mask to nonzero coefficient (bit i-1 <=> e_i).
/// Values are immutable once built; all operations return new elements.
class Multivector {
 public:
  /// The zero element.
  Multivector(int n, const Field& field);

  static Multivector scalar(int n, const Field& field, const Scalar& c);
  static Multivector scalar(int n, const Field& field, std::int64_t c);
  static Multivector unit(int n, const Field& field);       // 1
  static Multivector generator(int n, const Field& field, int index);  // e_index
  static Multivector blade(int n, const Field& field, std::uint32_t mask);
  static Multivector term(int n, const Field& field, std::uint32_t mask,
                          const Scalar& coeff);

  int generators() const { return n_; }
  const Field& field() const { return field_; }
  bool is_zero() const { return terms_.empty(); }

  /// mask -> coefficient, zero coefficients never stored. std::map order is
  /// by mask; canonical printing sorts by (grade, mask).
  const std::map<std::uint32_t, Scalar>& terms() const { return terms_; }

  Scalar coefficient(std::uint32_t mask) const;
  Scalar scalar_part() const { return coefficient(0); }

  Multivector operator+(const Multivector& o) const;
  Multivector operator-(const Multivector& o) const;
  Multivector operator-() const;
  Multivector scale(const Scalar& c) const;

  bool operator==(const Multivector& o) const;
  bool operator!=(const Multivector& o) const { return !(*this == o); }

 private:
  void insert_term(std::uint32_t mask, const Scalar& coeff);

  int n_;
  Field field_;
  std::map<std::uint32_t, Scalar> terms_;

  friend Multivector wedge(const Multivector&, const Multivector&);
};

/// Exterior product.
Multivector wedge(const Multivector& a, const Multivector& b);

/// Sum of coeff * element pairs. All entries must agree on n and field.
Multivector lincomb(const std::vector<std::pair<Scalar, Multivector>>& parts);

/// Grade-i component (0 <= i <= n).
Multivector grade_project(const Multivector& a, int i);

/// Even or odd part.
Multivector parity_part(const Multivector& a, Parity parity);

/// Union of the supports of all monomials appearing in a.
std::set<int> support(const Multivector& a);

/// Number of irreducible summands: stored terms, counting a nonzero scalar
/// term as one.
int irr(const Multivector& a);

/// The blades of the grade-i component, in mask order. Their supports are
/// pairwise distinct.
std::vector<Multivector> irr_decomposition(const Multivector& a, int i);

/// a ^ b - b ^ a.
Multivector commutator(const Multivector& a, const Multivector& b);

CoordVector to_coords(const Multivector& a);
Multivector from_coords(const CoordVector& v);

/// Span of the full graded components E_i for i in `grades`, plus the span of
/// 1 when include_unit is set. Grades beyond n contribute nothing.
Subspace graded_span(int n, const Field& field, const std::set<int>& grades,
                     bool include_unit);

/// The single component E_i.
Subspace component_span(int n, const Field& field, int grade);

enum class CenterMethod { Formula, BruteForce };

/// Center of the algebra. Formula: even part plus the top component.
/// BruteForce: kernel of x -> [x, e_S] over all basis monomials, by linear
/// algebra with no use of the formula. Both must agree.
Subspace center_of(int n, const Field& field,
                   CenterMethod method = CenterMethod::Formula);

/// Smallest subalgebra containing 1 and all commutators [a, b], computed by
/// spanning the pairwise basis commutators and closing under wedge. The
/// fixpoint is reached within n iterations by the grading.
Subspace commutator_subalgebra(int n, const Field& field);

}  // namespace grasslab
