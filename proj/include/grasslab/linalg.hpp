#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "grasslab/field.hpp"

namespace grasslab {

/// Generator-count cap guarding the 2^n memory blowup. Dense subspace work is
/// practical up to n = 12 or so; the cap merely prevents accidents.
inline constexpr int kDefaultGeneratorCap = 16;

/// Throws CapExceeded / InvalidArgument unless 1 <= n <= cap.
void check_generator_count(int n, int cap = kDefaultGeneratorCap);

// ---------------------------------------------------------------------------
// Generic dense elimination over an exact field.
// ---------------------------------------------------------------------------

using Row = std::vector<Scalar>;

/// In-place reduced row echelon form. Drops zero rows, normalizes pivots to 1,
/// clears pivot columns, and returns the pivot column of each surviving row
/// (strictly increasing).
std::vector<std::size_t> rref_in_place(std::vector<Row>& rows);

/// Canonical basis of the solution space of the homogeneous system
/// `rows * x = 0` over `width` unknowns.
std::vector<Row> kernel_basis(std::vector<Row> rows, std::size_t width,
                              const Field& field);

/// One exact solution of `rows * x = rhs` with every free coordinate set to
/// zero, or nullopt if the system is inconsistent. rhs.size() == rows.size().
std::optional<Row> solve_linear(std::vector<Row> rows, const Row& rhs,
                                std::size_t width, const Field& field);

// ---------------------------------------------------------------------------
// Coordinate vectors and subspaces of the 2^n-dimensional algebra.
// ---------------------------------------------------------------------------

/// Dense coordinate vector of length 2^n, indexed by basis mask (bit i-1 set
/// means the monomial contains e_i).
class CoordVector {
 public:
  CoordVector(int n, const Field& field);

  int generators() const { return n_; }
  const Field& field() const { return field_; }
  std::size_t size() const { return coords_.size(); }

  const Scalar& get(std::size_t mask) const { return coords_.at(mask); }
  void set(std::size_t mask, const Scalar& value);

  bool is_zero() const;
  const std::vector<Scalar>& coords() const { return coords_; }

  bool operator==(const CoordVector& o) const;
  bool operator!=(const CoordVector& o) const { return !(*this == o); }

 private:
  int n_;
  Field field_;
  std::vector<Scalar> coords_;
};

/// A subspace of the 2^n-dimensional coordinate space, stored as the unique
/// reduced row echelon basis. Two subspaces are equal iff their RREF rows are
/// entrywise equal. Construct via rref()/span helpers only.
class Subspace {
 public:
  static Subspace zero(int n, const Field& field);

  int generators() const { return n_; }
  const Field& field() const { return field_; }
  std::size_t dim() const { return rows_.size(); }
  std::size_t ambient_dim() const { return std::size_t(1) << n_; }

  const std::vector<CoordVector>& rows() const { return rows_; }
  const CoordVector& row(std::size_t i) const { return rows_.at(i); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool operator==(const Subspace& o) const;
  bool operator!=(const Subspace& o) const { return !(*this == o); }

  /// Deterministic total order: by dimension, then entrywise on RREF rows.
  int compare(const Subspace& o) const;

 private:
  friend Subspace rref(int n, const Field& field, std::vector<CoordVector> rows);
  Subspace(int n, const Field& field) : n_(n), field_(field) {}

  int n_;
  Field field_;
  std::vector<CoordVector> rows_;
  std::vector<std::size_t> pivots_;
  // Nonzero column indices per row, precomputed for fast reductions.
  std::vector<std::vector<std::size_t>> supports_;

  friend bool member(const Subspace&, const CoordVector&);
};

/// Canonical subspace spanned by the given vectors (possibly none).
Subspace rref(int n, const Field& field, std::vector<CoordVector> rows);

/// Exact membership test: v lies in the span of B.
bool member(const Subspace& B, const CoordVector& v);

/// B1 + B2 (canonical).
Subspace subspace_sum(const Subspace& a, const Subspace& b);

/// B1 ∩ B2 via the Zassenhaus double-block elimination (canonical).
Subspace subspace_intersect(const Subspace& a, const Subspace& b);

/// Canonical basis of {x : every equation row dots to zero}, where equation
/// rows live in the same 2^n coordinate space.
Subspace kernel_subspace(int n, const Field& field,
                         const std::vector<CoordVector>& equations);

}  // namespace grasslab
