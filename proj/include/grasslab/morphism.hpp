#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <vector>

#include "grasslab/multivector.hpp"

namespace grasslab {

/// An algebra endomorphism determined by generator images. Construction
/// validates that the images have zero scalar part and pairwise anticommute
/// (including squaring to zero), which is exactly what well-definedness
/// requires. Values are immutable; the coordinate matrix is derived data,
/// built lazily behind a call_once and shared across copies.
class AlgebraMap {
 public:
  /// Validating factory. Throws WrongArity / ScalarPartPresent /
  /// RelationViolation / FieldMismatch / DimensionMismatch.
  static AlgebraMap make(std::vector<Multivector> images);

  /// Non-throwing variant for enumeration loops; nullopt when invalid.
  static std::optional<AlgebraMap> try_make(std::vector<Multivector> images);

  static AlgebraMap identity(int n, const Field& field);

  int generators() const { return n_; }
  const Field& field() const { return field_; }
  const std::vector<Multivector>& images() const { return *images_; }
  const Multivector& image(int index) const;  // 1-based

  /// Image of an arbitrary element.
  Multivector apply(const Multivector& x) const;

  /// Full 2^n x 2^n coordinate matrix as columns indexed by basis mask.
  const std::vector<CoordVector>& matrix() const;

  bool operator==(const AlgebraMap& o) const;
  bool operator!=(const AlgebraMap& o) const { return !(*this == o); }

 private:
  struct MatrixCache {
    std::once_flag once;
    std::vector<CoordVector> columns;
  };

  AlgebraMap(int n, const Field& field,
             std::shared_ptr<const std::vector<Multivector>> images)
      : n_(n), field_(field), images_(std::move(images)),
        cache_(std::make_shared<MatrixCache>()) {}

  Multivector blade_image(std::uint32_t mask,
                          std::vector<std::optional<Multivector>>& memo) const;

  int n_;
  Field field_;
  std::shared_ptr<const std::vector<Multivector>> images_;
  std::shared_ptr<MatrixCache> cache_;
};

/// True iff the degree-1 part of the generator images is an invertible n x n
/// matrix; over the local ring structure this is exactly bijectivity.
bool is_automorphism(const AlgebraMap& m);

/// Inverse automorphism, by exact solve against the full coordinate matrix.
/// Throws NotInvertible when the linear part is singular.
AlgebraMap invert(const AlgebraMap& m);

/// first after second: apply(compose(f, g), x) == apply(f, apply(g, x)).
AlgebraMap compose(const AlgebraMap& f, const AlgebraMap& g);

/// Generator transposition e_i <-> e_j (i != j).
AlgebraMap transposition(int n, const Field& field, int i, int j);

/// Sign flip e_i -> -e_i for i in S.
AlgebraMap sign_flip(int n, const Field& field, const std::set<int>& S);

/// e_1 -> e_1 + e_1 ^ e_a ^ e_b with 2 <= a < b <= n, other generators fixed.
/// The inverse simply negates the cubic term.
AlgebraMap shear(int n, const Field& field, int a, int b);

/// The classical cubic shear at even j: shear with (a, b) = (j+1, j+2).
AlgebraMap cubic_shear(int n, const Field& field, int j);

/// Id + [a, -] for purely odd a. Throws NonOddElement otherwise.
AlgebraMap inner_automorphism(const Multivector& a);

/// Id + k [a, -] for purely odd a and nonzero k: the exponential of the inner
/// derivation k [a, -], which truncates after the linear term because nested
/// commutators [a, [a, -]] vanish. Throws ZeroScalar / NonOddElement.
AlgebraMap exp_inner(const Scalar& k, const Multivector& a);

/// True iff every generator image is purely odd; for valid maps this is
/// equivalent to preserving the parity decomposition.
bool is_parity_preserving(const AlgebraMap& m);

struct Factorization {
  Multivector inner_part;   // purely odd a with m = (Id + [a, -]) . parity_map
  AlgebraMap parity_map;    // parity-preserving automorphism f
};

/// Splits an automorphism as (Id + [a, -]) composed after a parity-preserving
/// automorphism. The odd parts of the images give f; a is the exact solution
/// of [a, f(e_i)] = even part of m(e_i), with the free coefficient on the top
/// monomial set to zero. Recomposition is verified exactly before returning.
/// Throws NotAutomorphism / FactorizationFailed.
Factorization factor_n1_f0(const AlgebraMap& m);

}  // namespace grasslab
