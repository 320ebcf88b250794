#include "grasslab/morphism.hpp"

#include <bit>
#include <string>

namespace grasslab {

namespace {

std::optional<Error> validate_images(const std::vector<Multivector>& images) {
  if (images.empty()) {
    return Error(ErrorKind::WrongArity, "no generator images given");
  }
  int n = images[0].generators();
  const Field field = images[0].field();
  if (static_cast<int>(images.size()) != n) {
    return Error(ErrorKind::WrongArity,
                 std::to_string(images.size()) + " images for " +
                     std::to_string(n) + " generators");
  }
  for (int i = 0; i < n; ++i) {
    if (images[i].generators() != n) {
      return Error(ErrorKind::DimensionMismatch,
                   "image " + std::to_string(i + 1) +
                       " lives over a different generator count");
    }
    if (images[i].field() != field) {
      return Error(ErrorKind::FieldMismatch,
                   "image " + std::to_string(i + 1) +
                       " lives over a different field");
    }
    if (!images[i].scalar_part().is_zero()) {
      return Error(ErrorKind::ScalarPartPresent,
                   "image of e" + std::to_string(i + 1) +
                       " has a nonzero scalar part");
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!wedge(images[i], images[i]).is_zero()) {
      return Error(ErrorKind::RelationViolation,
                   "image of e" + std::to_string(i + 1) + " does not square to zero");
    }
    for (int j = i + 1; j < n; ++j) {
      if (!(wedge(images[i], images[j]) + wedge(images[j], images[i])).is_zero()) {
        return Error(ErrorKind::RelationViolation,
                     "images of e" + std::to_string(i + 1) + " and e" +
                         std::to_string(j + 1) + " fail anticommutation");
      }
    }
  }
  return std::nullopt;
}

}  // namespace

AlgebraMap AlgebraMap::make(std::vector<Multivector> images) {
  if (auto err = validate_images(images)) throw *err;
  int n = images[0].generators();
  Field field = images[0].field();
  return AlgebraMap(n, field,
                    std::make_shared<const std::vector<Multivector>>(
                        std::move(images)));
}

std::optional<AlgebraMap> AlgebraMap::try_make(std::vector<Multivector> images) {
  if (validate_images(images)) return std::nullopt;
  int n = images[0].generators();
  Field field = images[0].field();
  return AlgebraMap(n, field,
                    std::make_shared<const std::vector<Multivector>>(
                        std::move(images)));
}

AlgebraMap AlgebraMap::identity(int n, const Field& field) {
  std::vector<Multivector> images;
  for (int i = 1; i <= n; ++i) {
    images.push_back(Multivector::generator(n, field, i));
  }
  return make(std::move(images));
}

const Multivector& AlgebraMap::image(int index) const {
  if (index < 1 || index > n_) {
    throw Error(ErrorKind::IndexOutOfRange,
                "generator index " + std::to_string(index) + " outside [1, " +
                    std::to_string(n_) + "]");
  }
  return (*images_)[index - 1];
}

Multivector AlgebraMap::blade_image(
    std::uint32_t mask, std::vector<std::optional<Multivector>>& memo) const {
  if (memo[mask]) return *memo[mask];
  Multivector result(n_, field_);
  if (mask == 0) {
    result = Multivector::unit(n_, field_);
  } else {
    int low = std::countr_zero(mask);
    result = wedge((*images_)[low], blade_image(mask & (mask - 1), memo));
  }
  memo[mask] = result;
  return result;
}

Multivector AlgebraMap::apply(const Multivector& x) const {
  if (x.generators() != n_ || x.field() != field_) {
    throw Error(ErrorKind::DimensionMismatch,
                "element incompatible with this map");
  }
  Multivector result(n_, field_);
  std::vector<std::optional<Multivector>> memo(std::size_t(1) << n_);
  for (const auto& [mask, coeff] : x.terms()) {
    result = result + blade_image(mask, memo).scale(coeff);
  }
  return result;
}

const std::vector<CoordVector>& AlgebraMap::matrix() const {
  std::call_once(cache_->once, [this] {
    std::size_t total = std::size_t(1) << n_;
    std::vector<std::optional<Multivector>> memo(total);
    std::vector<CoordVector> columns;
    columns.reserve(total);
    for (std::size_t mask = 0; mask < total; ++mask) {
      columns.push_back(
          to_coords(blade_image(static_cast<std::uint32_t>(mask), memo)));
    }
    const_cast<MatrixCache&>(*cache_).columns = std::move(columns);
  });
  return cache_->columns;
}

bool AlgebraMap::operator==(const AlgebraMap& o) const {
  return n_ == o.n_ && field_ == o.field_ && *images_ == *o.images_;
}

bool is_automorphism(const AlgebraMap& m) {
  int n = m.generators();
  std::vector<Row> linear(n, Row(n, Scalar::zero(m.field())));
  for (int j = 0; j < n; ++j) {
    const Multivector& g = m.images()[j];
    for (int i = 0; i < n; ++i) {
      linear[i][j] = g.coefficient(std::uint32_t(1) << i);
    }
  }
  return rref_in_place(linear).size() == static_cast<std::size_t>(n);
}

AlgebraMap invert(const AlgebraMap& m) {
  if (!is_automorphism(m)) {
    throw Error(ErrorKind::NotInvertible, "linear part is singular");
  }
  int n = m.generators();
  const Field& field = m.field();
  std::size_t w = std::size_t(1) << n;
  const std::vector<CoordVector>& cols = m.matrix();

  // Solve M * X = I: augment the row-major matrix of M with the identity.
  std::vector<Row> aug(w, Row(2 * w, Scalar::zero(field)));
  for (std::size_t c = 0; c < w; ++c) {
    for (std::size_t r = 0; r < w; ++r) {
      const Scalar& entry = cols[c].get(r);
      if (!entry.is_zero()) aug[r][c] = entry;
    }
  }
  for (std::size_t r = 0; r < w; ++r) aug[r][w + r] = Scalar::one(field);
  std::vector<std::size_t> pivots = rref_in_place(aug);
  if (pivots.size() != w || pivots.back() != w - 1) {
    throw Error(ErrorKind::NotInvertible, "coordinate matrix is singular");
  }

  std::vector<Multivector> images;
  for (int i = 0; i < n; ++i) {
    std::size_t target = std::size_t(1) << i;  // mask of e_{i+1}
    Multivector preimage(n, field);
    for (std::size_t r = 0; r < w; ++r) {
      const Scalar& entry = aug[r][w + target];
      if (!entry.is_zero()) {
        preimage = preimage + Multivector::term(
            n, field, static_cast<std::uint32_t>(r), entry);
      }
    }
    images.push_back(std::move(preimage));
  }
  AlgebraMap inverse = AlgebraMap::make(std::move(images));
  for (int i = 1; i <= n; ++i) {
    if (inverse.apply(m.image(i)) != Multivector::generator(n, field, i)) {
      throw Error(ErrorKind::NotInvertible, "inverse verification failed");
    }
  }
  return inverse;
}

AlgebraMap compose(const AlgebraMap& f, const AlgebraMap& g) {
  if (f.generators() != g.generators() || f.field() != g.field()) {
    throw Error(ErrorKind::DimensionMismatch, "composing incompatible maps");
  }
  std::vector<Multivector> images;
  for (const Multivector& gi : g.images()) images.push_back(f.apply(gi));
  return AlgebraMap::make(std::move(images));
}

AlgebraMap transposition(int n, const Field& field, int i, int j) {
  check_generator_count(n);
  if (i < 1 || i > n || j < 1 || j > n) {
    throw Error(ErrorKind::IndexOutOfRange, "transposition index out of range");
  }
  if (i == j) {
    throw Error(ErrorKind::InvalidArgument, "transposition needs i != j");
  }
  std::vector<Multivector> images;
  for (int k = 1; k <= n; ++k) {
    int target = k == i ? j : (k == j ? i : k);
    images.push_back(Multivector::generator(n, field, target));
  }
  return AlgebraMap::make(std::move(images));
}

AlgebraMap sign_flip(int n, const Field& field, const std::set<int>& S) {
  check_generator_count(n);
  for (int k : S) {
    if (k < 1 || k > n) {
      throw Error(ErrorKind::IndexOutOfRange, "sign flip index out of range");
    }
  }
  std::vector<Multivector> images;
  for (int k = 1; k <= n; ++k) {
    Multivector g = Multivector::generator(n, field, k);
    images.push_back(S.count(k) ? -g : g);
  }
  return AlgebraMap::make(std::move(images));
}

AlgebraMap shear(int n, const Field& field, int a, int b) {
  check_generator_count(n);
  if (a < 2 || b <= a || b > n) {
    throw Error(ErrorKind::IndexOutOfRange,
                "shear needs 2 <= a < b <= n, got a=" + std::to_string(a) +
                    " b=" + std::to_string(b));
  }
  std::vector<Multivector> images;
  std::uint32_t cubic = 1u | (1u << (a - 1)) | (1u << (b - 1));
  images.push_back(Multivector::generator(n, field, 1) +
                   Multivector::blade(n, field, cubic));
  for (int k = 2; k <= n; ++k) {
    images.push_back(Multivector::generator(n, field, k));
  }
  return AlgebraMap::make(std::move(images));
}

AlgebraMap cubic_shear(int n, const Field& field, int j) {
  if (j < 2 || j % 2 != 0) {
    throw Error(ErrorKind::InvalidArgument,
                "cubic shear index must be even and positive");
  }
  if (j + 2 > n) {
    throw Error(ErrorKind::IndexOutOfRange,
                "cubic shear needs j + 2 <= n");
  }
  return shear(n, field, j + 1, j + 2);
}

AlgebraMap inner_automorphism(const Multivector& a) {
  if (!parity_part(a, Parity::Even).is_zero()) {
    throw Error(ErrorKind::NonOddElement,
                "inner automorphism requires a purely odd element");
  }
  int n = a.generators();
  const Field& field = a.field();
  std::vector<Multivector> images;
  for (int i = 1; i <= n; ++i) {
    Multivector ei = Multivector::generator(n, field, i);
    images.push_back(ei + commutator(a, ei));
  }
  return AlgebraMap::make(std::move(images));
}

AlgebraMap exp_inner(const Scalar& k, const Multivector& a) {
  if (k.is_zero()) {
    throw Error(ErrorKind::ZeroScalar, "exp_inner requires a nonzero scalar");
  }
  if (k.field() != a.field()) {
    throw Error(ErrorKind::FieldMismatch, "scalar from a different field");
  }
  if (!parity_part(a, Parity::Even).is_zero()) {
    throw Error(ErrorKind::NonOddElement,
                "exp_inner requires a purely odd element");
  }
  int n = a.generators();
  const Field& field = a.field();
  std::vector<Multivector> images;
  for (int i = 1; i <= n; ++i) {
    Multivector ei = Multivector::generator(n, field, i);
    images.push_back(ei + commutator(a, ei).scale(k));
  }
  return AlgebraMap::make(std::move(images));
}

bool is_parity_preserving(const AlgebraMap& m) {
  for (const Multivector& g : m.images()) {
    if (!parity_part(g, Parity::Even).is_zero()) return false;
  }
  return true;
}

Factorization factor_n1_f0(const AlgebraMap& m) {
  if (!is_automorphism(m)) {
    throw Error(ErrorKind::NotAutomorphism,
                "only automorphisms admit the semidirect splitting");
  }
  int n = m.generators();
  const Field& field = m.field();

  std::vector<Multivector> f_images;
  for (const Multivector& g : m.images()) {
    f_images.push_back(parity_part(g, Parity::Odd));
  }
  std::optional<AlgebraMap> f = AlgebraMap::try_make(std::move(f_images));
  if (!f) {
    throw Error(ErrorKind::FactorizationFailed,
                "odd parts of the images fail the generator relations");
  }

  // Unknowns: coefficients of a on the odd basis monomials, in mask order.
  // The top monomial (n odd) spans the odd part of the center and is the only
  // ambiguity; setting free coordinates to zero selects that representative.
  std::vector<std::uint32_t> odd_masks;
  std::size_t total = std::size_t(1) << n;
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    if (std::popcount(mask) & 1) odd_masks.push_back(mask);
  }
  std::size_t unknowns = odd_masks.size();

  std::vector<Row> equations;
  Row rhs;
  for (int i = 1; i <= n; ++i) {
    const Multivector& fi = f->image(i);
    Multivector target = parity_part(m.image(i), Parity::Even);
    std::vector<Multivector> columns;
    columns.reserve(unknowns);
    for (std::uint32_t u : odd_masks) {
      columns.push_back(commutator(Multivector::blade(n, field, u), fi));
    }
    for (std::uint32_t c = 0; c < total; ++c) {
      if (std::popcount(c) & 1) continue;
      Row row(unknowns, Scalar::zero(field));
      bool nonzero = false;
      for (std::size_t u = 0; u < unknowns; ++u) {
        Scalar entry = columns[u].coefficient(c);
        if (!entry.is_zero()) {
          row[u] = entry;
          nonzero = true;
        }
      }
      Scalar b = target.coefficient(c);
      if (nonzero || !b.is_zero()) {
        equations.push_back(std::move(row));
        rhs.push_back(b);
      }
    }
  }

  std::optional<Row> solution = solve_linear(std::move(equations), rhs,
                                             unknowns, field);
  if (!solution) {
    throw Error(ErrorKind::FactorizationFailed,
                "inner part system is inconsistent");
  }
  Multivector a(n, field);
  for (std::size_t u = 0; u < unknowns; ++u) {
    if (!(*solution)[u].is_zero()) {
      a = a + Multivector::term(n, field, odd_masks[u], (*solution)[u]);
    }
  }

  AlgebraMap recomposed = compose(inner_automorphism(a), *f);
  if (recomposed != m) {
    throw Error(ErrorKind::FactorizationFailed,
                "recomposition does not reproduce the map");
  }
  return Factorization{std::move(a), std::move(*f)};
}

}  // namespace grasslab
