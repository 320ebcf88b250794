#include "grasslab/multivector.hpp"

#include <bit>
#include <string>
#include <unordered_map>

namespace grasslab {

int wedge_sign(std::uint32_t s, std::uint32_t t) {
  if ((s & t) != 0) return 0;
  int inversions = 0;
  for (std::uint32_t rest = t; rest != 0; rest &= rest - 1) {
    int bit = std::countr_zero(rest);
    inversions += std::popcount(s >> (bit + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

Multivector::Multivector(int n, const Field& field) : n_(n), field_(field) {
  check_generator_count(n);
}

Multivector Multivector::scalar(int n, const Field& field, const Scalar& c) {
  return term(n, field, 0, c);
}

Multivector Multivector::scalar(int n, const Field& field, std::int64_t c) {
  return term(n, field, 0, Scalar::of_int(field, c));
}

Multivector Multivector::unit(int n, const Field& field) {
  return scalar(n, field, 1);
}

Multivector Multivector::generator(int n, const Field& field, int index) {
  check_generator_count(n);
  if (index < 1 || index > n) {
    throw Error(ErrorKind::IndexOutOfRange,
                "generator index " + std::to_string(index) + " outside [1, " +
                    std::to_string(n) + "]");
  }
  return blade(n, field, std::uint32_t(1) << (index - 1));
}

Multivector Multivector::blade(int n, const Field& field, std::uint32_t mask) {
  return term(n, field, mask, Scalar::one(field));
}

Multivector Multivector::term(int n, const Field& field, std::uint32_t mask,
                              const Scalar& coeff) {
  Multivector result(n, field);
  if (mask >= (std::uint32_t(1) << n)) {
    throw Error(ErrorKind::IndexOutOfRange,
                "basis mask " + std::to_string(mask) + " out of range for n=" +
                    std::to_string(n));
  }
  if (coeff.field() != field) {
    throw Error(ErrorKind::FieldMismatch, "coefficient from a different field");
  }
  if (!coeff.is_zero()) result.terms_.emplace(mask, coeff);
  return result;
}

Scalar Multivector::coefficient(std::uint32_t mask) const {
  auto it = terms_.find(mask);
  return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

void Multivector::insert_term(std::uint32_t mask, const Scalar& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.emplace(mask, coeff);
  if (!inserted) {
    Scalar sum = it->second + coeff;
    if (sum.is_zero()) {
      terms_.erase(it);
    } else {
      it->second = sum;
    }
  }
}

namespace {

void require_compatible(const Multivector& a, const Multivector& b) {
  if (a.generators() != b.generators()) {
    throw Error(ErrorKind::DimensionMismatch,
                "elements over different generator counts");
  }
  if (a.field() != b.field()) {
    throw Error(ErrorKind::FieldMismatch, "elements over different fields");
  }
}

}  // namespace

Multivector Multivector::operator+(const Multivector& o) const {
  require_compatible(*this, o);
  Multivector result = *this;
  for (const auto& [mask, coeff] : o.terms_) result.insert_term(mask, coeff);
  return result;
}

Multivector Multivector::operator-(const Multivector& o) const {
  return *this + (-o);
}

Multivector Multivector::operator-() const {
  Multivector result(n_, field_);
  for (const auto& [mask, coeff] : terms_) result.terms_.emplace(mask, -coeff);
  return result;
}

Multivector Multivector::scale(const Scalar& c) const {
  if (c.field() != field_) {
    throw Error(ErrorKind::FieldMismatch, "scale factor from a different field");
  }
  Multivector result(n_, field_);
  if (c.is_zero()) return result;
  for (const auto& [mask, coeff] : terms_) {
    result.terms_.emplace(mask, coeff * c);
  }
  return result;
}

bool Multivector::operator==(const Multivector& o) const {
  return n_ == o.n_ && field_ == o.field_ && terms_ == o.terms_;
}

Multivector wedge(const Multivector& a, const Multivector& b) {
  require_compatible(a, b);
  Multivector result(a.generators(), a.field());
  for (const auto& [s, cs] : a.terms()) {
    for (const auto& [t, ct] : b.terms()) {
      int sign = wedge_sign(s, t);
      if (sign == 0) continue;
      Scalar coeff = cs * ct;
      if (sign < 0) coeff = -coeff;
      result.insert_term(s | t, coeff);
    }
  }
  return result;
}

Multivector lincomb(const std::vector<std::pair<Scalar, Multivector>>& parts) {
  if (parts.empty()) {
    throw Error(ErrorKind::InvalidArgument, "lincomb of an empty list");
  }
  Multivector result(parts[0].second.generators(), parts[0].second.field());
  for (const auto& [coeff, element] : parts) {
    result = result + element.scale(coeff);
  }
  return result;
}

Multivector grade_project(const Multivector& a, int i) {
  if (i < 0 || i > a.generators()) {
    throw Error(ErrorKind::IndexOutOfRange,
                "grade " + std::to_string(i) + " outside [0, " +
                    std::to_string(a.generators()) + "]");
  }
  Multivector result(a.generators(), a.field());
  for (const auto& [mask, coeff] : a.terms()) {
    if (std::popcount(mask) == i) result = result + Multivector::term(
        a.generators(), a.field(), mask, coeff);
  }
  return result;
}

Multivector parity_part(const Multivector& a, Parity parity) {
  int want = parity == Parity::Even ? 0 : 1;
  Multivector result(a.generators(), a.field());
  for (const auto& [mask, coeff] : a.terms()) {
    if ((std::popcount(mask) & 1) == want) {
      result = result + Multivector::term(a.generators(), a.field(), mask, coeff);
    }
  }
  return result;
}

std::set<int> support(const Multivector& a) {
  std::set<int> indices;
  for (const auto& [mask, coeff] : a.terms()) {
    for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
      indices.insert(std::countr_zero(rest) + 1);
    }
  }
  return indices;
}

int irr(const Multivector& a) { return static_cast<int>(a.terms().size()); }

std::vector<Multivector> irr_decomposition(const Multivector& a, int i) {
  if (i < 0 || i > a.generators()) {
    throw Error(ErrorKind::IndexOutOfRange,
                "grade " + std::to_string(i) + " out of range");
  }
  std::vector<Multivector> blades;
  for (const auto& [mask, coeff] : a.terms()) {
    if (std::popcount(mask) == i) {
      blades.push_back(Multivector::term(a.generators(), a.field(), mask, coeff));
    }
  }
  return blades;
}

Multivector commutator(const Multivector& a, const Multivector& b) {
  return wedge(a, b) - wedge(b, a);
}

CoordVector to_coords(const Multivector& a) {
  CoordVector v(a.generators(), a.field());
  for (const auto& [mask, coeff] : a.terms()) v.set(mask, coeff);
  return v;
}

Multivector from_coords(const CoordVector& v) {
  Multivector result(v.generators(), v.field());
  for (std::size_t mask = 0; mask < v.size(); ++mask) {
    const Scalar& c = v.get(mask);
    if (!c.is_zero()) {
      result = result + Multivector::term(v.generators(), v.field(),
                                          static_cast<std::uint32_t>(mask), c);
    }
  }
  return result;
}

Subspace graded_span(int n, const Field& field, const std::set<int>& grades,
                     bool include_unit) {
  check_generator_count(n);
  for (int g : grades) {
    if (g < 1) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "graded_span grade must be positive, got " + std::to_string(g));
    }
  }
  std::vector<CoordVector> rows;
  std::size_t total = std::size_t(1) << n;
  if (include_unit) {
    CoordVector unit(n, field);
    unit.set(0, Scalar::one(field));
    rows.push_back(std::move(unit));
  }
  for (std::size_t mask = 1; mask < total; ++mask) {
    if (grades.count(std::popcount(static_cast<std::uint32_t>(mask))) != 0) {
      CoordVector cv(n, field);
      cv.set(mask, Scalar::one(field));
      rows.push_back(std::move(cv));
    }
  }
  return rref(n, field, std::move(rows));
}

Subspace component_span(int n, const Field& field, int grade) {
  if (grade == 0) return graded_span(n, field, {}, true);
  return graded_span(n, field, {grade}, false);
}

namespace {

Subspace center_bruteforce(int n, const Field& field) {
  std::size_t total = std::size_t(1) << n;
  // Equations indexed by (basis monomial b, output mask c): the coefficient of
  // e_c in [x, e_b] must vanish. [e_a, e_b] has at most one term, so rows are
  // accumulated sparsely and zero rows never materialize.
  std::unordered_map<std::uint64_t, CoordVector> rows;
  for (std::size_t b = 0; b < total; ++b) {
    Multivector eb = Multivector::blade(n, field, static_cast<std::uint32_t>(b));
    for (std::size_t a = 0; a < total; ++a) {
      Multivector com = commutator(
          Multivector::blade(n, field, static_cast<std::uint32_t>(a)), eb);
      for (const auto& [c, coeff] : com.terms()) {
        std::uint64_t key = (std::uint64_t(b) << 32) | c;
        auto it = rows.find(key);
        if (it == rows.end()) {
          it = rows.emplace(key, CoordVector(n, field)).first;
        }
        it->second.set(a, it->second.get(a) + coeff);
      }
    }
  }
  std::vector<CoordVector> equations;
  equations.reserve(rows.size());
  for (auto& [key, row] : rows) equations.push_back(std::move(row));
  return kernel_subspace(n, field, equations);
}

}  // namespace

Subspace center_of(int n, const Field& field, CenterMethod method) {
  check_generator_count(n);
  if (method == CenterMethod::BruteForce) return center_bruteforce(n, field);
  std::set<int> grades;
  for (int g = 2; g <= n; g += 2) grades.insert(g);
  grades.insert(n);
  return graded_span(n, field, grades, true);
}

Subspace commutator_subalgebra(int n, const Field& field) {
  check_generator_count(n);
  std::size_t total = std::size_t(1) << n;
  std::vector<CoordVector> generators;
  generators.push_back(to_coords(Multivector::unit(n, field)));
  for (std::size_t s = 0; s < total; ++s) {
    for (std::size_t t = 0; t < total; ++t) {
      Multivector com = commutator(
          Multivector::blade(n, field, static_cast<std::uint32_t>(s)),
          Multivector::blade(n, field, static_cast<std::uint32_t>(t)));
      if (!com.is_zero()) generators.push_back(to_coords(com));
    }
  }
  Subspace span = rref(n, field, std::move(generators));

  // Wedge closure. Each pass can only add higher grades, so the loop is
  // bounded by n passes.
  for (int pass = 0; pass <= n; ++pass) {
    std::vector<CoordVector> additions;
    for (std::size_t i = 0; i < span.dim(); ++i) {
      for (std::size_t j = i; j < span.dim(); ++j) {
        Multivector prod =
            wedge(from_coords(span.row(i)), from_coords(span.row(j)));
        if (prod.is_zero()) continue;
        CoordVector pv = to_coords(prod);
        if (!member(span, pv)) additions.push_back(std::move(pv));
      }
    }
    if (additions.empty()) return span;
    std::vector<CoordVector> rows = span.rows();
    rows.insert(rows.end(), additions.begin(), additions.end());
    span = rref(n, field, std::move(rows));
  }
  throw Error(ErrorKind::InvalidArgument,
              "wedge closure failed to stabilize within the grading bound");
}

}  // namespace grasslab
