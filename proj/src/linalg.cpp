#include "grasslab/linalg.hpp"

#include <algorithm>
#include <string>

namespace grasslab {

void check_generator_count(int n, int cap) {
  if (n < 1) {
    throw Error(ErrorKind::InvalidArgument,
                "generator count must be at least 1, got " + std::to_string(n));
  }
  if (n > cap) {
    throw Error(ErrorKind::CapExceeded,
                "generator count " + std::to_string(n) +
                    " exceeds the cap of " + std::to_string(cap));
  }
}

namespace {

// rows[target] -= factor * rows[src], touching only columns where src is
// nonzero. Keeping row operations sparse makes the unit-vector-heavy systems
// in this project cheap.
void row_axpy(Row& target, const Scalar& factor, const Row& src) {
  for (std::size_t c = 0; c < src.size(); ++c) {
    if (!src[c].is_zero()) target[c] = target[c] - factor * src[c];
  }
}

}  // namespace

std::vector<std::size_t> rref_in_place(std::vector<Row>& rows) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  std::size_t width = rows[0].size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < width && r < rows.size(); ++col) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][col].is_zero()) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    if (!rows[r][col].is_one()) {
      Scalar inv = rows[r][col].inverse();
      for (std::size_t c = col; c < width; ++c) {
        if (!rows[r][c].is_zero()) rows[r][c] = rows[r][c] * inv;
      }
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col].is_zero()) continue;
      Scalar factor = rows[i][col];
      row_axpy(rows[i], factor, rows[r]);
    }
    pivots.push_back(col);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

std::vector<Row> kernel_basis(std::vector<Row> rows, std::size_t width,
                              const Field& field) {
  std::vector<std::size_t> pivots = rref_in_place(rows);
  std::vector<bool> is_pivot(width, false);
  for (std::size_t p : pivots) is_pivot[p] = true;

  std::vector<Row> basis;
  for (std::size_t f = 0; f < width; ++f) {
    if (is_pivot[f]) continue;
    Row v(width, Scalar::zero(field));
    v[f] = Scalar::one(field);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      if (!rows[r][f].is_zero()) v[pivots[r]] = -rows[r][f];
    }
    basis.push_back(std::move(v));
  }
  rref_in_place(basis);  // canonical orientation and order
  return basis;
}

std::optional<Row> solve_linear(std::vector<Row> rows, const Row& rhs,
                                std::size_t width, const Field& field) {
  if (rows.size() != rhs.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "solve_linear: rhs length does not match equation count");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].push_back(rhs[i]);
  }
  std::vector<std::size_t> pivots = rref_in_place(rows);
  Row x(width, Scalar::zero(field));
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == width) return std::nullopt;  // 0 = 1 row: inconsistent
    x[pivots[r]] = rows[r][width];
  }
  return x;
}

// ---------------------------------------------------------------------------

CoordVector::CoordVector(int n, const Field& field) : n_(n), field_(field) {
  check_generator_count(n);
  coords_.assign(std::size_t(1) << n, Scalar::zero(field));
}

void CoordVector::set(std::size_t mask, const Scalar& value) {
  if (mask >= coords_.size()) {
    throw Error(ErrorKind::IndexOutOfRange,
                "coordinate mask " + std::to_string(mask) + " out of range");
  }
  if (value.field() != field_) {
    throw Error(ErrorKind::FieldMismatch, "coordinate from a different field");
  }
  coords_[mask] = value;
}

bool CoordVector::is_zero() const {
  for (const Scalar& c : coords_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

bool CoordVector::operator==(const CoordVector& o) const {
  return n_ == o.n_ && field_ == o.field_ && coords_ == o.coords_;
}

namespace {

void require_compatible(const Subspace& a, const Subspace& b) {
  if (a.generators() != b.generators()) {
    throw Error(ErrorKind::DimensionMismatch, "subspaces over different n");
  }
  if (a.field() != b.field()) {
    throw Error(ErrorKind::FieldMismatch, "subspaces over different fields");
  }
}

}  // namespace

Subspace Subspace::zero(int n, const Field& field) {
  return rref(n, field, {});
}

bool Subspace::operator==(const Subspace& o) const {
  return n_ == o.n_ && field_ == o.field_ && rows_ == o.rows_;
}

int Subspace::compare(const Subspace& o) const {
  require_compatible(*this, o);
  if (dim() != o.dim()) return dim() < o.dim() ? -1 : 1;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (std::size_t c = 0; c < rows_[r].size(); ++c) {
      int cmp = rows_[r].get(c).compare(o.rows_[r].get(c));
      if (cmp != 0) return cmp;
    }
  }
  return 0;
}

Subspace rref(int n, const Field& field, std::vector<CoordVector> vectors) {
  check_generator_count(n);
  std::vector<Row> rows;
  rows.reserve(vectors.size());
  for (CoordVector& v : vectors) {
    if (v.generators() != n || v.field() != field) {
      throw Error(ErrorKind::DimensionMismatch,
                  "span vector incompatible with requested subspace");
    }
    if (!v.is_zero()) rows.push_back(v.coords());
  }
  std::vector<std::size_t> pivots = rref_in_place(rows);

  Subspace result(n, field);
  result.pivots_ = pivots;
  result.rows_.reserve(rows.size());
  result.supports_.reserve(rows.size());
  for (const Row& row : rows) {
    CoordVector cv(n, field);
    std::vector<std::size_t> support;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!row[c].is_zero()) {
        cv.set(c, row[c]);
        support.push_back(c);
      }
    }
    result.rows_.push_back(std::move(cv));
    result.supports_.push_back(std::move(support));
  }
  return result;
}

bool member(const Subspace& B, const CoordVector& v) {
  if (v.generators() != B.generators() || v.field() != B.field()) {
    throw Error(ErrorKind::DimensionMismatch,
                "membership test against an incompatible subspace");
  }
  Row work = v.coords();
  for (std::size_t r = 0; r < B.rows_.size(); ++r) {
    const Scalar& c = work[B.pivots_[r]];
    if (c.is_zero()) continue;
    Scalar factor = c;
    const Row& row = B.rows_[r].coords();
    for (std::size_t idx : B.supports_[r]) {
      work[idx] = work[idx] - factor * row[idx];
    }
  }
  for (const Scalar& c : work) {
    if (!c.is_zero()) return false;
  }
  return true;
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  require_compatible(a, b);
  std::vector<CoordVector> rows = a.rows();
  rows.insert(rows.end(), b.rows().begin(), b.rows().end());
  return rref(a.generators(), a.field(), std::move(rows));
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  require_compatible(a, b);
  const Field& field = a.field();
  std::size_t w = a.ambient_dim();

  // Zassenhaus: eliminate [x | x] for x in A stacked over [y | 0] for y in B;
  // rows whose left half vanished carry the intersection in the right half.
  std::vector<Row> rows;
  for (const CoordVector& x : a.rows()) {
    Row r(2 * w, Scalar::zero(field));
    for (std::size_t c = 0; c < w; ++c) {
      r[c] = x.get(c);
      r[w + c] = x.get(c);
    }
    rows.push_back(std::move(r));
  }
  for (const CoordVector& y : b.rows()) {
    Row r(2 * w, Scalar::zero(field));
    for (std::size_t c = 0; c < w; ++c) r[c] = y.get(c);
    rows.push_back(std::move(r));
  }
  std::vector<std::size_t> pivots = rref_in_place(rows);

  std::vector<CoordVector> inter;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (pivots[r] < w) continue;
    CoordVector cv(a.generators(), field);
    for (std::size_t c = 0; c < w; ++c) cv.set(c, rows[r][w + c]);
    inter.push_back(std::move(cv));
  }
  return rref(a.generators(), field, std::move(inter));
}

Subspace kernel_subspace(int n, const Field& field,
                         const std::vector<CoordVector>& equations) {
  check_generator_count(n);
  std::size_t w = std::size_t(1) << n;
  std::vector<Row> rows;
  rows.reserve(equations.size());
  for (const CoordVector& eq : equations) {
    if (eq.generators() != n || eq.field() != field) {
      throw Error(ErrorKind::DimensionMismatch, "equation row incompatible");
    }
    if (!eq.is_zero()) rows.push_back(eq.coords());
  }
  std::vector<Row> basis = kernel_basis(std::move(rows), w, field);
  std::vector<CoordVector> vectors;
  for (const Row& row : basis) {
    CoordVector cv(n, field);
    for (std::size_t c = 0; c < w; ++c) {
      if (!row[c].is_zero()) cv.set(c, row[c]);
    }
    vectors.push_back(std::move(cv));
  }
  return rref(n, field, std::move(vectors));
}

}  // namespace grasslab
