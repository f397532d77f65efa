#include "nalength/linalg.hpp"

#include <algorithm>
#include <string>

#include "nalength/error.hpp"

namespace nalength {

namespace {

[[noreturn]] void dimension_mismatch(const std::string& what, std::size_t expected, std::size_t got) {
  throw Error("exactfield.dimension_mismatch",
              what + ": expected length " + std::to_string(expected) + ", got " + std::to_string(got));
}

}  // namespace

Matrix::Matrix(const FieldSpec& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, Scalar::zero(field)) {}

Matrix::Matrix(const FieldSpec& field, std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : field_(field), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) dimension_mismatch("matrix entries", rows * cols, entries_.size());
}

Matrix Matrix::from_rows(const FieldSpec& field, const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) dimension_mismatch("matrix row", cols, rows[r].size());
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::from_columns(const FieldSpec& field, const std::vector<Vector>& columns, std::size_t rows) {
  Matrix m(field, rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) dimension_mismatch("matrix column", rows, columns[c].size());
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

Matrix Matrix::identity(const FieldSpec& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(field);
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::apply(const Vector& x) const {
  if (x.size() != cols_) dimension_mismatch("matrix-vector product", cols_, x.size());
  Vector y = zero_vector(field_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (!x[c].is_zero() && !(*this)(r, c).is_zero()) y[r] += (*this)(r, c) * x[c];
  return y;
}

RrefResult rref(const Matrix& m) {
  Matrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < a.cols() && lead_row < a.rows(); ++c) {
    std::size_t pr = lead_row;
    while (pr < a.rows() && a(pr, c).is_zero()) ++pr;
    if (pr == a.rows()) continue;
    if (pr != lead_row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(pr, j), a(lead_row, j));
    Scalar inv = a(lead_row, c).inverse();
    for (std::size_t j = c; j < a.cols(); ++j) a(lead_row, j) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == lead_row || a(r, c).is_zero()) continue;
      Scalar f = a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (!a(lead_row, j).is_zero()) a(r, j) -= f * a(lead_row, j);
    }
    pivots.push_back(c);
    ++lead_row;
  }
  return RrefResult{std::move(a), pivots.size(), std::move(pivots)};
}

SubspaceBasis::SubspaceBasis(const FieldSpec& field, std::size_t ambient_dim)
    : field_(field), ambient_dim_(ambient_dim) {}

SubspaceBasis SubspaceBasis::span_of(const FieldSpec& field, std::size_t ambient_dim,
                                     const std::vector<Vector>& vectors) {
  SubspaceBasis b(field, ambient_dim);
  for (const auto& v : vectors) b.insert(v);
  return b;
}

SubspaceBasis SubspaceBasis::whole_space(const FieldSpec& field, std::size_t ambient_dim) {
  SubspaceBasis b(field, ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    b.rows_.push_back(unit_vector(field, ambient_dim, i));
    b.pivots_.push_back(i);
  }
  return b;
}

void SubspaceBasis::check_length(const Vector& v) const {
  if (v.size() != ambient_dim_) dimension_mismatch("subspace vector", ambient_dim_, v.size());
}

Vector SubspaceBasis::reduce(Vector v) const {
  check_length(v);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Scalar& coeff = v[pivots_[i]];
    if (coeff.is_zero()) continue;
    Scalar f = coeff;
    const Vector& row = rows_[i];
    for (std::size_t j = pivots_[i]; j < ambient_dim_; ++j)
      if (!row[j].is_zero()) v[j] -= f * row[j];
  }
  return v;
}

bool SubspaceBasis::insert(const Vector& v) {
  Vector r = reduce(v);
  auto lead = std::find_if(r.begin(), r.end(), [](const Scalar& s) { return !s.is_zero(); });
  if (lead == r.end()) return false;
  std::size_t c = static_cast<std::size_t>(lead - r.begin());
  Scalar inv = r[c].inverse();
  for (std::size_t j = c; j < ambient_dim_; ++j) r[j] *= inv;
  for (auto& row : rows_) {
    if (row[c].is_zero()) continue;
    Scalar f = row[c];
    for (std::size_t j = c; j < ambient_dim_; ++j)
      if (!r[j].is_zero()) row[j] -= f * r[j];
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), c);
  auto idx = pos - pivots_.begin();
  pivots_.insert(pos, c);
  rows_.insert(rows_.begin() + idx, std::move(r));
  return true;
}

bool SubspaceBasis::contains(const Vector& v) const { return is_zero(reduce(v)); }

std::optional<Vector> SubspaceBasis::coordinates(const Vector& v) const {
  check_length(v);
  Vector coords;
  coords.reserve(rows_.size());
  for (std::size_t p : pivots_) coords.push_back(v[p]);
  Vector rebuilt = zero_vector(field_, ambient_dim_);
  for (std::size_t i = 0; i < rows_.size(); ++i) axpy(coords[i], rows_[i], rebuilt);
  if (rebuilt != v) return std::nullopt;
  return coords;
}

bool SubspaceBasis::is_subspace_of(const SubspaceBasis& other) const {
  return std::all_of(rows_.begin(), rows_.end(), [&](const Vector& r) { return other.contains(r); });
}

std::pair<SubspaceBasis, bool> extend_basis(const SubspaceBasis& b, const Vector& v) {
  SubspaceBasis out = b;
  bool grew = out.insert(v);
  return {std::move(out), grew};
}

std::optional<Vector> membership(const SubspaceBasis& b, const Vector& v) { return b.coordinates(v); }

std::optional<AffineSolution> solve_affine(const Matrix& m, const Vector& v) {
  if (v.size() != m.rows()) dimension_mismatch("right-hand side", m.rows(), v.size());
  const std::size_t n = m.cols();
  Matrix aug(m.field(), m.rows(), n + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n) = v[r];
  }
  RrefResult red = rref(aug);
  if (!red.pivots.empty() && red.pivots.back() == n) return std::nullopt;

  Vector particular = zero_vector(m.field(), n);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t i = 0; i < red.rank; ++i) {
    particular[red.pivots[i]] = red.reduced(i, n);
    is_pivot[red.pivots[i]] = true;
  }
  SubspaceBasis null(m.field(), n);
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector x = zero_vector(m.field(), n);
    x[f] = Scalar::one(m.field());
    for (std::size_t i = 0; i < red.rank; ++i) x[red.pivots[i]] = -red.reduced(i, f);
    null.insert(x);
  }
  return AffineSolution{std::move(particular), std::move(null)};
}

}  // namespace nalength
