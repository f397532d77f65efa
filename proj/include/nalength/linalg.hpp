#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "nalength/field.hpp"

namespace nalength {

/// Dense row-major matrix over a FieldSpec.
class Matrix {
 public:
  Matrix(const FieldSpec& field, std::size_t rows, std::size_t cols);
  /// `entries` must have rows * cols elements.
  Matrix(const FieldSpec& field, std::size_t rows, std::size_t cols, std::vector<Scalar> entries);
  static Matrix from_rows(const FieldSpec& field, const std::vector<Vector>& rows, std::size_t cols);
  static Matrix from_columns(const FieldSpec& field, const std::vector<Vector>& columns, std::size_t rows);
  static Matrix identity(const FieldSpec& field, std::size_t n);

  const FieldSpec& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  Vector row(std::size_t r) const;
  Vector apply(const Vector& x) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  FieldSpec field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> entries_;
};

struct RrefResult {
  Matrix reduced;
  std::size_t rank;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form; zero rows are moved to the bottom.
RrefResult rref(const Matrix& m);

/// A subspace of F^n held as the unique RREF of any spanning set, with zero
/// rows dropped. Two values are equal iff they span the same subspace.
class SubspaceBasis {
 public:
  SubspaceBasis(const FieldSpec& field, std::size_t ambient_dim);
  static SubspaceBasis span_of(const FieldSpec& field, std::size_t ambient_dim,
                               const std::vector<Vector>& vectors);
  static SubspaceBasis whole_space(const FieldSpec& field, std::size_t ambient_dim);

  const FieldSpec& field() const { return field_; }
  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<Vector>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Adds v to the span in place; returns true iff the span grew.
  bool insert(const Vector& v);
  /// v minus its projection along the pivots; zero iff v is in the span.
  Vector reduce(Vector v) const;
  bool contains(const Vector& v) const;
  /// Coordinates of v in `rows()`, or nullopt if v is outside the span.
  std::optional<Vector> coordinates(const Vector& v) const;
  bool is_subspace_of(const SubspaceBasis& other) const;

  friend bool operator==(const SubspaceBasis&, const SubspaceBasis&) = default;

 private:
  void check_length(const Vector& v) const;

  FieldSpec field_;
  std::size_t ambient_dim_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

std::pair<SubspaceBasis, bool> extend_basis(const SubspaceBasis& b, const Vector& v);
std::optional<Vector> membership(const SubspaceBasis& b, const Vector& v);

struct AffineSolution {
  Vector particular;
  SubspaceBasis nullspace;
};

/// Solves m * c = v. Free variables of the particular solution are zero.
std::optional<AffineSolution> solve_affine(const Matrix& m, const Vector& v);

}  // namespace nalength
