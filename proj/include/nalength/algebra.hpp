#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nalength/field.hpp"

namespace nalength {

/// Basis index pair (i, j), 1-based, meaning the product e_i e_j.
using IndexPair = std::pair<int, int>;

/// A finite-dimensional algebra given by structure constants. Basis indices
/// in the public interface are 1-based; vectors are ordinary 0-based arrays
/// of coordinates, so e_i is `unit_vector(field, dim, i - 1)`.
class Algebra {
 public:
  /// Zero products are dropped. Throws Error("algebra.invalid") on a product
  /// of the wrong length, an out-of-range index, or a unit vector that does
  /// not act as an identity on the basis.
  Algebra(std::string name, const FieldSpec& field, std::size_t dim,
          std::map<IndexPair, Vector> products, std::optional<Vector> unit = std::nullopt);

  const std::string& name() const { return name_; }
  const FieldSpec& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  bool unital() const { return unit_.has_value(); }
  const std::optional<Vector>& unit() const { return unit_; }
  const std::map<IndexPair, Vector>& products() const { return products_; }

  /// e_i e_j, or nullptr when the product is zero.
  const Vector* product(int i, int j) const;
  Vector basis_vector(int i) const;
  Vector zero() const { return zero_vector(field_, dim_); }

  /// Bilinear extension of the structure constants.
  Vector multiply(const Vector& u, const Vector& v) const;

  friend bool operator==(const Algebra& a, const Algebra& b) {
    return a.name_ == b.name_ && a.field_ == b.field_ && a.dim_ == b.dim_ && a.unit_ == b.unit_ &&
           a.products_ == b.products_;
  }

 private:
  struct Term {
    std::size_t index;
    Scalar coeff;
  };

  std::string name_;
  FieldSpec field_;
  std::size_t dim_;
  std::map<IndexPair, Vector> products_;
  std::optional<Vector> unit_;
  // table_[(i-1)*dim + (j-1)] lists the nonzero coordinates of e_i e_j
  std::vector<std::vector<Term>> table_;
};

Vector multiply(const Algebra& a, const Vector& u, const Vector& v);

enum class Family { Ed, Xd, Vd, Sl2, Heisenberg, M7 };

struct ExampleParams {
  Family family;
  std::size_t d = 0;
  std::size_t k = 0;
  FieldSpec field = FieldSpec::rationals();
};

Family parse_family(const std::string& name);
std::string family_name(Family f);

/// Ed:  x_j x_1 = x_{j+1} (j < k-1), x_i x_{k-1} = x_{i+1} (k-1 <= i < d).
/// Xd:  x_1 x_j = x_{j+1} (j < k-1), x_{k-1} x_i = x_{i+1} (k-1 <= i < d).
/// Vd:  x_i x_j = x_{i+j} (i+j <= d-1), x_{d-1} x_{d-2} = x_d.
/// sl2 on (h, e, f), the 3-dim Heisenberg algebra, and m7, the commutator
/// algebra of the imaginary octonions (products 2 e_k on the Fano triples).
Algebra build_example(const ExampleParams& params);

/// A ⊕ F·1 with the new unit as the last basis vector.
Algebra adjoin_unit(const Algebra& a);

nlohmann::json to_json(const Algebra& a);
Algebra algebra_from_json(const nlohmann::json& j);
Algebra load_algebra(const std::filesystem::path& path);
void save_algebra(const Algebra& a, const std::filesystem::path& path);

nlohmann::json field_to_json(const FieldSpec& f);
FieldSpec field_from_json(const nlohmann::json& j);

}  // namespace nalength
