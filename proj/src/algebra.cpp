#include "nalength/algebra.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include "nalength/error.hpp"

namespace nalength {

namespace {

std::string pair_text(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

}  // namespace

Algebra::Algebra(std::string name, const FieldSpec& field, std::size_t dim,
                 std::map<IndexPair, Vector> products, std::optional<Vector> unit)
    : name_(std::move(name)), field_(field), dim_(dim), unit_(std::move(unit)), table_(dim * dim) {
  if (dim_ == 0) throw Error("algebra.invalid", "dimension must be at least 1");
  const int d = static_cast<int>(dim_);
  for (auto& [ij, value] : products) {
    auto [i, j] = ij;
    if (i < 1 || i > d || j < 1 || j > d)
      throw Error("algebra.invalid", "product index " + pair_text(i, j) + " out of range 1.." + std::to_string(d));
    if (value.size() != dim_)
      throw Error("algebra.invalid", "product " + pair_text(i, j) + " has " + std::to_string(value.size()) +
                                         " entries, expected " + std::to_string(dim_));
    for (const auto& s : value)
      if (!(s.field() == field_))
        throw Error("algebra.invalid", "product " + pair_text(i, j) + " has entries outside " + field_.to_string());
    if (is_zero(value)) continue;
    auto& terms = table_[static_cast<std::size_t>((i - 1) * d + (j - 1))];
    for (std::size_t k = 0; k < dim_; ++k)
      if (!value[k].is_zero()) terms.push_back(Term{k, value[k]});
    products_.emplace(ij, std::move(value));
  }
  if (unit_) {
    if (unit_->size() != dim_)
      throw Error("algebra.invalid", "unit vector has " + std::to_string(unit_->size()) + " entries, expected " +
                                         std::to_string(dim_));
    for (int i = 1; i <= d; ++i) {
      Vector e = basis_vector(i);
      if (multiply(*unit_, e) != e)
        throw Error("algebra.invalid", "unit * e_" + std::to_string(i) + " != e_" + std::to_string(i) +
                                           " (offending pair (unit," + std::to_string(i) + "))");
      if (multiply(e, *unit_) != e)
        throw Error("algebra.invalid", "e_" + std::to_string(i) + " * unit != e_" + std::to_string(i) +
                                           " (offending pair (" + std::to_string(i) + ",unit))");
    }
  }
}

const Vector* Algebra::product(int i, int j) const {
  auto it = products_.find({i, j});
  return it == products_.end() ? nullptr : &it->second;
}

Vector Algebra::basis_vector(int i) const {
  if (i < 1 || i > static_cast<int>(dim_))
    throw Error("algebra.invalid", "basis index " + std::to_string(i) + " out of range");
  return unit_vector(field_, dim_, static_cast<std::size_t>(i - 1));
}

Vector Algebra::multiply(const Vector& u, const Vector& v) const {
  if (u.size() != dim_ || v.size() != dim_)
    throw Error("exactfield.dimension_mismatch", "multiply: operands must have length " + std::to_string(dim_));
  Vector out = zero();
  for (std::size_t i = 0; i < dim_; ++i) {
    if (u[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (v[j].is_zero()) continue;
      const auto& terms = table_[i * dim_ + j];
      if (terms.empty()) continue;
      Scalar c = u[i] * v[j];
      for (const auto& t : terms) out[t.index] += c * t.coeff;
    }
  }
  return out;
}

Vector multiply(const Algebra& a, const Vector& u, const Vector& v) { return a.multiply(u, v); }

Family parse_family(const std::string& name) {
  if (name == "ed") return Family::Ed;
  if (name == "xd") return Family::Xd;
  if (name == "vd") return Family::Vd;
  if (name == "sl2") return Family::Sl2;
  if (name == "heisenberg") return Family::Heisenberg;
  if (name == "m7") return Family::M7;
  throw Error("algebra.invalid_params", "unknown example family '" + name + "'");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::Ed: return "ed";
    case Family::Xd: return "xd";
    case Family::Vd: return "vd";
    case Family::Sl2: return "sl2";
    case Family::Heisenberg: return "heisenberg";
    case Family::M7: return "m7";
  }
  return "?";
}

Algebra build_example(const ExampleParams& params) {
  const FieldSpec& f = params.field;
  std::map<IndexPair, Vector> prod;
  auto set = [&](std::size_t dim, int i, int j, int k, std::int64_t c) {
    Vector v = zero_vector(f, dim);
    v[static_cast<std::size_t>(k - 1)] = Scalar::from_int(c, f);
    prod[{i, j}] = std::move(v);
  };
  const int d = static_cast<int>(params.d);
  const int k = static_cast<int>(params.k);

  switch (params.family) {
    case Family::Ed:
    case Family::Xd: {
      if (!(d >= k && k >= 2))
        throw Error("algebra.invalid_params", "Ed/Xd require d >= k >= 2 (got d=" + std::to_string(d) +
                                                  ", k=" + std::to_string(k) + ")");
      bool left = params.family == Family::Ed;
      for (int j = 1; j <= k - 2; ++j) left ? set(params.d, j, 1, j + 1, 1) : set(params.d, 1, j, j + 1, 1);
      for (int i = k - 1; i <= d - 1; ++i)
        left ? set(params.d, i, k - 1, i + 1, 1) : set(params.d, k - 1, i, i + 1, 1);
      std::string name = std::string(left ? "E_" : "X_") + std::to_string(d) + "(k=" + std::to_string(k) + ")";
      return Algebra(name, f, params.d, std::move(prod));
    }
    case Family::Vd: {
      if (d < 4) throw Error("algebra.invalid_params", "Vd requires d >= 4 (got d=" + std::to_string(d) + ")");
      for (int i = 1; i <= d; ++i)
        for (int j = 1; i + j <= d - 1; ++j) set(params.d, i, j, i + j, 1);
      set(params.d, d - 1, d - 2, d, 1);
      return Algebra("V_" + std::to_string(d), f, params.d, std::move(prod));
    }
    case Family::Sl2: {
      // h = e1, e = e2, f = e3
      set(3, 1, 2, 2, 2);
      set(3, 2, 1, 2, -2);
      set(3, 1, 3, 3, -2);
      set(3, 3, 1, 3, 2);
      set(3, 2, 3, 1, 1);
      set(3, 3, 2, 1, -1);
      return Algebra("sl2", f, 3, std::move(prod));
    }
    case Family::Heisenberg: {
      set(3, 1, 2, 3, 1);
      set(3, 2, 1, 3, -1);
      return Algebra("heisenberg", f, 3, std::move(prod));
    }
    case Family::M7: {
      static constexpr std::array<std::array<int, 3>, 7> kFano = {{
          {1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 6, 5},
      }};
      for (const auto& t : kFano) {
        for (int r = 0; r < 3; ++r) {
          int a = t[r], b = t[(r + 1) % 3], c = t[(r + 2) % 3];
          set(7, a, b, c, 2);
          set(7, b, a, c, -2);
        }
      }
      return Algebra("m7", f, 7, std::move(prod));
    }
  }
  throw Error("algebra.invalid_params", "unknown family");
}

Algebra adjoin_unit(const Algebra& a) {
  const std::size_t n = a.dim() + 1;
  const int u = static_cast<int>(n);
  std::map<IndexPair, Vector> prod;
  for (const auto& [ij, v] : a.products()) {
    Vector w = v;
    w.push_back(Scalar::zero(a.field()));
    prod[ij] = std::move(w);
  }
  for (int i = 1; i <= u; ++i) {
    Vector e = unit_vector(a.field(), n, static_cast<std::size_t>(i - 1));
    prod[{u, i}] = e;
    prod[{i, u}] = e;
  }
  return Algebra(a.name() + "+1", a.field(), n, std::move(prod),
                 unit_vector(a.field(), n, n - 1));
}

nlohmann::json field_to_json(const FieldSpec& f) {
  if (f.is_prime_field()) return nlohmann::json{{"prime", f.modulus()}};
  return "Q";
}

FieldSpec field_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "Q") throw Error("algebra.parse", "field: expected \"Q\" or {\"prime\": p}");
    return FieldSpec::rationals();
  }
  if (j.is_object() && j.contains("prime") && j.at("prime").is_number_unsigned())
    return FieldSpec::prime(j.at("prime").get<std::uint64_t>());
  throw Error("algebra.parse", "field: expected \"Q\" or {\"prime\": p}");
}

nlohmann::json to_json(const Algebra& a) {
  nlohmann::json j;
  j["name"] = a.name();
  j["field"] = field_to_json(a.field());
  j["dim"] = a.dim();
  j["unital"] = a.unital();
  if (a.unital()) j["unit"] = to_strings(*a.unit());
  nlohmann::json products = nlohmann::json::array();
  for (const auto& [ij, v] : a.products())
    products.push_back({{"i", ij.first}, {"j", ij.second}, {"value", to_strings(v)}});
  j["products"] = std::move(products);
  return j;
}

namespace {

const nlohmann::json& require(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    throw Error("algebra.parse", where + ": missing field \"" + key + "\"");
  return j.at(key);
}

Vector parse_scalar_array(const nlohmann::json& arr, const FieldSpec& f, const std::string& where) {
  if (!arr.is_array()) throw Error("algebra.parse", where + ": expected an array of scalar strings");
  Vector v;
  for (std::size_t idx = 0; idx < arr.size(); ++idx) {
    if (!arr[idx].is_string())
      throw Error("algebra.parse", where + "[" + std::to_string(idx) + "]: expected a scalar string");
    try {
      v.push_back(Scalar::parse(arr[idx].get<std::string>(), f));
    } catch (const Error& e) {
      throw Error("algebra.parse", where + "[" + std::to_string(idx) + "]: " + e.what());
    }
  }
  return v;
}

}  // namespace

Algebra algebra_from_json(const nlohmann::json& j) {
  const auto& name = require(j, "name", "algebra");
  if (!name.is_string()) throw Error("algebra.parse", "name: expected a string");
  FieldSpec field = field_from_json(require(j, "field", "algebra"));
  const auto& dim_j = require(j, "dim", "algebra");
  if (!dim_j.is_number_unsigned() || dim_j.get<std::size_t>() == 0)
    throw Error("algebra.parse", "dim: expected a positive integer");
  const std::size_t dim = dim_j.get<std::size_t>();
  const auto& unital_j = require(j, "unital", "algebra");
  if (!unital_j.is_boolean()) throw Error("algebra.parse", "unital: expected a boolean");

  std::optional<Vector> unit;
  if (unital_j.get<bool>()) {
    unit = parse_scalar_array(require(j, "unit", "algebra"), field, "unit");
    if (unit->size() != dim)
      throw Error("algebra.parse", "unit: expected " + std::to_string(dim) + " scalars, got " +
                                       std::to_string(unit->size()));
  } else if (j.contains("unit")) {
    throw Error("algebra.parse", "unit: present but unital is false");
  }

  std::map<IndexPair, Vector> products;
  const auto& list = require(j, "products", "algebra");
  if (!list.is_array()) throw Error("algebra.parse", "products: expected an array");
  for (std::size_t n = 0; n < list.size(); ++n) {
    std::string where = "products[" + std::to_string(n) + "]";
    const auto& i_j = require(list[n], "i", where);
    const auto& j_j = require(list[n], "j", where);
    if (!i_j.is_number_integer() || !j_j.is_number_integer())
      throw Error("algebra.parse", where + ": i and j must be integers");
    int i = i_j.get<int>(), jj = j_j.get<int>();
    where += " " + pair_text(i, jj);
    if (i < 1 || jj < 1 || i > static_cast<int>(dim) || jj > static_cast<int>(dim))
      throw Error("algebra.parse", where + ": index out of range 1.." + std::to_string(dim));
    Vector value = parse_scalar_array(require(list[n], "value", where), field, where + ".value");
    if (value.size() != dim)
      throw Error("algebra.parse", where + ": value has " + std::to_string(value.size()) +
                                       " scalars, expected " + std::to_string(dim));
    if (!products.emplace(IndexPair{i, jj}, std::move(value)).second)
      throw Error("algebra.parse", where + ": duplicate product entry");
  }
  return Algebra(name.get<std::string>(), field, dim, std::move(products), std::move(unit));
}

Algebra load_algebra(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("algebra.io", "cannot open " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("algebra.parse", path.string() + ": " + e.what());
  }
  return algebra_from_json(j);
}

void save_algebra(const Algebra& a, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("algebra.io", "cannot write " + path.string());
  out << to_json(a).dump(2) << '\n';
}

}  // namespace nalength
