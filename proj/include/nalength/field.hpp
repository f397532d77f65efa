#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace nalength {

enum class FieldKind { Rationals, PrimeField };

/// The base field: Q, or GF(p) for a prime p.
class FieldSpec {
 public:
  static FieldSpec rationals() { return FieldSpec(FieldKind::Rationals, 0); }
  /// Throws Error("exactfield.not_prime") unless p is prime.
  static FieldSpec prime(std::uint64_t p);
  /// Accepts "Q", "p" (a decimal prime) or "GF(p)".
  static FieldSpec parse(std::string_view text);

  FieldKind kind() const { return kind_; }
  bool is_prime_field() const { return kind_ == FieldKind::PrimeField; }
  /// The prime p; zero for Q.
  std::uint32_t modulus() const { return p_; }
  std::uint32_t characteristic() const { return p_; }

  /// "Q" or "GF(p)".
  std::string to_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  friend class Scalar;
  FieldSpec(FieldKind kind, std::uint32_t p) : kind_(kind), p_(p) {}

  FieldKind kind_;
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

/// A field element in canonical form: a reduced fraction with positive
/// denominator, or a residue in [0, p-1]. Elements remember their field, and
/// mixing fields in one operation throws.
class Scalar {
 public:
  static Scalar zero(const FieldSpec& field);
  static Scalar one(const FieldSpec& field);
  static Scalar from_int(std::int64_t value, const FieldSpec& field);
  /// num/den mapped into the field; den must be invertible.
  static Scalar from_fraction(const mpz_class& num, const mpz_class& den,
                              const FieldSpec& field);
  /// Rationals: "n" or "n/d". Prime fields: an integer or fraction, reduced mod p.
  static Scalar parse(std::string_view text, const FieldSpec& field);

  FieldSpec field() const;
  bool is_zero() const;
  bool is_one() const;
  Scalar inverse() const;
  std::string to_string() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  struct Residue {
    std::uint32_t value;
    std::uint32_t modulus;
  };

  explicit Scalar(Residue r) : rep_(r) {}
  explicit Scalar(mpq_class q) : rep_(std::move(q)) {}

  void check_same_field(const Scalar& o) const;

  std::variant<Residue, mpq_class> rep_;
};

using Vector = std::vector<Scalar>;

Vector zero_vector(const FieldSpec& field, std::size_t n);
/// e_i with 0-based position `index`.
Vector unit_vector(const FieldSpec& field, std::size_t n, std::size_t index);
bool is_zero(const Vector& v);
Vector add(const Vector& a, const Vector& b);
Vector subtract(const Vector& a, const Vector& b);
Vector scale(const Scalar& s, const Vector& v);
/// y += s * x
void axpy(const Scalar& s, const Vector& x, Vector& y);

std::vector<std::string> to_strings(const Vector& v);
Vector parse_vector(const std::vector<std::string>& items, const FieldSpec& field);
/// "1,0,-1/2" style; used by the CLI.
Vector parse_vector(std::string_view comma_separated, const FieldSpec& field);

}  // namespace nalength
