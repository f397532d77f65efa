#include "nalength/field.hpp"

#include <cctype>
#include <sstream>

#include "nalength/error.hpp"

namespace nalength {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::uint32_t reduce_mod(const mpz_class& z, std::uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return static_cast<std::uint32_t>(r.get_ui());
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  // extended Euclid on signed 64-bit values
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p > 0xFFFFFFFFull || !is_prime(p))
    throw Error("exactfield.not_prime", "field modulus " + std::to_string(p) + " is not a supported prime");
  return FieldSpec(FieldKind::PrimeField, static_cast<std::uint32_t>(p));
}

FieldSpec FieldSpec::parse(std::string_view text) {
  text = trim(text);
  if (text == "Q" || text == "q") return rationals();
  if (text.size() > 4 && text.substr(0, 3) == "GF(" && text.back() == ')')
    text = text.substr(3, text.size() - 4);
  if (!all_digits(text) || text.size() > 10)
    throw Error("exactfield.bad_field", "unrecognized field '" + std::string(text) + "'");
  return prime(std::stoull(std::string(text)));
}

std::string FieldSpec::to_string() const {
  if (kind_ == FieldKind::Rationals) return "Q";
  return "GF(" + std::to_string(p_) + ")";
}

Scalar Scalar::zero(const FieldSpec& field) {
  if (field.is_prime_field()) return Scalar(Residue{0, field.modulus()});
  return Scalar(mpq_class(0));
}

Scalar Scalar::one(const FieldSpec& field) {
  if (field.is_prime_field()) return Scalar(Residue{1 % field.modulus(), field.modulus()});
  return Scalar(mpq_class(1));
}

Scalar Scalar::from_int(std::int64_t value, const FieldSpec& field) {
  if (field.is_prime_field()) {
    std::int64_t p = field.modulus();
    std::int64_t r = value % p;
    if (r < 0) r += p;
    return Scalar(Residue{static_cast<std::uint32_t>(r), field.modulus()});
  }
  return Scalar(mpq_class(static_cast<long>(value)));
}

Scalar Scalar::from_fraction(const mpz_class& num, const mpz_class& den, const FieldSpec& field) {
  if (den == 0) throw Error("exactfield.division_by_zero", "zero denominator");
  if (field.is_prime_field()) {
    std::uint32_t p = field.modulus();
    std::uint32_t d = reduce_mod(den, p);
    if (d == 0)
      throw Error("exactfield.division_by_zero",
                  "denominator is divisible by the characteristic " + std::to_string(p));
    std::uint64_t v = static_cast<std::uint64_t>(reduce_mod(num, p)) * inverse_mod(d, p) % p;
    return Scalar(Residue{static_cast<std::uint32_t>(v), p});
  }
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(std::move(q));
}

Scalar Scalar::parse(std::string_view text, const FieldSpec& field) {
  std::string_view s = trim(text);
  std::string_view body = s;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  std::string_view num_text = body, den_text = "1";
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    num_text = body.substr(0, slash);
    den_text = body.substr(slash + 1);
  }
  if (!all_digits(num_text) || !all_digits(den_text))
    throw Error("exactfield.parse", "malformed scalar '" + std::string(text) + "'");
  mpz_class num{std::string(num_text)};
  mpz_class den{std::string(den_text)};
  if (negative) num = -num;
  if (den == 0) throw Error("exactfield.parse", "zero denominator in '" + std::string(text) + "'");
  return from_fraction(num, den, field);
}

FieldSpec Scalar::field() const {
  if (const auto* r = std::get_if<Residue>(&rep_)) return FieldSpec(FieldKind::PrimeField, r->modulus);
  return FieldSpec::rationals();
}

bool Scalar::is_zero() const {
  if (const auto* r = std::get_if<Residue>(&rep_)) return r->value == 0;
  return sgn(std::get<mpq_class>(rep_)) == 0;
}

bool Scalar::is_one() const {
  if (const auto* r = std::get_if<Residue>(&rep_)) return r->value == 1;
  return std::get<mpq_class>(rep_) == 1;
}

void Scalar::check_same_field(const Scalar& o) const {
  const auto* a = std::get_if<Residue>(&rep_);
  const auto* b = std::get_if<Residue>(&o.rep_);
  if ((a == nullptr) != (b == nullptr) || (a && a->modulus != b->modulus))
    throw Error("exactfield.field_mismatch", "operands belong to different fields");
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error("exactfield.division_by_zero", "inverse of zero");
  if (const auto* r = std::get_if<Residue>(&rep_))
    return Scalar(Residue{inverse_mod(r->value, r->modulus), r->modulus});
  mpq_class inv = 1 / std::get<mpq_class>(rep_);
  return Scalar(std::move(inv));
}

std::string Scalar::to_string() const {
  if (const auto* r = std::get_if<Residue>(&rep_)) return std::to_string(r->value);
  return std::get<mpq_class>(rep_).get_str();
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same_field(o);
  if (auto* r = std::get_if<Residue>(&rep_)) {
    std::uint64_t v = static_cast<std::uint64_t>(r->value) + std::get<Residue>(o.rep_).value;
    r->value = static_cast<std::uint32_t>(v % r->modulus);
  } else {
    std::get<mpq_class>(rep_) += std::get<mpq_class>(o.rep_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same_field(o);
  if (auto* r = std::get_if<Residue>(&rep_)) {
    std::uint64_t v = static_cast<std::uint64_t>(r->value) + r->modulus - std::get<Residue>(o.rep_).value;
    r->value = static_cast<std::uint32_t>(v % r->modulus);
  } else {
    std::get<mpq_class>(rep_) -= std::get<mpq_class>(o.rep_);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same_field(o);
  if (auto* r = std::get_if<Residue>(&rep_)) {
    std::uint64_t v = static_cast<std::uint64_t>(r->value) * std::get<Residue>(o.rep_).value;
    r->value = static_cast<std::uint32_t>(v % r->modulus);
  } else {
    std::get<mpq_class>(rep_) *= std::get<mpq_class>(o.rep_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same_field(o);
  return *this *= o.inverse();
}

Scalar Scalar::operator-() const {
  if (const auto* r = std::get_if<Residue>(&rep_))
    return Scalar(Residue{r->value == 0 ? 0 : r->modulus - r->value, r->modulus});
  mpq_class neg = -std::get<mpq_class>(rep_);
  return Scalar(std::move(neg));
}

bool operator==(const Scalar& a, const Scalar& b) {
  const auto* ra = std::get_if<Scalar::Residue>(&a.rep_);
  const auto* rb = std::get_if<Scalar::Residue>(&b.rep_);
  if (ra && rb) return ra->value == rb->value && ra->modulus == rb->modulus;
  if (!ra && !rb) return std::get<mpq_class>(a.rep_) == std::get<mpq_class>(b.rep_);
  return false;
}

Vector zero_vector(const FieldSpec& field, std::size_t n) { return Vector(n, Scalar::zero(field)); }

Vector unit_vector(const FieldSpec& field, std::size_t n, std::size_t index) {
  Vector v = zero_vector(field, n);
  if (index >= n) throw Error("exactfield.dimension_mismatch", "unit vector index out of range");
  v[index] = Scalar::one(field);
  return v;
}

bool is_zero(const Vector& v) {
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

namespace {
void check_len(const Vector& a, const Vector& b) {
  if (a.size() != b.size())
    throw Error("exactfield.dimension_mismatch",
                "vector lengths " + std::to_string(a.size()) + " and " + std::to_string(b.size()) + " differ");
}
}  // namespace

Vector add(const Vector& a, const Vector& b) {
  check_len(a, b);
  Vector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vector subtract(const Vector& a, const Vector& b) {
  check_len(a, b);
  Vector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vector scale(const Scalar& s, const Vector& v) {
  Vector r = v;
  for (auto& x : r) x *= s;
  return r;
}

void axpy(const Scalar& s, const Vector& x, Vector& y) {
  check_len(x, y);
  if (s.is_zero()) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) y[i] += s * x[i];
}

std::vector<std::string> to_strings(const Vector& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(s.to_string());
  return out;
}

Vector parse_vector(const std::vector<std::string>& items, const FieldSpec& field) {
  Vector v;
  v.reserve(items.size());
  for (const auto& s : items) v.push_back(Scalar::parse(s, field));
  return v;
}

Vector parse_vector(std::string_view comma_separated, const FieldSpec& field) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in{std::string(comma_separated)};
  while (std::getline(in, item, ',')) items.push_back(item);
  return parse_vector(items, field);
}

}  // namespace nalength
