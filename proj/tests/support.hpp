#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "nalength/algebra.hpp"
#include "nalength/field.hpp"

namespace nalength::testing {

inline Scalar random_scalar(std::mt19937_64& rng, const FieldSpec& f) {
  if (f.is_prime_field()) return Scalar::from_int(static_cast<std::int64_t>(rng() % f.modulus()), f);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  return Scalar::from_fraction(num(rng), den(rng), f);
}

inline Vector random_vec(std::mt19937_64& rng, const FieldSpec& f, std::size_t n) {
  Vector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_scalar(rng, f));
  return v;
}

// Sparse random structure constants; each product is nonzero with
// probability `density`.
inline Algebra random_algebra(std::mt19937_64& rng, const FieldSpec& f, std::size_t d, double density = 0.4) {
  std::map<IndexPair, Vector> products;
  std::bernoulli_distribution pick(density);
  for (std::size_t i = 1; i <= d; ++i)
    for (std::size_t j = 1; j <= d; ++j)
      if (pick(rng)) products[{static_cast<int>(i), static_cast<int>(j)}] = random_vec(rng, f, d);
  return Algebra("random", f, d, std::move(products));
}

inline Vector e(const Algebra& a, int i) { return a.basis_vector(i); }

inline Vector vec(const FieldSpec& f, std::initializer_list<std::int64_t> xs) {
  Vector v;
  for (auto x : xs) v.push_back(Scalar::from_int(x, f));
  return v;
}

}  // namespace nalength::testing
