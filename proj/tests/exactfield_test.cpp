#include <gtest/gtest.h>

#include <set>

#include "nalength/error.hpp"
#include "nalength/field.hpp"
#include "nalength/linalg.hpp"
#include "support.hpp"

using namespace nalength;
using namespace nalength::testing;

namespace {

// Every vector in the row space, by enumerating all p^rows combinations.
std::set<std::vector<std::string>> row_space(const Matrix& m) {
  const std::uint32_t p = m.field().modulus();
  std::set<std::vector<std::string>> out;
  std::vector<std::uint32_t> c(m.rows(), 0);
  while (true) {
    Vector v = zero_vector(m.field(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) axpy(Scalar::from_int(c[r], m.field()), m.row(r), v);
    out.insert(to_strings(v));
    std::size_t i = 0;
    while (i < c.size() && ++c[i] == p) c[i++] = 0;
    if (i == c.size()) break;
  }
  return out;
}

}  // namespace

TEST(FieldSpec, ParsesAndCompares) {
  EXPECT_EQ(FieldSpec::parse("Q"), FieldSpec::rationals());
  EXPECT_EQ(FieldSpec::parse("7"), FieldSpec::prime(7));
  EXPECT_EQ(FieldSpec::parse("GF(5)"), FieldSpec::prime(5));
  EXPECT_NE(FieldSpec::prime(5), FieldSpec::prime(7));
  EXPECT_EQ(FieldSpec::prime(3).to_string(), "GF(3)");
  EXPECT_THROW(FieldSpec::prime(6), Error);
  EXPECT_THROW(FieldSpec::parse("R"), Error);
}

TEST(Scalar, CanonicalText) {
  const FieldSpec q = FieldSpec::rationals(), f5 = FieldSpec::prime(5);
  EXPECT_EQ(Scalar::parse("-4/6", q).to_string(), "-2/3");
  EXPECT_EQ(Scalar::parse("6/3", q).to_string(), "2");
  EXPECT_EQ(Scalar::parse("-1", f5).to_string(), "4");
  EXPECT_EQ(Scalar::parse("1/2", f5).to_string(), "3");
  EXPECT_EQ(Scalar::parse("2/4", q), Scalar::parse("1/2", q));
  EXPECT_THROW(Scalar::parse("1/0", q), Error);
  EXPECT_THROW(Scalar::parse("abc", q), Error);
  EXPECT_THROW(Scalar::parse("1/5", f5), Error);
}

TEST(Scalar, MixedFieldsThrow) {
  EXPECT_THROW(Scalar::one(FieldSpec::prime(5)) + Scalar::one(FieldSpec::prime(7)), Error);
  EXPECT_THROW(Scalar::zero(FieldSpec::rationals()).inverse(), Error);
}

TEST(Scalar, FieldAxiomsOnRandomTriples) {
  std::mt19937_64 rng(11);
  for (const FieldSpec& f : {FieldSpec::rationals(), FieldSpec::prime(2), FieldSpec::prime(5), FieldSpec::prime(7),
                             FieldSpec::prime(101)}) {
    for (int i = 0; i < 1000; ++i) {
      Scalar a = random_scalar(rng, f), b = random_scalar(rng, f), c = random_scalar(rng, f);
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_TRUE((a + (-a)).is_zero());
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ(a * b, b * a);
      if (!a.is_zero()) EXPECT_TRUE((a * a.inverse()).is_one());
      EXPECT_EQ(Scalar::parse(a.to_string(), f), a);
    }
  }
}

TEST(Rref, Identity) {
  const FieldSpec q = FieldSpec::rationals();
  RrefResult r = rref(Matrix::identity(q, 3));
  EXPECT_EQ(r.reduced, Matrix::identity(q, 3));
  EXPECT_EQ(r.rank, 3u);
}

TEST(Rref, Zero) {
  const FieldSpec q = FieldSpec::rationals();
  RrefResult r = rref(Matrix(q, 2, 4));
  EXPECT_EQ(r.reduced, Matrix(q, 2, 4));
  EXPECT_EQ(r.rank, 0u);
}

TEST(Rref, SmallGF5) {
  const FieldSpec f = FieldSpec::prime(5);
  Matrix m = Matrix::from_rows(f, {vec(f, {2, 4}), vec(f, {1, 2})}, 2);
  RrefResult r = rref(m);
  EXPECT_EQ(r.reduced, Matrix::from_rows(f, {vec(f, {1, 2}), vec(f, {0, 0})}, 2));
  EXPECT_EQ(r.rank, 1u);
  EXPECT_EQ(row_space(m).size(), 5u);
}

TEST(Rref, RankMatchesRowSpaceSize) {
  std::mt19937_64 rng(3);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    const FieldSpec f = FieldSpec::prime(p);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 5;
      std::vector<Vector> rs;
      for (std::size_t r = 0; r < rows; ++r) rs.push_back(random_vec(rng, f, cols));
      Matrix m = Matrix::from_rows(f, rs, cols);
      RrefResult r = rref(m);
      std::size_t size = 1;
      for (std::size_t i = 0; i < r.rank; ++i) size *= p;
      EXPECT_EQ(row_space(m).size(), size);
      EXPECT_EQ(row_space(m), row_space(r.reduced));
      // pivots are 1 and their columns are otherwise zero
      for (std::size_t i = 0; i < r.rank; ++i) {
        const std::size_t c = r.pivots[i];
        for (std::size_t k = 0; k < rows; ++k)
          EXPECT_EQ(r.reduced(k, c), k == i ? Scalar::one(f) : Scalar::zero(f));
      }
    }
  }
}

TEST(SubspaceBasis, ExtendBasis) {
  const FieldSpec q = FieldSpec::rationals();
  SubspaceBasis b = SubspaceBasis::span_of(q, 3, {unit_vector(q, 3, 0)});
  auto [same, grew1] = extend_basis(b, unit_vector(q, 3, 0));
  EXPECT_FALSE(grew1);
  EXPECT_EQ(same, b);
  auto [bigger, grew2] = extend_basis(b, unit_vector(q, 3, 1));
  EXPECT_TRUE(grew2);
  EXPECT_EQ(bigger, SubspaceBasis::span_of(q, 3, {unit_vector(q, 3, 1), unit_vector(q, 3, 0)}));
  auto [empty, grew3] = extend_basis(SubspaceBasis(q, 3), zero_vector(q, 3));
  EXPECT_FALSE(grew3);
  EXPECT_EQ(empty.dim(), 0u);
  EXPECT_THROW(extend_basis(b, zero_vector(q, 2)), Error);
}

TEST(SubspaceBasis, CanonicalAndIdempotent) {
  std::mt19937_64 rng(5);
  for (const FieldSpec& f : {FieldSpec::rationals(), FieldSpec::prime(5)}) {
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Vector> vs;
      for (int i = 0; i < 3; ++i) vs.push_back(random_vec(rng, f, 4));
      SubspaceBasis a = SubspaceBasis::span_of(f, 4, vs);
      // a different spanning set of the same span
      std::vector<Vector> ws{add(vs[0], vs[1]), vs[1], subtract(vs[2], scale(Scalar::from_int(3, f), vs[0])),
                             add(vs[0], vs[2])};
      EXPECT_EQ(a, SubspaceBasis::span_of(f, 4, ws));
      Vector v = random_vec(rng, f, 4);
      auto [once, g1] = extend_basis(a, v);
      auto [twice, g2] = extend_basis(once, v);
      EXPECT_EQ(once, twice);
      EXPECT_FALSE(g2);
    }
  }
}

TEST(Membership, Coordinates) {
  const FieldSpec q = FieldSpec::rationals();
  SubspaceBasis b = SubspaceBasis::span_of(q, 3, {vec(q, {1, 0, 2}), vec(q, {0, 1, -1})});
  EXPECT_EQ(membership(b, b.rows()[0]), vec(q, {1, 0}));
  EXPECT_EQ(membership(b, add(b.rows()[0], b.rows()[1])), vec(q, {1, 1}));
  EXPECT_FALSE(membership(b, vec(q, {0, 0, 1})).has_value());
  EXPECT_THROW(membership(b, vec(q, {1, 0})), Error);
}

TEST(Membership, ReconstructsRandomVectors) {
  std::mt19937_64 rng(9);
  for (const FieldSpec& f : {FieldSpec::rationals(), FieldSpec::prime(7)}) {
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Vector> vs;
      for (int i = 0; i < 3; ++i) vs.push_back(random_vec(rng, f, 5));
      SubspaceBasis b = SubspaceBasis::span_of(f, 5, vs);
      Vector v = zero_vector(f, 5);
      for (const auto& x : vs) axpy(random_scalar(rng, f), x, v);
      auto c = membership(b, v);
      ASSERT_TRUE(c.has_value());
      Vector back = zero_vector(f, 5);
      for (std::size_t i = 0; i < c->size(); ++i) axpy((*c)[i], b.rows()[i], back);
      EXPECT_EQ(back, v);
    }
  }
}

TEST(SolveAffine, Identity) {
  const FieldSpec q = FieldSpec::rationals();
  auto s = solve_affine(Matrix::identity(q, 3), vec(q, {4, -1, 7}));
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->particular, vec(q, {4, -1, 7}));
  EXPECT_EQ(s->nullspace.dim(), 0u);
}

TEST(SolveAffine, Inconsistent) {
  const FieldSpec q = FieldSpec::rationals();
  EXPECT_FALSE(solve_affine(Matrix(q, 2, 2), vec(q, {1, 0})).has_value());
}

TEST(SolveAffine, OneEquation) {
  const FieldSpec q = FieldSpec::rationals();
  auto s = solve_affine(Matrix::from_rows(q, {vec(q, {1, 1})}, 2), vec(q, {2}));
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->particular, vec(q, {2, 0}));
  EXPECT_EQ(s->nullspace, SubspaceBasis::span_of(q, 2, {vec(q, {1, -1})}));

  // over GF(3) the solution set has exactly three points, all found
  const FieldSpec f = FieldSpec::prime(3);
  auto t = solve_affine(Matrix::from_rows(f, {vec(f, {1, 1})}, 2), vec(f, {2}));
  ASSERT_TRUE(t.has_value());
  std::set<std::vector<std::string>> found, brute;
  for (int c = 0; c < 3; ++c)
    found.insert(to_strings(add(t->particular, scale(Scalar::from_int(c, f), t->nullspace.rows()[0]))));
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      if ((x + y) % 3 == 2) brute.insert(to_strings(vec(f, {x, y})));
  EXPECT_EQ(found, brute);
}

TEST(SolveAffine, RandomSystemsSatisfyEquations) {
  std::mt19937_64 rng(17);
  for (const FieldSpec& f : {FieldSpec::rationals(), FieldSpec::prime(5)}) {
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 5;
      std::vector<Vector> rs;
      for (std::size_t r = 0; r < rows; ++r) rs.push_back(random_vec(rng, f, cols));
      Matrix m = Matrix::from_rows(f, rs, cols);
      Vector x = random_vec(rng, f, cols);
      auto s = solve_affine(m, m.apply(x));
      ASSERT_TRUE(s.has_value());
      EXPECT_EQ(m.apply(s->particular), m.apply(x));
      for (const auto& n : s->nullspace.rows()) EXPECT_TRUE(is_zero(m.apply(n)));
      EXPECT_EQ(s->nullspace.dim() + rref(m).rank, cols);
    }
  }
}
