#include <gtest/gtest.h>

#include <filesystem>

#include "nalength/algebra.hpp"
#include "nalength/error.hpp"
#include "support.hpp"

using namespace nalength;
using namespace nalength::testing;

namespace {

Algebra example(Family f, std::size_t d = 0, std::size_t k = 0, FieldSpec field = FieldSpec::rationals()) {
  return build_example({f, d, k, field});
}

// Expected e_i e_j for E_d / X_d written directly from the definition.
std::optional<int> family_product(bool left, int d, int k, int i, int j) {
  if (left) {
    if (j == 1 && i <= k - 2) return i + 1;
    if (j == k - 1 && i >= k - 1 && i <= d - 1) return i + 1;
  } else {
    if (i == 1 && j <= k - 2) return j + 1;
    if (i == k - 1 && j >= k - 1 && j <= d - 1) return j + 1;
  }
  return std::nullopt;
}

}  // namespace

TEST(Algebra, V5Products) {
  Algebra v = example(Family::Vd, 5);
  EXPECT_EQ(v.multiply(e(v, 2), e(v, 2)), e(v, 4));
  EXPECT_EQ(v.multiply(e(v, 4), e(v, 3)), e(v, 5));
  EXPECT_EQ(v.multiply(e(v, 3), e(v, 4)), v.zero());
  EXPECT_EQ(v.multiply(e(v, 1), e(v, 3)), e(v, 4));
  EXPECT_EQ(v.multiply(e(v, 1), e(v, 4)), v.zero());
}

TEST(Algebra, FamiliesMatchDefinition) {
  for (auto [d, k] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {5, 3}, {6, 4}, {7, 3}}) {
    for (bool left : {true, false}) {
      Algebra a = example(left ? Family::Ed : Family::Xd, d, k);
      for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
          auto t = family_product(left, d, k, i, j);
          EXPECT_EQ(a.multiply(e(a, i), e(a, j)), t ? e(a, *t) : a.zero()) << a.name() << " " << i << "," << j;
        }
    }
  }
}

TEST(Algebra, X5Chain) {
  Algebra x = example(Family::Xd, 5, 3);
  EXPECT_EQ(x.multiply(e(x, 1), e(x, 1)), e(x, 2));
  EXPECT_EQ(x.multiply(e(x, 2), e(x, 2)), e(x, 3));
  EXPECT_EQ(x.multiply(e(x, 2), e(x, 4)), e(x, 5));
  EXPECT_EQ(x.multiply(e(x, 2), e(x, 5)), x.zero());
}

TEST(Algebra, InvalidParams) {
  EXPECT_THROW(example(Family::Ed, 2, 3), Error);
  EXPECT_THROW(example(Family::Vd, 3), Error);
  EXPECT_THROW(parse_family("nope"), Error);
}

TEST(Algebra, M7AnticommutativeAndFano) {
  Algebra m = example(Family::M7, 0, 0, FieldSpec::prime(5));
  for (int i = 1; i <= 7; ++i) {
    EXPECT_EQ(m.multiply(e(m, i), e(m, i)), m.zero());
    for (int j = 1; j <= 7; ++j) {
      Vector ij = m.multiply(e(m, i), e(m, j)), ji = m.multiply(e(m, j), e(m, i));
      EXPECT_TRUE(is_zero(add(ij, ji)));
      if (i == j) continue;
      // every pair of distinct points spans one line: exactly one coordinate
      // is nonzero and it is +-2
      int nonzero = 0;
      for (const auto& c : ij)
        if (!c.is_zero()) {
          ++nonzero;
          EXPECT_TRUE(c == Scalar::from_int(2, m.field()) || c == Scalar::from_int(-2, m.field()));
        }
      EXPECT_EQ(nonzero, 1);
    }
  }
}

TEST(Algebra, Sl2Brackets) {
  Algebra s = example(Family::Sl2);
  const FieldSpec q = s.field();
  EXPECT_EQ(s.multiply(e(s, 1), e(s, 2)), scale(Scalar::from_int(2, q), e(s, 2)));
  EXPECT_EQ(s.multiply(e(s, 1), e(s, 3)), scale(Scalar::from_int(-2, q), e(s, 3)));
  EXPECT_EQ(s.multiply(e(s, 2), e(s, 3)), e(s, 1));
}

TEST(Algebra, BilinearOnRandomAlgebras) {
  std::mt19937_64 rng(21);
  for (const FieldSpec& f : {FieldSpec::rationals(), FieldSpec::prime(5)}) {
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t d = 1 + rng() % 5;
      Algebra a = random_algebra(rng, f, d);
      for (int s = 0; s < 10; ++s) {
        Vector u = random_vec(rng, f, d), v = random_vec(rng, f, d), w = random_vec(rng, f, d);
        Scalar c = random_scalar(rng, f);
        EXPECT_EQ(a.multiply(add(u, scale(c, v)), w), add(a.multiply(u, w), scale(c, a.multiply(v, w))));
        EXPECT_EQ(a.multiply(w, add(u, scale(c, v))), add(a.multiply(w, u), scale(c, a.multiply(w, v))));
      }
    }
  }
}

TEST(Algebra, AdjoinUnit) {
  Algebra h = adjoin_unit(example(Family::Heisenberg, 0, 0, FieldSpec::prime(3)));
  ASSERT_TRUE(h.unital());
  EXPECT_EQ(h.dim(), 4u);
  std::mt19937_64 rng(2);
  for (int s = 0; s < 20; ++s) {
    Vector v = random_vec(rng, h.field(), 4);
    EXPECT_EQ(h.multiply(*h.unit(), v), v);
    EXPECT_EQ(h.multiply(v, *h.unit()), v);
  }
  EXPECT_EQ(h.multiply(e(h, 1), e(h, 2)), e(h, 3));
}

TEST(Algebra, RejectsBadStructure) {
  const FieldSpec q = FieldSpec::rationals();
  try {
    Algebra("bad", q, 2, {{{1, 2}, vec(q, {1, 0, 0})}});
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), "algebra.invalid");
    EXPECT_NE(std::string(err.what()).find("(1,2)"), std::string::npos);
  }
  EXPECT_THROW(Algebra("bad", q, 2, {{{3, 1}, vec(q, {1, 0})}}), Error);
  // e1 is not a unit of the zero algebra
  EXPECT_THROW(Algebra("bad", q, 2, {}, vec(q, {1, 0})), Error);
  EXPECT_THROW(Algebra("bad", q, 0, {}), Error);
}

TEST(Algebra, JsonRoundTrip) {
  std::mt19937_64 rng(8);
  std::vector<Algebra> all{example(Family::Vd, 6), example(Family::M7, 0, 0, FieldSpec::prime(7)),
                           adjoin_unit(example(Family::Sl2)), random_algebra(rng, FieldSpec::rationals(), 4)};
  for (const auto& a : all) {
    Algebra b = algebra_from_json(nlohmann::json::parse(to_json(a).dump()));
    EXPECT_EQ(a, b);
    EXPECT_EQ(to_json(a), to_json(b));
  }
  auto path = std::filesystem::temp_directory_path() / "nalength_algebra_test.json";
  save_algebra(all[1], path);
  EXPECT_EQ(load_algebra(path), all[1]);
  std::filesystem::remove(path);
}

TEST(Algebra, JsonDiagnostics) {
  auto expect_parse_error = [](const std::string& text, const std::string& fragment) {
    try {
      algebra_from_json(nlohmann::json::parse(text));
      ADD_FAILURE() << text;
    } catch (const Error& err) {
      EXPECT_EQ(err.code(), "algebra.parse");
      EXPECT_NE(std::string(err.what()).find(fragment), std::string::npos) << err.what();
    }
  };
  expect_parse_error(R"({"name":"a","field":"Q","dim":2,"unital":false,
    "products":[{"i":1,"j":2,"value":["1"]}]})",
                     "(1,2)");
  expect_parse_error(R"({"name":"a","field":"Q","dim":2,"unital":false})", "products");
  expect_parse_error(R"({"name":"a","field":"R","dim":2,"unital":false,"products":[]})", "field");
  expect_parse_error(R"({"name":"a","field":{"prime":5},"dim":1,"unital":false,
    "products":[{"i":1,"j":1,"value":["1/5"]}]})",
                     "products[0]");
  expect_parse_error(R"({"name":"a","field":"Q","dim":1,"unital":false,
    "products":[{"i":1,"j":1,"value":["1"]},{"i":1,"j":1,"value":["2"]}]})",
                     "duplicate");
}
