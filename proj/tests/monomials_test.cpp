#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "nalength/error.hpp"
#include "nalength/monomials.hpp"

using namespace nalength;

namespace {

MonomialSet literal(const std::vector<std::string>& texts, const std::vector<std::string>& names) {
  MonomialSet m;
  for (const auto& t : texts) m.words.insert(parse_word(t, names));
  return m;
}

const std::vector<std::string> xyz{"x", "y", "z"};

// The two thirteen-element listings, transcribed by hand.
MonomialSet listed_Q_l() {
  return literal({"(x (z y))", "(x (y z))", "(y (x z))", "(y (z x))", "(x y)", "(y x)", "(x z)", "(z x)", "(y z)",
                  "(z y)", "x", "y", "z"},
                 xyz);
}
MonomialSet listed_Q_r() {
  return literal({"((x z) y)", "((z x) y)", "((y z) x)", "((z y) x)", "(x y)", "(y x)", "(x z)", "(z x)", "(y z)",
                  "(z y)", "x", "y", "z"},
                 xyz);
}

std::set<int> gens_of(const Word& w) {
  auto l = w.leaves();
  return {l.begin(), l.end()};
}

bool multilinear(const Word& w) { return gens_of(w).size() == w.length(); }

// Every multilinear word over generators 1..n, by filtering the full enumeration.
std::vector<Word> all_multilinear(std::size_t n) {
  std::vector<Word> out;
  for (std::size_t len = 1; len <= n; ++len)
    for (const auto& w : enumerate_words(n, len))
      if (multilinear(w)) out.push_back(w);
  return out;
}

MonomialSet filtered(std::size_t n, bool unital, const std::function<bool(const Word&)>& keep) {
  MonomialSet m;
  m.contains_one = unital;
  for (const auto& w : all_multilinear(n))
    if (keep(w)) m.words.insert(w);
  return m;
}

std::set<int> tail_of(const VarSet& s) {
  auto t = s.tail();
  return {t.begin(), t.end()};
}

bool proper_nonempty_tail_subset(const std::set<int>& g, const std::set<int>& tail) {
  return !g.empty() && g.size() < tail.size() && std::includes(tail.begin(), tail.end(), g.begin(), g.end());
}

std::uint64_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }
std::uint64_t catalan(std::size_t n) {
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

}  // namespace

TEST(Monomials, WSizes) {
  EXPECT_EQ(build_W({1, 2}, false).words, literal({"(x y)", "(y x)"}, xyz).words);
  EXPECT_EQ(build_W({1, 2, 3}, false).size(), 12u);
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<int> T;
    for (std::size_t i = 1; i <= n; ++i) T.push_back(static_cast<int>(i));
    MonomialSet w = build_W(T, false);
    EXPECT_EQ(w.size(), factorial(n) * catalan(n - 1));
    for (const auto& x : w.words) {
      EXPECT_EQ(x.length(), n);
      EXPECT_TRUE(multilinear(x));
    }
  }
  MonomialSet empty_unital = build_W({}, true);
  EXPECT_TRUE(empty_unital.contains_one);
  EXPECT_EQ(empty_unital.size(), 1u);
  EXPECT_EQ(build_W({}, false).size(), 0u);
  EXPECT_THROW(build_W({1, 1}, false), Error);
}

TEST(Monomials, QListings) {
  EXPECT_EQ(build_Q_l(1, 2, 3), listed_Q_l());
  EXPECT_EQ(build_Q_r(1, 2, 3), listed_Q_r());
  EXPECT_EQ(build_Q_l(1, 2, 3).size(), 13u);
  EXPECT_EQ(build_Q_r(1, 2, 3).size(), 13u);
  MonomialSet p = build_P(1, 2, 3);
  EXPECT_EQ(p.size(), 17u);
  EXPECT_EQ(p, set_union(listed_Q_l(), listed_Q_r()));
  MonomialSet both = set_intersection(build_Q_l(1, 2, 3), build_Q_r(1, 2, 3));
  EXPECT_EQ(both.size(), 9u);
  for (const auto& w : both.words) EXPECT_LE(w.length(), 2u);
  EXPECT_TRUE(build_P(1, 2, 3, true).contains_one);
  EXPECT_THROW(build_P(1, 1, 2), Error);
}

TEST(Monomials, TwoVariableSetsAreTheKEqualsTwoSets) {
  VarSet s{2, false};
  // x = 1, y1 = 2, y2 = 3
  EXPECT_EQ(build_D0(s), build_P(2, 3, 1));
  EXPECT_EQ(build_Dr(s), build_Q_r(2, 3, 1));
  EXPECT_EQ(build_Q_r(2, 3, 1), build_Q_r(3, 2, 1));
  EXPECT_EQ(build_Dl(s), build_Q_l(2, 3, 1));
}

TEST(Monomials, D0SmallCases) {
  MonomialSet one = build_D0({1, false});
  EXPECT_EQ(one, literal({"x", "y1"}, {"x", "y1"}));
  for (const auto& w : build_D0({3, false}).of_length(4)) {
    EXPECT_FALSE(w.left() == Word::leaf(1));
    EXPECT_FALSE(w.right() == Word::leaf(1));
  }
}

TEST(Monomials, DoubleConstruction) {
  for (std::size_t k = 1; k <= 3; ++k) {
    for (bool unital : {false, true}) {
      VarSet s{k, unital};
      const std::size_t n = k + 1;
      const std::set<int> tail = tail_of(s);
      auto full = [&](const Word& w) { return w.length() == n; };

      std::vector<int> all = s.all();
      EXPECT_EQ(build_D(all, unital), filtered(n, unital, [](const Word&) { return true; }));
      EXPECT_EQ(build_Dprime(all, unital), filtered(n, unital, [&](const Word& w) { return !full(w); }));
      EXPECT_EQ(build_D0(s), filtered(n, unital, [&](const Word& w) {
                  return !full(w) || !(w.left() == Word::leaf(1) || w.right() == Word::leaf(1));
                }));
      EXPECT_EQ(build_Dl(s), filtered(n, unital, [&](const Word& w) {
                  return !full(w) || proper_nonempty_tail_subset(gens_of(w.left()), tail);
                }));
      EXPECT_EQ(build_Dr(s), filtered(n, unital, [&](const Word& w) {
                  return !full(w) || proper_nonempty_tail_subset(gens_of(w.right()), tail);
                }));
    }
  }
}

TEST(Monomials, OneSidedSetsInsideD0) {
  for (std::size_t k = 1; k <= 3; ++k) {
    VarSet s{k, false};
    MonomialSet d0 = build_D0(s), dl = build_Dl(s), dr = build_Dr(s);
    EXPECT_EQ(set_difference(set_union(dl, dr), d0).size(), 0u);
    // z_0 sits in one factor, so no full-length word is in both one-sided sets
    EXPECT_TRUE(set_intersection(dl, dr).of_length(k + 1).empty());
  }
}

TEST(Monomials, LeftSetPartition) {
  // Full-length words of D(Z) outside D_l: z_0 in the left factor, or left
  // factor using all of Z_0 (the products w z_0).
  for (std::size_t k = 1; k <= 3; ++k) {
    VarSet s{k, false};
    const std::set<int> tail = tail_of(s);
    MonomialSet rest = filtered(k + 1, false, [&](const Word& w) {
      if (w.length() != k + 1) return false;
      auto g = gens_of(w.left());
      return g.count(1) != 0 || g == tail;
    });
    MonomialSet dl = build_Dl(s);
    EXPECT_EQ(set_union(dl, rest), build_D(s.all(), false));
    EXPECT_EQ(set_intersection(dl, rest).size(), 0u);
  }
}

TEST(Monomials, UnitalFlagOnlyAddsOne) {
  for (std::size_t k = 1; k <= 3; ++k) {
    VarSet a{k, false}, b{k, true};
    for (auto build : {build_D0, build_Dl, build_Dr}) {
      MonomialSet x = build(a), y = build(b);
      EXPECT_EQ(x.words, y.words);
      EXPECT_FALSE(x.contains_one);
      EXPECT_TRUE(y.contains_one);
      EXPECT_EQ(y.size(), x.size() + 1);
    }
  }
  EXPECT_EQ(build_P(1, 2, 3, true).words, build_P(1, 2, 3).words);
}

TEST(Monomials, Limits) {
  EXPECT_THROW(build_D0({0, false}), Error);
  EXPECT_THROW(build_D0({kMaxMonomialVars + 1, false}), Error);
}

TEST(Monomials, JsonIsSortedText) {
  auto j = to_json(build_W({1, 2}, true), xyz);
  ASSERT_TRUE(j.is_array());
  std::vector<std::string> got = j.get<std::vector<std::string>>();
  EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
  EXPECT_EQ(std::set<std::string>(got.begin(), got.end()), (std::set<std::string>{"(x y)", "(y x)"}));
  auto u = to_json(build_W({}, true), xyz).get<std::vector<std::string>>();
  EXPECT_EQ(u, std::vector<std::string>{"1"});
}
