#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "nalength/error.hpp"
#include "nalength/filtration.hpp"
#include "nalength/search.hpp"
#include "support.hpp"

using namespace nalength;
using namespace nalength::testing;

namespace {

Algebra ex(Family f, std::size_t d = 0, std::size_t k = 0, FieldSpec field = FieldSpec::rationals()) {
  return build_example({f, d, k, field});
}

std::vector<Vector> nonzero_vectors(const FieldSpec& f, std::size_t d) {
  std::vector<Vector> out;
  std::vector<std::uint32_t> c(d, 0);
  while (true) {
    std::size_t i = 0;
    while (i < d && ++c[i] == f.modulus()) c[i++] = 0;
    if (i == d) break;
    Vector v;
    for (auto x : c) v.push_back(Scalar::from_int(x, f));
    out.push_back(v);
  }
  return out;
}

// Calls fn on every subset of `vs` with at most `max_size` elements.
void for_each_subset(const std::vector<Vector>& vs, std::size_t max_size,
                     const std::function<void(const std::vector<Vector>&)>& fn) {
  std::vector<Vector> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!cur.empty()) fn(cur);
    if (cur.size() == max_size) return;
    for (std::size_t i = from; i < vs.size(); ++i) {
      cur.push_back(vs[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

// l(A) straight from the definition: the maximum over generating sets,
// which may be taken over independent sets of at most d vectors.
std::size_t oracle_length(const Algebra& a) {
  std::size_t best = 0;
  for_each_subset(nonzero_vectors(a.field(), a.dim()), a.dim(), [&](const std::vector<Vector>& S) {
    Filtration f = compute_filtration(a, S, {1'000'000, false, false});
    if (f.generates) best = std::max(best, f.closure_level);
  });
  return best;
}

Algebra idempotent_line() {
  const FieldSpec f = FieldSpec::prime(3);
  return Algebra("idempotent", f, 1, {{{1, 1}, vec(f, {1})}});
}

bool has_bound(const BoundCertificate& c, std::uint64_t value, const std::string& status) {
  return std::any_of(c.bounds.begin(), c.bounds.end(),
                     [&](const BoundEntry& b) { return b.value == value && b.status == status; });
}

}  // namespace

TEST(Search, SubspaceCounts) {
  const FieldSpec f2 = FieldSpec::prime(2), f5 = FieldSpec::prime(5);
  EXPECT_EQ(enumerate_subspaces(f2, 3, {1}).size(), 7u);
  EXPECT_EQ(enumerate_subspaces(f2, 3, {0, 1, 2, 3}).size(), 16u);
  EXPECT_EQ(enumerate_subspaces(f5, 2, {1}).size(), 6u);
  EXPECT_EQ(gaussian_binomial(3, 1, 2), 7u);
  EXPECT_EQ(gaussian_binomial(4, 2, 5), 806u);
  EXPECT_EQ(gaussian_binomial(4, 0, 5), 1u);
  EXPECT_EQ(gaussian_binomial(2, 3, 5), 0u);
}

TEST(Search, SubspacesMatchSpansOfVectorSets) {
  for (auto [p, d] : std::vector<std::pair<std::uint32_t, std::size_t>>{{2, 3}, {3, 3}, {2, 4}, {5, 2}}) {
    const FieldSpec f = FieldSpec::prime(p);
    std::set<std::vector<std::vector<std::string>>> oracle;
    auto key = [](const SubspaceBasis& b) {
      std::vector<std::vector<std::string>> rows;
      for (const auto& r : b.rows()) rows.push_back(to_strings(r));
      return rows;
    };
    oracle.insert(key(SubspaceBasis(f, d)));
    for_each_subset(nonzero_vectors(f, d), d,
                    [&](const std::vector<Vector>& S) { oracle.insert(key(SubspaceBasis::span_of(f, d, S))); });
    std::vector<std::size_t> dims;
    for (std::size_t m = 0; m <= d; ++m) dims.push_back(m);
    auto all = enumerate_subspaces(f, d, dims);
    std::set<std::vector<std::vector<std::string>>> got;
    for (const auto& s : all) got.insert(key(s));
    EXPECT_EQ(got.size(), all.size()) << "duplicates";
    EXPECT_EQ(got, oracle);
    // canonical order: dimension never decreases
    for (std::size_t i = 1; i < all.size(); ++i) EXPECT_LE(all[i - 1].dim(), all[i].dim());
  }
}

TEST(Search, EnumeratorRandomAccess) {
  SubspaceEnumerator en(FieldSpec::prime(3), 3, {1, 2});
  auto all = enumerate_subspaces(FieldSpec::prime(3), 3, {1, 2});
  ASSERT_EQ(en.size(), all.size());
  for (std::uint64_t i = 0; i < en.size(); ++i) EXPECT_EQ(en.at(i), all[i]);
}

TEST(Search, Budget) {
  EXPECT_THROW(SubspaceEnumerator(FieldSpec::prime(5), 7, {1, 2, 3, 4, 5, 6, 7}, 1000), BudgetExceeded);
  ExhaustiveOptions small;
  small.budget = 10;
  EXPECT_THROW(length_exhaustive(ex(Family::Vd, 4, 0, FieldSpec::prime(5)), small), BudgetExceeded);
}

TEST(Search, ExhaustiveExamples) {
  LengthReport v4 = length_exhaustive(ex(Family::Vd, 4, 0, FieldSpec::prime(5)));
  EXPECT_EQ(v4.value, 5u);
  EXPECT_TRUE(v4.is_exact);
  ASSERT_TRUE(v4.witness.has_value());
  EXPECT_EQ(length_of_set(ex(Family::Vd, 4, 0, FieldSpec::prime(5)), v4.witness->rows()), 5u);

  Algebra h = ex(Family::Heisenberg, 0, 0, FieldSpec::prime(3));
  EXPECT_EQ(length_exhaustive(h).value, 2u);
  EXPECT_EQ(oracle_length(h), 2u);

  LengthReport one = length_exhaustive(idempotent_line());
  EXPECT_EQ(one.value, 1u);
  EXPECT_EQ(one.subspaces_scanned, 1u);
}

TEST(Search, ExhaustiveMatchesDefinition) {
  std::mt19937_64 rng(51);
  for (auto [p, d] : std::vector<std::pair<std::uint32_t, std::size_t>>{{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
    const FieldSpec f = FieldSpec::prime(p);
    for (int trial = 0; trial < (p == 3 && d == 3 ? 3 : 8); ++trial) {
      Algebra a = random_algebra(rng, f, d, 0.5);
      EXPECT_EQ(length_exhaustive(a).value, oracle_length(a)) << "GF(" << p << ") d=" << d;
    }
  }
}

TEST(Search, RandomIsALowerBound) {
  Algebra v4 = ex(Family::Vd, 4, 0, FieldSpec::prime(5));
  LengthReport r = length_random(v4, 30, 4);
  ASSERT_TRUE(r.value.has_value());
  EXPECT_FALSE(r.is_exact);
  EXPECT_LE(*r.value, 5u);
  EXPECT_EQ(length_of_set(v4, r.witness->rows()), *r.value);

  Algebra h = ex(Family::Heisenberg, 0, 0, FieldSpec::prime(3));
  EXPECT_LE(*length_random(h, 20, 0).value, *length_exhaustive(h).value);

  LengthReport none = length_random(v4, 0, 0);
  EXPECT_FALSE(none.value.has_value());
  EXPECT_FALSE(none.witness.has_value());
}

TEST(Search, SampledSubspacesGenerate) {
  Algebra x = ex(Family::Xd, 5, 3);
  for (std::uint64_t i = 0; i < 10; ++i) {
    SubspaceBasis s = sample_generating_subspace(x, 7, i);
    EXPECT_TRUE(compute_filtration(x, s.rows()).generates);
  }
  EXPECT_EQ(length_of_set(x, {e(x, 1)}), 8u);
  // the zero algebra of dimension 2 needs two generators, which dimension
  // cycling reaches
  Algebra zero("zero", FieldSpec::prime(3), 2, {});
  EXPECT_EQ(sample_generating_subspace(zero, 0, 0).dim(), 2u);
}

TEST(Search, CertifiedBounds) {
  ClassificationOptions opts;
  opts.samples = 10;
  Algebra m = ex(Family::M7, 0, 0, FieldSpec::prime(5));
  BoundCertificate cm = certify_bounds(m, classify_algebra(m, opts));
  EXPECT_TRUE(has_bound(cm, 5, "proved"));
  EXPECT_EQ(cm.proved_minimum, 5u);

  Algebra e6 = ex(Family::Ed, 6, 4, FieldSpec::prime(2));
  BoundCertificate ce = certify_bounds(e6, classify_algebra(e6, opts));
  EXPECT_TRUE(has_bound(ce, 18, "proved"));
  EXPECT_LE(length_of_set(e6, {e(e6, 1)}), *ce.proved_minimum);

  Algebra u = adjoin_unit(Algebra("zero", FieldSpec::prime(3), 2, {}));
  BoundCertificate cu = certify_bounds(u, classify_algebra(u, opts));
  EXPECT_TRUE(has_bound(cu, 2, "proved"));
  auto exact = length_exhaustive(u).value;
  EXPECT_LE(*exact, 2u);
  EXPECT_NO_THROW(assert_within_bounds(cu, *exact, "test"));
  EXPECT_THROW(assert_within_bounds(cu, 3, "test"), Error);
}

TEST(Search, ExhaustiveRespectsBounds) {
  ClassificationOptions opts;
  opts.samples = 10;
  for (const Algebra& a : {ex(Family::Heisenberg, 0, 0, FieldSpec::prime(3)), ex(Family::Vd, 4, 0, FieldSpec::prime(5)),
                           ex(Family::Ed, 5, 3, FieldSpec::prime(2)), ex(Family::Xd, 5, 3, FieldSpec::prime(2)),
                           adjoin_unit(ex(Family::Heisenberg, 0, 0, FieldSpec::prime(3)))}) {
    BoundCertificate c = certify_bounds(a, classify_algebra(a, opts));
    LengthReport r = length_exhaustive(a);
    EXPECT_NO_THROW(assert_within_bounds(c, *r.value, a.name())) << a.name();
  }
}

TEST(Search, Gaps) {
  SequenceGaps x = gaps_of({1, 2, 4, 6, 8});
  EXPECT_EQ(x.j0, 0u);
  EXPECT_EQ(x.j1, 1u);
  EXPECT_EQ(x.j2, 3u);
  EXPECT_EQ(x.unpaired, (std::vector<std::size_t>{3, 4, 5}));
  SequenceGaps h = gaps_of({1, 1, 2});
  EXPECT_EQ(h.j0, 1u);
  EXPECT_EQ(h.j1, 1u);
  EXPECT_EQ(h.j2, 0u);
  EXPECT_TRUE(gaps_of({1, 1, 3}).unpaired.empty());
  EXPECT_EQ(gaps_of({1, 2, 3, 4, 7}).more, 1u);
}

TEST(Search, M7GapSurvey) {
  GapSurveyOptions o;
  o.samples = 60;
  o.seed = 3;
  o.malcev = true;
  o.step_checks = 2;
  GapSurvey g = scan_gap_structure(ex(Family::M7, 0, 0, FieldSpec::prime(5)), o);
  EXPECT_EQ(g.sequences, 60u);
  EXPECT_LE(g.max_length, 5u);
  EXPECT_LE(g.max_gap, 2u);
  EXPECT_TRUE(g.malcev_checked);
  EXPECT_EQ(g.paired_violations, 0u);
  EXPECT_EQ(g.step_checks_failed, 0u);
  std::uint64_t seen = 0;
  for (const auto& [seq, n] : g.sequences_seen) {
    EXPECT_EQ(seq.size(), 7u);
    seen += n;
  }
  EXPECT_EQ(seen, 60u);
}

TEST(Search, SameReportForAnyJobs) {
  Algebra v4 = ex(Family::Vd, 4, 0, FieldSpec::prime(5));
  ExhaustiveOptions one, four;
  four.jobs = 4;
  EXPECT_EQ(to_json(length_exhaustive(v4, one)).dump(), to_json(length_exhaustive(v4, four)).dump());
  Algebra m = ex(Family::M7, 0, 0, FieldSpec::prime(5));
  EXPECT_EQ(to_json(length_random(m, 25, 5, 1)).dump(), to_json(length_random(m, 25, 5, 3)).dump());
  GapSurveyOptions g1;
  g1.samples = 30;
  GapSurveyOptions g3 = g1;
  g3.jobs = 3;
  EXPECT_EQ(to_json(scan_gap_structure(m, g1)).dump(), to_json(scan_gap_structure(m, g3)).dump());
}

TEST(Search, ReportJson) {
  auto j = to_json(length_exhaustive(ex(Family::Heisenberg, 0, 0, FieldSpec::prime(3))));
  EXPECT_EQ(j["mode"], "exhaustive");
  EXPECT_EQ(j["value"], 2);
  EXPECT_EQ(j["is_exact"], true);
  EXPECT_TRUE(j["witness_subspace"].is_array());
  EXPECT_TRUE(j.contains("subspaces_scanned"));
  EXPECT_TRUE(j.contains("bounds"));
  auto r = to_json(length_random(ex(Family::Heisenberg, 0, 0, FieldSpec::prime(3)), 0, 0));
  EXPECT_TRUE(r["value"].is_null());
}
