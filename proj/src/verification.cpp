#include "nalength/verification.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "nalength/classify.hpp"
#include "nalength/error.hpp"
#include "nalength/filtration.hpp"
#include "nalength/search.hpp"
#include "nalength/word.hpp"

namespace nalength {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Algebra example(Family f, std::size_t d, std::size_t k, const FieldSpec& field) {
  return build_example({f, d, k, field});
}

Algebra zero_algebra(std::size_t d, const FieldSpec& field) {
  return Algebra("zero_" + std::to_string(d), field, d, {});
}

std::vector<Vector> first_basis_vector(const Algebra& a) { return {a.basis_vector(1)}; }

const std::pair<std::size_t, std::size_t> kFamilyParams[] = {{2, 5}, {3, 5}, {3, 7}, {4, 6}};

}  // namespace

VerificationSuite::VerificationSuite(VerificationOptions opts) : opts_(opts), checked_at_start_(checked_char_seqs()) {}

const std::vector<CriterionInfo>& VerificationSuite::criteria() {
  static const std::vector<CriterionInfo> list{
      {1, "example-family lengths", 10},
      {2, "V_d sequences and exhaustive lengths", 130},
      {3, "class checks", 120},
      {4, "Malcev suite", 150},
      {5, "Malcev length bounds", 600},
      {6, "characteristic-sequence laws", 10},
      {7, "sprout property suite", 60},
      {8, "universal bound", 300},
      {9, "determinism", 300},
  };
  return list;
}

std::vector<std::size_t> VerificationSuite::record_sequence(const Algebra& a, const std::vector<Vector>& S) {
  Filtration f = compute_filtration(a, S);
  auto m = char_seq(f);
  sequences_.push_back({a.name(), a.dim(), m, f.closure_level});
  return m;
}

CriterionOutcome VerificationSuite::run(int id) {
  CriterionOutcome out;
  try {
    switch (id) {
      case 1: out = family_lengths(); break;
      case 2: out = vd_lengths(); break;
      case 3: out = class_checks(); break;
      case 4: out = malcev_suite(); break;
      case 5: out = malcev_bounds(); break;
      case 6: out = sequence_laws(); break;
      case 7: out = sprout_suite(); break;
      case 8: out = universal_bounds(); break;
      case 9: out = determinism(); break;
      default: throw Error("verify.unknown_criterion", "no criterion " + std::to_string(id));
    }
  } catch (const Error& e) {
    if (e.code() == "filtration.invariant") invariant_errors_.push_back(e.what());
    out.passed = false;
    out.details = {{"error", {{"code", e.code()}, {"message", e.what()}}}};
  }
  out.id = id;
  for (const auto& c : criteria())
    if (c.id == id) out.title = c.title;
  return out;
}

CriterionOutcome VerificationSuite::family_lengths() {
  CriterionOutcome out;
  out.passed = true;
  nlohmann::json items = nlohmann::json::array();
  for (Family fam : {Family::Ed, Family::Xd}) {
    for (auto [k, d] : kFamilyParams) {
      auto t0 = Clock::now();
      Algebra a = example(fam, d, k, FieldSpec::rationals());
      auto m = record_sequence(a, first_basis_vector(a));
      const std::size_t expected = (k - 1) * d - (k - 2) * (k - 1);
      const bool ok = m.back() == expected;
      out.passed = out.passed && ok;
      out.timings.push_back({a.name(), seconds_since(t0), 1.0});
      items.push_back({{"algebra", a.name()}, {"char_seq", m}, {"length", m.back()}, {"expected", expected},
                       {"ok", ok}});
    }
  }
  out.details = {{"items", items}};
  return out;
}

CriterionOutcome VerificationSuite::vd_lengths() {
  CriterionOutcome out;
  out.passed = true;
  nlohmann::json seqs = nlohmann::json::array();
  for (std::size_t d = 4; d <= 8; ++d) {
    Algebra a = example(Family::Vd, d, 0, FieldSpec::rationals());
    auto m = record_sequence(a, first_basis_vector(a));
    std::vector<std::size_t> expected;
    for (std::size_t i = 1; i <= d - 1; ++i) expected.push_back(i);
    expected.push_back(2 * d - 3);
    const bool ok = m == expected;
    out.passed = out.passed && ok;
    seqs.push_back({{"algebra", a.name()}, {"char_seq", m}, {"expected", expected}, {"ok", ok}});
  }
  nlohmann::json scans = nlohmann::json::array();
  const std::size_t top = opts_.quick ? 4 : 5;
  for (std::size_t d = 4; d <= top; ++d) {
    auto t0 = Clock::now();
    Algebra a = example(Family::Vd, d, 0, FieldSpec::prime(5));
    LengthReport r = length_exhaustive(a, {kDefaultSubspaceBudget, opts_.jobs});
    out.timings.push_back({"exhaustive " + a.name(), seconds_since(t0), 60.0});
    exhaustive_.push_back({a, *r.value});
    // the witness must replay to the reported value
    const std::size_t replay = record_sequence(a, r.witness->rows()).back();
    const bool ok = *r.value == 2 * d - 3 && replay == *r.value;
    out.passed = out.passed && ok;
    nlohmann::json rj = to_json(r);
    scans.push_back({{"algebra", a.name()},
                     {"value", rj["value"]},
                     {"expected", 2 * d - 3},
                     {"witness_replay", replay},
                     {"subspaces_scanned", rj["subspaces_scanned"]},
                     {"ok", ok}});
  }
  out.details = {{"sequences", seqs}, {"exhaustive", scans}};
  return out;
}

CriterionOutcome VerificationSuite::class_checks() {
  CriterionOutcome out;
  out.passed = true;
  nlohmann::json items = nlohmann::json::array();
  for (auto [k, d] : kFamilyParams) {
    auto t0 = Clock::now();
    Algebra e = example(Family::Ed, d, k, FieldSpec::rationals());
    IdentityReport r = run_named_check(e, "k-round", k, CheckMode::basis(opts_.jobs));
    out.timings.push_back({e.name() + " " + r.identity, seconds_since(t0), 30.0});
    const bool ok = r.verdict == Verdict::Holds;
    out.passed = out.passed && ok;
    items.push_back({{"algebra", e.name()}, {"identity", r.identity}, {"verdict", verdict_name(r.verdict)},
                     {"ok", ok}});
  }
  // X_d is k-based only for k = 2. For k = 3 the basis tuple x = y_i = x_1
  // already gives (x_1 (x_1 x_1)) x_1 = 0 but (x_1 x_1)(x_1 x_1) = x_3.
  for (auto [k, d] : kFamilyParams) {
    auto t0 = Clock::now();
    Algebra x = example(Family::Xd, d, k, FieldSpec::rationals());
    IdentityReport r = run_named_check(x, "k-based", k, CheckMode::basis(opts_.jobs));
    nlohmann::json item = {{"algebra", x.name()}, {"identity", r.identity}, {"verdict", verdict_name(r.verdict)}};
    bool ok = r.verdict == Verdict::Holds;
    if (!ok && k >= 3) {
      nlohmann::json rj = to_json(r);
      const bool replayed = replay_counterexample(x, rj);
      IdentityReport mixing =
          run_named_check(x, "k-mixing", k, CheckMode::sampled(opts_.quick ? 20 : 100, 0, opts_.jobs));
      item["counterexample"] = rj["counterexample"];
      item["counterexample_replays"] = replayed;
      item["k_mixing"] = verdict_name(mixing.verdict);
      ok = replayed && mixing.verdict != Verdict::Fails;
      if (ok)
        out.deviations.push_back(x.name() + " is not " + std::to_string(k) +
                                 "-based (replayed counterexample); it stays " + std::to_string(k) +
                                 "-mixing on all basis tuples and samples");
    }
    out.timings.push_back({x.name() + " " + r.identity, seconds_since(t0), 30.0});
    out.passed = out.passed && ok;
    item["ok"] = ok;
    items.push_back(item);
  }
  Algebra v5 = example(Family::Vd, 5, 0, FieldSpec::rationals());
  const CheckMode sampled = CheckMode::sampled(opts_.quick ? 20 : 100, 0, opts_.jobs);
  for (const char* name : {"k-mixing", "k-sliding"}) {
    auto t0 = Clock::now();
    IdentityReport r = run_named_check(v5, name, 2, sampled);
    nlohmann::json rj = to_json(r);
    const bool replayed = r.verdict == Verdict::Fails && replay_counterexample(v5, rj);
    out.timings.push_back({v5.name() + " " + r.identity, seconds_since(t0), 30.0});
    out.passed = out.passed && replayed;
    items.push_back({{"algebra", v5.name()}, {"identity", r.identity}, {"verdict", verdict_name(r.verdict)},
                     {"counterexample_replays", replayed}, {"ok", replayed}});
  }
  out.details = {{"items", items}};
  return out;
}

CriterionOutcome VerificationSuite::malcev_suite() {
  CriterionOutcome out;
  out.passed = true;
  nlohmann::json items = nlohmann::json::array();
  const FieldSpec q = FieldSpec::rationals();
  for (Family fam : {Family::Sl2, Family::Heisenberg, Family::M7}) {
    auto t0 = Clock::now();
    Algebra a = example(fam, 0, 0, q);
    IdentityReport malcev = check_malcev(a, opts_.jobs);
    IdentityReport jacobi = check_jacobi(a, opts_.jobs);
    bool ok = malcev.verdict == Verdict::Holds;
    nlohmann::json item = {{"algebra", a.name()},
                           {"malcev", verdict_name(malcev.verdict)},
                           {"jacobi", verdict_name(jacobi.verdict)}};
    if (fam == Family::M7) {
      const bool witness = jacobi.verdict == Verdict::Fails && replay_counterexample(a, to_json(jacobi));
      item["non_lie_witness"] = witness ? to_json(jacobi)["counterexample"] : nlohmann::json(nullptr);
      ok = ok && witness;
    } else {
      ok = ok && jacobi.verdict == Verdict::Holds;
    }
    out.timings.push_back({a.name() + " malcev", seconds_since(t0), 30.0});
    item["ok"] = ok;
    out.passed = out.passed && ok;
    items.push_back(item);
  }
  const std::size_t samples = opts_.quick ? 20 : 100;
  for (const auto& field : {q, FieldSpec::prime(7)}) {
    auto t0 = Clock::now();
    Family fam = field == q ? Family::M7 : Family::Sl2;
    Algebra a = example(fam, 0, 0, field);
    IdentityReport r = verify_rewrites(a, samples, 0, opts_.jobs);
    out.timings.push_back({a.name() + " rewrites", seconds_since(t0), 30.0});
    const bool ok = r.verdict != Verdict::Fails;
    out.passed = out.passed && ok;
    items.push_back({{"algebra", a.name()}, {"field", field.to_string()}, {"identity", r.identity},
                     {"verdict", verdict_name(r.verdict)}, {"samples", samples}, {"ok", ok}});
  }
  out.details = {{"items", items}};
  return out;
}

CriterionOutcome VerificationSuite::malcev_bounds() {
  CriterionOutcome out;
  auto t0 = Clock::now();
  Algebra a = example(Family::M7, 0, 0, FieldSpec::prime(5));
  GapSurveyOptions o;
  o.samples = opts_.quick ? 100 : 1000;
  o.seed = 0;
  o.jobs = opts_.jobs;
  o.malcev = true;
  o.step_checks = opts_.quick ? 3 : 20;
  GapSurvey g = scan_gap_structure(a, o);
  out.timings.push_back({"m7 survey", seconds_since(t0), 600.0});
  const std::size_t bound = a.dim() - 2;
  out.passed = g.sequences == o.samples && g.max_length <= bound && g.max_gap <= 2 && g.paired_violations == 0 &&
               g.step_checks_failed == 0;
  nlohmann::json gj = to_json(g);
  gj.erase("sequences_seen");
  out.details = {{"algebra", a.name()},     {"field", "GF(5)"}, {"samples", o.samples},
                 {"seed", o.seed},          {"bound", bound},   {"survey", gj},
                 {"distinct_sequences", g.sequences_seen.size()}};
  return out;
}

CriterionOutcome VerificationSuite::sequence_laws() {
  CriterionOutcome out;
  std::size_t violations = 0;
  nlohmann::json first = nullptr;
  for (const auto& r : sequences_) {
    GapReport g = analyze_charseq(r.seq);
    const bool ok = r.seq.size() == r.dim && r.seq.back() == r.length && g.decomposable &&
                    std::is_sorted(r.seq.begin(), r.seq.end());
    if (!ok) {
      ++violations;
      if (first.is_null()) first = {{"algebra", r.algebra}, {"char_seq", r.seq}};
    }
  }
  const std::uint64_t checked = checked_char_seqs() - checked_at_start_;
  out.passed = violations == 0 && invariant_errors_.empty() && checked > 0;
  out.details = {{"recorded_sequences", sequences_.size()},
                 {"rechecked_violations", violations},
                 {"first_violation", first},
                 {"sequences_checked_in_suite", checked},
                 {"invariant_errors", invariant_errors_}};
  return out;
}

CriterionOutcome VerificationSuite::sprout_suite() {
  CriterionOutcome out;
  auto t0 = Clock::now();
  const std::size_t max_leaves = 9;
  const std::size_t ks[] = {2, 3, 4};
  std::uint64_t words = 0, lemma_subwords = 0, lemma_short = 0, lemma_hereditary = 0;
  std::uint64_t short_checked = 0, hereditary_checked = 0;
  for (std::size_t n = 1; n <= max_leaves; ++n) {
    for (const Word& w : enumerate_words(2, n)) {
      ++words;
      const std::set<Word> subs = subwords(w);
      if (!w.is_leaf()) {
        std::set<Word> rest = subs;
        rest.erase(w);
        std::set<Word> joined = subwords(w.left());
        const std::set<Word> right = subwords(w.right());
        joined.insert(right.begin(), right.end());
        if (rest != joined) ++lemma_subwords;
      }
      for (std::size_t k : ks) {
        const bool bounded = is_k_bounded(w, k).bounded;
        if (n <= 2 * k - 1) {
          ++short_checked;
          if (!bounded) ++lemma_short;
        }
        if (bounded) {
          for (const Word& s : subs) {
            ++hereditary_checked;
            if (!is_k_bounded(s, k).bounded) ++lemma_hereditary;
          }
        }
      }
    }
  }
  out.timings.push_back({"word properties", seconds_since(t0), 60.0});

  const std::vector<std::string> names{"x", "y", "z"};
  Word w = parse_word("(((x y) (z y)) (((x z) z) y))", names);
  std::set<std::vector<std::size_t>> sprouts;
  for (const auto& s : sprout_analyses(w)) sprouts.insert(s.l_sprout);
  const std::set<std::vector<std::size_t>> wanted{{4, 1, 1, 1}, {4, 2, 1}};
  const bool has_both = std::includes(sprouts.begin(), sprouts.end(), wanted.begin(), wanted.end());
  auto sigma = step_sigma(w);
  const bool b4 = is_k_bounded(w, 4).bounded;
  const bool b3 = is_k_bounded(w, 3).bounded;
  const bool example_ok = has_both && sigma == std::optional<std::size_t>{2} && b4 && !b3;

  out.passed = lemma_subwords == 0 && lemma_short == 0 && lemma_hereditary == 0 && example_ok;
  out.details = {{"words", words},
                 {"max_leaves", max_leaves},
                 {"generators", 2},
                 {"subword_union_failures", lemma_subwords},
                 {"short_word_checks", short_checked},
                 {"short_word_failures", lemma_short},
                 {"hereditary_checks", hereditary_checked},
                 {"hereditary_failures", lemma_hereditary},
                 {"example",
                  {{"word", to_text(w, names)},
                   {"l_sprouts", sprouts},
                   {"sigma", sigma ? nlohmann::json(*sigma) : nlohmann::json(nullptr)},
                   {"bounded_4", b4},
                   {"bounded_3", b3},
                   {"ok", example_ok}}}};
  return out;
}

CriterionOutcome VerificationSuite::universal_bounds() {
  CriterionOutcome out;
  const FieldSpec f2 = FieldSpec::prime(2), f3 = FieldSpec::prime(3);
  std::vector<Algebra> extra{
      example(Family::Heisenberg, 0, 0, f3),
      adjoin_unit(example(Family::Heisenberg, 0, 0, f3)),
      adjoin_unit(zero_algebra(1, f3)),
      adjoin_unit(zero_algebra(2, f3)),
      Algebra("idempotent_1", f3, 1, {{{1, 1}, unit_vector(f3, 1, 0)}}),
      example(Family::Ed, 5, 3, f2),
      example(Family::Xd, 5, 3, f2),
  };
  if (!opts_.quick) extra.push_back(example(Family::Ed, 6, 4, f2));
  for (const Algebra& a : extra) {
    auto t0 = Clock::now();
    LengthReport r = length_exhaustive(a, {kDefaultSubspaceBudget, opts_.jobs});
    record_sequence(a, r.witness->rows());
    exhaustive_.push_back({a, *r.value});
    out.timings.push_back({"exhaustive " + a.name(), seconds_since(t0), 60.0});
  }

  ClassificationOptions co;
  co.samples = opts_.quick ? 10 : 30;
  co.jobs = opts_.jobs;
  out.passed = true;
  nlohmann::json items = nlohmann::json::array();
  std::size_t violations = 0;
  for (const auto& rec : exhaustive_) {
    const Algebra& a = rec.algebra;
    BoundCertificate cert = certify_bounds(a, classify_algebra(a, co));
    bool ok = true;
    try {
      assert_within_bounds(cert, rec.length, a.name());
    } catch (const Error& e) {
      if (e.code() != "search.bound_violation") throw;
      ok = false;
      ++violations;
    }
    if (a.unital()) {
      const bool has_unital = std::any_of(cert.bounds.begin(), cert.bounds.end(),
                                          [](const BoundEntry& b) { return b.name == "unital"; });
      ok = ok && (a.dim() < 2 || has_unital);
    }
    out.passed = out.passed && ok;
    items.push_back({{"algebra", a.name()},
                     {"field", a.field().to_string()},
                     {"length", rec.length},
                     {"proved_minimum", cert.proved_minimum ? nlohmann::json(*cert.proved_minimum) : nlohmann::json(nullptr)},
                     {"bounds", to_json(cert)},
                     {"ok", ok}});
  }

  // The non-Lie Malcev bound and its random corroboration.
  Algebra m7 = example(Family::M7, 0, 0, FieldSpec::prime(5));
  BoundCertificate cert = certify_bounds(m7, classify_algebra(m7, co));
  LengthReport lower = length_random(m7, opts_.quick ? 50 : 200, 1, opts_.jobs);
  bool m7_ok = cert.proved_minimum == std::optional<std::uint64_t>{m7.dim() - 2};
  try {
    assert_within_bounds(cert, *lower.value, m7.name());
  } catch (const Error& e) {
    if (e.code() != "search.bound_violation") throw;
    m7_ok = false;
    ++violations;
  }
  out.passed = out.passed && m7_ok;
  items.push_back({{"algebra", m7.name()},
                   {"field", "GF(5)"},
                   {"random_lower_bound", *lower.value},
                   {"proved_minimum", cert.proved_minimum ? nlohmann::json(*cert.proved_minimum) : nlohmann::json(nullptr)},
                   {"bounds", to_json(cert)},
                   {"ok", m7_ok}});
  out.details = {{"items", items}, {"violations", violations}};
  return out;
}

CriterionOutcome VerificationSuite::determinism() {
  CriterionOutcome out;
  const std::size_t wide = std::max<std::size_t>(opts_.jobs, 4);
  nlohmann::json items = nlohmann::json::array();
  out.passed = true;
  auto compare = [&](const std::string& label, auto fn) {
    const std::string a = fn(std::size_t{1}).dump(), b = fn(wide).dump();
    const bool same = a == b;
    out.passed = out.passed && same;
    items.push_back({{"check", label}, {"identical", same}});
  };
  Algebra v4 = example(Family::Vd, 4, 0, FieldSpec::prime(5));
  compare("exhaustive length of V_4 over GF(5)",
          [&](std::size_t jobs) { return to_json(length_exhaustive(v4, {kDefaultSubspaceBudget, jobs})); });
  Algebra m7 = example(Family::M7, 0, 0, FieldSpec::prime(5));
  compare("gap survey of m7 over GF(5)", [&](std::size_t jobs) {
    GapSurveyOptions o;
    o.samples = 60;
    o.jobs = jobs;
    o.malcev = true;
    return to_json(scan_gap_structure(m7, o));
  });
  Algebra v5 = example(Family::Vd, 5, 0, FieldSpec::rationals());
  compare("classification of V_5 over Q", [&](std::size_t jobs) {
    ClassificationOptions co;
    co.samples = 20;
    co.jobs = jobs;
    return to_json(classify_algebra(v5, co));
  });
  out.details = {{"items", items}};
  return out;
}

nlohmann::json VerificationSuite::report(const std::vector<CriterionOutcome>& outcomes) const {
  nlohmann::json list = nlohmann::json::array();
  std::size_t passed = 0, deviating = 0;
  for (const auto& o : outcomes) {
    passed += o.passed ? 1 : 0;
    deviating += o.passed && !o.deviations.empty() ? 1 : 0;
    const char* status = !o.passed ? "FAIL" : o.deviations.empty() ? "PASS" : "DEVIATION";
    list.push_back({{"id", o.id},
                    {"title", o.title},
                    {"status", status},
                    {"deviations", o.deviations},
                    {"details", o.details}});
  }
  return {{"suite", "nalength acceptance"},
          {"quick", opts_.quick},
          {"criteria", list},
          {"passed", passed - deviating},
          {"deviations", deviating},
          {"failed", outcomes.size() - passed}};
}

nlohmann::json run_verification(const VerificationOptions& opts) {
  VerificationSuite suite(opts);
  std::vector<CriterionOutcome> outcomes;
  for (const auto& c : VerificationSuite::criteria()) outcomes.push_back(suite.run(c.id));
  return suite.report(outcomes);
}

}  // namespace nalength
