#include "nalength/filtration.hpp"

#include <algorithm>
#include <atomic>
#include <map>

#include "nalength/error.hpp"

namespace nalength {

const SubspaceBasis& Filtration::level(std::size_t i) const {
  if (levels.empty()) throw Error("filtration.invalid", "levels were not kept for this filtration");
  if (i >= levels.size()) {
    if (truncated)
      throw Error("filtration.truncated", "level " + std::to_string(i) + " lies past the truncation point " +
                                              std::to_string(levels.size() - 1));
    return levels.back();
  }
  return levels[i];
}

std::size_t Filtration::dim_at(std::size_t i) const {
  if (i >= dims.size()) {
    if (truncated)
      throw Error("filtration.truncated", "level " + std::to_string(i) + " lies past the truncation point");
    return dims.back();
  }
  return dims[i];
}

Filtration compute_filtration(const Algebra& a, const std::vector<Vector>& S, const FiltrationOptions& opts) {
  if (opts.max_level < 1) throw Error("filtration.invalid", "max_level must be >= 1");
  const std::size_t d = a.dim();
  Filtration f;
  f.algebra_dim = d;
  f.unital = a.unital();

  SubspaceBasis span(a.field(), d);
  if (a.unital()) span.insert(*a.unit());
  // fresh[t]: vectors that enlarged the span at level t (t >= 1)
  std::map<std::size_t, std::vector<Vector>> fresh;
  std::map<std::size_t, std::vector<Vector>> pending;
  pending[1] = S;
  for (const auto& v : S)
    if (v.size() != d) throw Error("exactfield.dimension_mismatch", "generator of wrong length");

  auto record_until = [&](std::size_t t) {
    while (f.dims.size() <= t) {
      f.dims.push_back(span.dim());
      if (opts.keep_levels) f.levels.push_back(span);
    }
  };
  record_until(0);

  std::size_t current = 0;
  std::size_t last_growth = 0;
  while (span.dim() < d && !pending.empty()) {
    auto node = pending.begin();
    const std::size_t t = node->first;
    if (t > opts.max_level) break;
    // levels current+1 .. t-1 are a plateau
    if (t > current + 1) {
      if (opts.keep_levels)
        for (std::size_t i = current + 1; i < t; ++i) f.levels.push_back(span);
      f.dims.resize(t, span.dim());
    }
    std::vector<Vector> grew;
    for (const auto& v : node->second)
      if (span.insert(v)) grew.push_back(v);
    pending.erase(node);
    current = t;
    f.dims.push_back(span.dim());
    if (opts.keep_levels) f.levels.push_back(span);
    if (grew.empty()) continue;
    last_growth = t;
    if (span.dim() == d) break;
    for (const auto& [s, olds] : fresh) {
      auto& bucket = pending[s + t];
      for (const auto& u : olds)
        for (const auto& v : grew) {
          bucket.push_back(a.multiply(u, v));
          bucket.push_back(a.multiply(v, u));
        }
    }
    auto& bucket = pending[2 * t];
    for (const auto& u : grew)
      for (const auto& v : grew) bucket.push_back(a.multiply(u, v));
    fresh[t] = std::move(grew);
  }

  f.generates = span.dim() == d;
  if (f.generates || pending.empty()) {
    f.closure_level = f.generates ? current : last_growth;
    f.dims.resize(f.closure_level + 1);
    if (opts.keep_levels) f.levels.resize(f.closure_level + 1, span);
  } else {
    f.truncated = true;
    record_until(opts.max_level);
    f.closure_level = opts.max_level;
  }
  if (!f.truncated && opts.verify_closure && !is_closed_under_product(a, span))
    throw Error("filtration.invariant", "stopped at a span that is not closed under the product");
  return f;
}

bool is_closed_under_product(const Algebra& a, const SubspaceBasis& b) {
  for (const auto& u : b.rows())
    for (const auto& v : b.rows())
      if (!b.contains(a.multiply(u, v))) return false;
  return true;
}

namespace {
std::atomic<std::uint64_t> checked_sequences{0};
}  // namespace

std::vector<std::size_t> char_seq(const Filtration& f) {
  if (!f.generates)
    throw Error("filtration.not_generating",
                "the set generates a subalgebra of dimension " + std::to_string(f.dims.empty() ? 0 : f.dims.back()) +
                    " in an algebra of dimension " + std::to_string(f.algebra_dim) +
                    (f.truncated ? " (filtration truncated)" : ""));
  std::vector<std::size_t> m;
  for (std::size_t i = 0; i < f.dims[0]; ++i) m.push_back(0);
  for (std::size_t t = 1; t < f.dims.size(); ++t)
    for (std::size_t i = f.dims[t - 1]; i < f.dims[t]; ++i) m.push_back(t);

  if (m.size() != f.algebra_dim || m.back() != f.closure_level)
    throw Error("filtration.invariant", "characteristic sequence has " + std::to_string(m.size()) +
                                            " terms and last term " + std::to_string(m.back()) + " for dimension " +
                                            std::to_string(f.algebra_dim) + " and length " +
                                            std::to_string(f.closure_level));
  GapReport g = analyze_charseq(m);
  if (!g.decomposable)
    throw Error("filtration.invariant",
                "term at position " + std::to_string(g.undecomposed.front() + 1) + " is not a sum of two earlier terms");
  ++checked_sequences;
  return m;
}

std::uint64_t checked_char_seqs() { return checked_sequences.load(); }

std::size_t length_of_set(const Algebra& a, const std::vector<Vector>& S) {
  Filtration f = compute_filtration(a, S, {.max_level = 1'000'000, .keep_levels = false, .verify_closure = true});
  return char_seq(f).back();
}

nlohmann::json filtration_report(const Filtration& f) {
  nlohmann::json j;
  j["dims"] = f.dims;
  if (f.generates) {
    auto m = char_seq(f);
    j["char_seq"] = m;
    j["length"] = m.back();
  } else {
    j["char_seq"] = nullptr;
    j["length"] = nullptr;
  }
  j["closure_level"] = f.closure_level;
  j["generates"] = f.generates;
  j["truncated"] = f.truncated;
  return j;
}

Assignment assignment_from(const std::vector<Vector>& S) {
  Assignment out;
  for (std::size_t i = 0; i < S.size(); ++i) out.emplace(static_cast<int>(i + 1), S[i]);
  return out;
}

bool is_irreducible(const Algebra& a, const Filtration& f, const Word& w, const Assignment& assignment) {
  Vector v = evaluate(a, assignment, w);
  if (is_zero(v)) return false;
  return !f.level(w.length() - 1).contains(v);
}

namespace {

void check_budget(std::size_t gens, std::size_t length, std::uint64_t budget) {
  auto n = word_count(gens, length);
  if (!n || *n > budget)
    throw BudgetExceeded("filtration.budget", "enumerating words of length " + std::to_string(length) + " over " +
                                                  std::to_string(gens) + " generators exceeds the budget of " +
                                                  std::to_string(budget) + " words");
}

}  // namespace

std::vector<Word> find_irreducible_words(const Algebra& a, const std::vector<Vector>& S, const Filtration& f,
                                         const IrreducibleSearch& search) {
  if (search.length < 1) throw Error("filtration.invalid", "word length must be >= 1");
  if (S.empty()) return {};
  check_budget(S.size(), search.length, search.budget);
  const Assignment asg = assignment_from(S);
  const SubspaceBasis& below = f.level(search.length - 1);
  std::vector<Word> out;
  for (const auto& w : enumerate_words(S.size(), search.length)) {
    if (search.filter == WordFilter::KBounded && !is_k_bounded(w, search.k).bounded) continue;
    Vector v = evaluate(a, asg, w);
    if (!is_zero(v) && !below.contains(v)) out.push_back(w);
  }
  return out;
}

bool equivalent(const Algebra& a, const Filtration& f, const Assignment& assignment, const Word& u, const Word& v) {
  const std::size_t m = std::max(u.length(), v.length());
  SubspaceBasis base = f.level(m - 1);
  const std::size_t before = base.dim();
  base.insert(evaluate(a, assignment, u));
  base.insert(evaluate(a, assignment, v));
  return base.dim() - before <= 1;
}

StepSearchResult find_step_words(const Algebra& a, const std::vector<Vector>& S, const Filtration& f,
                                 std::size_t length, std::uint64_t budget) {
  if (length < 2) throw Error("filtration.invalid", "step words need length >= 2");
  auto words = find_irreducible_words(a, S, f, {length, WordFilter::KBounded, 3, budget});
  if (words.empty())
    throw Error("filtration.no_candidates", "no irreducible 3-bounded word of length " + std::to_string(length));
  StepSearchResult r;
  r.length = length;
  r.p = SIZE_MAX;
  for (const auto& w : words) {
    auto s = step_sigma(w);
    if (!s) continue;
    if (*s < r.p) {
      r.p = *s;
      r.witnesses.clear();
    }
    if (*s == r.p) r.witnesses.push_back(w);
  }
  if (r.witnesses.empty())
    throw Error("filtration.invariant", "3-bounded irreducible words of length " + std::to_string(length) +
                                            " have no defined step");
  return r;
}

GapReport analyze_charseq(const std::vector<std::size_t>& c, std::optional<std::size_t> k) {
  GapReport g;
  g.k = k;
  for (std::size_t h = 0; h < c.size(); ++h) {
    if (h > 0) {
      std::size_t gap = c[h] >= c[h - 1] ? c[h] - c[h - 1] : 0;
      g.max_gap = std::max(g.max_gap, gap);
      if (k && gap + 1 > *k) g.gap_violations.push_back(h);
    }
    if (c[h] < 2) continue;
    bool found = false;
    for (std::size_t t1 = 0; t1 < h && !found; ++t1)
      for (std::size_t t2 = t1; t2 < h && !found; ++t2)
        found = c[t1] > 0 && c[t2] > 0 && c[t1] + c[t2] == c[h];
    if (!found) {
      g.decomposable = false;
      g.undecomposed.push_back(h);
    }
  }
  return g;
}

nlohmann::json to_json(const GapReport& g) {
  nlohmann::json j;
  j["decomposable"] = g.decomposable;
  j["undecomposed"] = g.undecomposed;
  j["max_gap"] = g.max_gap;
  j["k"] = g.k ? nlohmann::json(*g.k) : nlohmann::json(nullptr);
  j["gap_violations"] = g.gap_violations;
  return j;
}

}  // namespace nalength
