#include "nalength/search.hpp"

#include <algorithm>
#include <functional>

#include "nalength/error.hpp"
#include "nalength/filtration.hpp"
#include "nalength/parallel.hpp"

namespace nalength {

namespace {

constexpr std::size_t kBlock = 256;

std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i)
    if (__builtin_mul_overflow(r, base, &r)) return std::nullopt;
  return r;
}

void for_each_combination(std::size_t n, std::size_t m, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> c(m);
  for (std::size_t i = 0; i < m; ++i) c[i] = i;
  if (m > n) return;
  while (true) {
    f(c);
    std::size_t i = m;
    while (i > 0 && c[i - 1] == n - m + i - 1) --i;
    if (i == 0) return;
    ++c[i - 1];
    for (std::size_t j = i; j < m; ++j) c[j] = c[j - 1] + 1;
  }
}

std::size_t free_count(std::size_t d, const std::vector<std::size_t>& pivots) {
  std::size_t n = 0;
  const std::size_t m = pivots.size();
  for (std::size_t r = 0; r < m; ++r) n += (d - 1 - pivots[r]) - (m - 1 - r);
  return n;
}

// Length of the span `s` if it generates, with the characteristic sequence
// checked along the way.
std::optional<std::vector<std::size_t>> generated_charseq(const Algebra& a, const SubspaceBasis& s) {
  Filtration f = compute_filtration(a, s.rows(), {.max_level = 1'000'000, .keep_levels = false, .verify_closure = false});
  if (!f.generates) return std::nullopt;
  return char_seq(f);
}

struct Best {
  std::optional<std::size_t> value;
  std::uint64_t index = 0;
  std::uint64_t generating = 0;
  std::uint64_t scanned = 0;
};

Best merge(Best acc, Best next) {
  if (next.value && (!acc.value || *next.value > *acc.value)) {
    acc.value = next.value;
    acc.index = next.index;
  }
  acc.generating += next.generating;
  acc.scanned += next.scanned;
  return acc;
}

}  // namespace

std::optional<std::uint64_t> gaussian_binomial(std::size_t d, std::size_t m, std::uint64_t p) {
  if (m > d) return 0;
  std::uint64_t total = 0;
  bool overflow = false;
  for_each_combination(d, m, [&](const std::vector<std::size_t>& c) {
    auto n = checked_pow(p, free_count(d, c));
    if (!n || __builtin_add_overflow(total, *n, &total)) overflow = true;
  });
  if (overflow) return std::nullopt;
  return total;
}

SubspaceEnumerator::SubspaceEnumerator(const FieldSpec& field, std::size_t d, std::vector<std::size_t> dims,
                                       std::uint64_t budget)
    : field_(field), d_(d) {
  if (!field.is_prime_field()) throw Error("search.invalid", "subspace enumeration needs a prime field");
  std::sort(dims.begin(), dims.end());
  dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
  const std::uint64_t p = field.modulus();
  bool overflow = false;
  for (std::size_t m : dims) {
    if (m > d) throw Error("search.invalid", "subspace dimension " + std::to_string(m) + " exceeds " + std::to_string(d));
    for_each_combination(d, m, [&](const std::vector<std::size_t>& c) {
      Block b;
      b.dim = m;
      b.pivots = c;
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t col = c[r] + 1; col < d; ++col)
          if (!std::binary_search(c.begin(), c.end(), col)) b.free.emplace_back(r, col);
      auto n = checked_pow(p, b.free.size());
      b.start = total_;
      b.count = n.value_or(0);
      if (!n || __builtin_add_overflow(total_, *n, &total_)) overflow = true;
      blocks_.push_back(std::move(b));
    });
  }
  if (overflow || total_ > budget)
    throw BudgetExceeded("search.budget",
                         "the scan covers " + (overflow ? std::string("more than 2^64") : std::to_string(total_)) +
                             " subspaces of " + field.to_string() + "^" + std::to_string(d) +
                             ", over the budget of " + std::to_string(budget) + "; use random mode instead");
}

SubspaceBasis SubspaceEnumerator::at(std::uint64_t index) const {
  if (index >= total_) throw Error("search.invalid", "subspace index out of range");
  auto it = std::upper_bound(blocks_.begin(), blocks_.end(), index,
                             [](std::uint64_t i, const Block& b) { return i < b.start; });
  const Block& b = *std::prev(it);
  std::uint64_t offset = index - b.start;
  std::vector<Vector> rows(b.dim, zero_vector(field_, d_));
  for (std::size_t r = 0; r < b.dim; ++r) rows[r][b.pivots[r]] = Scalar::one(field_);
  const std::uint64_t p = field_.modulus();
  for (std::size_t f = b.free.size(); f-- > 0;) {
    auto [r, c] = b.free[f];
    rows[r][c] = Scalar::from_int(static_cast<std::int64_t>(offset % p), field_);
    offset /= p;
  }
  return SubspaceBasis::span_of(field_, d_, rows);
}

std::vector<SubspaceBasis> enumerate_subspaces(const FieldSpec& field, std::size_t d,
                                               const std::vector<std::size_t>& dims, std::uint64_t budget) {
  SubspaceEnumerator e(field, d, dims, budget);
  std::vector<SubspaceBasis> out;
  out.reserve(e.size());
  for (std::uint64_t i = 0; i < e.size(); ++i) out.push_back(e.at(i));
  return out;
}

BoundCertificate certify_bounds(const Algebra& a, const ClassificationEvidence& evidence) {
  BoundCertificate cert;
  const std::uint64_t d = a.dim();
  auto status_text = [](EvidenceStatus s) -> std::optional<std::string> {
    if (s == EvidenceStatus::Proved) return "proved";
    if (s == EvidenceStatus::Sampled) return "sampled";
    return std::nullopt;
  };
  if (a.unital() && d >= 2 && d - 2 < 63)
    cert.bounds.push_back({"unital", std::uint64_t{1} << (d - 2), "unital", "proved"});
  if (d >= 2) {
    for (std::uint64_t k = 2; k <= 4; ++k) {
      const std::string ks = std::to_string(k);
      const std::pair<std::string, std::string> sources[] = {
          {ks + "-round", ks + "-sliding"}, {ks + "-based", ks + "-mixing"},
          {ks + "-mixing", ks + "-mixing"}, {ks + "-sliding", ks + "-sliding"}};
      for (const auto& [key, cls] : sources) {
        auto st = status_text(evidence.get(key));
        if (!st) continue;
        cert.bounds.push_back({"steady-growth (" + cls + ")", d * (k - 1), key, *st});
        cert.bounds.push_back({"steady-growth chain (" + cls + ")", 1 + (d - 1) * (k - 1), key, *st});
      }
    }
    if (evidence.get("malcev") == EvidenceStatus::Proved) {
      cert.bounds.push_back({"steady-growth (3-mixing)", 2 * d, "malcev", "proved"});
      cert.bounds.push_back({"malcev", d - 1, "malcev", "proved"});
      if (evidence.get("jacobi") == EvidenceStatus::Failed)
        cert.bounds.push_back({"malcev non-lie", d - 2, "malcev and not jacobi", "proved"});
    }
  }
  for (const auto& b : cert.bounds)
    if (b.status == "proved" && (!cert.proved_minimum || b.value < *cert.proved_minimum))
      cert.proved_minimum = b.value;
  return cert;
}

void assert_within_bounds(const BoundCertificate& cert, std::uint64_t length, const std::string& context) {
  for (const auto& b : cert.bounds)
    if (b.status == "proved" && length > b.value)
      throw Error("search.bound_violation", context + ": length " + std::to_string(length) + " exceeds the bound " +
                                                b.name + " = " + std::to_string(b.value));
}

nlohmann::json to_json(const BoundCertificate& c) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& b : c.bounds)
    arr.push_back({{"name", b.name}, {"value", b.value}, {"hypothesis", b.hypothesis}, {"status", b.status}});
  return arr;
}

nlohmann::json to_json(const LengthReport& r) {
  nlohmann::json j;
  j["mode"] = r.mode == LengthMode::Exhaustive ? "exhaustive" : "random";
  j["field"] = r.field;
  j["value"] = r.value ? nlohmann::json(*r.value) : nlohmann::json(nullptr);
  j["is_exact"] = r.is_exact;
  if (r.witness) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.witness->rows()) rows.push_back(to_strings(row));
    j["witness_subspace"] = rows;
  } else {
    j["witness_subspace"] = nullptr;
  }
  j["subspaces_scanned"] = r.subspaces_scanned;
  j["generating_subspaces"] = r.generating;
  if (r.mode == LengthMode::Random) {
    j["samples"] = r.samples;
    j["seed"] = r.seed;
  }
  if (r.bounds) {
    j["bounds"] = to_json(*r.bounds);
    j["proved_minimum"] = r.bounds->proved_minimum ? nlohmann::json(*r.bounds->proved_minimum) : nlohmann::json(nullptr);
  } else {
    j["bounds"] = nullptr;
  }
  return j;
}

LengthReport length_exhaustive(const Algebra& a, const ExhaustiveOptions& opts) {
  std::vector<std::size_t> dims;
  for (std::size_t m = 1; m <= a.dim(); ++m) dims.push_back(m);
  SubspaceEnumerator e(a.field(), a.dim(), dims, opts.budget);
  Best best = parallel_reduce(
      e.size(), opts.jobs, kBlock, Best{},
      [&](std::size_t begin, std::size_t end) {
        Best b;
        for (std::size_t i = begin; i < end; ++i) {
          ++b.scanned;
          auto m = generated_charseq(a, e.at(i));
          if (!m) continue;
          ++b.generating;
          if (!b.value || m->back() > *b.value) {
            b.value = m->back();
            b.index = i;
          }
        }
        return b;
      },
      merge);
  if (!best.value) throw Error("search.no_generating_subspace", "no subspace generates " + a.name());
  LengthReport r;
  r.mode = LengthMode::Exhaustive;
  r.field = a.field().to_string();
  r.value = best.value;
  r.is_exact = true;
  r.witness = e.at(best.index);
  r.subspaces_scanned = best.scanned;
  r.generating = best.generating;
  return r;
}

namespace {

std::pair<SubspaceBasis, std::vector<std::size_t>> sample_with_charseq(const Algebra& a, std::uint64_t seed,
                                                                       std::uint64_t i) {
  const std::size_t d = a.dim();
  for (std::size_t t = 0; t < kRandomRetryCap; ++t) {
    const std::size_t m = 1 + static_cast<std::size_t>((i + t) % d);
    std::vector<Vector> rows;
    for (std::size_t r = 0; r < m; ++r) rows.push_back(random_vector(a.field(), d, seed, ((i * kRandomRetryCap + t) << 6) + r));
    SubspaceBasis s = SubspaceBasis::span_of(a.field(), d, rows);
    if (auto c = generated_charseq(a, s)) return {std::move(s), std::move(*c)};
  }
  throw Error("search.retry_cap", "no generating subspace after " + std::to_string(kRandomRetryCap) +
                                      " random attempts for sample " + std::to_string(i));
}

}  // namespace

SubspaceBasis sample_generating_subspace(const Algebra& a, std::uint64_t seed, std::uint64_t i) {
  return sample_with_charseq(a, seed, i).first;
}

LengthReport length_random(const Algebra& a, std::size_t n, std::uint64_t seed, std::size_t jobs) {
  LengthReport r;
  r.mode = LengthMode::Random;
  r.field = a.field().to_string();
  r.samples = n;
  r.seed = seed;
  Best best = parallel_reduce(
      n, jobs, 16, Best{},
      [&](std::size_t begin, std::size_t end) {
        Best b;
        for (std::size_t i = begin; i < end; ++i) {
          auto [s, m] = sample_with_charseq(a, seed, i);
          ++b.scanned;
          ++b.generating;
          if (!b.value || m.back() > *b.value) {
            b.value = m.back();
            b.index = i;
          }
        }
        return b;
      },
      merge);
  r.value = best.value;
  r.subspaces_scanned = best.scanned;
  r.generating = best.generating;
  if (best.value) r.witness = sample_generating_subspace(a, seed, best.index);
  return r;
}

SequenceGaps gaps_of(const std::vector<std::size_t>& m) {
  SequenceGaps g;
  std::vector<std::size_t> gaps;
  for (std::size_t j = 1; j < m.size(); ++j) gaps.push_back(m[j] - m[j - 1]);
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    switch (gaps[i]) {
      case 0: ++g.j0; break;
      case 1: ++g.j1; break;
      case 2: ++g.j2; break;
      default: ++g.more;
    }
    // gaps[i] sits at 1-based position j = i + 2
    if (gaps[i] == 2 && (i == 0 || gaps[i - 1] != 0)) g.unpaired.push_back(i + 2);
  }
  return g;
}

namespace {

struct SurveyChunk {
  GapSurvey survey;
  // (sample index, 1-based position) of every gap of 2
  std::vector<std::pair<std::uint64_t, std::size_t>> gap2;
};

}  // namespace

GapSurvey scan_gap_structure(const Algebra& a, const GapSurveyOptions& opts) {
  SurveyChunk all = parallel_reduce(
      opts.samples, opts.jobs, 16, SurveyChunk{},
      [&](std::size_t begin, std::size_t end) {
        SurveyChunk c;
        for (std::size_t i = begin; i < end; ++i) {
          auto [s, m] = sample_with_charseq(a, opts.seed, i);
          GapSurvey& g = c.survey;
          ++g.sequences;
          ++g.sequences_seen[m];
          g.max_length = std::max(g.max_length, m.back());
          for (std::size_t j = 1; j < m.size(); ++j) {
            std::size_t gap = m[j] - m[j - 1];
            ++g.gap_counts[gap];
            g.max_gap = std::max(g.max_gap, gap);
            if (gap == 2) c.gap2.emplace_back(i, j + 1);
          }
          if (opts.malcev) {
            SequenceGaps sg = gaps_of(m);
            g.paired_violations += sg.unpaired.size();
            if (!sg.unpaired.empty() && !g.first_violation) g.first_violation = m;
          }
        }
        return c;
      },
      [](SurveyChunk acc, SurveyChunk next) {
        GapSurvey& g = acc.survey;
        const GapSurvey& n = next.survey;
        g.sequences += n.sequences;
        for (const auto& [k, v] : n.gap_counts) g.gap_counts[k] += v;
        for (const auto& [k, v] : n.sequences_seen) g.sequences_seen[k] += v;
        g.max_gap = std::max(g.max_gap, n.max_gap);
        g.max_length = std::max(g.max_length, n.max_length);
        g.paired_violations += n.paired_violations;
        if (!g.first_violation) g.first_violation = n.first_violation;
        acc.gap2.insert(acc.gap2.end(), next.gap2.begin(), next.gap2.end());
        return acc;
      });
  GapSurvey g = std::move(all.survey);
  g.malcev_checked = opts.malcev;

  for (const auto& [i, j] : all.gap2) {
    if (g.step_checks_done >= opts.step_checks) break;
    auto [s, m] = sample_with_charseq(a, opts.seed, i);
    Filtration f = compute_filtration(a, s.rows());
    try {
      StepSearchResult r = find_step_words(a, s.rows(), f, m[j - 1], opts.word_budget);
      ++g.step_checks_done;
      if (r.p < 1) ++g.step_checks_failed;
    } catch (const BudgetExceeded&) {
      break;
    }
  }
  return g;
}

nlohmann::json to_json(const GapSurvey& g) {
  nlohmann::json j;
  j["sequences"] = g.sequences;
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [k, v] : g.gap_counts) counts[std::to_string(k)] = v;
  j["gap_counts"] = counts;
  j["max_gap"] = g.max_gap;
  j["max_length"] = g.max_length;
  j["malcev_checked"] = g.malcev_checked;
  j["paired_violations"] = g.paired_violations;
  j["first_violation"] = g.first_violation ? nlohmann::json(*g.first_violation) : nlohmann::json(nullptr);
  j["step_checks_done"] = g.step_checks_done;
  j["step_checks_failed"] = g.step_checks_failed;
  nlohmann::json seen = nlohmann::json::array();
  for (const auto& [seq, n] : g.sequences_seen) seen.push_back({{"char_seq", seq}, {"count", n}});
  j["sequences_seen"] = seen;
  return j;
}

}  // namespace nalength
