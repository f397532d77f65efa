#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nalength/algebra.hpp"
#include "nalength/classify.hpp"
#include "nalength/linalg.hpp"

namespace nalength {

inline constexpr std::uint64_t kDefaultSubspaceBudget = 5'000'000;
inline constexpr std::size_t kRandomRetryCap = 1000;

/// Number of m-dimensional subspaces of F_p^d, or nullopt on overflow.
std::optional<std::uint64_t> gaussian_binomial(std::size_t d, std::size_t m, std::uint64_t p);

/// Random access to the subspaces of F_p^d with dimensions in `dims`, in
/// canonical order: dimension ascending, then pivot columns
/// lexicographically, then the free RREF entries as base-p digits (first
/// entry most significant).
class SubspaceEnumerator {
 public:
  /// Throws BudgetExceeded("search.budget") if the total exceeds `budget`.
  SubspaceEnumerator(const FieldSpec& field, std::size_t d, std::vector<std::size_t> dims,
                     std::uint64_t budget = kDefaultSubspaceBudget);

  std::uint64_t size() const { return total_; }
  SubspaceBasis at(std::uint64_t index) const;

 private:
  struct Block {
    std::size_t dim;
    std::vector<std::size_t> pivots;
    // (row, column) of each free entry
    std::vector<std::pair<std::size_t, std::size_t>> free;
    std::uint64_t start;
    std::uint64_t count;
  };
  FieldSpec field_;
  std::size_t d_;
  std::vector<Block> blocks_;
  std::uint64_t total_ = 0;
};

std::vector<SubspaceBasis> enumerate_subspaces(const FieldSpec& field, std::size_t d,
                                               const std::vector<std::size_t>& dims,
                                               std::uint64_t budget = kDefaultSubspaceBudget);

struct BoundEntry {
  std::string name;
  std::uint64_t value = 0;
  std::string hypothesis;
  /// "proved", "sampled" or "assumed".
  std::string status;
};

struct BoundCertificate {
  std::vector<BoundEntry> bounds;
  /// Smallest bound whose hypothesis is proved.
  std::optional<std::uint64_t> proved_minimum;
};

BoundCertificate certify_bounds(const Algebra& a, const ClassificationEvidence& evidence);
/// Throws Error("search.bound_violation") if `length` exceeds a proved bound.
void assert_within_bounds(const BoundCertificate& cert, std::uint64_t length, const std::string& context);
nlohmann::json to_json(const BoundCertificate& c);

enum class LengthMode { Exhaustive, Random };

struct LengthReport {
  LengthMode mode = LengthMode::Exhaustive;
  std::string field;
  std::optional<std::size_t> value;
  bool is_exact = false;
  std::optional<SubspaceBasis> witness;
  std::uint64_t subspaces_scanned = 0;
  std::uint64_t generating = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::optional<BoundCertificate> bounds;
};

nlohmann::json to_json(const LengthReport& r);

struct ExhaustiveOptions {
  std::uint64_t budget = kDefaultSubspaceBudget;
  std::size_t jobs = 1;
};

/// l(A) as the maximum of l(S) over generating subspaces S. Ties keep the
/// first subspace in canonical order.
LengthReport length_exhaustive(const Algebra& a, const ExhaustiveOptions& opts = {});

/// The i-th seeded generating subspace: attempt t draws a random matrix with
/// 1 + ((i + t) mod d) rows; throws Error("search.retry_cap") after
/// kRandomRetryCap non-generating attempts.
SubspaceBasis sample_generating_subspace(const Algebra& a, std::uint64_t seed, std::uint64_t i);

/// A lower bound for l(A) from n sampled generating subspaces.
LengthReport length_random(const Algebra& a, std::size_t n, std::uint64_t seed, std::size_t jobs = 1);

struct GapSurveyOptions {
  std::size_t samples = 500;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  /// Check paired gaps (every gap 2 right after a gap 0).
  bool malcev = false;
  /// Number of gap-2 instances on which a 3-bounded step word with p >= 1 is
  /// searched for; 0 disables.
  std::size_t step_checks = 0;
  std::uint64_t word_budget = 1'000'000;
};

struct GapSurvey {
  std::size_t sequences = 0;
  /// gap size -> number of positions j >= 2 with m_j - m_{j-1} equal to it.
  std::map<std::size_t, std::uint64_t> gap_counts;
  std::size_t max_gap = 0;
  std::size_t max_length = 0;
  bool malcev_checked = false;
  std::uint64_t paired_violations = 0;
  std::optional<std::vector<std::size_t>> first_violation;
  std::size_t step_checks_done = 0;
  std::size_t step_checks_failed = 0;
  /// Distinct characteristic sequences and how often each occurred.
  std::map<std::vector<std::size_t>, std::uint64_t> sequences_seen;
};

struct SequenceGaps {
  std::size_t j0 = 0, j1 = 0, j2 = 0, more = 0;
  /// 1-based positions j with a gap of 2 not preceded by a gap of 0.
  std::vector<std::size_t> unpaired;
};

SequenceGaps gaps_of(const std::vector<std::size_t>& char_seq);

GapSurvey scan_gap_structure(const Algebra& a, const GapSurveyOptions& opts);
nlohmann::json to_json(const GapSurvey& g);

}  // namespace nalength
