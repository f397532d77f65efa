#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "nalength/algebra.hpp"
#include "nalength/linalg.hpp"
#include "nalength/word.hpp"

namespace nalength {

inline constexpr std::uint64_t kDefaultWordBudget = 1'000'000;

/// The chain L_0 ⊆ L_1 ⊆ ... of spans of words of bounded length.
struct Filtration {
  std::size_t algebra_dim = 0;
  bool unital = false;
  /// L_0 .. L_c; empty unless the filtration was computed with keep_levels.
  std::vector<SubspaceBasis> levels;
  /// dim L_0 .. dim L_c.
  std::vector<std::size_t> dims;
  /// c: the level after which the chain is constant, or the last level
  /// computed when truncated.
  std::size_t closure_level = 0;
  bool generates = false;
  bool truncated = false;

  /// L_i, which equals L_c for i > c. Throws past a truncation point.
  const SubspaceBasis& level(std::size_t i) const;
  std::size_t dim_at(std::size_t i) const;
};

struct FiltrationOptions {
  std::size_t max_level = 1'000'000;
  bool keep_levels = true;
  /// Re-check μ(L_c, L_c) ⊆ L_c directly once the chain has stopped.
  bool verify_closure = true;
};

/// New basis vectors of L_t are multiplied against those of every L_a, a <= t,
/// and the products queued at level a + t; levels with nothing queued are
/// plateaus. The chain stops once it spans the algebra or the queue drains,
/// which certifies μ(L_c, L_c) ⊆ L_c.
Filtration compute_filtration(const Algebra& a, const std::vector<Vector>& S, const FiltrationOptions& opts = {});

/// True iff the product of any two basis rows of `b` lies in `b`.
bool is_closed_under_product(const Algebra& a, const SubspaceBasis& b);

/// Throws Error("filtration.not_generating") with the subalgebra dimension
/// when f does not generate, and Error("filtration.invariant") if the result
/// breaks the length or additive-decomposition properties.
std::vector<std::size_t> char_seq(const Filtration& f);
/// Number of sequences char_seq has returned in this process, each one having
/// passed its invariant checks.
std::uint64_t checked_char_seqs();

/// Minimal i with L_i = A; throws when S does not generate.
std::size_t length_of_set(const Algebra& a, const std::vector<Vector>& S);

nlohmann::json filtration_report(const Filtration& f);

/// Generator i of a word is evaluated as S[i-1].
Assignment assignment_from(const std::vector<Vector>& S);

/// The value of w is outside L_{l(w)-1}. Zero values are reducible.
bool is_irreducible(const Algebra& a, const Filtration& f, const Word& w, const Assignment& assignment);

enum class WordFilter { None, KBounded };

struct IrreducibleSearch {
  std::size_t length = 1;
  WordFilter filter = WordFilter::None;
  std::size_t k = 2;
  std::uint64_t budget = kDefaultWordBudget;
};

/// Irreducible words of the given length with leaves drawn from S, in
/// enumeration order. Throws BudgetExceeded("filtration.budget") when the
/// number of candidate words exceeds the budget.
std::vector<Word> find_irreducible_words(const Algebra& a, const std::vector<Vector>& S, const Filtration& f,
                                         const IrreducibleSearch& search);

/// u ∼ v: the values are linearly dependent modulo L_{max(l(u), l(v)) - 1}.
bool equivalent(const Algebra& a, const Filtration& f, const Assignment& assignment, const Word& u, const Word& v);

struct StepSearchResult {
  std::size_t length = 0;
  std::size_t p = 0;
  std::vector<Word> witnesses;
};

/// Minimal σ over the irreducible 3-bounded words of the given length.
/// Throws Error("filtration.no_candidates") if there are none.
StepSearchResult find_step_words(const Algebra& a, const std::vector<Vector>& S, const Filtration& f,
                                 std::size_t length, std::uint64_t budget = kDefaultWordBudget);

struct GapReport {
  bool decomposable = true;
  /// 0-based positions h with m_h >= 2 and no decomposition m_h = m_a + m_b.
  std::vector<std::size_t> undecomposed;
  std::size_t max_gap = 0;
  std::optional<std::size_t> k;
  /// 0-based positions j with m_j - m_{j-1} > k - 1.
  std::vector<std::size_t> gap_violations;
};

GapReport analyze_charseq(const std::vector<std::size_t>& c, std::optional<std::size_t> k = std::nullopt);

nlohmann::json to_json(const GapReport& g);

}  // namespace nalength
