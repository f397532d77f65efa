#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nalength/algebra.hpp"

namespace nalength {

/// An element of the free magma on generators 1..g: a leaf or a product of two
/// words. Immutable; copies share structure.
class Word {
 public:
  static Word leaf(int gen);
  static Word node(Word left, Word right);

  bool is_leaf() const;
  /// Generator index of a leaf (>= 1); 0 for products.
  int gen() const;
  const Word& left() const;
  const Word& right() const;
  std::size_t length() const;

  /// min(l(left), l(right)); 1 for a leaf.
  std::size_t min_factor_length() const;
  /// l(right); 0 for a leaf.
  std::size_t right_length() const;

  /// Generator indices of the leaves, left to right.
  std::vector<int> leaves() const;

  friend bool operator==(const Word& a, const Word& b);
  /// Orders by length, then leaves before products, then generator, then
  /// left factor, then right factor.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  struct Node;
  Word() = default;
  explicit Word(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Word::Node {
  int gen = 0;
  std::size_t length = 1;
  Word left;
  Word right;
};

Word operator*(const Word& a, const Word& b);

/// "(L R)" with one space; leaves print as names[gen-1] when available and as
/// "g<i>" otherwise.
std::string to_text(const Word& w, const std::vector<std::string>& names = {});
/// Inverse of to_text. Leaves are names from `names` or "g<i>".
Word parse_word(std::string_view text, const std::vector<std::string>& names = {});

/// Catalan(n-1) * g^n, or nullopt when that does not fit in 64 bits.
std::optional<std::uint64_t> word_count(std::size_t num_gens, std::size_t length);

/// Every word with `length` leaves over generators 1..num_gens. Bracketings are
/// ordered recursively (split point ascending, then left shape, then right
/// shape); within a bracketing the leaf labels run lexicographically.
std::vector<Word> enumerate_words(std::size_t num_gens, std::size_t length);

/// Every bracketing with n leaves, all labelled by generator 1, in enumeration order.
std::vector<Word> enumerate_shapes(std::size_t length);

using Assignment = std::map<int, Vector>;

/// Throws Error("words.missing_assignment") if a leaf has no vector.
Vector evaluate(const Algebra& a, const Assignment& assignment, const Word& w);

std::set<Word> subwords(const Word& w);

struct SproutAnalysis {
  std::vector<Word> sprout;
  std::vector<Word> supporting;
  std::vector<std::size_t> l_sprout;

  friend bool operator==(const SproutAnalysis&, const SproutAnalysis&) = default;
  friend auto operator<=>(const SproutAnalysis& a, const SproutAnalysis& b) {
    if (auto c = a.sprout <=> b.sprout; c != 0) return c;
    return a.supporting <=> b.supporting;
  }
};

/// All sprout analyses over every tie-break choice. A tie between two factors
/// of length >= 2 branches; the final split into two leaves takes the left
/// leaf as the sprout element. Throws Error("words.too_short") when l(w) < 2.
std::vector<SproutAnalysis> sprout_analyses(const Word& w);

struct KBoundedResult {
  bool bounded = false;
  std::optional<SproutAnalysis> witness;
};

/// True iff l(w) = 1 or some l-sprout sequence of w has all entries <= k.
KBoundedResult is_k_bounded(const Word& w, std::size_t k);

/// min t >= 0 such that w has a subword of length l(w) - 2t - 1.
/// Throws Error("words.too_short") when l(w) < 2.
std::optional<std::size_t> step_sigma(const Word& w);

}  // namespace nalength
