#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "nalength/word.hpp"

namespace nalength {

/// Ordered variables (z_0, z_1, ..., z_k). z_0 is generator 1 and z_i is
/// generator i + 1.
struct VarSet {
  std::size_t k = 1;
  bool unital = false;

  int head() const { return 1; }
  std::vector<int> tail() const;
  std::vector<int> all() const;
  /// "x", "y1", ..., "yk".
  std::vector<std::string> names() const;
};

/// Largest k accepted by the builders.
inline constexpr std::size_t kMaxMonomialVars = 5;

/// A finite set of multilinear words, plus the empty word 1 when
/// `contains_one` is set.
struct MonomialSet {
  std::set<Word> words;
  bool contains_one = false;
  std::string provenance;

  std::size_t size() const { return words.size() + (contains_one ? 1 : 0); }
  bool contains(const Word& w) const { return words.count(w) != 0; }
  /// Words of length n.
  std::vector<Word> of_length(std::size_t n) const;

  /// Same members; provenance is ignored.
  friend bool operator==(const MonomialSet& a, const MonomialSet& b) {
    return a.words == b.words && a.contains_one == b.contains_one;
  }
};

/// Sorted text forms; "1" stands for the empty word.
nlohmann::json to_json(const MonomialSet& m, const std::vector<std::string>& names = {});

MonomialSet set_union(const MonomialSet& a, const MonomialSet& b);
MonomialSet set_difference(const MonomialSet& a, const MonomialSet& b);
MonomialSet set_intersection(const MonomialSet& a, const MonomialSet& b);

/// All multilinear words using each generator of T exactly once. W(∅) is {1}
/// when unital and empty otherwise.
MonomialSet build_W(const std::vector<int>& T, bool unital);
/// Union of W(T') over T' ⊆ T.
MonomialSet build_D(const std::vector<int>& T, bool unital);
/// Union of W(T') over T' ⊊ T.
MonomialSet build_Dprime(const std::vector<int>& T, bool unital);

/// D(Z) minus the full-length words z_0 w and w z_0 with w ∈ W(Z_0).
MonomialSet build_D0(const VarSet& s);
/// D'(Z) plus the products w_1 w_2 with w_1 ∈ W(T'), w_2 ∈ W(Z \ T'), over
/// nonempty proper subsets T' of Z_0.
MonomialSet build_Dl(const VarSet& s);
/// Mirror of build_Dl: w_1 ∈ W(Z \ T'), w_2 ∈ W(T').
MonomialSet build_Dr(const VarSet& s);

/// The 13-element sets for three variables given as generator indices, and
/// their 17-element union. With `unital` the word 1 is added.
MonomialSet build_Q_l(int x, int y, int z, bool unital = false);
MonomialSet build_Q_r(int x, int y, int z, bool unital = false);
MonomialSet build_P(int x, int y, int z, bool unital = false);

}  // namespace nalength
