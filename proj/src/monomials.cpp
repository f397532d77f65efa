#include "nalength/monomials.hpp"

#include <algorithm>

#include "nalength/error.hpp"

namespace nalength {

std::vector<int> VarSet::tail() const {
  std::vector<int> t;
  for (std::size_t i = 1; i <= k; ++i) t.push_back(static_cast<int>(i + 1));
  return t;
}

std::vector<int> VarSet::all() const {
  std::vector<int> t{head()};
  for (int v : tail()) t.push_back(v);
  return t;
}

std::vector<std::string> VarSet::names() const {
  std::vector<std::string> n{"x"};
  for (std::size_t i = 1; i <= k; ++i) n.push_back("y" + std::to_string(i));
  return n;
}

std::vector<Word> MonomialSet::of_length(std::size_t n) const {
  std::vector<Word> out;
  for (const auto& w : words)
    if (w.length() == n) out.push_back(w);
  return out;
}

nlohmann::json to_json(const MonomialSet& m, const std::vector<std::string>& names) {
  std::vector<std::string> items;
  if (m.contains_one) items.push_back("1");
  for (const auto& w : m.words) items.push_back(to_text(w, names));
  std::sort(items.begin(), items.end());
  return items;
}

MonomialSet set_union(const MonomialSet& a, const MonomialSet& b) {
  MonomialSet out = a;
  out.words.insert(b.words.begin(), b.words.end());
  out.contains_one = a.contains_one || b.contains_one;
  return out;
}

MonomialSet set_difference(const MonomialSet& a, const MonomialSet& b) {
  MonomialSet out;
  out.provenance = a.provenance;
  std::set_difference(a.words.begin(), a.words.end(), b.words.begin(), b.words.end(),
                      std::inserter(out.words, out.words.end()));
  out.contains_one = a.contains_one && !b.contains_one;
  return out;
}

MonomialSet set_intersection(const MonomialSet& a, const MonomialSet& b) {
  MonomialSet out;
  out.provenance = a.provenance;
  std::set_intersection(a.words.begin(), a.words.end(), b.words.begin(), b.words.end(),
                        std::inserter(out.words, out.words.end()));
  out.contains_one = a.contains_one && b.contains_one;
  return out;
}

namespace {

void check_size(std::size_t n) {
  if (n > kMaxMonomialVars + 1)
    throw Error("monomials.limit", "monomial sets are limited to " + std::to_string(kMaxMonomialVars + 1) +
                                       " variables, got " + std::to_string(n));
}

void check_varset(const VarSet& s) {
  if (s.k < 1) throw Error("monomials.invalid", "need k >= 1");
  if (s.k > kMaxMonomialVars)
    throw Error("monomials.limit", "k = " + std::to_string(s.k) + " exceeds the limit " +
                                       std::to_string(kMaxMonomialVars));
}

std::string list_text(const std::vector<int>& T) {
  std::string s;
  for (int v : T) s += (s.empty() ? "" : ",") + std::to_string(v);
  return s;
}

Word fill(const Word& shape, const std::vector<int>& labels, std::size_t& next) {
  if (shape.is_leaf()) return Word::leaf(labels[next++]);
  Word l = fill(shape.left(), labels, next);
  Word r = fill(shape.right(), labels, next);
  return Word::node(std::move(l), std::move(r));
}

// Splits of `all` into (subset, complement) for every bitmask in [1, 2^n - 1).
std::vector<std::pair<std::vector<int>, std::vector<int>>> proper_splits(const std::vector<int>& all) {
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  const std::size_t n = all.size();
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
    std::vector<int> in, rest;
    for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1 ? in : rest).push_back(all[i]);
    out.emplace_back(std::move(in), std::move(rest));
  }
  return out;
}

MonomialSet one_sided(const VarSet& s, bool tail_on_left, const std::string& name) {
  check_varset(s);
  MonomialSet out = build_Dprime(s.all(), s.unital);
  for (const auto& [tp, rest] : proper_splits(s.tail())) {
    std::vector<int> with_head = rest;
    with_head.insert(with_head.begin(), s.head());
    MonomialSet a = build_W(tp, false);
    MonomialSet b = build_W(with_head, false);
    for (const auto& u : a.words)
      for (const auto& v : b.words) out.words.insert(tail_on_left ? u * v : v * u);
  }
  out.provenance = name + "(k=" + std::to_string(s.k) + (s.unital ? ", unital" : "") + ")";
  return out;
}

}  // namespace

MonomialSet build_W(const std::vector<int>& T, bool unital) {
  check_size(T.size());
  MonomialSet out;
  out.provenance = "W({" + list_text(T) + "})";
  if (T.empty()) {
    out.contains_one = unital;
    return out;
  }
  std::vector<int> perm = T;
  std::sort(perm.begin(), perm.end());
  if (std::adjacent_find(perm.begin(), perm.end()) != perm.end())
    throw Error("monomials.invalid", "variables must be distinct: {" + list_text(T) + "}");
  const auto shapes = enumerate_shapes(T.size());
  do {
    for (const auto& shape : shapes) {
      std::size_t next = 0;
      out.words.insert(fill(shape, perm, next));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

MonomialSet build_D(const std::vector<int>& T, bool unital) {
  check_size(T.size());
  MonomialSet out = build_Dprime(T, unital);
  out.words.merge(build_W(T, false).words);
  if (T.empty()) out.contains_one = unital;
  out.provenance = "D({" + list_text(T) + "})";
  return out;
}

MonomialSet build_Dprime(const std::vector<int>& T, bool unital) {
  check_size(T.size());
  MonomialSet out;
  out.provenance = "D'({" + list_text(T) + "})";
  const std::size_t n = T.size();
  if (n == 0) return out;
  for (std::size_t mask = 0; mask + 1 < (std::size_t{1} << n); ++mask) {
    std::vector<int> sub;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1) sub.push_back(T[i]);
    MonomialSet w = build_W(sub, unital);
    out.words.merge(w.words);
    out.contains_one = out.contains_one || w.contains_one;
  }
  return out;
}

MonomialSet build_D0(const VarSet& s) {
  check_varset(s);
  MonomialSet out = build_D(s.all(), s.unital);
  Word x = Word::leaf(s.head());
  for (const auto& w : build_W(s.tail(), false).words) {
    out.words.erase(x * w);
    out.words.erase(w * x);
  }
  out.provenance = "D0(k=" + std::to_string(s.k) + (s.unital ? ", unital" : "") + ")";
  return out;
}

MonomialSet build_Dl(const VarSet& s) { return one_sided(s, true, "Dl"); }
MonomialSet build_Dr(const VarSet& s) { return one_sided(s, false, "Dr"); }

namespace {

MonomialSet low_degree(int x, int y, int z, bool unital) {
  if (x == y || y == z || x == z) throw Error("monomials.invalid", "variables must be distinct");
  Word X = Word::leaf(x), Y = Word::leaf(y), Z = Word::leaf(z);
  MonomialSet out;
  out.words = {X * Y, Y * X, X * Z, Z * X, Y * Z, Z * Y, X, Y, Z};
  out.contains_one = unital;
  return out;
}

}  // namespace

MonomialSet build_Q_l(int x, int y, int z, bool unital) {
  MonomialSet out = low_degree(x, y, z, unital);
  Word X = Word::leaf(x), Y = Word::leaf(y), Z = Word::leaf(z);
  out.words.insert({X * (Z * Y), X * (Y * Z), Y * (X * Z), Y * (Z * X)});
  out.provenance = "Q_l";
  return out;
}

MonomialSet build_Q_r(int x, int y, int z, bool unital) {
  MonomialSet out = low_degree(x, y, z, unital);
  Word X = Word::leaf(x), Y = Word::leaf(y), Z = Word::leaf(z);
  out.words.insert({(X * Z) * Y, (Z * X) * Y, (Y * Z) * X, (Z * Y) * X});
  out.provenance = "Q_r";
  return out;
}

MonomialSet build_P(int x, int y, int z, bool unital) {
  MonomialSet out = set_union(build_Q_l(x, y, z, unital), build_Q_r(x, y, z, unital));
  out.provenance = "P";
  return out;
}

}  // namespace nalength
