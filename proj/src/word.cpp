#include "nalength/word.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "nalength/error.hpp"

namespace nalength {

Word Word::leaf(int gen) {
  if (gen < 1) throw Error("words.invalid", "generator index must be >= 1, got " + std::to_string(gen));
  auto n = std::make_shared<Node>();
  n->gen = gen;
  return Word(std::move(n));
}

Word Word::node(Word left, Word right) {
  auto n = std::make_shared<Node>();
  n->length = left.length() + right.length();
  n->left = std::move(left);
  n->right = std::move(right);
  return Word(std::move(n));
}

bool Word::is_leaf() const { return !node_ || node_->gen != 0; }
int Word::gen() const { return node_ ? node_->gen : 0; }
std::size_t Word::length() const { return node_ ? node_->length : 0; }

const Word& Word::left() const {
  if (is_leaf()) throw Error("words.invalid", "left() of a leaf");
  return node_->left;
}

const Word& Word::right() const {
  if (is_leaf()) throw Error("words.invalid", "right() of a leaf");
  return node_->right;
}

std::size_t Word::min_factor_length() const {
  if (is_leaf()) return 1;
  return std::min(node_->left.length(), node_->right.length());
}

std::size_t Word::right_length() const { return is_leaf() ? 0 : node_->right.length(); }

std::vector<int> Word::leaves() const {
  std::vector<int> out;
  std::function<void(const Word&)> walk = [&](const Word& w) {
    if (w.is_leaf()) {
      out.push_back(w.gen());
      return;
    }
    walk(w.left());
    walk(w.right());
  };
  walk(*this);
  return out;
}

bool operator==(const Word& a, const Word& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.node_->length != b.node_->length || a.node_->gen != b.node_->gen) return false;
  if (a.is_leaf()) return true;
  return a.node_->left == b.node_->left && a.node_->right == b.node_->right;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.length() <=> b.length(); c != 0) return c;
  if (a.is_leaf() != b.is_leaf()) return a.is_leaf() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.is_leaf()) return a.gen() <=> b.gen();
  if (auto c = a.left() <=> b.left(); c != 0) return c;
  return a.right() <=> b.right();
}

Word operator*(const Word& a, const Word& b) { return Word::node(a, b); }

std::string to_text(const Word& w, const std::vector<std::string>& names) {
  if (w.is_leaf()) {
    auto i = static_cast<std::size_t>(w.gen());
    if (i <= names.size()) return names[i - 1];
    return "g" + std::to_string(i);
  }
  return "(" + to_text(w.left(), names) + " " + to_text(w.right(), names) + ")";
}

namespace {

class WordParser {
 public:
  WordParser(std::string_view text, const std::vector<std::string>& names) : text_(text), names_(names) {}

  Word parse() {
    Word w = term();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw Error("words.parse", why + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Word term() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end");
    if (text_[pos_] == '(') {
      ++pos_;
      Word l = term();
      Word r = term();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return Word::node(std::move(l), std::move(r));
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')')
      ++pos_;
    if (start == pos_) fail("expected a generator");
    std::string name(text_.substr(start, pos_ - start));
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return Word::leaf(static_cast<int>(i + 1));
    if (name.size() > 1 && name[0] == 'g' &&
        std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) &&
        name.size() < 10)
      return Word::leaf(std::stoi(name.substr(1)));
    pos_ = start;
    fail("unknown generator '" + name + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
};

__extension__ typedef unsigned __int128 u128;

bool mul_overflows(std::uint64_t a, std::uint64_t b, std::uint64_t& out) {
  return __builtin_mul_overflow(a, b, &out);
}

// Relabels the leaves of `shape` left to right from `labels`.
Word relabel(const Word& shape, const std::vector<int>& labels, std::size_t& next) {
  if (shape.is_leaf()) return Word::leaf(labels[next++]);
  Word l = relabel(shape.left(), labels, next);
  Word r = relabel(shape.right(), labels, next);
  return Word::node(std::move(l), std::move(r));
}

}  // namespace

Word parse_word(std::string_view text, const std::vector<std::string>& names) {
  return WordParser(text, names).parse();
}

std::optional<std::uint64_t> word_count(std::size_t num_gens, std::size_t length) {
  if (length == 0) return 0;
  // Catalan(n-1) through the recurrence C_{m+1} = C_m * 2(2m+1)/(m+2)
  u128 c = 1;
  for (std::size_t m = 0; m + 1 < length; ++m) {
    c = c * 2 * (2 * m + 1) / (m + 2);
    if (c > UINT64_MAX) return std::nullopt;
  }
  std::uint64_t out = static_cast<std::uint64_t>(c);
  for (std::size_t i = 0; i < length; ++i)
    if (mul_overflows(out, num_gens, out)) return std::nullopt;
  return out;
}

std::vector<Word> enumerate_shapes(std::size_t length) {
  if (length == 0) throw Error("words.invalid", "word length must be >= 1");
  std::vector<std::vector<Word>> shapes(length + 1);
  shapes[1] = {Word::leaf(1)};
  for (std::size_t n = 2; n <= length; ++n)
    for (std::size_t a = 1; a < n; ++a)
      for (const auto& l : shapes[a])
        for (const auto& r : shapes[n - a]) shapes[n].push_back(Word::node(l, r));
  return shapes[length];
}

std::vector<Word> enumerate_words(std::size_t num_gens, std::size_t length) {
  if (num_gens == 0) throw Error("words.invalid", "need at least one generator");
  std::vector<Word> out;
  if (auto n = word_count(num_gens, length)) out.reserve(static_cast<std::size_t>(*n));
  std::vector<int> labels(length, 1);
  for (const auto& shape : enumerate_shapes(length)) {
    std::fill(labels.begin(), labels.end(), 1);
    while (true) {
      std::size_t next = 0;
      out.push_back(relabel(shape, labels, next));
      std::size_t i = length;
      while (i > 0 && labels[i - 1] == static_cast<int>(num_gens)) labels[--i] = 1;
      if (i == 0) break;
      ++labels[i - 1];
    }
  }
  return out;
}

Vector evaluate(const Algebra& a, const Assignment& assignment, const Word& w) {
  if (w.is_leaf()) {
    auto it = assignment.find(w.gen());
    if (it == assignment.end())
      throw Error("words.missing_assignment", "no vector assigned to generator " + std::to_string(w.gen()));
    return it->second;
  }
  return a.multiply(evaluate(a, assignment, w.left()), evaluate(a, assignment, w.right()));
}

std::set<Word> subwords(const Word& w) {
  std::set<Word> out;
  std::function<void(const Word&)> walk = [&](const Word& u) {
    out.insert(u);
    if (u.is_leaf()) return;
    walk(u.left());
    walk(u.right());
  };
  walk(w);
  return out;
}

namespace {

// Depth-first over tie-break choices. `visit` returns true to stop early.
bool walk_sprouts(const Word& current, SproutAnalysis& path, std::size_t bound,
                  const std::function<bool(const SproutAnalysis&)>& visit) {
  if (current.is_leaf()) return visit(path);
  const Word& l = current.left();
  const Word& r = current.right();
  auto step = [&](const Word& small, const Word& big) {
    if (small.length() > bound) return false;
    path.sprout.push_back(small);
    path.supporting.push_back(big);
    path.l_sprout.push_back(small.length());
    bool stop = walk_sprouts(big, path, bound, visit);
    path.sprout.pop_back();
    path.supporting.pop_back();
    path.l_sprout.pop_back();
    return stop;
  };
  if (l.length() < r.length()) return step(l, r);
  if (r.length() < l.length()) return step(r, l);
  if (l.length() == 1) return step(l, r);
  if (step(l, r)) return true;
  return step(r, l);
}

}  // namespace

std::vector<SproutAnalysis> sprout_analyses(const Word& w) {
  if (w.length() < 2) throw Error("words.too_short", "sprout sequences need a word of length >= 2");
  std::vector<SproutAnalysis> out;
  SproutAnalysis path;
  walk_sprouts(w, path, SIZE_MAX, [&](const SproutAnalysis& a) {
    out.push_back(a);
    return false;
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

KBoundedResult is_k_bounded(const Word& w, std::size_t k) {
  if (w.length() <= 1) return {true, std::nullopt};
  KBoundedResult res;
  SproutAnalysis path;
  walk_sprouts(w, path, k, [&](const SproutAnalysis& a) {
    res.bounded = true;
    res.witness = a;
    return true;
  });
  return res;
}

std::optional<std::size_t> step_sigma(const Word& w) {
  if (w.length() < 2) throw Error("words.too_short", "step function needs a word of length >= 2");
  std::vector<bool> present(w.length() + 1, false);
  for (const auto& s : subwords(w)) present[s.length()] = true;
  for (std::size_t t = 0; 2 * t + 1 <= w.length(); ++t)
    if (present[w.length() - 2 * t - 1]) return t;
  return std::nullopt;
}

}  // namespace nalength
