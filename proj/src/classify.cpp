#include "nalength/classify.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <random>

#include "nalength/error.hpp"
#include "nalength/linalg.hpp"
#include "nalength/parallel.hpp"

namespace nalength {

namespace {

constexpr std::size_t kBlock = 64;

Word L(int g) { return Word::leaf(g); }

std::vector<IdentityTerm> terms(std::initializer_list<std::pair<std::int64_t, Word>> list) {
  std::vector<IdentityTerm> out;
  for (const auto& [c, w] : list) out.push_back({c, w});
  return out;
}

bool uses_each_once(const Word& w, std::size_t arity) {
  auto leaves = w.leaves();
  if (leaves.size() != arity) return false;
  std::sort(leaves.begin(), leaves.end());
  for (std::size_t i = 0; i < arity; ++i)
    if (leaves[i] != static_cast<int>(i + 1)) return false;
  return true;
}

// Evaluates a fixed set of words and all their subwords at a tuple, sharing
// common subwords.
class WordProgram {
 public:
  explicit WordProgram(const std::vector<Word>& roots) {
    std::set<Word> all;
    for (const auto& r : roots)
      for (const auto& s : subwords(r)) all.insert(s);
    // std::set orders by length first, so children precede parents
    for (const auto& w : all) {
      index_.emplace(w, nodes_.size());
      Node n;
      if (w.is_leaf()) {
        n.gen = w.gen();
      } else {
        n.left = index_.at(w.left());
        n.right = index_.at(w.right());
      }
      nodes_.push_back(n);
    }
  }

  std::size_t index(const Word& w) const { return index_.at(w); }

  std::vector<Vector> run(const Algebra& a, const std::vector<Vector>& tuple) const {
    std::vector<Vector> vals;
    vals.reserve(nodes_.size());
    for (const auto& n : nodes_) {
      if (n.gen > 0) {
        if (static_cast<std::size_t>(n.gen) > tuple.size())
          throw Error("words.missing_assignment", "no vector for variable " + std::to_string(n.gen));
        vals.push_back(tuple[static_cast<std::size_t>(n.gen - 1)]);
      } else {
        vals.push_back(a.multiply(vals[n.left], vals[n.right]));
      }
    }
    return vals;
  }

 private:
  struct Node {
    int gen = 0;
    std::size_t left = 0, right = 0;
  };
  std::map<Word, std::size_t> index_;
  std::vector<Node> nodes_;
};

std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i)
    if (__builtin_mul_overflow(r, base, &r)) return std::nullopt;
  return r;
}

// Tuple of basis vectors for index i in [0, d^arity), first variable most significant.
std::vector<int> basis_indices_at(std::uint64_t i, std::size_t d, std::size_t arity) {
  std::vector<int> idx(arity);
  for (std::size_t j = arity; j-- > 0;) {
    idx[j] = static_cast<int>(i % d) + 1;
    i /= d;
  }
  return idx;
}

std::vector<Vector> basis_tuple(const Algebra& a, const std::vector<int>& idx) {
  std::vector<Vector> t;
  for (int i : idx) t.push_back(a.basis_vector(i));
  return t;
}

// Tuple number i among all of (F_p^d)^arity, coordinates most significant first.
std::vector<Vector> full_tuple_at(const FieldSpec& f, std::uint64_t i, std::size_t d, std::size_t arity) {
  const std::uint64_t p = f.modulus();
  std::vector<Vector> t(arity, zero_vector(f, d));
  for (std::size_t j = arity; j-- > 0;)
    for (std::size_t c = d; c-- > 0;) {
      t[j][c] = Scalar::from_int(static_cast<std::int64_t>(i % p), f);
      i /= p;
    }
  return t;
}

std::vector<Vector> sample_tuple(const FieldSpec& f, std::size_t d, std::size_t arity, std::uint64_t seed,
                                 std::uint64_t sample) {
  std::vector<Vector> t;
  for (std::size_t j = 0; j < arity; ++j) t.push_back(random_vector(f, d, seed, sample * 64 + j));
  return t;
}

nlohmann::json terms_json(const std::vector<IdentityTerm>& ts, const std::vector<std::string>& names) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : ts) arr.push_back({{"coeff", t.coeff}, {"word", to_text(t.word, names)}});
  return arr;
}

std::vector<IdentityTerm> terms_from_json(const nlohmann::json& arr, const std::vector<std::string>& names) {
  std::vector<IdentityTerm> out;
  for (const auto& t : arr) out.push_back({t.at("coeff").get<std::int64_t>(), parse_word(t.at("word").get<std::string>(), names)});
  return out;
}

nlohmann::json vectors_json(const std::vector<Vector>& vs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : vs) arr.push_back(to_strings(v));
  return arr;
}

void check_k(std::size_t k) {
  if (k < 2 || k > 4)
    throw Error("classify.k_out_of_range", "k must lie in 2..4, got " + std::to_string(k));
}

IdentityReport base_report(const std::string& name, const CheckMode& mode) {
  IdentityReport r;
  r.identity = name;
  r.mode = mode.kind;
  if (mode.kind == CheckKind::Sampled) {
    r.samples = mode.samples;
    r.seed = mode.seed;
  }
  return r;
}

}  // namespace

FormalIdentity make_identity(std::string name, std::vector<std::string> variables, std::vector<IdentityTerm> lhs,
                             std::vector<IdentityTerm> rhs) {
  FormalIdentity id;
  id.name = std::move(name);
  id.arity = variables.size();
  id.variables = std::move(variables);
  id.lhs = std::move(lhs);
  id.rhs = std::move(rhs);
  id.multilinear = true;
  for (const auto* side : {&id.lhs, &id.rhs})
    for (const auto& t : *side)
      if (!uses_each_once(t.word, id.arity)) id.multilinear = false;
  return id;
}

FormalIdentity anticommutative_identity() {
  Word x = L(1), y = L(2);
  return make_identity("anticommutative", {"x", "y"}, terms({{1, x * y}, {1, y * x}}), {});
}

FormalIdentity jacobi_identity() {
  Word x = L(1), y = L(2), z = L(3);
  return make_identity("jacobi", {"x", "y", "z"}, terms({{1, (x * y) * z}, {1, (y * z) * x}, {1, (z * x) * y}}), {});
}

FormalIdentity malcev_identity() {
  Word x = L(1), y = L(2), z = L(3), w = L(4);
  return make_identity(
      "malcev", {"x", "y", "z", "w"}, terms({{1, (x * y) * (z * w)}}),
      terms({{1, x * ((w * y) * z)}, {1, w * ((y * z) * x)}, {1, y * ((z * x) * w)}, {1, z * ((x * w) * y)}}));
}

FormalIdentity malcev_raw_identity() {
  Word x = L(1), y = L(2), z = L(3);
  return make_identity("malcev-raw", {"x", "y", "z"}, terms({{1, (x * y) * (x * z)}}),
                       terms({{1, ((x * y) * z) * x}, {1, ((y * z) * x) * x}, {1, ((z * x) * x) * y}}));
}

FormalIdentity vinberg_identity() {
  Word x = L(1), y = L(2), z = L(3);
  return make_identity("vinberg", {"x", "y", "z"}, terms({{1, (x * y) * z}, {-1, x * (y * z)}}),
                       terms({{1, (x * z) * y}, {-1, x * (z * y)}}));
}

namespace {

std::vector<std::string> family_names(std::size_t k) { return VarSet{k, false}.names(); }

// Bracketings of y_1 .. y_k in order, as words over generators 2..k+1.
std::vector<Word> ordered_products(std::size_t k) {
  std::vector<Word> out;
  std::vector<int> labels;
  for (std::size_t i = 0; i < k; ++i) labels.push_back(static_cast<int>(i + 2));
  for (const auto& shape : enumerate_shapes(k)) {
    std::size_t next = 0;
    std::function<Word(const Word&)> fill = [&](const Word& s) -> Word {
      if (s.is_leaf()) return L(labels[next++]);
      Word l = fill(s.left());
      Word r = fill(s.right());
      return l * r;
    };
    out.push_back(fill(shape));
  }
  return out;
}

}  // namespace

std::vector<FormalIdentity> k_round_identities(std::size_t k) {
  if (k < 2) throw Error("classify.k_out_of_range", "k-round needs k >= 2");
  auto names = family_names(k);
  std::vector<FormalIdentity> out;
  for (const auto& v : ordered_products(k))
    out.push_back(make_identity(std::to_string(k) + "-round[" + to_text(L(1) * v, names) + "]", names,
                                terms({{1, L(1) * v}}), {}));
  return out;
}

std::vector<FormalIdentity> k_based_identities(std::size_t k) {
  if (k < 2) throw Error("classify.k_out_of_range", "k-based needs k >= 2");
  auto names = family_names(k);
  std::vector<FormalIdentity> out;
  Word x = L(1);
  for (const auto& uv : ordered_products(k)) {
    const Word& u = uv.left();
    const Word& v = uv.right();
    out.push_back(make_identity(std::to_string(k) + "-based[" + to_text(x * uv, names) + "]", names,
                                terms({{1, x * uv}}), terms({{1, u * (x * v)}})));
    out.push_back(make_identity(std::to_string(k) + "-based[" + to_text(uv * x, names) + "]", names,
                                terms({{1, uv * x}}), terms({{1, (u * x) * v}})));
  }
  return out;
}

FormalIdentity small_swap_identity() {
  Word a = L(1), b = L(2), c = L(3), w = L(4);
  return make_identity("small-swap", {"a", "b", "c", "w"}, terms({{1, (a * b) * (c * w)}}),
                       terms({{-1, (a * c) * (b * w)},
                              {1, a * ((w * b) * c)},
                              {1, b * ((c * a) * w)},
                              {1, c * ((a * w) * b)},
                              {1, a * ((w * c) * b)},
                              {1, c * ((b * a) * w)},
                              {1, b * ((a * w) * c)}}));
}

FormalIdentity swap_identity() {
  Word a = L(1), b = L(2), c = L(3), d = L(4), w = L(5);
  return make_identity("swap", {"a", "b", "c", "d", "w"}, terms({{1, (a * b) * ((c * d) * w)}}),
                       terms({{-1, (c * d) * ((a * b) * w)},
                              {1, ((c * w) * b) * (d * a)},
                              {-1, a * ((b * d) * (c * w))},
                              {-1, b * ((d * (c * w)) * a)},
                              {-1, d * (((c * w) * a) * b)},
                              {-1, d * ((w * (a * b)) * c)},
                              {-1, d * ((w * c) * (a * b))},
                              {-1, (a * b) * ((d * w) * c)},
                              {-1, c * ((d * b) * (a * w))},
                              {1, c * (d * ((w * b) * a))},
                              {1, c * (b * ((a * d) * w))},
                              {1, c * (a * ((d * w) * b))},
                              {-1, c * ((d * w) * (a * b))}}));
}

FormalIdentity swap_identity_as_printed() {
  Word a = L(1), b = L(2), c = L(3), d = L(4), w = L(5);
  return make_identity("swap-as-printed", {"a", "b", "c", "d", "w"}, terms({{1, (a * b) * ((c * d) * w)}}),
                       terms({{-1, (c * d) * ((a * b) * w)},
                              {1, ((c * w) * b) * (d * a)},
                              {-1, a * ((b * d) * (c * w))},
                              {-1, b * ((d * (c * w)) * a)},
                              {-1, d * ((w * (a * b)) * c)},
                              {-1, (a * b) * ((d * w) * c)},
                              {-1, c * ((d * b) * (a * w))},
                              {1, c * (d * ((w * a) * b))},
                              {1, c * (b * ((a * d) * w))},
                              {1, c * (a * ((d * w) * b))},
                              {-1, c * ((d * w) * (a * b))}}));
}

Vector evaluate_identity(const Algebra& a, const FormalIdentity& id, const std::vector<Vector>& tuple) {
  if (tuple.size() != id.arity)
    throw Error("classify.invalid", "identity " + id.name + " takes " + std::to_string(id.arity) + " arguments");
  Assignment asg;
  for (std::size_t i = 0; i < tuple.size(); ++i) asg.emplace(static_cast<int>(i + 1), tuple[i]);
  Vector out = a.zero();
  for (const auto& t : id.lhs) axpy(Scalar::from_int(t.coeff, a.field()), evaluate(a, asg, t.word), out);
  for (const auto& t : id.rhs) axpy(Scalar::from_int(-t.coeff, a.field()), evaluate(a, asg, t.word), out);
  return out;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::HoldsOnSamples: return "holds-on-samples";
  }
  return "?";
}

std::string check_kind_name(CheckKind k) {
  switch (k) {
    case CheckKind::Basis: return "basis";
    case CheckKind::Sampled: return "sampled";
    case CheckKind::Exhaustive: return "exhaustive";
  }
  return "?";
}

std::string side_name(MembershipSide s) {
  switch (s) {
    case MembershipSide::Mixing: return "mixing";
    case MembershipSide::SlidingL: return "sliding-l";
    case MembershipSide::SlidingR: return "sliding-r";
  }
  return "?";
}

MembershipSide parse_side(const std::string& s) {
  if (s == "mixing") return MembershipSide::Mixing;
  if (s == "sliding-l" || s == "sliding_l") return MembershipSide::SlidingL;
  if (s == "sliding-r" || s == "sliding_r") return MembershipSide::SlidingR;
  throw Error("classify.invalid", "unknown membership side '" + s + "'");
}

std::string monomial_kind_name(MonomialKind k) {
  switch (k) {
    case MonomialKind::D0: return "D0";
    case MonomialKind::Dl: return "Dl";
    case MonomialKind::Dr: return "Dr";
  }
  return "?";
}

std::string evidence_name(EvidenceStatus s) {
  switch (s) {
    case EvidenceStatus::Proved: return "proved";
    case EvidenceStatus::Sampled: return "sampled";
    case EvidenceStatus::Failed: return "failed";
    case EvidenceStatus::Unknown: return "unknown";
  }
  return "?";
}

Vector random_vector(const FieldSpec& f, std::size_t dim, std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 gen(seq);
  Vector v;
  v.reserve(dim);
  if (f.is_prime_field()) {
    std::uniform_int_distribution<std::uint32_t> dist(0, f.modulus() - 1);
    for (std::size_t i = 0; i < dim; ++i) v.push_back(Scalar::from_int(dist(gen), f));
  } else {
    std::uniform_int_distribution<int> dist(-3, 3);
    for (std::size_t i = 0; i < dim; ++i) v.push_back(Scalar::from_int(dist(gen), f));
  }
  return v;
}

nlohmann::json to_json(const IdentityReport& r) {
  nlohmann::json j;
  j["identity"] = r.identity;
  j["verdict"] = verdict_name(r.verdict);
  j["mode"] = check_kind_name(r.mode);
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  if (r.counterexample) {
    const auto& c = *r.counterexample;
    nlohmann::json cj;
    cj["tuple"] = vectors_json(c.tuple);
    cj["basis_indices"] = c.basis_indices ? nlohmann::json(*c.basis_indices) : nlohmann::json(nullptr);
    cj["variables"] = c.names;
    if (c.identity)
      cj["identity"] = {{"name", c.identity->name},
                        {"lhs", terms_json(c.identity->lhs, c.names)},
                        {"rhs", terms_json(c.identity->rhs, c.names)}};
    if (c.target) cj["target"] = to_text(*c.target, c.names);
    cj["residual"] = to_strings(c.residual);
    j["counterexample"] = cj;
  } else {
    j["counterexample"] = nullptr;
  }
  j["convention"] = {{"unital_one_in_span", r.unital_one_in_span}};
  if (r.membership)
    j["membership"] = {{"k", r.membership->k},
                       {"side", side_name(r.membership->side)},
                       {"unital_convention", r.membership->unital_convention}};
  if (!r.parts.empty()) {
    nlohmann::json parts = nlohmann::json::array();
    for (const auto& p : r.parts) parts.push_back(to_json(p));
    j["parts"] = parts;
  }
  j["notes"] = r.notes;
  return j;
}

IdentityReport check_identity(const Algebra& a, const FormalIdentity& id, const CheckMode& mode) {
  if (mode.kind == CheckKind::Basis && !id.multilinear)
    throw Error("classify.not_multilinear",
                "identity " + id.name + " is not multilinear; basis tuples do not prove it (use sampled mode)");
  if (mode.kind == CheckKind::Exhaustive)
    throw Error("classify.invalid_mode", "exhaustive mode applies to membership checks only");
  IdentityReport r = base_report(id.name, mode);
  const std::size_t d = a.dim();

  std::optional<std::size_t> fail;
  std::function<std::vector<Vector>(std::uint64_t)> tuple_at;
  std::uint64_t total = 0;
  if (mode.kind == CheckKind::Basis) {
    auto n = checked_pow(d, id.arity);
    if (!n) throw BudgetExceeded("classify.budget", "too many basis tuples");
    total = *n;
    tuple_at = [&](std::uint64_t i) { return basis_tuple(a, basis_indices_at(i, d, id.arity)); };
  } else {
    total = mode.samples;
    tuple_at = [&](std::uint64_t i) { return sample_tuple(a.field(), d, id.arity, mode.seed, i); };
  }
  fail = parallel_find_first(total, mode.jobs, kBlock,
                             [&](std::size_t i) { return !is_zero(evaluate_identity(a, id, tuple_at(i))); });
  if (fail) {
    r.verdict = Verdict::Fails;
    Counterexample c;
    c.tuple = tuple_at(*fail);
    if (mode.kind == CheckKind::Basis) c.basis_indices = basis_indices_at(*fail, d, id.arity);
    c.identity = id;
    c.names = id.variables;
    c.residual = evaluate_identity(a, id, c.tuple);
    r.counterexample = std::move(c);
  } else {
    r.verdict = mode.kind == CheckKind::Basis ? Verdict::Holds : Verdict::HoldsOnSamples;
  }
  return r;
}

IdentityReport check_identities(const Algebra& a, const std::string& name, const std::vector<FormalIdentity>& ids,
                                const CheckMode& mode) {
  IdentityReport out = base_report(name, mode);
  out.verdict = mode.kind == CheckKind::Basis ? Verdict::Holds : Verdict::HoldsOnSamples;
  for (const auto& id : ids) {
    IdentityReport r = check_identity(a, id, mode);
    if (r.verdict == Verdict::Fails) {
      out.verdict = Verdict::Fails;
      out.counterexample = std::move(r.counterexample);
      break;
    }
  }
  return out;
}

IdentityReport check_anticommutative(const Algebra& a, std::size_t jobs) {
  return check_identity(a, anticommutative_identity(), CheckMode::basis(jobs));
}

IdentityReport check_jacobi(const Algebra& a, std::size_t jobs) {
  return check_identity(a, jacobi_identity(), CheckMode::basis(jobs));
}

IdentityReport check_malcev(const Algebra& a, std::size_t jobs) {
  if (a.field().characteristic() == 2)
    throw Error("classify.characteristic_two", "the Malcev check needs characteristic different from 2");
  IdentityReport anti = check_anticommutative(a, jobs);
  IdentityReport out = anti.verdict == Verdict::Fails ? anti : check_identity(a, malcev_identity(), CheckMode::basis(jobs));
  out.identity = "malcev";
  return out;
}

namespace {

struct MembershipSetup {
  VarSet vars;
  MonomialSet span_set;
  std::vector<Word> span_words;
  std::vector<Word> targets;
  std::unique_ptr<WordProgram> program;
  bool add_one = false;
};

MembershipSetup setup_membership(const Algebra& a, const MembershipSpec& spec) {
  MembershipSetup s;
  s.vars = VarSet{spec.k, false};
  s.add_one = spec.unital_convention && a.unital();
  switch (spec.side) {
    case MembershipSide::Mixing: s.span_set = build_D0(s.vars); break;
    case MembershipSide::SlidingL: s.span_set = build_Dl(s.vars); break;
    case MembershipSide::SlidingR: s.span_set = build_Dr(s.vars); break;
  }
  s.span_words.assign(s.span_set.words.begin(), s.span_set.words.end());
  Word x = L(s.vars.head());
  auto tails = build_W(s.vars.tail(), false).words;
  if (spec.side != MembershipSide::SlidingL)
    for (const auto& v : tails) s.targets.push_back(x * v);
  if (spec.side != MembershipSide::SlidingR)
    for (const auto& v : tails) s.targets.push_back(v * x);
  std::vector<Word> roots = s.span_words;
  roots.insert(roots.end(), s.targets.begin(), s.targets.end());
  s.program = std::make_unique<WordProgram>(roots);
  return s;
}

// Index of the first target outside the span, if any.
std::optional<std::size_t> first_missing_target(const Algebra& a, const MembershipSetup& s,
                                                const std::vector<Vector>& tuple) {
  auto vals = s.program->run(a, tuple);
  SubspaceBasis span(a.field(), a.dim());
  if (s.add_one) span.insert(*a.unit());
  for (const auto& w : s.span_words) {
    span.insert(vals[s.program->index(w)]);
    if (span.dim() == a.dim()) return std::nullopt;
  }
  for (std::size_t t = 0; t < s.targets.size(); ++t)
    if (!span.contains(vals[s.program->index(s.targets[t])])) return t;
  return std::nullopt;
}

}  // namespace

IdentityReport check_k_membership(const Algebra& a, const MembershipSpec& spec, const CheckMode& mode) {
  check_k(spec.k);
  if (mode.kind == CheckKind::Basis)
    throw Error("classify.invalid_mode", "membership checks use sampled or exhaustive mode");
  if (mode.kind == CheckKind::Exhaustive && !a.field().is_prime_field())
    throw Error("classify.invalid_mode", "exhaustive membership checks need a prime field");
  MembershipSetup s = setup_membership(a, spec);
  IdentityReport r = base_report(std::to_string(spec.k) + "-" + side_name(spec.side), mode);
  r.membership = spec;
  r.unital_one_in_span = s.add_one;
  if (a.unital() && !spec.unital_convention) r.notes.push_back("unit excluded from the spanning set");

  const std::size_t d = a.dim();
  const std::size_t arity = spec.k + 1;
  std::optional<std::vector<Vector>> bad_tuple;
  std::optional<std::vector<int>> bad_basis;

  auto run_phase = [&](std::uint64_t count, const std::function<std::vector<Vector>(std::uint64_t)>& at) {
    auto hit = parallel_find_first(count, mode.jobs, kBlock,
                                   [&](std::size_t i) { return first_missing_target(a, s, at(i)).has_value(); });
    if (hit) bad_tuple = at(*hit);
    return hit;
  };

  if (mode.kind == CheckKind::Sampled) {
    // Failures often sit on special tuples that random sampling never hits,
    // so basis tuples go first when there are not too many of them.
    auto basis_count = checked_pow(d, arity);
    if (basis_count && *basis_count <= mode.budget) {
      r.notes.push_back("all " + std::to_string(*basis_count) + " basis tuples checked before sampling");
      if (auto hit = run_phase(*basis_count, [&](std::uint64_t i) { return basis_tuple(a, basis_indices_at(i, d, arity)); }))
        bad_basis = basis_indices_at(*hit, d, arity);
    }
    if (!bad_tuple)
      run_phase(mode.samples, [&](std::uint64_t i) { return sample_tuple(a.field(), d, arity, mode.seed, i); });
  } else {
    std::uint64_t budget = mode.budget;
    auto basis_count = checked_pow(d, arity);
    std::uint64_t phase1 = basis_count ? std::min(*basis_count, budget) : budget;
    if (auto hit = run_phase(phase1, [&](std::uint64_t i) { return basis_tuple(a, basis_indices_at(i, d, arity)); }))
      bad_basis = basis_indices_at(*hit, d, arity);
    if (!bad_tuple) {
      budget -= phase1;
      auto full = checked_pow(a.field().modulus(), d * arity);
      std::uint64_t phase2 = full ? std::min(*full, budget) : budget;
      run_phase(phase2, [&](std::uint64_t i) { return full_tuple_at(a.field(), i, d, arity); });
      if (!bad_tuple && (!full || *full > phase2 || (basis_count && phase1 < *basis_count)))
        throw BudgetExceeded("classify.budget", r.identity + ": no counterexample among the first " +
                                                    std::to_string(mode.budget) +
                                                    " tuples and the enumeration is incomplete");
    }
  }

  if (bad_tuple) {
    r.verdict = Verdict::Fails;
    Counterexample c;
    c.tuple = *bad_tuple;
    c.basis_indices = bad_basis;
    c.names = s.vars.names();
    auto t = first_missing_target(a, s, c.tuple);
    c.target = s.targets[*t];
    c.residual = s.program->run(a, c.tuple)[s.program->index(*c.target)];
    r.counterexample = std::move(c);
  } else {
    r.verdict = mode.kind == CheckKind::Exhaustive ? Verdict::Holds : Verdict::HoldsOnSamples;
  }
  return r;
}

IdentityReport check_k_sliding(const Algebra& a, std::size_t k, const CheckMode& mode, bool unital_convention) {
  IdentityReport left = check_k_membership(a, {k, MembershipSide::SlidingL, unital_convention}, mode);
  IdentityReport right = check_k_membership(a, {k, MembershipSide::SlidingR, unital_convention}, mode);
  IdentityReport out = base_report(std::to_string(k) + "-sliding", mode);
  out.unital_one_in_span = left.unital_one_in_span;
  if (left.verdict == Verdict::Holds || right.verdict == Verdict::Holds)
    out.verdict = Verdict::Holds;
  else if (left.verdict == Verdict::Fails && right.verdict == Verdict::Fails)
    out.verdict = Verdict::Fails;
  else
    out.verdict = Verdict::HoldsOnSamples;
  out.parts = {std::move(left), std::move(right)};
  return out;
}

RepresentationSupport decompose(const Algebra& a, const Vector& target, const std::vector<Vector>& tuple,
                                MonomialKind kind, bool unital_convention) {
  if (tuple.size() < 2 || tuple.size() > kMaxMonomialVars + 1)
    throw Error("classify.invalid", "decompose needs a tuple (x, y_1, ..., y_k) with 1 <= k <= 5");
  RepresentationSupport rs;
  rs.target = target;
  rs.tuple = tuple;
  rs.kind = kind;
  rs.k = tuple.size() - 1;
  VarSet vars{rs.k, false};
  MonomialSet set = kind == MonomialKind::D0 ? build_D0(vars) : kind == MonomialKind::Dl ? build_Dl(vars)
                                                                                          : build_Dr(vars);
  std::vector<Word> words(set.words.begin(), set.words.end());
  WordProgram prog(words);
  auto vals = prog.run(a, tuple);
  std::vector<Vector> columns;
  for (const auto& w : words) columns.push_back(vals[prog.index(w)]);
  const bool with_one = unital_convention && a.unital();
  if (with_one) columns.push_back(*a.unit());
  auto sol = solve_affine(Matrix::from_columns(a.field(), columns, a.dim()), target);
  if (!sol) return rs;
  rs.in_span = true;
  for (std::size_t i = 0; i < words.size(); ++i)
    if (!sol->particular[i].is_zero()) rs.coefficients.emplace(words[i], sol->particular[i]);
  if (with_one) rs.one_coefficient = sol->particular[words.size()];
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (words[i].length() != rs.k + 1) continue;
    bool nonzero = !sol->particular[i].is_zero();
    for (const auto& row : sol->nullspace.rows()) nonzero = nonzero || !row[i].is_zero();
    if (nonzero) rs.support.insert(words[i]);
  }
  return rs;
}

RepresentationSupport decompose(const Algebra& a, const Word& target, const std::vector<Vector>& tuple,
                                MonomialKind kind, bool unital_convention) {
  Assignment asg;
  for (std::size_t i = 0; i < tuple.size(); ++i) asg.emplace(static_cast<int>(i + 1), tuple[i]);
  return decompose(a, evaluate(a, asg, target), tuple, kind, unital_convention);
}

IdentityReport verify_rewrites(const Algebra& a, std::size_t samples, std::uint64_t seed, std::size_t jobs) {
  IdentityReport malcev = check_malcev(a, jobs);
  if (malcev.verdict == Verdict::Fails)
    throw Error("classify.precondition", "rewrite identities need a Malcev algebra; " + a.name() + " is not one");
  IdentityReport out = base_report("malcev-rewrites", CheckMode::sampled(samples, seed, jobs));
  out.verdict = Verdict::HoldsOnSamples;
  for (const auto& id : {small_swap_identity(), swap_identity()}) {
    IdentityReport r = check_identity(a, id, CheckMode::sampled(samples, seed, jobs));
    if (r.verdict == Verdict::Fails)
      throw Error("classify.rewrite_failed",
                  "identity " + id.name + " fails on a sampled tuple of the Malcev algebra " + a.name());
  }
  return out;
}

bool replay_counterexample(const Algebra& a, const nlohmann::json& report) {
  if (report.contains("parts")) {
    if (report.at("verdict") != "fails") return false;
    for (const auto& p : report.at("parts"))
      if (!replay_counterexample(a, p)) return false;
    return true;
  }
  if (!report.contains("counterexample") || report.at("counterexample").is_null()) return false;
  const auto& c = report.at("counterexample");
  std::vector<Vector> tuple;
  for (const auto& v : c.at("tuple")) tuple.push_back(parse_vector(v.get<std::vector<std::string>>(), a.field()));
  auto names = c.at("variables").get<std::vector<std::string>>();
  if (c.contains("identity")) {
    const auto& ij = c.at("identity");
    FormalIdentity id = make_identity(ij.at("name").get<std::string>(), names, terms_from_json(ij.at("lhs"), names),
                                      terms_from_json(ij.at("rhs"), names));
    return !is_zero(evaluate_identity(a, id, tuple));
  }
  if (c.contains("target") && report.contains("membership")) {
    const auto& m = report.at("membership");
    MembershipSpec spec{m.at("k").get<std::size_t>(), parse_side(m.at("side").get<std::string>()),
                        m.at("unital_convention").get<bool>()};
    MembershipSetup s = setup_membership(a, spec);
    Word target = parse_word(c.at("target").get<std::string>(), names);
    auto t = std::find(s.targets.begin(), s.targets.end(), target);
    if (t == s.targets.end() || tuple.size() != spec.k + 1) return false;
    auto vals = s.program->run(a, tuple);
    SubspaceBasis span(a.field(), a.dim());
    if (s.add_one) span.insert(*a.unit());
    for (const auto& w : s.span_words) span.insert(vals[s.program->index(w)]);
    return !span.contains(vals[s.program->index(target)]);
  }
  return false;
}

EvidenceStatus ClassificationEvidence::get(const std::string& key) const {
  auto it = status.find(key);
  return it == status.end() ? EvidenceStatus::Unknown : it->second;
}

namespace {

EvidenceStatus status_of(const IdentityReport& r) {
  switch (r.verdict) {
    case Verdict::Holds: return EvidenceStatus::Proved;
    case Verdict::HoldsOnSamples: return EvidenceStatus::Sampled;
    case Verdict::Fails: return EvidenceStatus::Failed;
  }
  return EvidenceStatus::Unknown;
}

EvidenceStatus both(EvidenceStatus a, EvidenceStatus b) {
  if (a == EvidenceStatus::Failed || b == EvidenceStatus::Failed) return EvidenceStatus::Failed;
  if (a == EvidenceStatus::Unknown || b == EvidenceStatus::Unknown) return EvidenceStatus::Unknown;
  if (a == EvidenceStatus::Sampled || b == EvidenceStatus::Sampled) return EvidenceStatus::Sampled;
  return EvidenceStatus::Proved;
}

}  // namespace

ClassificationEvidence classify_algebra(const Algebra& a, const ClassificationOptions& opts) {
  ClassificationEvidence e;
  auto put = [&](const std::string& key, IdentityReport r) {
    e.status[key] = status_of(r);
    e.reports.emplace(key, std::move(r));
  };
  const CheckMode basis = CheckMode::basis(opts.jobs);
  put("anticommutative", check_anticommutative(a, opts.jobs));
  put("jacobi", check_jacobi(a, opts.jobs));
  e.status["lie"] = both(e.get("anticommutative"), e.get("jacobi"));
  if (a.field().characteristic() != 2)
    put("malcev", check_malcev(a, opts.jobs));
  else
    e.status["malcev"] = EvidenceStatus::Unknown;
  put("vinberg", check_identity(a, vinberg_identity(), basis));
  for (std::size_t k : opts.family_ks) {
    put(std::to_string(k) + "-round", check_identities(a, std::to_string(k) + "-round", k_round_identities(k), basis));
    put(std::to_string(k) + "-based", check_identities(a, std::to_string(k) + "-based", k_based_identities(k), basis));
  }
  const CheckMode sampled = CheckMode::sampled(opts.samples, opts.seed, opts.jobs);
  for (std::size_t k : opts.membership_ks) {
    put(std::to_string(k) + "-mixing", check_k_membership(a, {k, MembershipSide::Mixing, true}, sampled));
    put(std::to_string(k) + "-sliding", check_k_sliding(a, k, sampled, true));
  }
  return e;
}

nlohmann::json to_json(const ClassificationEvidence& e) {
  nlohmann::json status = nlohmann::json::object();
  for (const auto& [k, s] : e.status) status[k] = evidence_name(s);
  nlohmann::json reports = nlohmann::json::object();
  for (const auto& [k, r] : e.reports) reports[k] = to_json(r);
  return {{"status", status}, {"reports", reports}};
}

IdentityReport run_named_check(const Algebra& a, const std::string& name, std::size_t k, const CheckMode& mode) {
  if (name == "anticommutative") return check_identity(a, anticommutative_identity(), mode);
  if (name == "jacobi") return check_identity(a, jacobi_identity(), mode);
  if (name == "malcev") {
    if (mode.kind == CheckKind::Basis) return check_malcev(a, mode.jobs);
    if (a.field().characteristic() == 2)
      throw Error("classify.characteristic_two", "the Malcev check needs characteristic different from 2");
    IdentityReport r = check_identity(a, anticommutative_identity(), mode);
    if (r.verdict != Verdict::Fails) r = check_identity(a, malcev_identity(), mode);
    r.identity = "malcev";
    return r;
  }
  if (name == "malcev-raw") {
    IdentityReport r = check_identity(a, anticommutative_identity(), mode);
    if (r.verdict != Verdict::Fails) r = check_identity(a, malcev_raw_identity(), mode);
    r.identity = "malcev-raw";
    return r;
  }
  if (name == "vinberg") return check_identity(a, vinberg_identity(), mode);
  if (name == "k-round") return check_identities(a, std::to_string(k) + "-round", k_round_identities(k), mode);
  if (name == "k-based") return check_identities(a, std::to_string(k) + "-based", k_based_identities(k), mode);
  if (name == "k-mixing") return check_k_membership(a, {k, MembershipSide::Mixing, true}, mode);
  if (name == "k-sliding") return check_k_sliding(a, k, mode, true);
  if (name == "k-sliding-l") return check_k_membership(a, {k, MembershipSide::SlidingL, true}, mode);
  if (name == "k-sliding-r") return check_k_membership(a, {k, MembershipSide::SlidingR, true}, mode);
  if (name == "rewrites") return verify_rewrites(a, mode.samples, mode.seed, mode.jobs);
  throw Error("classify.unknown_identity", "unknown identity '" + name + "'");
}

}  // namespace nalength
