#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nalength/algebra.hpp"
#include "nalength/classify.hpp"
#include "nalength/error.hpp"
#include "nalength/filtration.hpp"
#include "nalength/search.hpp"
#include "nalength/verification.hpp"
#include "nalength/word.hpp"

using namespace nalength;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFails = 1, kUsage = 2, kBudget = 3 };

struct Globals {
  std::string out;
  bool pretty = false;
  std::size_t jobs = 1;
};

void emit(const Globals& g, const json& j) {
  const std::string text = g.pretty ? j.dump(2) : j.dump();
  if (g.out.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw Error("cli.io", "cannot write " + g.out);
  f << text << '\n';
}

json error_json(const std::string& code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

std::optional<std::uint64_t> env_budget() {
  const char* v = std::getenv("NALENGTH_BUDGET");
  if (!v || !*v) return std::nullopt;
  try {
    std::size_t used = 0;
    const unsigned long long n = std::stoull(v, &used);
    if (used != std::string(v).size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw Error("cli.usage", std::string("NALENGTH_BUDGET is not a nonnegative integer: ") + v);
  }
}

std::uint64_t budget_or(std::optional<std::uint64_t> flag, std::uint64_t fallback) {
  if (flag) return *flag;
  if (auto e = env_budget()) return *e;
  return fallback;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// "1,0,0;0,1/2,0" or "@basis:1,3"
std::vector<Vector> parse_gens(const Algebra& a, const std::string& spec) {
  std::vector<Vector> out;
  const std::string prefix = "@basis:";
  if (spec.rfind(prefix, 0) == 0) {
    for (const auto& item : split(spec.substr(prefix.size()), ',')) {
      int i = 0;
      try {
        std::size_t used = 0;
        i = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw Error("cli.gens", "basis index '" + item + "' is not an integer");
      }
      if (i < 1 || static_cast<std::size_t>(i) > a.dim())
        throw Error("cli.gens", "basis index " + std::to_string(i) + " is outside 1.." + std::to_string(a.dim()));
      out.push_back(a.basis_vector(i));
    }
    return out;
  }
  for (const auto& item : split(spec, ';')) {
    Vector v = parse_vector(item, a.field());
    if (v.size() != a.dim())
      throw Error("cli.gens", "generator '" + item + "' has " + std::to_string(v.size()) + " entries, expected " +
                                  std::to_string(a.dim()));
    out.push_back(std::move(v));
  }
  return out;
}

int verdict_exit(Verdict v) { return v == Verdict::Fails ? kFails : kOk; }

BoundCertificate bounds_for(const Algebra& a, std::size_t jobs) {
  ClassificationOptions co;
  co.jobs = jobs;
  return certify_bounds(a, classify_algebra(a, co));
}

}  // namespace

int main(int argc, char** argv) {
  Globals g;
  CLI::App app{"Lengths of finite-dimensional nonassociative algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--out", g.out, "Write the JSON report to this file");
  app.add_flag("--pretty", g.pretty, "Indent the JSON report");
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);

  std::string alg_path, gens, family, field_text = "Q", identity, mode;
  std::size_t d = 0, k = 0, len = 0;
  std::optional<std::size_t> samples, k_bounded;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> budget;
  bool irreducible = false, step = false, quick = false;

  auto* ex = app.add_subcommand("example", "Emit an example algebra");
  ex->add_option("--family", family, "ed, xd, vd, sl2, heisenberg or m7")->required();
  ex->add_option("--d", d, "Dimension");
  ex->add_option("--k", k, "Family parameter k");
  ex->add_option("--field", field_text, "Q or a prime p");

  auto* cs = app.add_subcommand("charseq", "Filtration and characteristic sequence of a generating set");
  auto* ls = app.add_subcommand("length-set", "Length of a generating set");
  for (auto* sub : {cs, ls}) {
    sub->add_option("algebra", alg_path, "Algebra file")->required();
    sub->add_option("--gens", gens, "Vectors separated by ';', or @basis:i,j")->required();
  }

  auto* ck = app.add_subcommand("check", "Check an identity or class membership");
  ck->add_option("algebra", alg_path, "Algebra file")->required();
  ck->add_option("--identity", identity, "Identity or class name")->required();
  ck->add_option("--k", k, "k for the k-dependent classes");
  ck->add_option("--samples", samples, "Sampled tuples");
  ck->add_option("--seed", seed, "Sampling seed");
  ck->add_option("--mode", mode, "basis, sampled or exhaustive");
  ck->add_option("--budget", budget, "Tuple budget for exhaustive membership checks");

  auto* cl = app.add_subcommand("classify", "Run the identity battery");
  cl->add_option("algebra", alg_path, "Algebra file")->required();
  cl->add_option("--samples", samples, "Sampled tuples per membership check");
  cl->add_option("--seed", seed, "Sampling seed");

  auto* ln = app.add_subcommand("length", "Length of the algebra");
  ln->add_option("algebra", alg_path, "Algebra file")->required();
  ln->add_option("--mode", mode, "exhaustive or random")->required();
  ln->add_option("--samples", samples, "Random generating subspaces");
  ln->add_option("--seed", seed, "Sampling seed");
  ln->add_option("--budget", budget, "Subspace budget for exhaustive mode");

  auto* wd = app.add_subcommand("words", "Words over a generating set");
  wd->add_option("algebra", alg_path, "Algebra file")->required();
  wd->add_option("--gens", gens, "Vectors separated by ';', or @basis:i,j")->required();
  wd->add_option("--len", len, "Word length")->required()->check(CLI::PositiveNumber);
  wd->add_flag("--irreducible", irreducible, "Only irreducible words");
  wd->add_option("--k-bounded", k_bounded, "Only k-bounded words");
  wd->add_flag("--step", step, "Minimal step over irreducible 3-bounded words");
  wd->add_option("--budget", budget, "Word enumeration budget");

  auto* vp = app.add_subcommand("verify-paper", "Run the acceptance suite");
  vp->add_flag("--quick", quick, "Smaller samples and scans");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << error_json("cli.usage", e.what()).dump() << '\n';
    return kUsage;
  }

  try {
    if (*ex) {
      Family fam = parse_family(family);
      emit(g, to_json(build_example({fam, d, k, FieldSpec::parse(field_text)})));
      return kOk;
    }
    if (*vp) {
      json r = run_verification({quick, g.jobs});
      emit(g, r);
      return r["failed"].get<std::size_t>() == 0 ? kOk : kFails;
    }

    const Algebra a = load_algebra(alg_path);
    if (*cs || *ls) {
      const auto S = parse_gens(a, gens);
      Filtration f = compute_filtration(a, S);
      if (!f.generates) char_seq(f);  // throws with the subalgebra dimension
      if (*cs) {
        emit(g, filtration_report(f));
      } else {
        emit(g, {{"length", char_seq(f).back()}, {"generates", true}});
      }
      return kOk;
    }
    if (*ck) {
      CheckMode m;
      if (mode.empty()) mode = samples ? "sampled" : "";
      if (mode == "exhaustive") {
        m = CheckMode::exhaustive(budget_or(budget, 1'000'000), g.jobs);
      } else if (mode == "sampled") {
        m = CheckMode::sampled(samples.value_or(100), seed, g.jobs);
      } else if (mode == "basis") {
        m = CheckMode::basis(g.jobs);
      } else if (mode.empty()) {
        const bool membership = identity.rfind("k-mixing", 0) == 0 || identity.rfind("k-sliding", 0) == 0 ||
                                identity == "malcev-raw" || identity == "rewrites";
        m = membership ? CheckMode::sampled(100, seed, g.jobs) : CheckMode::basis(g.jobs);
      } else {
        throw Error("cli.usage", "unknown check mode '" + mode + "'");
      }
      const bool k_dependent = identity.rfind("k-", 0) == 0;
      if (k_dependent && k == 0) k = 2;
      IdentityReport r = run_named_check(a, identity, k, m);
      emit(g, to_json(r));
      return verdict_exit(r.verdict);
    }
    if (*cl) {
      ClassificationOptions co;
      co.samples = samples.value_or(100);
      co.seed = seed;
      co.jobs = g.jobs;
      ClassificationEvidence e = classify_algebra(a, co);
      json j = to_json(e);
      j["algebra"] = a.name();
      j["field"] = a.field().to_string();
      j["samples"] = co.samples;
      j["seed"] = co.seed;
      j["bounds"] = to_json(certify_bounds(a, e));
      emit(g, j);
      return kOk;
    }
    if (*ln) {
      LengthReport r;
      if (mode == "exhaustive") {
        r = length_exhaustive(a, {budget_or(budget, kDefaultSubspaceBudget), g.jobs});
      } else if (mode == "random") {
        r = length_random(a, samples.value_or(100), seed, g.jobs);
      } else {
        throw Error("cli.usage", "unknown length mode '" + mode + "'");
      }
      r.bounds = bounds_for(a, g.jobs);
      if (r.value) assert_within_bounds(*r.bounds, *r.value, a.name());
      json j = to_json(r);
      j["algebra"] = a.name();
      emit(g, j);
      return kOk;
    }
    if (*wd) {
      const auto S = parse_gens(a, gens);
      const std::uint64_t wb = budget_or(budget, kDefaultWordBudget);
      Filtration f = compute_filtration(a, S);
      std::vector<std::string> names;
      for (std::size_t i = 1; i <= S.size(); ++i) names.push_back("x" + std::to_string(i));
      json j = {{"length", len}, {"generators", S.size()}};
      if (step) {
        StepSearchResult r = find_step_words(a, S, f, len, wb);
        json w = json::array();
        for (const auto& x : r.witnesses) w.push_back(to_text(x, names));
        j["p"] = r.p;
        j["witnesses"] = w;
        emit(g, j);
        return kOk;
      }
      std::vector<Word> words;
      if (irreducible) {
        IrreducibleSearch s{len, k_bounded ? WordFilter::KBounded : WordFilter::None, k_bounded.value_or(2), wb};
        words = find_irreducible_words(a, S, f, s);
      } else {
        auto count = word_count(S.size(), len);
        if (!count || *count > wb)
          throw BudgetExceeded("filtration.budget", "enumerating words of length " + std::to_string(len) + " over " +
                                                        std::to_string(S.size()) + " generators exceeds the budget of " +
                                                        std::to_string(wb));
        for (Word& w : enumerate_words(S.size(), len))
          if (!k_bounded || is_k_bounded(w, *k_bounded).bounded) words.push_back(std::move(w));
      }
      json w = json::array();
      for (const auto& x : words) w.push_back(to_text(x, names));
      j["irreducible"] = irreducible;
      j["k_bounded"] = k_bounded ? json(*k_bounded) : json(nullptr);
      j["count"] = words.size();
      j["words"] = w;
      emit(g, j);
      return kOk;
    }
  } catch (const BudgetExceeded& e) {
    std::cout << error_json(e.code(), e.what()).dump() << '\n';
    return kBudget;
  } catch (const Error& e) {
    std::cout << error_json(e.code(), e.what()).dump() << '\n';
    return e.code() == "search.bound_violation" || e.code() == "filtration.invariant" ? kFails : kUsage;
  } catch (const std::exception& e) {
    std::cout << error_json("cli.error", e.what()).dump() << '\n';
    return kUsage;
  }
  return kUsage;
}
