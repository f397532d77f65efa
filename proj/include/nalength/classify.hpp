#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "nalength/algebra.hpp"
#include "nalength/monomials.hpp"
#include "nalength/word.hpp"

namespace nalength {

struct IdentityTerm {
  std::int64_t coeff;
  Word word;
};

/// lhs = rhs as formal combinations of words in variables 1..arity.
struct FormalIdentity {
  std::string name;
  std::size_t arity = 0;
  std::vector<std::string> variables;
  std::vector<IdentityTerm> lhs;
  std::vector<IdentityTerm> rhs;
  /// Every monomial uses each variable exactly once.
  bool multilinear = false;
};

/// Fills in `multilinear` from the terms.
FormalIdentity make_identity(std::string name, std::vector<std::string> variables, std::vector<IdentityTerm> lhs,
                             std::vector<IdentityTerm> rhs);

FormalIdentity anticommutative_identity();
FormalIdentity jacobi_identity();
/// (xy)(zw) = x((wy)z) + w((yz)x) + y((zx)w) + z((xw)y).
FormalIdentity malcev_identity();
/// (xy)(xz) = ((xy)z)x + ((yz)x)x + ((zx)x)y; not multilinear.
FormalIdentity malcev_raw_identity();
/// (xy)z - x(yz) = (xz)y - x(zy).
FormalIdentity vinberg_identity();
/// x v = 0 for every bracketing v of y1 ... yk.
std::vector<FormalIdentity> k_round_identities(std::size_t k);
/// x(uv) = u(xv) and (uv)x = (ux)v for every bracketing uv of y1 ... yk.
std::vector<FormalIdentity> k_based_identities(std::size_t k);
/// (ab)(cw) rewritten through (ac)(bw) and seven words with a bare outer factor.
FormalIdentity small_swap_identity();
/// (ab)((cd)w) rewritten through (cd)((ab)w) and twelve other words.
FormalIdentity swap_identity();
/// The eleven-term variant that drops d(((cw)a)b) and d((wc)(ab)) and has
/// c(d((wa)b)) in place of c(d((wb)a)). It does not hold in m7.
FormalIdentity swap_identity_as_printed();

/// Value of lhs - rhs at the given tuple (tuple[i] is variable i + 1).
Vector evaluate_identity(const Algebra& a, const FormalIdentity& id, const std::vector<Vector>& tuple);

enum class Verdict { Holds, Fails, HoldsOnSamples };
std::string verdict_name(Verdict v);

enum class CheckKind { Basis, Sampled, Exhaustive };

struct CheckMode {
  CheckKind kind = CheckKind::Basis;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  /// Tuple budget for exhaustive membership checks.
  std::uint64_t budget = 1'000'000;
  std::size_t jobs = 1;

  static CheckMode basis(std::size_t jobs = 1) { return {CheckKind::Basis, 0, 0, 1'000'000, jobs}; }
  static CheckMode sampled(std::size_t n, std::uint64_t seed, std::size_t jobs = 1) {
    return {CheckKind::Sampled, n, seed, 1'000'000, jobs};
  }
  static CheckMode exhaustive(std::uint64_t budget, std::size_t jobs = 1) {
    return {CheckKind::Exhaustive, 0, 0, budget, jobs};
  }
};

std::string check_kind_name(CheckKind k);

/// A tuple where a check failed, with enough context to re-run it.
struct Counterexample {
  std::vector<Vector> tuple;
  /// 1-based basis indices when the tuple consists of basis vectors.
  std::optional<std::vector<int>> basis_indices;
  /// The failing identity member, for identity checks.
  std::optional<FormalIdentity> identity;
  /// The target word, for membership checks.
  std::optional<Word> target;
  std::vector<std::string> names;
  /// lhs - rhs, or the target's value.
  Vector residual;
};

enum class MembershipSide { Mixing, SlidingL, SlidingR };
std::string side_name(MembershipSide s);
MembershipSide parse_side(const std::string& s);

struct MembershipSpec {
  std::size_t k = 2;
  MembershipSide side = MembershipSide::Mixing;
  bool unital_convention = true;
};

struct IdentityReport {
  std::string identity;
  Verdict verdict = Verdict::Holds;
  CheckKind mode = CheckKind::Basis;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::optional<Counterexample> counterexample;
  /// Whether 1 was added to the spanning set (unital algebras only).
  bool unital_one_in_span = false;
  std::optional<MembershipSpec> membership;
  /// Per-side reports of a sliding check.
  std::vector<IdentityReport> parts;
  std::vector<std::string> notes;

  bool holds() const { return verdict != Verdict::Fails; }
};

nlohmann::json to_json(const IdentityReport& r);

/// Re-runs the counterexample stored in a report (as produced by to_json) and
/// returns true iff the failure reproduces.
bool replay_counterexample(const Algebra& a, const nlohmann::json& report);

/// Basis mode evaluates every d^arity basis tuple, which proves a multilinear
/// identity; sampled mode evaluates seeded random tuples. Basis mode on a
/// non-multilinear identity throws Error("classify.not_multilinear").
IdentityReport check_identity(const Algebra& a, const FormalIdentity& id, const CheckMode& mode);
/// All members must hold; the first failing member in order is reported.
IdentityReport check_identities(const Algebra& a, const std::string& name, const std::vector<FormalIdentity>& ids,
                                const CheckMode& mode);

IdentityReport check_anticommutative(const Algebra& a, std::size_t jobs = 1);
IdentityReport check_jacobi(const Algebra& a, std::size_t jobs = 1);
/// Anticommutativity plus the multilinear Malcev identity on basis tuples.
/// Throws Error("classify.characteristic_two") over GF(2).
IdentityReport check_malcev(const Algebra& a, std::size_t jobs = 1);

/// Whether the targets x·v and/or v·x, v ∈ W({y_1..y_k}), lie in the span of
/// the evaluated D_0, D_l or D_r. Exhaustive mode (prime fields only) first
/// tries all basis tuples, then every tuple of F_p^d; it throws
/// BudgetExceeded("classify.budget") if the budget runs out before either a
/// failure is found or the enumeration completes. Mixing and the two sliding
/// sides accept 2 <= k <= 4.
IdentityReport check_k_membership(const Algebra& a, const MembershipSpec& spec, const CheckMode& mode);
/// Sliding holds if either side holds; fails only when both sides fail.
IdentityReport check_k_sliding(const Algebra& a, std::size_t k, const CheckMode& mode, bool unital_convention = true);

enum class MonomialKind { D0, Dl, Dr };
std::string monomial_kind_name(MonomialKind k);

struct RepresentationSupport {
  Vector target;
  std::vector<Vector> tuple;
  MonomialKind kind = MonomialKind::D0;
  std::size_t k = 0;
  bool in_span = false;
  /// One representation; only nonzero coefficients are listed.
  std::map<Word, Scalar> coefficients;
  /// Coefficient of 1 when the unit is part of the spanning set.
  std::optional<Scalar> one_coefficient;
  /// Full-length monomials with a nonzero coefficient in some representation.
  std::set<Word> support;
};

/// Writes `target` as a combination of the monomial set evaluated at the tuple
/// (x, y_1, ..., y_k).
RepresentationSupport decompose(const Algebra& a, const Vector& target, const std::vector<Vector>& tuple,
                                MonomialKind kind, bool unital_convention = true);
RepresentationSupport decompose(const Algebra& a, const Word& target, const std::vector<Vector>& tuple,
                                MonomialKind kind, bool unital_convention = true);

/// Samples the two rewrite identities used for Malcev algebras. Requires
/// check_malcev to hold; a sample failure throws Error("classify.rewrite_failed").
IdentityReport verify_rewrites(const Algebra& a, std::size_t samples, std::uint64_t seed, std::size_t jobs = 1);

/// Seeded random vector; rational entries are small integers.
Vector random_vector(const FieldSpec& f, std::size_t dim, std::uint64_t seed, std::uint64_t stream);

enum class EvidenceStatus { Proved, Sampled, Failed, Unknown };
std::string evidence_name(EvidenceStatus s);

struct ClassificationOptions {
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::vector<std::size_t> membership_ks{2, 3};
  std::vector<std::size_t> family_ks{2, 3, 4};
};

/// Keys: anticommutative, jacobi, lie, malcev, vinberg, <k>-round, <k>-based,
/// <k>-mixing, <k>-sliding.
struct ClassificationEvidence {
  std::map<std::string, IdentityReport> reports;
  std::map<std::string, EvidenceStatus> status;

  EvidenceStatus get(const std::string& key) const;
};

ClassificationEvidence classify_algebra(const Algebra& a, const ClassificationOptions& opts = {});
nlohmann::json to_json(const ClassificationEvidence& e);

/// The check behind a CLI identity name: anticommutative, jacobi, malcev,
/// malcev-raw, vinberg, k-round, k-based, k-mixing, k-sliding, k-sliding-l,
/// k-sliding-r, rewrites.
IdentityReport run_named_check(const Algebra& a, const std::string& name, std::size_t k, const CheckMode& mode);

}  // namespace nalength
