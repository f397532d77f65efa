#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "nalength/algebra.hpp"

namespace nalength {

struct VerificationOptions {
  /// Fewer samples and the smaller exhaustive scans only.
  bool quick = false;
  std::size_t jobs = 1;
};

struct TimedItem {
  std::string label;
  double seconds = 0;
  double limit_seconds = 0;
};

struct CriterionOutcome {
  int id = 0;
  std::string title;
  bool passed = false;
  /// Claims the suite refutes with a replayed counterexample. A passed
  /// criterion with deviations is reported as DEVIATION.
  std::vector<std::string> deviations;
  nlohmann::json details;
  /// Wall-clock timings; never part of the JSON report.
  std::vector<TimedItem> timings;
};

struct CriterionInfo {
  int id;
  std::string title;
  /// Limit for the criterion as a whole.
  double limit_seconds;
};

/// The acceptance suite. Criteria run in id order and share state: the
/// sequence-law and bound criteria check everything recorded before them.
class VerificationSuite {
 public:
  explicit VerificationSuite(VerificationOptions opts);

  static const std::vector<CriterionInfo>& criteria();
  /// Module errors are caught and reported as a failed outcome.
  CriterionOutcome run(int id);
  nlohmann::json report(const std::vector<CriterionOutcome>& outcomes) const;

 private:
  struct ExhaustiveRecord {
    Algebra algebra;
    std::size_t length;
  };
  struct SequenceRecord {
    std::string algebra;
    std::size_t dim;
    std::vector<std::size_t> seq;
    std::size_t length;
  };

  CriterionOutcome family_lengths();
  CriterionOutcome vd_lengths();
  CriterionOutcome class_checks();
  CriterionOutcome malcev_suite();
  CriterionOutcome malcev_bounds();
  CriterionOutcome sequence_laws();
  CriterionOutcome sprout_suite();
  CriterionOutcome universal_bounds();
  CriterionOutcome determinism();

  std::vector<std::size_t> record_sequence(const Algebra& a, const std::vector<Vector>& S);

  VerificationOptions opts_;
  std::uint64_t checked_at_start_;
  std::vector<SequenceRecord> sequences_;
  std::vector<ExhaustiveRecord> exhaustive_;
  std::vector<std::string> invariant_errors_;
};

/// Runs every criterion; the report is identical for any number of jobs.
nlohmann::json run_verification(const VerificationOptions& opts);

}  // namespace nalength
