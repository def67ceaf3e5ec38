#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cstar/algebra.hpp"
#include "cstar/random.hpp"

namespace cstar {

// One row of the verification report. The pass rule is uniform:
// passed == (max_defect <= tolerance). Records that assert a lower bound
// (independence margins) store the shortfall below the bound as the defect,
// so a comfortably passing run shows a negative defect.
struct TheoremRecord {
  std::string name;
  std::string statement;
  int trials = 0;
  double max_defect = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerificationOptions {
  AlgebraShape shape{std::vector<int>{4}};
  std::uint64_t seed = kProbeSeed;
  int trials = 100;

  // Negative control: mixes each synthesized eigenstate of the residual
  // record with a random state at this weight. Any nonzero value above
  // roughly 1e-6 makes that record fail, demonstrating the suite's
  // sensitivity.
  double perturbation = 0.0;
};

struct VerificationReport {
  VerificationOptions options;
  std::vector<TheoremRecord> records;
  double wall_seconds = 0.0;  // diagnostic only; never serialized

  bool all_passed() const;
};

// Runs every record on seeded data. The random model: hermitian elements are
// entrywise complex gaussians then hermitized, states are normalized squares
// M M* of gaussian matrices, projections are spans of random eigenvector
// subsets. Identical options produce identical reports.
VerificationReport run_verification(const VerificationOptions& options);

// Renderings are byte-stable across runs with equal options; wall time is
// deliberately excluded.
std::string format_report_table(const VerificationReport& report);
std::string format_report_json(const VerificationReport& report);

}  // namespace cstar
