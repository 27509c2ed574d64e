#pragma once

#include "ckn/report.hpp"

namespace ckn {

struct VerifyOptions {
  std::uint64_t seed = 7;
  std::vector<int> dims = {3, 4};
  bool quick = false;  // reduced sample counts for fast unit-test runs
};

/// Uniform sample of the admissible parameter band for one d.
CknParams sample_theta(Rng& rng, int d);

std::vector<VerificationRecord> verify_params(const VerifyOptions& opt);
std::vector<VerificationRecord> verify_geometry(const VerifyOptions& opt);
std::vector<VerificationRecord> verify_gamma(const VerifyOptions& opt);
std::vector<VerificationRecord> verify_inequalities(const VerifyOptions& opt);
std::vector<VerificationRecord> verify_invariant(const VerifyOptions& opt);

/// Dispatch by suite name ("params", "geometry", "gamma", "inequalities",
/// "invariant", "all"). Throws SpecError for unknown names.
std::vector<VerificationRecord> verify_suite(const std::string& name, const VerifyOptions& opt);

std::vector<VerificationRecord> verify_all(const VerifyOptions& opt);

/// One line per acceptance criterion (1..11): "PASS|FAIL criterion k: ...".
std::vector<std::string> criterion_summary(const std::vector<VerificationRecord>& records);

}  // namespace ckn
