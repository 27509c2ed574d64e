#pragma once

#include <string>
#include <vector>

#include "ckn/params.hpp"

namespace ckn {

/// One verification check. Two-sided checks pass iff |residual| <= tolerance;
/// one-sided checks record the signed residual and pass iff
/// residual >= -tolerance.
struct VerificationRecord {
  std::string check_id;
  std::string suite;  // params | geometry | gamma | inequalities | invariant
  int criterion = 0;  // acceptance criterion this record belongs to (0: none)
  double a = 0.0, b = 0.0;
  int d = 0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool one_sided = false;
  bool pass = false;
  std::string ref;  // identity or property being checked, human-readable

  static VerificationRecord two_sided(std::string id, std::string suite, int criterion,
                                      const CknParams& p, double residual, double tol,
                                      std::string ref);
  static VerificationRecord two_sided(std::string id, std::string suite, int criterion,
                                      double a, double b, int d, double residual, double tol,
                                      std::string ref);
  static VerificationRecord one_sided_ge(std::string id, std::string suite, int criterion,
                                         const CknParams& p, double residual, double tol,
                                         std::string ref);
};

/// JSON report {version, seed, records: [...]}; deterministic for fixed
/// inputs (doubles via shortest-faithful 17-digit formatting).
std::string records_to_json(const std::string& version, std::uint64_t seed,
                            const std::vector<VerificationRecord>& records);

bool all_pass(const std::vector<VerificationRecord>& records);

/// CSV of the region sweep: header a,b_fs,b_dgz; empty b_dgz cell when the
/// curve has no root at that a; '.' decimal separator, 17 significant digits.
std::string region_csv(const std::vector<RegionRow>& rows);

/// Self-contained SVG of the two region curves with the admissible band
/// boundaries b = a and b = a + 1. Fixed viewBox, no external dependencies.
std::string region_svg(const std::vector<RegionRow>& rows, int d);

}  // namespace ckn
