// Acceptance suite: runs the full verification battery at the pinned
// tolerances and prints one pass/fail line per criterion. Exit code 0 only
// when every criterion passes.

#include <chrono>
#include <cstdio>
#include <string>

#include "ckn/verify.hpp"

int main(int argc, char** argv) {
  ckn::VerifyOptions opt;
  opt.seed = 7;
  opt.dims = {3, 4, 5};
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--quick") opt.quick = true;
  }

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<ckn::VerificationRecord> records;
  for (const char* suite : {"params", "geometry", "gamma", "inequalities", "invariant"}) {
    const auto t1 = std::chrono::steady_clock::now();
    const auto recs = ckn::verify_suite(suite, opt);
    const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t1);
    std::printf("suite %-13s %3zu checks  %.1fs\n", suite, recs.size(), dt.count());
    records.insert(records.end(), recs.begin(), recs.end());
  }

  int failures = 0;
  for (const auto& r : records) {
    if (!r.pass) {
      ++failures;
      std::printf("FAILED check %s (suite %s, criterion %d): residual %.3e vs tolerance %.3e\n",
                  r.check_id.c_str(), r.suite.c_str(), r.criterion, r.residual, r.tolerance);
    }
  }

  for (const auto& line : ckn::criterion_summary(records)) {
    std::printf("%s\n", line.c_str());
  }
  const auto total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
  std::printf("%s: %d/%zu checks passed in %.1fs\n", failures == 0 ? "PASS" : "FAIL",
              static_cast<int>(records.size()) - failures, records.size(), total.count());
  return failures == 0 ? 0 : 1;
}
