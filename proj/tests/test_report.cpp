#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "ckn/report.hpp"
#include "ckn/verify.hpp"

using namespace ckn;

TEST_CASE("record pass logic") {
  const CknParams p = derive(0.0, 0.5, 4);
  const auto good = VerificationRecord::two_sided("x", "params", 1, p, 5e-13, 1e-12, "r");
  CHECK(good.pass);
  const auto bad = VerificationRecord::two_sided("x", "params", 1, p, 5e-12, 1e-12, "r");
  CHECK(!bad.pass);
  const auto onesided = VerificationRecord::one_sided_ge("x", "params", 1, p, -5e-7, 1e-6, "r");
  CHECK(onesided.pass);
  const auto violated = VerificationRecord::one_sided_ge("x", "params", 1, p, -5e-6, 1e-6, "r");
  CHECK(!violated.pass);
  const auto nan_rec = VerificationRecord::two_sided("x", "params", 1, p,
                                                     std::nan(""), 1e-12, "r");
  CHECK(!nan_rec.pass);
}

TEST_CASE("JSON report is deterministic and carries the schema fields") {
  const CknParams p = derive(0.0, 0.5, 4);
  std::vector<VerificationRecord> recs{
      VerificationRecord::two_sided("params.closure", "params", 1, p, 1e-13, 1e-12, "identity"),
      VerificationRecord::one_sided_ge("ineq.sweep", "inequalities", 11, p, 0.3, 1e-6, "bound"),
  };
  const std::string a = records_to_json("1", 7, recs);
  const std::string b = records_to_json("1", 7, recs);
  CHECK(a == b);
  CHECK(a.find("\"version\": \"1\"") != std::string::npos);
  CHECK(a.find("\"seed\": 7") != std::string::npos);
  CHECK(a.find("\"check_id\": \"params.closure\"") != std::string::npos);
  CHECK(a.find("\"direction\": \"one_sided_ge\"") != std::string::npos);
  CHECK(a.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("verification suites are bit-identical under a fixed seed") {
  VerifyOptions opt;
  opt.quick = true;
  opt.dims = {3};
  opt.seed = 7;
  const auto r1 = verify_params(opt);
  const auto r2 = verify_params(opt);
  CHECK(records_to_json("1", opt.seed, r1) == records_to_json("1", opt.seed, r2));
}

TEST_CASE("region CSV: header, decimal digits, empty cells") {
  const auto rows = region_sweep(4, -2.0, 0.9, 30);
  const std::string csv = region_csv(rows);
  CHECK(csv.rfind("a,b_fs,b_dgz\r\n", 0) == 0);
  // a row at positive a has no curve root: line ends with a bare comma
  CHECK(csv.find(",\r\n") != std::string::npos);
  // 17 significant digits survive round-trip
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);  // header
  std::getline(is, line);
  const auto comma = line.find(',');
  const double a0 = std::stod(line.substr(0, comma));
  CHECK(a0 == -2.0);
  const double bfs = std::stod(line.substr(comma + 1, line.find(',', comma + 1) - comma - 1));
  CHECK(bfs == fs_curve(-2.0, 4));
}

TEST_CASE("region SVG: two curves, band boundaries, fixed viewBox") {
  const auto rows = region_sweep(4, -2.0, 0.9, 40);
  const std::string svg = region_svg(rows, 4);
  CHECK(svg.find("viewBox=\"0 0 800 600\"") != std::string::npos);
  CHECK(svg.find("stroke=\"red\"") != std::string::npos);
  CHECK(svg.find("stroke=\"blue\"") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  // four polylines: two band boundaries plus the two curves
  std::size_t count = 0;
  for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos;
       pos = svg.find("<polyline", pos + 1)) {
    ++count;
  }
  CHECK(count == 4);
}

TEST_CASE("criterion summary covers all eleven criteria") {
  VerifyOptions opt;
  opt.quick = true;
  opt.dims = {3, 4};
  const auto recs = verify_all(opt);
  const auto lines = criterion_summary(recs);
  CHECK(lines.size() == 11);
  for (const auto& line : lines) {
    CAPTURE(line);
    CHECK(line.find("criterion") != std::string::npos);
  }
}

TEST_CASE("unknown suite names are rejected") {
  VerifyOptions opt;
  CHECK_THROWS_AS(verify_suite("nope", opt), SpecError);
}
