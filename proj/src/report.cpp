#include "ckn/report.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ckn {

VerificationRecord VerificationRecord::two_sided(std::string id, std::string suite,
                                                 int criterion, const CknParams& p,
                                                 double residual, double tol,
                                                 std::string ref) {
  return two_sided(std::move(id), std::move(suite), criterion, p.a, p.b, p.d, residual, tol,
                   std::move(ref));
}

VerificationRecord VerificationRecord::two_sided(std::string id, std::string suite,
                                                 int criterion, double a, double b, int d,
                                                 double residual, double tol,
                                                 std::string ref) {
  VerificationRecord r;
  r.check_id = std::move(id);
  r.suite = std::move(suite);
  r.criterion = criterion;
  r.a = a;
  r.b = b;
  r.d = d;
  r.residual = residual;
  r.tolerance = tol;
  r.one_sided = false;
  r.pass = std::isfinite(residual) && std::abs(residual) <= tol;
  r.ref = std::move(ref);
  return r;
}

VerificationRecord VerificationRecord::one_sided_ge(std::string id, std::string suite,
                                                    int criterion, const CknParams& p,
                                                    double residual, double tol,
                                                    std::string ref) {
  VerificationRecord r;
  r.check_id = std::move(id);
  r.suite = std::move(suite);
  r.criterion = criterion;
  r.a = p.a;
  r.b = p.b;
  r.d = p.d;
  r.residual = residual;
  r.tolerance = tol;
  r.one_sided = true;
  r.pass = std::isfinite(residual) && residual >= -tol;
  r.ref = std::move(ref);
  return r;
}

std::string records_to_json(const std::string& version, std::uint64_t seed,
                            const std::vector<VerificationRecord>& records) {
  nlohmann::ordered_json doc;
  doc["version"] = version;
  doc["seed"] = seed;
  doc["records"] = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json jr;
    jr["check_id"] = r.check_id;
    jr["suite"] = r.suite;
    jr["criterion"] = r.criterion;
    jr["params"] = {r.a, r.b, r.d};
    jr["residual"] = r.residual;
    jr["tolerance"] = r.tolerance;
    jr["direction"] = r.one_sided ? "one_sided_ge" : "two_sided";
    jr["pass"] = r.pass;
    jr["ref"] = r.ref;
    doc["records"].push_back(std::move(jr));
  }
  return doc.dump(2);
}

bool all_pass(const std::vector<VerificationRecord>& records) {
  return std::all_of(records.begin(), records.end(),
                     [](const VerificationRecord& r) { return r.pass; });
}

std::string region_csv(const std::vector<RegionRow>& rows) {
  std::ostringstream os;
  os << "a,b_fs,b_dgz\r\n";
  for (const auto& row : rows) {
    os << fmt17(row.a) << ',' << fmt17(row.b_fs) << ',';
    if (row.b_dgz.has_value()) os << fmt17(*row.b_dgz);
    os << "\r\n";
  }
  return os.str();
}

namespace {

struct Frame {
  double a_min, a_max, b_min, b_max;
  static constexpr double kW = 800.0, kH = 600.0, kPad = 50.0;
  double x(double a) const { return kPad + (a - a_min) / (a_max - a_min) * (kW - 2 * kPad); }
  double y(double b) const {
    return kH - kPad - (b - b_min) / (b_max - b_min) * (kH - 2 * kPad);
  }
};

std::string polyline(const Frame& fr, const std::vector<std::pair<double, double>>& pts,
                     const char* style) {
  std::ostringstream os;
  os << "  <polyline fill=\"none\" " << style << " points=\"";
  for (const auto& [a, b] : pts) os << fmt17(fr.x(a)) << ',' << fmt17(fr.y(b)) << ' ';
  os << "\"/>\n";
  return os.str();
}

}  // namespace

std::string region_svg(const std::vector<RegionRow>& rows, int d) {
  Frame fr{rows.front().a, rows.back().a, 0.0, 0.0};
  double b_min = 0.0, b_max = 0.0;
  for (const auto& row : rows) {
    b_min = std::min({b_min, row.b_fs, row.a});
    b_max = std::max({b_max, row.b_fs, row.a + 1.0});
    if (row.b_dgz) {
      b_min = std::min(b_min, *row.b_dgz);
      b_max = std::max(b_max, *row.b_dgz);
    }
  }
  fr.b_min = b_min - 0.1;
  fr.b_max = b_max + 0.1;

  std::vector<std::pair<double, double>> fs, dgz, lower, upper;
  for (const auto& row : rows) {
    fs.emplace_back(row.a, row.b_fs);
    if (row.b_dgz) dgz.emplace_back(row.a, *row.b_dgz);
    lower.emplace_back(row.a, row.a);
    upper.emplace_back(row.a, row.a + 1.0);
  }

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\">\n";
  os << "  <rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  os << polyline(fr, lower, "stroke=\"#888888\" stroke-width=\"1\"");
  os << polyline(fr, upper, "stroke=\"#888888\" stroke-width=\"1\"");
  os << polyline(fr, fs, "stroke=\"red\" stroke-width=\"2\" stroke-dasharray=\"8 4\"");
  if (!dgz.empty()) {
    os << polyline(fr, dgz, "stroke=\"blue\" stroke-width=\"2\" stroke-dasharray=\"2 4\"");
  }
  // axis ticks every 0.5 in a, 0.5 in b
  for (double a = std::ceil(fr.a_min * 2) / 2; a <= fr.a_max; a += 0.5) {
    os << "  <line x1=\"" << fmt17(fr.x(a)) << "\" y1=\"" << fmt17(Frame::kH - Frame::kPad)
       << "\" x2=\"" << fmt17(fr.x(a)) << "\" y2=\"" << fmt17(Frame::kH - Frame::kPad + 6)
       << "\" stroke=\"black\"/>\n";
    os << "  <text x=\"" << fmt17(fr.x(a)) << "\" y=\"" << fmt17(Frame::kH - Frame::kPad + 20)
       << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt17(a) << "</text>\n";
  }
  for (double b = std::ceil(fr.b_min * 2) / 2; b <= fr.b_max; b += 0.5) {
    os << "  <line x1=\"" << fmt17(Frame::kPad - 6) << "\" y1=\"" << fmt17(fr.y(b))
       << "\" x2=\"" << fmt17(Frame::kPad) << "\" y2=\"" << fmt17(fr.y(b))
       << "\" stroke=\"black\"/>\n";
    os << "  <text x=\"" << fmt17(Frame::kPad - 10) << "\" y=\"" << fmt17(fr.y(b) + 4)
       << "\" font-size=\"11\" text-anchor=\"end\">" << fmt17(b) << "</text>\n";
  }
  os << "  <text x=\"400\" y=\"24\" font-size=\"14\" text-anchor=\"middle\">"
        "symmetry-breaking curve b_FS (red, dashed) and b_dgz = 0 level set (blue, dotted), d="
     << d << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace ckn
