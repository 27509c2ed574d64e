// cknlab: numerical verification toolkit for the weighted Sobolev inequality
// family on its flat, round and ball-shaped model geometries.
//
// Subcommands:
//   params   derived parameters and region classification as JSON
//   regions  symmetry-breaking and curvature-margin curves (CSV or SVG)
//   verify   full verification suite with a machine-readable report
//   deficit  Sobolev/Poincare deficit of a built-in test function
//
// Exit codes: 0 success / all checks pass, 1 check failure, 2 usage error.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

#include "ckn/inequalities.hpp"
#include "ckn/verify.hpp"

namespace {

using nlohmann::ordered_json;

ordered_json params_json(const ckn::CknParams& p) {
  ordered_json j;
  j["a"] = p.a;
  j["b"] = p.b;
  j["d"] = p.d;
  j["a_c"] = p.a_c;
  j["p"] = p.p;
  if (p.n_finite()) {
    j["n"] = p.n;
  } else {
    j["n"] = "inf";
  }
  j["alpha"] = p.alpha;
  j["b_dgz"] = p.b_dgz;
  j["rho"] = p.rho;
  if (p.gamma0.has_value()) {
    j["gamma0"] = *p.gamma0;
  } else {
    j["gamma0"] = nullptr;
  }
  if (p.z.has_value()) {
    j["z"] = *p.z;
  } else {
    j["z"] = nullptr;
  }
  const ckn::RegionReport r = ckn::classify(p);
  ordered_json region;
  region["in_theta"] = r.in_theta;
  region["on_hardy_boundary"] = r.on_hardy_boundary;
  region["on_sobolev_line"] = r.on_sobolev_line;
  region["in_fs_by_alpha"] = r.in_fs_by_alpha;
  region["in_fs_by_curve"] = r.in_fs_by_curve;
  region["in_fs_by_curve_agate"] = r.in_fs_by_curve_agate;
  region["alpha_le_one"] = r.alpha_le_one;
  region["in_dgz"] = r.in_dgz;
  region["characterizations_agree"] = r.characterizations_agree;
  j["region"] = std::move(region);
  if (p.alpha == 1.0 && p.a == 0.0 && p.b == 0.0) {
    j["note"] = "alpha = 1: round-sphere case";
  }
  return j;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ckn::Error("cannot open output file: " + path);
  os << content;
}

std::vector<int> parse_dims(const std::string& spec) {
  std::vector<int> dims;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    const int d = std::stoi(item, &pos);
    if (pos != item.size() || d < 3) throw ckn::SpecError("bad dimension list: " + spec);
    dims.push_back(d);
  }
  if (dims.empty()) throw ckn::SpecError("empty dimension list");
  return dims;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical checks for the weighted Sobolev inequality family"};
  app.require_subcommand(1);

  // --- params ---
  auto* cmd_params = app.add_subcommand("params", "derived parameters and region report");
  double a = 0.0, b = 0.0;
  int d = 3;
  bool with_z = false;
  cmd_params->add_option("-a", a, "weight exponent a")->required();
  cmd_params->add_option("-b", b, "weight exponent b")->required();
  cmd_params->add_option("-d", d, "ambient dimension")->required();
  cmd_params->add_flag("--with-z", with_z, "also compute the normalization Z");

  // --- regions ---
  auto* cmd_regions = app.add_subcommand("regions", "region curves as CSV or SVG");
  int rd = 4, steps = 500;
  double a_min = -4.0, a_max = 0.9;
  std::string format = "csv", output = "-";
  cmd_regions->add_option("-d", rd, "ambient dimension")->required();
  cmd_regions->add_option("--a-min", a_min, "left end of the a range");
  cmd_regions->add_option("--a-max", a_max, "right end of the a range");
  cmd_regions->add_option("--steps", steps, "number of samples");
  cmd_regions->add_option("--format", format, "csv or svg")
      ->check(CLI::IsMember({"csv", "svg"}));
  cmd_regions->add_option("-o,--output", output, "output file ('-' for stdout)");

  // --- verify ---
  auto* cmd_verify = app.add_subcommand("verify", "run the verification suites");
  std::string suite = "all", dim_list = "3,4";
  std::uint64_t seed = 7;
  std::string report_path = "-";
  bool quick = false;
  cmd_verify->add_option("--suite", suite, "params|geometry|gamma|inequalities|invariant|all")
      ->check(CLI::IsMember({"params", "geometry", "gamma", "inequalities", "invariant", "all"}));
  cmd_verify->add_option("--d", dim_list, "comma-separated dimensions, e.g. 3,4,5");
  cmd_verify->add_option("--seed", seed, "sample seed");
  cmd_verify->add_option("-o,--output", report_path, "report file ('-' for stdout)");
  cmd_verify->add_flag("--quick", quick, "reduced sample counts");

  // --- deficit ---
  auto* cmd_deficit = app.add_subcommand("deficit", "deficit of a built-in test function");
  std::string kind = "sobolev", function = "extremal";
  double da = 0.0, db = 0.5;
  int dd = 4;
  cmd_deficit->add_option("--kind", kind, "sobolev or poincare")
      ->check(CLI::IsMember({"sobolev", "poincare"}));
  cmd_deficit->add_option("--function", function,
                          "extremal | witness | seeded:<index> | constant");
  cmd_deficit->add_option("-a", da, "weight exponent a")->required();
  cmd_deficit->add_option("-b", db, "weight exponent b")->required();
  cmd_deficit->add_option("-d", dd, "ambient dimension")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors exit 2; --help/--version exit 0
  }

  try {
    if (*cmd_params) {
      ckn::CknParams p = ckn::derive(a, b, d);
      if (with_z) p = ckn::attach_z(p);
      std::cout << params_json(p).dump(2) << "\n";
      return 0;
    }

    if (*cmd_regions) {
      const auto rows = ckn::region_sweep(rd, a_min, a_max, steps);
      write_output(output, format == "csv" ? ckn::region_csv(rows)
                                           : ckn::region_svg(rows, rd));
      return 0;
    }

    if (*cmd_verify) {
      ckn::VerifyOptions opt;
      opt.seed = seed;
      opt.dims = parse_dims(dim_list);
      opt.quick = quick;
      const auto records = ckn::verify_suite(suite, opt);
      write_output(report_path, ckn::records_to_json("1", seed, records) + "\n");
      return ckn::all_pass(records) ? 0 : 1;
    }

    if (*cmd_deficit) {
      ckn::CknParams p = ckn::attach_z(ckn::derive(da, db, dd));
      ckn::GridOptions gopt;
      gopt.polar_nodes = 12;
      gopt.azimuth_nodes = 24;
      const ckn::QuadGrid grid = ckn::QuadGrid::for_params(p, gopt);

      ckn::CylField field;
      if (function == "extremal") {
        ckn::ExtremalSpec spec;
        spec.mode = kind == "sobolev" ? ckn::ExtremalSpec::Mode::SobolevRadial
                                      : ckn::ExtremalSpec::Mode::Poincare;
        spec.lambda = std::cosh(0.3);
        spec.mu = std::sinh(0.3);
        field = ckn::make_extremal(spec, p);
      } else if (function == "witness") {
        const auto rep = ckn::symmetry_breaking_witness(p, grid);
        ordered_json j;
        j["kind"] = "poincare";
        j["function"] = "witness";
        j["lhs"] = rep.lhs;
        j["rhs"] = rep.rhs;
        j["deficit"] = rep.deficit;
        j["tolerance"] = rep.tolerance;
        j["verdict"] = ckn::to_string(rep.verdict);
        std::cout << j.dump(2) << "\n";
        return 0;
      } else if (function == "constant") {
        field.value = [](const ckn::CylPoint&) { return 1.0; };
        field.ds = [](const ckn::CylPoint&) { return 0.0; };
        field.gamma_theta = [](const ckn::CylPoint&) { return 0.0; };
      } else if (function.rfind("seeded:", 0) == 0) {
        const int index = std::stoi(function.substr(7));
        field = ckn::seeded_positive_field(p, 7, index);
      } else {
        throw ckn::SpecError("unknown function spec: " + function);
      }

      const ckn::DeficitReport rep = kind == "sobolev"
                                         ? ckn::sobolev_deficit(field, p, grid)
                                         : ckn::poincare_deficit(field, p, grid);
      ordered_json j;
      j["kind"] = kind;
      j["function"] = function;
      j["lhs"] = rep.lhs;
      j["rhs"] = rep.rhs;
      j["deficit"] = rep.deficit;
      j["tolerance"] = rep.tolerance;
      j["verdict"] = ckn::to_string(rep.verdict);
      std::cout << j.dump(2) << "\n";
      return 0;
    }
  } catch (const ckn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
