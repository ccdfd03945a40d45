#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "nilorb/harness.hpp"
#include "nilorb/report.hpp"

using namespace nilorb;

namespace {

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char buf[64];
  std::tm tm{};
  gmtime_r(&tt, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct VerifyCliOptions {
  std::string orbit_pos, potential_pos;
  std::string orbit_flag, potential_flag;
  double c = 0;
  std::string grid, format, config;
  double tol_id = 0, tol_fd = 0;
  std::uint64_t seed = 0;
  bool expect_fail = false, no_timestamp = false, no_fd = false;
};

int run_verify_cmd(CLI::App* cmd, VerifyCliOptions& o) {
  RunConfig cfg;
  std::vector<std::string> overridden;
  auto took = [&](const char* flag, const char* key) {
    if (cmd->count(flag) > 0) {
      overridden.push_back(key);
      return true;
    }
    return false;
  };
  if (took("--orbit", "orbit")) cfg.orbit = o.orbit_flag;
  else if (cmd->count("ORBIT") > 0) {
    cfg.orbit = o.orbit_pos;
    overridden.push_back("orbit");
  }
  if (took("--potential", "potential")) cfg.potential = o.potential_flag;
  else if (cmd->count("POTENTIAL") > 0) {
    cfg.potential = o.potential_pos;
    overridden.push_back("potential");
  }
  if (took("--c", "c")) cfg.c_override = o.c;
  if (took("--grid", "grid")) cfg.grid = GridSpec::parse(o.grid);
  if (took("--tol-id", "tol-id")) cfg.tol.identity = o.tol_id;
  if (took("--tol-fd", "tol-fd")) {
    cfg.tol.fd = o.tol_fd;
    cfg.tol.closedness = 10 * o.tol_fd;
  }
  if (took("--seed", "seed")) cfg.seed = o.seed;
  if (took("--format", "format")) cfg.format = parse_format(o.format);
  if (took("--expect-fail", "expect-fail")) cfg.expect_fail = o.expect_fail;
  if (took("--no-timestamp", "no-timestamp")) cfg.no_timestamp = o.no_timestamp;
  if (cmd->count("--no-fd") > 0) cfg.with_fd = !o.no_fd;

  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) {
      std::cerr << "error: cannot open config file '" << o.config << "'\n";
      return 2;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    apply_config_text(cfg, ss.str(), overridden);
  }
  if (cfg.orbit.empty()) {
    std::cerr << "error: no orbit given (positional or --orbit)\n";
    return 2;
  }

  const bool json = cfg.format == OutputFormat::Json;
  const bool csv = cfg.format == OutputFormat::Csv;

  if (json) {
    nlohmann::ordered_json head;
    head["type"] = "run";
    head["command"] = "verify";
    head["orbit"] = cfg.orbit;
    head["potential"] = cfg.potential;
    head["grid"] = cfg.grid.to_string();
    head["seed"] = cfg.seed;
    head["tolerances"] = {{"identity", cfg.tol.identity},
                          {"fd", cfg.tol.fd},
                          {"closedness", cfg.tol.closedness}};
    if (!cfg.no_timestamp) head["timestamp"] = iso_timestamp();
    std::cout << head.dump() << "\n";
  } else if (csv) {
    std::cout << report_csv_header() << "\n";
  } else {
    std::cout << "verify " << cfg.orbit << " with " << cfg.potential << " on grid "
              << cfg.grid.to_string() << "\n";
  }

  auto stream_point = [&](const PointResult& pr) {
    if (json) {
      if (pr.skipped) {
        nlohmann::ordered_json j;
        j["type"] = "point";
        j["index"] = pr.index;
        j["s"] = pr.s;
        j["t"] = pr.t;
        j["skipped"] = true;
        j["skip_reason"] = pr.skip_reason;
        std::cout << j.dump() << "\n";
      } else {
        nlohmann::ordered_json j = nlohmann::ordered_json::parse(report_to_json(pr.report));
        j["type"] = "point";
        j["index"] = pr.index;
        std::cout << j.dump() << "\n";
      }
    } else if (csv) {
      if (!pr.skipped)
        for (const auto& row : report_csv_rows(pr.report)) std::cout << row << "\n";
    } else {
      std::printf("  [%2d] s=%-7.4g t=%-7.4g ", pr.index, pr.s, pr.t);
      if (pr.skipped) {
        std::printf("skipped (%s)\n", pr.skip_reason.c_str());
      } else {
        const auto& r = pr.report;
        std::printf("J2=%.2e minEig=%+.3e triple=%.2e", r.j_squared_residual,
                    r.min_metric_eigenvalue,
                    std::max({r.anticommutator_residual, r.metric_I_invariance,
                              r.metric_J_invariance, r.omegaJ_vs_ReOmega_c,
                              r.omegaK_vs_ImOmega_c}));
        if (r.fd_checked)
          std::printf(" fd=%.2e dOmega=%.2e", r.dIdrho_agreement, r.closedness_residual);
        std::printf(" %s\n", r.pass() ? "pass" : "FAIL");
      }
    }
    std::cout.flush();
  };

  VerifyResult result;
  try {
    result = run_verify(cfg, stream_point);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const bool pass = result.pass();
  if (json) {
    nlohmann::ordered_json j;
    j["type"] = "summary";
    j["checked"] = result.checked;
    j["failed"] = result.failed;
    j["skipped"] = result.skipped;
    j["k2"] = result.k2;
    j["pass"] = pass;
    j["expect_fail"] = cfg.expect_fail;
    std::cout << j.dump() << "\n";
  } else if (!csv) {
    std::printf("%s: %d checked, %d failed, %d skipped\n", pass ? "PASS" : "FAIL", result.checked,
                result.failed, result.skipped);
  }
  if (cfg.expect_fail) return pass ? 1 : 0;
  return pass ? 0 : 1;
}

int run_k2_cmd(int max_a, int max_bd, int max_c, const std::string& format) {
  const auto rows = k2_table(max_a, max_bd, max_c);
  bool all_match = true;
  if (format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      nlohmann::ordered_json j;
      j["algebra"] = r.algebra;
      j["orbit"] = r.orbit;
      j["closed_form"] = r.closed_form;
      if (r.constructed) {
        j["measured"] = r.measured;
        j["match"] = r.match;
        all_match = all_match && r.match;
      } else {
        j["reference_only"] = true;
      }
      arr.push_back(std::move(j));
    }
    std::cout << arr.dump(2) << "\n";
  } else {
    std::printf("%-8s %-22s %12s %12s  %s\n", "algebra", "orbit", "measured", "closed", "match");
    for (const auto& r : rows) {
      if (r.constructed) {
        std::printf("%-8s %-22s %12.8f %12.8f  %s\n", r.algebra.c_str(), r.orbit.c_str(),
                    r.measured, r.closed_form, r.match ? "yes" : "NO");
        all_match = all_match && r.match;
      } else {
        std::printf("%-8s %-22s %12s %12.8f  %s\n", r.algebra.c_str(), r.orbit.c_str(),
                    "(reference)", r.closed_form, "-");
      }
    }
  }
  return all_match ? 0 : 1;
}

int run_selftest_cmd(std::uint64_t seed, bool inject) {
  const SelftestResult res = run_selftest(seed, inject);
  for (const auto& item : res.items)
    std::printf("  [%s] %s\n", item.pass ? "ok" : "FAIL", item.name.c_str());
  std::printf("selftest: %s (%zu checks)\n", res.pass() ? "PASS" : "FAIL", res.items.size());
  return res.pass() ? 0 : 1;
}

int run_orbit_info_cmd(const std::string& orbit, double s, double t, const std::string& format) {
  OrbitInfo info;
  try {
    info = orbit_info(orbit, s, t);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (format == "json") {
    nlohmann::ordered_json j;
    j["orbit"] = info.orbit;
    j["algebra_dim"] = info.algebra_dim;
    j["tangent_dim_complex"] = info.tangent_dim_complex;
    j["s"] = info.s;
    j["t"] = info.t;
    j["eta1"] = info.eta1;
    j["eta2"] = info.eta2;
    if (!info.jordan.empty()) j["jordan_type"] = info.jordan;
    j["cohomogeneity"] = info.cohomogeneity;
    if (info.k2) j["k2"] = *info.k2;
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("orbit          %s\n", info.orbit.c_str());
    std::printf("algebra dim    %d\n", info.algebra_dim);
    std::printf("tangent dim    %d (complex)\n", info.tangent_dim_complex);
    std::printf("point          s=%g t=%g\n", info.s, info.t);
    std::printf("eta1, eta2     %.12g, %.12g\n", info.eta1, info.eta2);
    if (!info.jordan.empty()) std::printf("jordan type    %s\n", info.jordan.c_str());
    std::printf("cohomogeneity  %d\n", info.cohomogeneity);
    if (info.k2) std::printf("k^2            %.12g\n", *info.k2);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"construction and numerical verification of hyperKaehler potentials on "
               "cohomogeneity-two nilpotent orbits"};
  app.require_subcommand(1);

  VerifyCliOptions vo;
  CLI::App* verify = app.add_subcommand("verify", "run the residual suite over an (s,t) grid");
  verify->add_option("ORBIT", vo.orbit_pos, "orbit id, e.g. A:5:2,2,1 or G2");
  verify->add_option("POTENTIAL", vo.potential_pos, "potential: theorem, g2, family:c=...");
  verify->add_option("--orbit", vo.orbit_flag, "orbit id (overrides the positional)");
  verify->add_option("--potential", vo.potential_flag, "potential (overrides the positional)");
  verify->add_option("--c", vo.c, "family constant override");
  verify->add_option("--grid", vo.grid, "grid spec smin:smax:stepsxtmin:tmax:steps");
  verify->add_option("--tol-id", vo.tol_id, "identity-check tolerance (default 1e-9)");
  verify->add_option("--tol-fd", vo.tol_fd, "fd tolerance (default 1e-6; closedness 10x)");
  verify->add_option("--seed", vo.seed, "random seed for fd sampling");
  verify->add_option("--format", vo.format, "text, json or csv");
  verify->add_flag("--expect-fail", vo.expect_fail, "exit 0 exactly when the suite fails");
  verify->add_flag("--no-timestamp", vo.no_timestamp, "omit the timestamp from json output");
  verify->add_flag("--no-fd", vo.no_fd, "skip the finite-difference checks");
  verify->add_option("--config", vo.config, "key=value config file (flags take precedence)");

  int max_a = 8, max_bd = 10, max_c = 4;
  std::string k2_format = "text";
  CLI::App* k2 = app.add_subcommand("k2", "measured homothety constants beside the closed forms");
  k2->add_option("--max-a", max_a, "largest sl(m) size");
  k2->add_option("--max-bd", max_bd, "largest so(m) size");
  k2->add_option("--max-c", max_c, "largest sp rank");
  k2->add_option("--format", k2_format, "text or json");

  std::uint64_t st_seed = 20240915;
  bool st_corrupt = false;
  CLI::App* selftest = app.add_subcommand("selftest", "exact kernel and model invariants");
  selftest->add_option("--seed", st_seed, "random seed");
  selftest->add_flag("--inject-corruption", st_corrupt,
                     "negative control: perturb a structure constant; the run must fail");

  std::string oi_orbit;
  double oi_s = 1.0, oi_t = 0.6;
  std::string oi_format = "text";
  CLI::App* oinfo = app.add_subcommand("orbit-info", "invariants and type data of an orbit point");
  oinfo->add_option("ORBIT", oi_orbit, "orbit id")->required();
  oinfo->add_option("--s", oi_s, "s parameter (default 1)");
  oinfo->add_option("--t", oi_t, "t parameter (default 0.6)");
  oinfo->add_option("--format", oi_format, "text or json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) return run_verify_cmd(verify, vo);
    if (k2->parsed()) return run_k2_cmd(max_a, max_bd, max_c, k2_format);
    if (selftest->parsed()) return run_selftest_cmd(st_seed, st_corrupt);
    if (oinfo->parsed()) return run_orbit_info_cmd(oi_orbit, oi_s, oi_t, oi_format);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
