#include "nilorb/report.hpp"

#include "json.hpp"

namespace nilorb {

namespace {

nlohmann::ordered_json report_json(const GeometryReport& r) {
  nlohmann::ordered_json j;
  j["s"] = r.s;
  j["t"] = r.t;
  j["eta1"] = r.eta1;
  j["eta2"] = r.eta2;
  j["j_squared_residual"] = r.j_squared_residual;
  j["min_metric_eigenvalue"] = r.min_metric_eigenvalue;
  j["anticommutator_residual"] = r.anticommutator_residual;
  j["omegaJ_vs_ReOmega_c"] = r.omegaJ_vs_ReOmega_c;
  j["omegaK_vs_ImOmega_c"] = r.omegaK_vs_ImOmega_c;
  j["metric_I_invariance"] = r.metric_I_invariance;
  j["metric_J_invariance"] = r.metric_J_invariance;
  if (r.fd_checked) {
    j["dIdrho_agreement"] = r.dIdrho_agreement;
    j["closedness_residual"] = r.closedness_residual;
  }
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["value"] = c.value;
    cj["tolerance"] = c.tolerance;
    cj["pass"] = c.pass;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  j["pass"] = r.pass();
  return j;
}

}  // namespace

std::string report_to_json(const GeometryReport& r) { return report_json(r).dump(); }

std::string report_csv_header() { return "s,t,eta1,eta2,residual_name,value"; }

std::vector<std::string> report_csv_rows(const GeometryReport& r) {
  std::vector<std::string> rows;
  auto row = [&](const std::string& name, double value) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%s,%.17g", r.s, r.t, r.eta1, r.eta2,
                  name.c_str(), value);
    rows.emplace_back(buf);
  };
  row("j_squared_residual", r.j_squared_residual);
  row("min_metric_eigenvalue", r.min_metric_eigenvalue);
  row("anticommutator_residual", r.anticommutator_residual);
  row("omegaJ_vs_ReOmega_c", r.omegaJ_vs_ReOmega_c);
  row("omegaK_vs_ImOmega_c", r.omegaK_vs_ImOmega_c);
  row("metric_I_invariance", r.metric_I_invariance);
  row("metric_J_invariance", r.metric_J_invariance);
  if (r.fd_checked) {
    row("dIdrho_agreement", r.dIdrho_agreement);
    row("closedness_residual", r.closedness_residual);
  }
  return rows;
}

}  // namespace nilorb
