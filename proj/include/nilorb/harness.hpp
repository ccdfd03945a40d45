#ifndef NILORB_HARNESS_HPP
#define NILORB_HARNESS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nilorb/geometry.hpp"

namespace nilorb {

struct GridSpec {
  double smin = 0.3, smax = 2.0;
  int ssteps = 5;
  double tmin = 0.3, tmax = 2.0;
  int tsteps = 5;

  static GridSpec parse(const std::string& text);  // "0.3:2:5x0.3:2:5"
  std::string to_string() const;
  std::vector<double> s_values() const;
  std::vector<double> t_values() const;
};

enum class OutputFormat { Text, Json, Csv };
OutputFormat parse_format(const std::string& text);

struct RunConfig {
  std::string orbit;
  std::string potential = "theorem";
  std::optional<double> c_override;
  GridSpec grid;
  Tolerances tol;
  std::uint64_t seed = 20240915;
  OutputFormat format = OutputFormat::Text;
  bool expect_fail = false;
  bool no_timestamp = false;
  bool with_fd = true;
  int fd_pairs = 4;
  int fd_triples = 4;
};

/// Plain key=value configuration text; '#' starts a comment.  Returns the
/// recognized keys that were applied.  Values already fixed by `overridden`
/// keep their command-line value (flags > config file > defaults).
std::vector<std::string> apply_config_text(RunConfig& cfg, const std::string& text,
                                           const std::vector<std::string>& overridden);

struct PointResult {
  int index = 0;
  double s = 0, t = 0;
  bool skipped = false;
  std::string skip_reason;
  GeometryReport report;
};

struct VerifyResult {
  std::string orbit;
  std::string potential;
  double k2 = 0;  // 0 when the potential carries no homothety constant (G2)
  std::vector<PointResult> points;
  int checked = 0, failed = 0, skipped = 0;
  bool pass() const { return failed == 0 && checked > 0; }
};

/// Runs the residual suite on the grid, streaming each point to `on_point`
/// in grid order.  Throws std::invalid_argument for unusable configuration
/// (unknown orbit, incompatible potential).
VerifyResult run_verify(const RunConfig& cfg,
                        const std::function<void(const PointResult&)>& on_point = {});

struct K2Row {
  std::string algebra;
  std::string orbit;
  double measured = 0;
  double closed_form = 0;
  bool constructed = false;  // the exceptional rows are reference-only
  bool match = false;
};

/// Measured homothety constants beside their closed forms; the last rows
/// list the reference values for the exceptional algebras that this library
/// does not construct.
std::vector<K2Row> k2_table(int max_a = 8, int max_bd = 10, int max_c = 4);

struct SelftestResult {
  struct Item {
    std::string name;
    bool pass = false;
    double value = 0;
  };
  std::vector<Item> items;
  bool pass() const {
    for (const auto& i : items)
      if (!i.pass) return false;
    return true;
  }
};

/// Exact algebraic invariants, the orbit identities, and the rank-one /
/// rank-two model suites.  With inject_corruption the structure constants of
/// one fixture are perturbed; the run must then fail (negative control).
SelftestResult run_selftest(std::uint64_t seed = 20240915, bool inject_corruption = false);

struct OrbitInfo {
  std::string orbit;
  int algebra_dim = 0;
  int tangent_dim_complex = 0;
  double s = 0, t = 0;
  double eta1 = 0, eta2 = 0;
  std::string jordan;  // empty for G2
  int cohomogeneity = 0;
  std::optional<double> k2;
};

OrbitInfo orbit_info(const std::string& orbit_text, double s, double t);

}  // namespace nilorb

#endif
