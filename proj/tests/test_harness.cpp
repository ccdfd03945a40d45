#include "doctest.h"

#include <sstream>

#include "nilorb/harness.hpp"
#include "nilorb/report.hpp"

using namespace nilorb;

TEST_CASE("grid spec parsing") {
  const GridSpec g = GridSpec::parse("0.5:1.5:3x0.2:0.8:2");
  CHECK(g.smin == doctest::Approx(0.5));
  CHECK(g.smax == doctest::Approx(1.5));
  CHECK(g.ssteps == 3);
  CHECK(g.t_values() == std::vector<double>{0.2, 0.8});
  CHECK(g.s_values()[1] == doctest::Approx(1.0));
  CHECK_THROWS_AS(GridSpec::parse("1:2:3"), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec::parse("2:1:3x0.2:0.8:2"), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec::parse("a:b:cx0:1:2"), std::invalid_argument);
}

TEST_CASE("config text application and precedence") {
  RunConfig cfg;
  const std::string text =
      "# sample configuration\n"
      "orbit=A:4:2,2\n"
      "potential=family:c=0.5\n"
      "grid=0.4:1.9:4x0.4:1.9:4\n"
      "tol-fd=2e-6\n"
      "seed=99\n"
      "format=json\n"
      "no-timestamp=true\n";
  const auto applied = apply_config_text(cfg, text, {"potential"});
  CHECK(cfg.orbit == "A:4:2,2");
  CHECK(cfg.potential == "theorem");  // overridden on the command line, config skipped
  CHECK(cfg.grid.ssteps == 4);
  CHECK(cfg.tol.fd == doctest::Approx(2e-6));
  CHECK(cfg.tol.closedness == doctest::Approx(2e-5));
  CHECK(cfg.seed == 99);
  CHECK(cfg.format == OutputFormat::Json);
  CHECK(cfg.no_timestamp);
  CHECK(applied.size() == 6);

  RunConfig bad;
  CHECK_THROWS_AS(apply_config_text(bad, "nonsense\n", {}), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_text(bad, "shape=round\n", {}), std::invalid_argument);
}

TEST_CASE("run_verify streams points in grid order and reports counts") {
  RunConfig cfg;
  cfg.orbit = "C:2:2,2";
  cfg.potential = "family:c=1";
  cfg.grid = GridSpec::parse("0.5:1.5:3x0.5:1.5:3");
  cfg.with_fd = false;
  std::vector<int> seen;
  const VerifyResult res = run_verify(cfg, [&](const PointResult& p) { seen.push_back(p.index); });
  CHECK(seen.size() == 9);
  for (int i = 0; i < 9; ++i) CHECK(seen[i] == i);
  CHECK(res.skipped == 3);  // the diagonal of a 3x3 grid
  CHECK(res.checked == 6);
  CHECK(res.failed == 0);
  CHECK(res.pass());
  CHECK(res.k2 == doctest::Approx(1.5));
}

TEST_CASE("run_verify rejects incompatible combinations") {
  RunConfig cfg;
  cfg.orbit = "G2";
  cfg.potential = "theorem";
  CHECK_THROWS_AS(run_verify(cfg), std::invalid_argument);
  cfg.orbit = "A:4:2,2";
  cfg.potential = "g2";
  CHECK_THROWS_AS(run_verify(cfg), std::invalid_argument);
  cfg.potential = "sl2:c=1";
  CHECK_THROWS_AS(run_verify(cfg), std::invalid_argument);
  cfg.potential = "theorem";
  cfg.c_override = 1.0;
  CHECK_THROWS_AS(run_verify(cfg), std::invalid_argument);  // c needs a family potential
}

TEST_CASE("verification output is deterministic for a fixed seed") {
  RunConfig cfg;
  cfg.orbit = "A:4:2,2";
  cfg.potential = "theorem";
  cfg.grid = GridSpec::parse("0.6:1.4:2x0.5:1.2:2");
  cfg.seed = 4242;
  auto dump = [&]() {
    std::ostringstream os;
    run_verify(cfg, [&](const PointResult& p) {
      if (!p.skipped) os << report_to_json(p.report) << "\n";
    });
    return os.str();
  };
  const std::string a = dump();
  const std::string b = dump();
  CHECK(a == b);
  CHECK(a.find("j_squared_residual") != std::string::npos);
}

TEST_CASE("k2 table flags nothing at desk sizes and carries the reference rows") {
  const auto rows = k2_table(6, 8, 3);
  int constructed = 0, reference = 0;
  for (const auto& r : rows) {
    if (r.constructed) {
      ++constructed;
      CHECK(r.match);
    } else {
      ++reference;
      CHECK(r.measured == 0.0);
    }
  }
  CHECK(constructed == 3 + 2 + 2);  // A:4..6, so(7..8), sp(2..3)
  CHECK(reference == 4);
}

TEST_CASE("selftest passes clean and fails the corruption control") {
  const SelftestResult ok = run_selftest(7, false);
  CHECK(ok.pass());
  CHECK(ok.items.size() > 20);
  const SelftestResult bad = run_selftest(7, true);
  CHECK_FALSE(bad.pass());
}

TEST_CASE("orbit info") {
  const OrbitInfo info = orbit_info("A:5:2,2,1", 1.0, 1.0);
  CHECK(info.algebra_dim == 24);
  CHECK(info.eta1 == doctest::Approx(20.0));
  CHECK(info.eta2 == doctest::Approx(40.0));
  CHECK(info.jordan == "2,2,1");
  CHECK(info.k2.has_value());
  CHECK(*info.k2 == doctest::Approx(2.5));

  const OrbitInfo g2 = orbit_info("G2", 1.0, 0.6);
  CHECK(g2.jordan.empty());
  CHECK_FALSE(g2.k2.has_value());
  CHECK(g2.cohomogeneity == 2);

  CHECK_THROWS_AS(orbit_info("A:9000:2,2", 1, 1), std::invalid_argument);
}

TEST_CASE("csv rows carry the expected columns") {
  RunConfig cfg;
  cfg.orbit = "C:2:2,2";
  cfg.potential = "theorem";
  cfg.grid = GridSpec::parse("1:1:1x0.6:0.6:1");
  cfg.with_fd = false;
  const VerifyResult res = run_verify(cfg);
  REQUIRE(res.points.size() == 1);
  CHECK(report_csv_header() == "s,t,eta1,eta2,residual_name,value");
  const auto rows = report_csv_rows(res.points[0].report);
  CHECK(rows.size() == 7);  // no fd rows without fd
  for (const auto& row : rows) CHECK(std::count(row.begin(), row.end(), ',') == 5);
}
