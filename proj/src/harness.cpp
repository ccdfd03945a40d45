#include "nilorb/harness.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nilorb {

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v;
  if (n <= 1) {
    v.push_back(lo);
    return v;
  }
  for (int i = 0; i < n; ++i) v.push_back(lo + (hi - lo) * i / (n - 1));
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double parse_double(const std::string& s, const char* what) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::invalid_argument(std::string("bad ") + what + " value '" + s + "'");
  }
}

}  // namespace

GridSpec GridSpec::parse(const std::string& text) {
  const auto axes = split(text, 'x');
  if (axes.size() != 2)
    throw std::invalid_argument("grid spec '" + text + "' not of the form a:b:nxa:b:n");
  GridSpec g;
  auto parse_axis = [&](const std::string& s, double& lo, double& hi, int& n) {
    const auto p = split(s, ':');
    if (p.size() != 3) throw std::invalid_argument("grid axis '" + s + "' not of the form a:b:n");
    lo = parse_double(p[0], "grid");
    hi = parse_double(p[1], "grid");
    n = int(parse_double(p[2], "grid"));
    if (n < 1 || hi < lo) throw std::invalid_argument("grid axis '" + s + "' out of range");
  };
  parse_axis(axes[0], g.smin, g.smax, g.ssteps);
  parse_axis(axes[1], g.tmin, g.tmax, g.tsteps);
  return g;
}

std::string GridSpec::to_string() const {
  std::ostringstream os;
  os << smin << ":" << smax << ":" << ssteps << "x" << tmin << ":" << tmax << ":" << tsteps;
  return os.str();
}

std::vector<double> GridSpec::s_values() const { return linspace(smin, smax, ssteps); }
std::vector<double> GridSpec::t_values() const { return linspace(tmin, tmax, tsteps); }

OutputFormat parse_format(const std::string& text) {
  if (text == "text") return OutputFormat::Text;
  if (text == "json") return OutputFormat::Json;
  if (text == "csv") return OutputFormat::Csv;
  throw std::invalid_argument("unknown format '" + text + "' (text, json, csv)");
}

std::vector<std::string> apply_config_text(RunConfig& cfg, const std::string& text,
                                           const std::vector<std::string>& overridden) {
  auto is_overridden = [&](const std::string& key) {
    for (const auto& k : overridden)
      if (k == key) return true;
    return false;
  };
  std::vector<std::string> applied;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (is_overridden(key)) continue;
    if (key == "orbit") cfg.orbit = value;
    else if (key == "potential") cfg.potential = value;
    else if (key == "c") cfg.c_override = parse_double(value, "c");
    else if (key == "grid") cfg.grid = GridSpec::parse(value);
    else if (key == "tol-id") cfg.tol.identity = parse_double(value, "tol-id");
    else if (key == "tol-fd") {
      cfg.tol.fd = parse_double(value, "tol-fd");
      cfg.tol.closedness = 10 * cfg.tol.fd;
    } else if (key == "seed") cfg.seed = std::uint64_t(parse_double(value, "seed"));
    else if (key == "format") cfg.format = parse_format(value);
    else if (key == "expect-fail") cfg.expect_fail = (value == "true" || value == "1");
    else if (key == "no-timestamp") cfg.no_timestamp = (value == "true" || value == "1");
    else throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    applied.push_back(key);
  }
  return applied;
}

VerifyResult run_verify(const RunConfig& cfg,
                        const std::function<void(const PointResult&)>& on_point) {
  const OrbitId id = OrbitId::parse(cfg.orbit);
  const LieAlgebra g = build_algebra(id.algebra);
  const bool is_g2 = id.algebra.family == Family::G2;

  double k = 1.0;
  VerifyResult out;
  out.orbit = id.to_string();
  if (!is_g2) {
    out.k2 = measure_k2(g, id);
    k = std::sqrt(out.k2);
  }

  Potential pot = Potential::parse(cfg.potential, k);
  if (cfg.c_override) {
    if (pot.kind() != PotentialKind::ProductFamily && pot.kind() != PotentialKind::Sl2Family)
      throw std::invalid_argument("--c only applies to the family potentials");
    pot = pot.kind() == PotentialKind::ProductFamily
              ? Potential::product_family(k, *cfg.c_override)
              : Potential::sl2_family(k, *cfg.c_override);
  }
  out.potential = pot.to_string();

  if (pot.kind() == PotentialKind::Sl2Family)
    throw std::invalid_argument(
        "the sl2 potential lives on the rank-one model (see selftest); orbits take "
        "'theorem', 'g2' or 'family:c=...'");
  if (is_g2 && pot.kind() != PotentialKind::G2)
    throw std::invalid_argument("the G2 orbit takes the 'g2' potential");
  if (!is_g2 && pot.kind() == PotentialKind::G2)
    throw std::invalid_argument("the 'g2' potential only applies to the G2 orbit");

  const bool family = pot.kind() == PotentialKind::ProductFamily;
  const auto svals = cfg.grid.s_values();
  const auto tvals = cfg.grid.t_values();
  PointCheckOptions opt;
  opt.with_fd = cfg.with_fd;
  opt.fd_pairs = cfg.fd_pairs;
  opt.fd_triples = cfg.fd_triples;
  opt.seed = cfg.seed;

  int index = 0;
  for (double s : svals)
    for (double t : tvals) {
      PointResult pr;
      pr.index = index++;
      pr.s = s;
      pr.t = t;
      if (s <= 0 || t <= 0) {
        pr.skipped = true;
        pr.skip_reason = "grid point off the generic cone (s,t must be positive)";
      } else if (family && std::abs(s - t) < 1e-3) {
        pr.skipped = true;
        pr.skip_reason = "near-diagonal point excluded for the family potential";
      } else {
        const OrbitPoint P = representative(g, id, s, t, cfg.tol);
        pr.report = run_point_checks(P, pot, cfg.tol, opt);
      }
      if (pr.skipped) ++out.skipped;
      else {
        ++out.checked;
        if (!pr.report.pass()) ++out.failed;
      }
      if (on_point) on_point(pr);
      out.points.push_back(std::move(pr));
    }
  return out;
}

std::vector<K2Row> k2_table(int max_a, int max_bd, int max_c) {
  std::vector<K2Row> rows;
  auto measure = [&](const std::string& orbit, double closed) {
    const OrbitId id = OrbitId::parse(orbit);
    const LieAlgebra g = build_algebra(id.algebra);
    K2Row r;
    r.algebra = id.algebra.to_string();
    r.orbit = id.to_string();
    r.measured = measure_k2(g, id);
    r.closed_form = closed;
    r.constructed = true;
    r.match = std::abs(r.measured - closed) <= 1e-10;
    rows.push_back(r);
  };
  for (int m = 4; m <= max_a; ++m) {
    Partition p;
    p.parts = {2, 2};
    for (int i = 0; i < m - 4; ++i) p.parts.push_back(1);
    measure("A:" + std::to_string(m) + ":" + p.to_string(), m / 2.0);
  }
  for (int m = 7; m <= max_bd; ++m) {
    Partition p;
    p.parts = {3};
    for (int i = 0; i < m - 3; ++i) p.parts.push_back(1);
    const std::string fam = (m % 2 == 1) ? "B" : "D";
    measure(fam + ":" + std::to_string(m) + ":" + p.to_string(), (m - 2) / 2.0);
  }
  for (int n = 2; n <= max_c; ++n) {
    Partition p;
    p.parts = {2, 2};
    for (int i = 0; i < 2 * n - 4; ++i) p.parts.push_back(1);
    measure("C:" + std::to_string(n) + ":" + p.to_string(), (n + 1) / 2.0);
  }
  // reference-only rows: algebras this library does not construct
  for (const auto& [name, value] :
       {std::pair<const char*, double>{"F4", 4.5}, {"E6", 6.0}, {"E7", 9.0}, {"E8", 17.5}}) {
    K2Row r;
    r.algebra = name;
    r.orbit = "(next-to-minimal)";
    r.closed_form = value;
    r.constructed = false;
    rows.push_back(r);
  }
  return rows;
}

SelftestResult run_selftest(std::uint64_t seed, bool inject_corruption) {
  SelftestResult res;
  auto add = [&](const std::string& name, bool pass, double value = 0) {
    res.items.push_back({name, pass, value});
  };

  for (const char* s : {"A:4", "B:7", "C:2", "G2"}) {
    const LieAlgebra g = build_algebra(AlgebraSpec::parse(s));
    const LieAlgebra* checked = &g;
    LieAlgebra bad = g;
    if (inject_corruption && std::string(s) == "A:4") {
      bad = g.corrupted_copy();
      checked = &bad;
    }
    add(std::string("jacobi exact [") + s + "]", checked->jacobi_exact());
    add(std::string("killing invariance exact [") + s + "]", checked->killing_invariance_exact());
    const double jf = checked->jacobi_residual_float();
    add(std::string("jacobi float <= 1e-12 [") + s + "]", jf <= 1e-12, jf);

    Rng rng(seed);
    const Element a = g.element(rng.cnormal_vector(g.dim()));
    const Element x = g.element(rng.cnormal_vector(g.dim()));
    const Element y = g.element(rng.cnormal_vector(g.dim()));
    const Element fx = g.adjoint_flow(a, 0.31, x), fy = g.adjoint_flow(a, 0.31, y);
    const double aut = (g.adjoint_flow(a, 0.31, g.bracket(x, y)) - g.bracket(fx, fy)).norm();
    add(std::string("flow automorphism <= 1e-10 [") + s + "]", aut <= 1e-10, aut);
  }

  for (const char* ids : {"A:4:2,2", "B:7:3,1,1,1,1", "C:2:2,2"}) {
    const OrbitId id = OrbitId::parse(ids);
    const LieAlgebra g = build_algebra(id.algebra);
    const double k2 = measure_k2(g, id);
    double worst = 0;
    for (double s : {0.5, 1.0})
      for (double t : {0.8, 1.6}) {
        const OrbitPoint P = representative(g, id, s, t);
        worst = std::max(worst, std::abs(P.eta1 - 4 * k2 * (s * s + t * t)) /
                                    (4 * k2 * (s * s + t * t)));
        worst = std::max(worst,
                         std::abs(P.eta2 - 8 * k2 * (std::pow(s, 4) + std::pow(t, 4))) /
                             (8 * k2 * (std::pow(s, 4) + std::pow(t, 4))));
      }
    add(std::string("eta laws <= 1e-10 [") + ids + "]", worst <= 1e-10, worst);
    const OrbitPoint P = representative(g, id, 1.0, 0.6);
    add(std::string("cohomogeneity 2 [") + ids + "]", cohomogeneity(P.X) == 2);
    const OrbitPoint Pm = representative(g, id, 1.0, 0.0);
    add(std::string("minimal cohomogeneity 1 [") + ids + "]", cohomogeneity(Pm.X) == 1);
  }
  {
    const LieAlgebra g = build_algebra(AlgebraSpec{Family::G2, 0});
    const OrbitPoint P = representative(g, OrbitId::parse("G2"), 1.0, 0.6);
    const double d1 = std::abs(P.eta1 - 8 * (1.0 + 3 * 0.36));
    add("G2 calibrated eta1", d1 <= 1e-10 * P.eta1, d1);
  }

  {  // rank-one model
    double worst_ode = 0;
    for (double k : {0.5, 1.0, 2.0})
      for (double c : {0.0, 0.3, 1.0}) {
        const Potential pot = Potential::sl2_family(k, c);
        for (double eta = 0.1; eta <= 100.0; eta *= 2.1) {
          const Jet1 j = pot.jet1(eta);
          worst_ode =
              std::max(worst_ode, std::abs(2 * eta * j.d1 * (j.d1 + eta * j.d2) - k * k) / (k * k));
        }
      }
    add("rank-one family ODE residual <= 1e-12", worst_ode <= 1e-12, worst_ode);

    const Sl2Model model(1.0, 1.0);
    const auto mc = model.moment_vector_check(1.0);
    const double dl = std::abs(mc.lambda - 2.5);
    add("moment vector lambda = 2 + 2c/(k^2 eta)", dl <= 1e-10 && mc.residual <= 1e-10, dl);
  }

  {  // rank-two block structure on the embedded orbit
    const OrbitId id = OrbitId::parse("D:8:2,2,2,2:+");
    const LieAlgebra g = build_algebra(id.algebra);
    const OrbitPoint P = representative(g, id, 1.0, 0.6);
    const Potential pot = Potential::theorem(std::sqrt(measure_k2(g, id)));
    const double jr = j_squared_residual(P, pot);
    add("theorem J^2 on so(8) <= 1e-9", jr <= 1e-9, jr);
    const double cross = so4_cross_block_norm(P, pot);
    add("J preserves the su(2)+su(2) summands <= 1e-9", cross <= 1e-9, cross);
  }

  {  // G2 reduction
    const G2PdeResiduals r = g2_pde_residuals(1.0, 1.0);
    const double worst = std::max({r.r1, r.rA, r.rB, r.rC, r.branch_ii});
    add("G2 closed-form system residuals <= 1e-10", worst <= 1e-10, worst);
    add("G2 rejected branch residual >= 1", r.branch_i >= 1.0, r.branch_i);
  }

  return res;
}

OrbitInfo orbit_info(const std::string& orbit_text, double s, double t) {
  const OrbitId id = OrbitId::parse(orbit_text);
  const LieAlgebra g = build_algebra(id.algebra);
  const OrbitPoint P = representative(g, id, s, t);
  OrbitInfo info;
  info.orbit = id.to_string();
  info.algebra_dim = g.dim();
  info.tangent_dim_complex = int(P.tangent.size());
  info.s = s;
  info.t = t;
  info.eta1 = P.eta1;
  info.eta2 = P.eta2;
  if (g.has_matrix_realization()) info.jordan = jordan_type(P.X).to_string();
  info.cohomogeneity = cohomogeneity(P.X);
  if (id.algebra.family != Family::G2) info.k2 = measure_k2(g, id);
  return info;
}

}  // namespace nilorb
