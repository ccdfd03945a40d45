#include "doctest.h"

#include <cmath>

#include "nilorb/orbits.hpp"
#include "nilorb/potentials.hpp"

using namespace nilorb;

TEST_CASE("theorem potential values on representatives") {
  const OrbitId id = OrbitId::parse("A:5:2,2,1");
  const LieAlgebra g = build_algebra(id.algebra);
  const double k2 = measure_k2(g, id);
  const Potential pot = Potential::theorem(std::sqrt(k2));

  // rho on the representative equals 4k^2(s+t); two independent routes
  for (double s : {0.4, 1.0, 1.6})
    for (double t : {0.7, 1.0, 2.0}) {
      const OrbitPoint P = representative(g, id, s, t);
      const double expected = 4 * k2 * (s + t);
      CHECK(pot.jet(P.eta1, P.eta2).rho == doctest::Approx(expected).epsilon(1e-12));
    }
  const OrbitPoint P = representative(g, id, 1, 1);
  CHECK(pot.jet(P.eta1, P.eta2).rho == doctest::Approx(20.0).epsilon(1e-12));

  // minimal-orbit boundary eta2 = eta1^2 / (2k^2): rho = 2k sqrt(eta1), finite
  const double eta1 = 10.0;
  const PotentialJet bj = pot.jet(eta1, eta1 * eta1 / (2 * k2));
  CHECK(std::isfinite(bj.rho));
  CHECK(bj.rho == doctest::Approx(2 * std::sqrt(k2) * std::sqrt(eta1)).epsilon(1e-12));

  // beyond the cone: domain error
  CHECK_THROWS_AS(pot.jet(eta1, eta1 * eta1 / (2 * k2) + 1.0), std::domain_error);
}

TEST_CASE("homogeneity of the closed-form potentials") {
  const Potential th = Potential::theorem(1.3);
  const Potential g2 = Potential::g2();
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const double e1 = 1 + 20 * rng.uniform();
    const double e2max_th = e1 * e1 / (2 * 1.3 * 1.3);
    const double e2_th = 0.9 * e2max_th * rng.uniform();
    const double lam = 0.5 + 2 * rng.uniform();
    CHECK(th.jet(lam * lam * e1, std::pow(lam, 4) * e2_th).rho ==
          doctest::Approx(lam * th.jet(e1, e2_th).rho).epsilon(1e-12));
    const double e2_g2 = 0.9 * (e1 * e1 / 4) * rng.uniform();
    CHECK(g2.jet(lam * lam * e1, std::pow(lam, 4) * e2_g2).rho ==
          doctest::Approx(lam * g2.jet(e1, e2_g2).rho).epsilon(1e-12));
  }
}

TEST_CASE("g2 potential frozen values") {
  const Potential pot = Potential::g2();
  // short-root point (s,t) = (0,1): eta = (24, 48), inner radical 384, rho = 24
  CHECK(24.0 * 24 - 4 * 48 == doctest::Approx(384.0));
  CHECK(pot.jet(24, 48).rho == doctest::Approx(24.0).epsilon(1e-12));
  // calibrated representative at (1,1): eta = (32, 160), rho = 8 sqrt(10)
  const LieAlgebra g = build_algebra(AlgebraSpec{Family::G2, 0});
  const OrbitPoint P = representative(g, OrbitId::parse("G2"), 1, 1);
  CHECK(P.eta1 == doctest::Approx(32.0).epsilon(1e-12));
  CHECK(P.eta2 == doctest::Approx(160.0).epsilon(1e-12));
  CHECK(pot.jet(P.eta1, P.eta2).rho == doctest::Approx(8 * std::sqrt(10.0)).epsilon(1e-12));
  // rho = 8 sqrt(s^2 + 9 t^2) across the calibrated family
  for (double s : {0.5, 1.0, 1.5})
    for (double t : {0.3, 0.8, 2.0}) {
      const OrbitPoint Q = representative(g, OrbitId::parse("G2"), s, t);
      CHECK(pot.jet(Q.eta1, Q.eta2).rho ==
            doctest::Approx(8 * std::sqrt(s * s + 9 * t * t)).epsilon(1e-12));
    }
}

TEST_CASE("sl2 family jet and ODE residual") {
  // c = 0, eta = 4: rho' = k/2
  for (double k : {0.5, 1.0, 2.0})
    CHECK(Potential::sl2_family(k, 0).jet1(4.0).d1 == doctest::Approx(k / 2).epsilon(1e-14));

  // 2 eta rho'(rho' + eta rho'') = k^2 across the family
  for (double k : {0.5, 1.0, 2.0})
    for (double c : {0.0, 0.3, 1.0}) {
      const Potential pot = Potential::sl2_family(k, c);
      for (double eta = 0.1; eta <= 100.0; eta *= 1.9) {
        const Jet1 j = pot.jet1(eta);
        const double res = 2 * eta * j.d1 * (j.d1 + eta * j.d2) - k * k;
        CHECK(std::abs(res) <= 1e-12 * k * k);
        CHECK(j.d1 > 0);
      }
    }

  // d rho/dt at X = t e: rho'(4k^2 t^2) * 8k^2 t = sqrt(16 k^4 + 4 c / t^2)
  for (double k : {0.7, 1.0})
    for (double c : {0.0, 0.5, 1.0})
      for (double t : {0.4, 1.0, 2.3}) {
        const Potential pot = Potential::sl2_family(k, c);
        const double eta = 4 * k * k * t * t;
        const double lhs = pot.jet1(eta).d1 * 8 * k * k * t;
        const double rhs = std::sqrt(16 * std::pow(k, 4) + 4 * c / (t * t));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
      }

  CHECK_THROWS_AS(Potential::sl2_family(1, 0).jet1(-1.0), std::domain_error);
  CHECK_THROWS_AS(Potential::sl2_family(1, 0).jet(10, 40), std::invalid_argument);
}

TEST_CASE("product family reduces to the theorem potential at c = 0") {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const double k = 0.8 + 1.5 * rng.uniform();
    const double s = 0.4 + 1.6 * rng.uniform();
    double t = 0.3 + 1.2 * rng.uniform();
    if (std::abs(s - t) < 5e-3) t += 1e-2;
    const double k2 = k * k;
    const double e1 = 4 * k2 * (s * s + t * t);
    const double e2 = 8 * k2 * (std::pow(s, 4) + std::pow(t, 4));
    const PotentialJet a = Potential::product_family(k, 0).jet(e1, e2);
    const PotentialJet b = Potential::theorem(k).jet(e1, e2);
    CHECK(std::abs(a.rho - b.rho) <= 1e-10 * std::abs(b.rho));
    CHECK(std::abs(a.rho1 - b.rho1) <= 1e-10 * std::max(1.0, std::abs(b.rho1)));
    CHECK(std::abs(a.rho2 - b.rho2) <= 1e-10 * std::max(1.0, std::abs(b.rho2)));
    CHECK(std::abs(a.rho11 - b.rho11) <= 1e-10 * std::max(1.0, std::abs(b.rho11)));
    CHECK(std::abs(a.rho12 - b.rho12) <= 1e-10 * std::max(1.0, std::abs(b.rho12)));
    CHECK(std::abs(a.rho22 - b.rho22) <= 1e-10 * std::max(1.0, std::abs(b.rho22)));
  }
}

TEST_CASE("product family: parameter-order symmetry and singular guards") {
  const double k = 1.2, k2 = k * k;
  auto eta_of = [&](double s, double t) {
    return std::make_pair(4 * k2 * (s * s + t * t),
                          8 * k2 * (std::pow(s, 4) + std::pow(t, 4)));
  };
  const auto [ea1, ea2] = eta_of(1.4, 0.6);
  const auto [eb1, eb2] = eta_of(0.6, 1.4);
  CHECK(ea1 == doctest::Approx(eb1));
  CHECK(ea2 == doctest::Approx(eb2));
  const Potential pot = Potential::product_family(k, 0.7);
  const PotentialJet ja = pot.jet(ea1, ea2);
  const PotentialJet jb = pot.jet(eb1, eb2);
  CHECK(ja.rho1 == doctest::Approx(jb.rho1));
  CHECK(ja.rho22 == doctest::Approx(jb.rho22));

  // near-diagonal and near-axis rejections
  const auto [ed1, ed2] = eta_of(1.0, 1.0 - 1e-4);
  CHECK_THROWS_AS(pot.jet(ed1, ed2), std::domain_error);
  const auto [ez1, ez2] = eta_of(1.0, 1e-4);
  CHECK_THROWS_AS(pot.jet(ez1, ez2), std::domain_error);
}

TEST_CASE("finite-difference validation of all analytic jets") {
  CHECK(jet_fd_validate(Potential::theorem(1.0), 10, 40) <= 1e-6);
  CHECK(jet_fd_validate(Potential::theorem(1.8), 25, 60) <= 1e-6);
  CHECK(jet_fd_validate(Potential::g2(), 24, 48) <= 1e-6);
  CHECK(jet_fd_validate(Potential::g2(), 32, 160) <= 1e-6);
  CHECK(jet_fd_validate(Potential::sl2_family(1.0, 0.5), 3.0, 0) <= 1e-6);
  CHECK(jet_fd_validate(Potential::sl2_family(0.7, 0.0), 12.0, 0) <= 1e-6);
  const double k2 = 2.0;
  const double e1 = 4 * k2 * (1 + 0.36), e2 = 8 * k2 * (1 + 0.1296);
  CHECK(jet_fd_validate(Potential::product_family(std::sqrt(k2), 1.0), e1, e2) <= 1e-6);
  CHECK(jet_fd_validate(Potential::product_family(std::sqrt(k2), 0.0), e1, e2) <= 1e-6);
}

TEST_CASE("potential parsing") {
  CHECK(Potential::parse("theorem", 2.0).kind() == PotentialKind::Theorem);
  CHECK(Potential::parse("g2", 1.0).kind() == PotentialKind::G2);
  const Potential f = Potential::parse("family:c=0.5", 1.5);
  CHECK(f.kind() == PotentialKind::ProductFamily);
  CHECK(f.c() == doctest::Approx(0.5));
  CHECK(f.k() == doctest::Approx(1.5));
  CHECK(Potential::parse("sl2:c=0.25", 1.0).c() == doctest::Approx(0.25));
  CHECK(Potential::parse("sl2", 1.0).c() == 0.0);
  CHECK_THROWS_AS(Potential::parse("fourier", 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Potential::parse("family:c=-1", 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Potential::parse("family:c=abc", 1.0), std::invalid_argument);
}
