#include "doctest.h"

#include <cmath>

#include "nilorb/orbits.hpp"

using namespace nilorb;

namespace {

int matrix_rank(const MatC& M) {
  if (M.norm() < 1e-13) return 0;
  Eigen::JacobiSVD<MatC> svd(M);
  const auto& sv = svd.singularValues();
  int r = 0;
  while (r < sv.size() && sv[r] > 1e-10 * sv[0]) ++r;
  return r;
}

}  // namespace

TEST_CASE("orbit id parsing and admissibility") {
  CHECK_NOTHROW(OrbitId::parse("A:5:2,2,1"));
  CHECK_NOTHROW(OrbitId::parse("D:8:2,2,2,2:+"));
  CHECK_NOTHROW(OrbitId::parse("D:8:2,2,2,2:-"));
  CHECK_NOTHROW(OrbitId::parse("G2"));
  CHECK_NOTHROW(OrbitId::parse("B:7:3,1,1,1,1"));
  CHECK_NOTHROW(OrbitId::parse("C:3:2,2,1,1"));

  CHECK_THROWS_AS(OrbitId::parse("A:3:2,2"), std::invalid_argument);     // partition too big
  CHECK_THROWS_AS(OrbitId::parse("A:5:2,2,2"), std::invalid_argument);   // not next-to-minimal
  CHECK_THROWS_AS(OrbitId::parse("B:7:2,2,2,2"), std::invalid_argument); // needs n >= 8
  CHECK_THROWS_AS(OrbitId::parse("B:9:2,2,2,2,1:+"), std::invalid_argument);  // variant needs D
  CHECK_THROWS_AS(OrbitId::parse("D:10:2,2,2,2,1,1:+"), std::invalid_argument);  // 10 % 4 != 0
  CHECK_THROWS_AS(OrbitId::parse("C:2:2,1,1"), std::invalid_argument);
  CHECK_THROWS_AS(OrbitId::parse("A:5:1,2,2"), std::invalid_argument);   // not sorted

  CHECK(OrbitId::parse("D:8:2,2,2,2:-").to_string() == "D:8:2,2,2,2:-");
  CHECK(OrbitId::parse("A:6:2,2,1,1").to_string() == "A:6:2,2,1,1");
}

TEST_CASE("representatives: nilpotency degree and Jordan types") {
  {
    const LieAlgebra g = build_algebra(AlgebraSpec::parse("A:5"));
    const OrbitPoint P = representative(g, OrbitId::parse("A:5:2,2,1"), 1, 1);
    const MatC X = g.to_matrix(P.X);
    CHECK(matrix_rank(X) == 2);
    CHECK((X * X).norm() < 1e-13);
    CHECK(jordan_type(P.X) == Partition::parse("2,2,1"));
  }
  {
    const LieAlgebra g = build_algebra(AlgebraSpec::parse("B:9"));
    const OrbitPoint P = representative(g, OrbitId::parse("B:9:3,1,1,1,1,1,1"), 1, 1);
    const MatC X = g.to_matrix(P.X);
    CHECK(matrix_rank(X) == 2);
    CHECK(matrix_rank(X * X) == 1);
    CHECK((X * X * X).norm() < 1e-13);
    CHECK(jordan_type(P.X) == Partition::parse("3,1,1,1,1,1,1"));
  }
  {
    const LieAlgebra g = build_algebra(AlgebraSpec::parse("B:9"));
    const OrbitPoint P = representative(g, OrbitId::parse("B:9:2,2,2,2,1"), 1, 2);
    const MatC X = g.to_matrix(P.X);
    CHECK(matrix_rank(X) == 4);
    CHECK((X * X).norm() < 1e-13);
  }
  {
    const LieAlgebra g = build_algebra(AlgebraSpec::parse("A:4"));
    CHECK(jordan_type(g.zero()) == Partition::parse("1,1,1,1"));
    // non-nilpotent input is rejected
    MatC hm = MatC::Zero(4, 4);
    hm(0, 0) = 1;
    hm(1, 1) = -1;
    CHECK_THROWS_AS(jordan_type(g.from_matrix(hm)), std::invalid_argument);
  }
  // minimal orbit at t = 0
  {
    const LieAlgebra g = build_algebra(AlgebraSpec::parse("A:5"));
    const OrbitPoint P = representative(g, OrbitId::parse("A:5:2,2,1"), 1, 0);
    CHECK(jordan_type(P.X) == Partition::parse("2,1,1,1"));
  }
  // ad(X) is nilpotent at every representative
  for (const OrbitId& id : desk_orbits()) {
    const LieAlgebra g = build_algebra(id.algebra);
    const OrbitPoint P = representative(g, id, 1.0, 0.6);
    CHECK(ad_spectral_radius(P.X) <= 1e-8 * g.ad_matrix(P.X).norm());
  }
}

TEST_CASE("eta invariants: frozen values against the trace-form oracle") {
  // oracle: eta1 = c tr(X X^dag), eta2 = c tr(Y Y) with Y = [X, sigma X],
  // c the trace-form coefficient of the family
  auto oracle = [](const LieAlgebra& g, const Element& X, double c) {
    const MatC Xm = g.to_matrix(X);
    const MatC Ym = g.to_matrix(g.bracket(X, g.sigma(X)));
    return std::make_pair(c * (Xm * Xm.adjoint()).trace().real(),
                          c * (Ym * Ym).trace().real());
  };
  {
    const LieAlgebra g = build_algebra(AlgebraSpec::parse("A:5"));
    const OrbitPoint P = representative(g, OrbitId::parse("A:5:2,2,1"), 1, 1);
    const auto [o1, o2] = oracle(g, P.X, 10.0);
    CHECK(P.eta1 == doctest::Approx(o1).epsilon(1e-12));
    CHECK(P.eta2 == doctest::Approx(o2).epsilon(1e-12));
    CHECK(P.eta1 == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(P.eta2 == doctest::Approx(40.0).epsilon(1e-12));
  }
  {
    const LieAlgebra g = build_algebra(AlgebraSpec::parse("B:9"));
    const OrbitPoint P = representative(g, OrbitId::parse("B:9:2,2,2,2,1"), 1, 1);
    const auto [o1, o2] = oracle(g, P.X, 7.0);
    CHECK(P.eta1 == doctest::Approx(o1).epsilon(1e-12));
    CHECK(P.eta2 == doctest::Approx(o2).epsilon(1e-12));
    CHECK(P.eta1 == doctest::Approx(28.0).epsilon(1e-12));
    CHECK(P.eta2 == doctest::Approx(56.0).epsilon(1e-12));
  }
  {
    // minimal orbit of sl(2): eta1(t e) = 4 t^2
    const LieAlgebra g = build_algebra(AlgebraSpec::parse("A:2"));
    MatC em = MatC::Zero(2, 2);
    em(0, 1) = 1;
    for (double t : {0.5, 1.0, 2.0}) {
      const auto [e1, e2] = eta_invariants(g.from_matrix(em) * Complex(t, 0));
      CHECK(e1 == doctest::Approx(4 * t * t).epsilon(1e-12));
      CHECK(e2 == doctest::Approx(8 * t * t * t * t).epsilon(1e-12));  // = eta1^2 / 2
    }
  }
}

TEST_CASE("closed-form eta laws over the classical table") {
  for (const OrbitId& id : desk_orbits()) {
    if (id.algebra.family == Family::G2) continue;
    CAPTURE(id.to_string());
    const LieAlgebra g = build_algebra(id.algebra);
    const double k2 = measure_k2(g, id);
    for (double s : {0.3, 1.0, 1.7})
      for (double t : {0.45, 0.8, 2.0}) {
        const OrbitPoint P = representative(g, id, s, t);
        const double e1 = 4 * k2 * (s * s + t * t);
        const double e2 = 8 * k2 * (s * s * s * s + t * t * t * t);
        CHECK(std::abs(P.eta1 - e1) <= 1e-10 * std::abs(e1));
        CHECK(std::abs(P.eta2 - e2) <= 1e-10 * std::abs(e2));
      }
  }
}

TEST_CASE("calibrated G2 invariants") {
  const LieAlgebra g = build_algebra(AlgebraSpec{Family::G2, 0});
  const OrbitId id = OrbitId::parse("G2");
  for (double s : {0.0, 0.3, 0.725, 1.15, 1.575, 2.0})
    for (double t : {0.3, 0.725, 1.15, 1.575, 2.0}) {
      const OrbitPoint P = representative(g, id, s, t);
      const double e1 = 8 * (s * s + 3 * t * t);
      const double e2 = 16 * (std::pow(s, 4) + 6 * s * s * t * t + 3 * std::pow(t, 4));
      CHECK(std::abs(P.eta1 - e1) <= 1e-10 * std::abs(e1));
      CHECK(std::abs(P.eta2 - e2) <= 1e-10 * std::abs(e2));
    }
  // spot value from the short-root point
  const OrbitPoint P = representative(g, id, 0, 1);
  CHECK(P.eta1 == doctest::Approx(24.0).epsilon(1e-12));
}

TEST_CASE("eta invariance under the compact action and FD derivative formulas") {
  for (const char* ids : {"A:5:2,2,1", "B:7:3,1,1,1,1", "C:2:2,2", "G2"}) {
    CAPTURE(ids);
    const OrbitId id = OrbitId::parse(ids);
    const LieAlgebra g = build_algebra(id.algebra);
    const OrbitPoint P = representative(g, id, 1.0, 0.6);

    const OrbitPoint Q = random_orbit_point(P, 99);
    CHECK(Q.eta1 == doctest::Approx(P.eta1).epsilon(1e-9));
    CHECK(Q.eta2 == doctest::Approx(P.eta2).epsilon(1e-9));
    // seed stability
    const OrbitPoint Q2 = random_orbit_point(P, 99);
    CHECK((Q.X - Q2.X).norm() == 0.0);
    if (g.has_matrix_realization()) CHECK(jordan_type(Q.X) == jordan_type(P.X));

    // d eta1(xi_A) = 2 Re<xi_A, sigma X>, d eta2(xi_A) = -4 Re<xi_A, [sigma X,[X,sigma X]]>
    Rng rng(5);
    const double h = 1e-4;
    for (int trial = 0; trial < 10; ++trial) {
      const Element A = g.element(rng.cnormal_vector(g.dim()));
      auto eta_at = [&](double tt) { return eta_invariants(g.adjoint_flow(A, tt, P.X)); };
      // central difference with one Richardson halving
      auto diff = [&](double step, int which) {
        const auto p = eta_at(step);
        const auto m = eta_at(-step);
        return which == 0 ? (p.first - m.first) / (2 * step) : (p.second - m.second) / (2 * step);
      };
      const double fd1 = (4 * diff(h / 2, 0) - diff(h, 0)) / 3;
      const double fd2 = (4 * diff(h / 2, 1) - diff(h, 1)) / 3;

      const Element xi = g.bracket(A, P.X);
      const Element sX = g.sigma(P.X);
      const double an1 = 2 * g.inner(xi, sX).real();
      const Element Z = g.bracket(sX, g.bracket(P.X, sX));
      const double an2 = -4 * g.inner(xi, Z).real();
      CHECK(std::abs(fd1 - an1) <= 1e-6 * std::max(1.0, std::abs(an1)));
      CHECK(std::abs(fd2 - an2) <= 1e-6 * std::max(1.0, std::abs(an2)));
    }
  }
}

TEST_CASE("tangent bases") {
  {
    const LieAlgebra g = build_algebra(AlgebraSpec::parse("A:2"));
    MatC em = MatC::Zero(2, 2);
    em(0, 1) = 1;
    const Element e = g.from_matrix(em);
    const auto basis = tangent_basis(e);
    REQUIRE(basis.size() == 2);
    // span{e, h}: check h-direction is present, f-direction absent
    MatC fm = MatC::Zero(2, 2);
    fm(1, 0) = 1;
    const Element f = g.from_matrix(fm);
    MatC span(3, 2);
    span.col(0) = basis[0].value.c;
    span.col(1) = basis[1].value.c;
    Eigen::JacobiSVD<MatC> svd(span, Eigen::ComputeThinU);
    const MatC U = svd.matrixU();
    const VecC fproj = U * (U.adjoint() * f.c);
    CHECK((fproj - f.c).norm() > 0.9);  // f not tangent at e
    const VecC eproj = U * (U.adjoint() * e.c);
    CHECK((eproj - e.c).norm() < 1e-12);
    for (const auto& tv : basis) {
      REQUIRE(tv.generator.has_value());
      CHECK((g.bracket(*tv.generator, e) - tv.value).norm() < 1e-12);
    }
  }
  {
    const LieAlgebra g = build_algebra(AlgebraSpec::parse("A:4"));
    const OrbitPoint P = representative(g, OrbitId::parse("A:4:2,2"), 1.0, 0.7);
    CHECK(P.tangent.size() == 8);  // dim orbit = 15 - 7
    CHECK(tangent_basis(g.zero()).empty());
  }
}

TEST_CASE("cohomogeneity over the table") {
  {
    const LieAlgebra g = build_algebra(AlgebraSpec::parse("A:2"));
    MatC em = MatC::Zero(2, 2);
    em(0, 1) = 1;
    CHECK(cohomogeneity(g.from_matrix(em)) == 1);
  }
  for (const OrbitId& id : desk_orbits()) {
    CAPTURE(id.to_string());
    const LieAlgebra g = build_algebra(id.algebra);
    const OrbitPoint P = representative(g, id, 1.0, 0.6);
    CHECK(cohomogeneity(P.X) == 2);
    const OrbitPoint Pmin = representative(g, id, 1.0, 0.0);
    CHECK(cohomogeneity(Pmin.X) == 1);
  }
  {
    const LieAlgebra g = build_algebra(AlgebraSpec{Family::G2, 0});
    const OrbitPoint P = representative(g, OrbitId::parse("G2"), 1.0, 2.0);
    CHECK(cohomogeneity(P.X) == 2);
  }
}

TEST_CASE("measured k^2 against the closed forms") {
  auto k2_of = [](const std::string& id) {
    const OrbitId oid = OrbitId::parse(id);
    const LieAlgebra g = build_algebra(oid.algebra);
    return measure_k2(g, oid);
  };
  CHECK(k2_of("A:5:2,2,1") == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(k2_of("B:9:3,1,1,1,1,1,1") == doctest::Approx(3.5).epsilon(1e-12));
  CHECK(k2_of("B:9:2,2,2,2,1") == doctest::Approx(3.5).epsilon(1e-12));
  CHECK(k2_of("C:2:2,2") == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(k2_of("D:8:2,2,2,2:-") == doctest::Approx(3.0).epsilon(1e-12));

  const LieAlgebra g2 = build_algebra(AlgebraSpec{Family::G2, 0});
  CHECK_THROWS_AS(measure_k2(g2, OrbitId::parse("G2")), std::invalid_argument);
}

TEST_CASE("so(4) component decomposition") {
  for (const char* ids : {"A:5:2,2,1", "B:9:2,2,2,2,1", "B:7:3,1,1,1,1", "C:3:2,2,1,1",
                          "D:8:2,2,2,2:-"}) {
    CAPTURE(ids);
    const OrbitId id = OrbitId::parse(ids);
    const LieAlgebra g = build_algebra(id.algebra);
    const OrbitPoint P = representative(g, id, 1.3, 0.4);
    const auto [Xp, Xm] = so4_components(P);
    CHECK((Xp + Xm - P.X).norm() < 1e-13);
    CHECK(g.bracket(Xp, Xm).norm() == 0.0);
    CHECK(std::abs(g.inner(Xp, g.sigma(Xm))) == 0.0);
  }
  // A-family block positions
  const OrbitId id = OrbitId::parse("A:5:2,2,1");
  const LieAlgebra g = build_algebra(id.algebra);
  const OrbitPoint P = representative(g, id, 2.0, 0.5);
  const auto [Xp, Xm] = so4_components(P);
  const MatC Xpm = g.to_matrix(Xp);
  CHECK(Xpm(0, 1) == Complex(2.0, 0));
  CHECK(g.to_matrix(Xm)(2, 3) == Complex(0.5, 0));

  const LieAlgebra g2 = build_algebra(AlgebraSpec{Family::G2, 0});
  const OrbitPoint Pg = representative(g2, OrbitId::parse("G2"), 1, 1);
  CHECK_THROWS_AS(so4_components(Pg), std::invalid_argument);
}

TEST_CASE("representative rejects bad parameters") {
  const LieAlgebra g = build_algebra(AlgebraSpec::parse("A:4"));
  const OrbitId id = OrbitId::parse("A:4:2,2");
  CHECK_THROWS_AS(representative(g, id, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(representative(g, id, -1.0, 1.0), std::invalid_argument);
  const LieAlgebra g5 = build_algebra(AlgebraSpec::parse("A:5"));
  CHECK_THROWS_AS(representative(g5, id, 1.0, 1.0), std::invalid_argument);  // algebra mismatch
}
