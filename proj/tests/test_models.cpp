#include "doctest.h"

#include <cmath>

#include "nilorb/geometry.hpp"

using namespace nilorb;

TEST_CASE("rank-one model: J on the tangent frame") {
  for (double k : {0.8, 1.0, 1.6})
    for (double c : {0.0, 0.5})
      for (double t : {0.6, 1.0, 1.9}) {
        const Sl2Model model(k, c);
        const GeometryContext ctx = model.context_at(t);
        const Jet1 j1 = Potential::sl2_family(k, c).jet1(model.eta(t));

        // J h = -4 t rho' e  and  J e = 2 t (rho' + eta rho'') h
        const Element jh = ctx.J(model.h());
        CHECK((jh - model.e() * Complex(-4 * t * j1.d1, 0)).norm() < 1e-12 * jh.norm());
        const Element je = ctx.J(model.e());
        const double coeff = 2 * t * (j1.d1 + model.eta(t) * j1.d2);
        CHECK((je - model.h() * Complex(coeff, 0)).norm() < 1e-12 * std::max(1.0, je.norm()));

        // the family satisfies the model ODE, so J^2 = -1 on the tangent space
        for (const Element* v : {&model.e(), &model.h()}) {
          const Element jj = ctx.J(ctx.J(*v));
          CHECK((jj + *v).norm() < 1e-11 * v->norm());
          const Element iv = *v * Complex(0, 1);
          CHECK((ctx.J(ctx.J(iv)) + iv).norm() < 1e-11);
        }
      }
}

TEST_CASE("rank-one model: explicit metric matches the generic evaluator") {
  Rng rng(41);
  for (double k : {0.7, 1.0, 1.5})
    for (double c : {0.0, 0.3, 1.0})
      for (double t : {0.5, 1.0, 2.0}) {
        const Sl2Model model(k, c);
        const GeometryContext ctx = model.context_at(t);
        for (int trial = 0; trial < 6; ++trial) {
          const VecC a = rng.cnormal_vector(3), b = rng.cnormal_vector(3);
          const Element xi = model.algebra().bracket(model.algebra().element(a), model.point(t));
          const Element ze = model.algebra().bracket(model.algebra().element(b), model.point(t));
          const double generic = ctx.metric(xi, ze);
          const double closed = model.metric_closed_form(t, xi, ze);
          CHECK(std::abs(generic - closed) <= 1e-10 * std::max(1.0, std::abs(closed)));
        }
      }
}

TEST_CASE("rank-one model: omega_I reduction and finite differences") {
  const double k = 1.0, c = 0.0, t = 0.9;
  const Sl2Model model(k, c);
  const LieAlgebra& g = model.algebra();
  const GeometryContext ctx = model.context_at(t);
  const Jet1 j1 = Potential::sl2_family(k, c).jet1(model.eta(t));
  const Element X = model.point(t);

  Rng rng(8);
  for (int trial = 0; trial < 8; ++trial) {
    const Element A = g.element(rng.cnormal_vector(3));
    const Element B = g.element(rng.cnormal_vector(3));
    const Element xi = g.bracket(A, X), ze = g.bracket(B, X);

    // one-invariant reduction of the five-term formula
    const Complex i1 = ctx.ip(xi, g.sigma(ze));
    const Complex i2 = ctx.ip(xi, g.sigma(X)) * ctx.ip(g.sigma(ze), X);
    const double reduced = 2 * j1.d1 * i1.imag() + 2 * j1.d2 * i2.imag();
    CHECK(ctx.omega_I(xi, ze) == doctest::Approx(reduced).epsilon(1e-11));

    // -1/2 dId(rho) against the formula
    auto rho_at = [&](const Element& Y) {
      const double eta = (k * k) * g.inner(Y, g.sigma(Y)).real();
      return Potential::sl2_family(k, c).jet1(eta).rho;
    };
    const FdValue fd = fd_dIdrho_general(g, X, rho_at, A, B, 2e-3);
    CHECK(std::abs(fd.value - ctx.omega_I(xi, ze)) <=
          1e-6 * std::max(1.0, std::abs(ctx.omega_I(xi, ze))));
  }
}

TEST_CASE("moment vector: lambda = 2 + 2c/(k^2 eta), constant exactly when c = 0") {
  {  // frozen spot value
    const Sl2Model model(1.0, 1.0);
    const double t = 1.0;  // eta = 4
    CHECK(model.eta(t) == doctest::Approx(4.0));
    const auto mc = model.moment_vector_check(t);
    CHECK(mc.lambda == doctest::Approx(2.5).epsilon(1e-10));
    CHECK(mc.residual <= 1e-10);
  }
  for (double k : {0.8, 1.3})
    for (double c : {0.0, 0.4, 1.0}) {
      const Sl2Model model(k, c);
      std::vector<double> lambdas;
      for (double t = 0.4; t <= 2.5; t += 0.3) {
        const auto mc = model.moment_vector_check(t);
        CHECK(mc.residual <= 1e-10);  // Y is proportional to X
        const double eta = model.eta(t);
        CHECK(mc.lambda == doctest::Approx(2 + 2 * c / (k * k * eta)).epsilon(1e-10));
        lambdas.push_back(mc.lambda);
      }
      double mean = 0;
      for (double l : lambdas) mean += l;
      mean /= lambdas.size();
      double var = 0;
      for (double l : lambdas) var += (l - mean) * (l - mean);
      const double stdev = std::sqrt(var / lambdas.size());
      if (c == 0.0)
        CHECK(stdev <= 1e-10);
      else
        CHECK(stdev > 1e-3);
    }
}

TEST_CASE("G2 reduction: residuals of the closed-form potential") {
  {
    const G2PdeResiduals r = g2_pde_residuals(1.0, 1.0);
    CHECK(r.r1 <= 1e-10);
    CHECK(r.rA <= 1e-10);
    CHECK(r.rB <= 1e-10);
    CHECK(r.rC <= 1e-10);
    CHECK(r.branch_ii <= 1e-10);
    CHECK(r.branch_i >= 1.0);
  }
  // scale invariance of the normalized residuals
  const G2PdeResiduals a = g2_pde_residuals(0.7, 1.3);
  const G2PdeResiduals b = g2_pde_residuals(2.1, 3.9);
  CHECK(a.r1 == doctest::Approx(b.r1).epsilon(1e-9));
  CHECK(a.rB == doctest::Approx(b.rB).epsilon(1e-9));
  for (double s : {0.5, 1.0, 2.0})
    for (double t : {0.5, 1.0, 2.0}) {
      const G2PdeResiduals r = g2_pde_residuals(s, t);
      CHECK(r.r1 <= 1e-10);
      CHECK(r.rA <= 1e-10);
      CHECK(r.rB <= 1e-10);
      CHECK(r.rC <= 1e-10);
      CHECK(r.branch_i >= 1.0);
    }
}

TEST_CASE("rank-two model: the regular orbit of so(4) is a metric product") {
  // Direct check on so(4) itself: X = s e_+ + t e_-, pairing 1 * <.,.>,
  // family potential with equal constants.  J squares to -1 and preserves
  // the two summands.
  const LieAlgebra g = build_algebra(AlgebraSpec{Family::D, 4});
  MatC ep = MatC::Zero(4, 4), em = MatC::Zero(4, 4);
  ep(0, 1) = 1;
  ep(2, 3) = -1;  // F(1,2)
  em(0, 2) = 1;
  em(1, 3) = -1;  // F(1,3)
  const Element eplus = g.from_matrix(ep), eminus = g.from_matrix(em);
  // <e,sigma e> = 4 here, so the embedding constant is k^2 = 1
  CHECK(g.inner(eplus, g.sigma(eplus)).real() == doctest::Approx(4.0));

  const double s = 1.0, t = 0.55;
  OrbitPoint P;
  P.alg = &g;
  P.s = s;
  P.t = t;
  P.X = eplus * Complex(s, 0) + eminus * Complex(t, 0);
  const auto [e1, e2] = eta_invariants(P.X);
  P.eta1 = e1;
  P.eta2 = e2;
  CHECK(e1 == doctest::Approx(4 * (s * s + t * t)).epsilon(1e-12));
  P.tangent = tangent_basis(P.X);
  CHECK(P.tangent.size() == 4);  // regular orbit of so(4)
  So4Frame fr{eplus,  g.sigma(eplus) * Complex(-1, 0),  g.bracket(eplus, g.sigma(eplus) * Complex(-1, 0)),
              eminus, g.sigma(eminus) * Complex(-1, 0), g.bracket(eminus, g.sigma(eminus) * Complex(-1, 0))};
  P.frame = fr;

  for (double c : {0.0, 0.4, 1.0}) {
    const Potential fam = Potential::product_family(1.0, c);
    CHECK(j_squared_residual(P, fam) <= 1e-10);
    CHECK(so4_cross_block_norm(P, fam) <= 1e-10);
    CHECK(metric_positivity(P, fam) > 0);
  }
}
