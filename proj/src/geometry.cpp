#include "nilorb/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nilorb {

GeometryContext::GeometryContext(const Element& X, const PotentialJet& jet, double scale)
    : alg_(X.alg), scale_(scale), jet_(jet), X_(X) {
  const LieAlgebra& g = *alg_;
  sX_ = g.sigma(X_);
  Y_ = g.bracket(X_, sX_);                  // [X, sigma X]
  ZA_ = g.bracket(sX_, Y_);                 // [sigma X, [X, sigma X]]
  ZB_ = g.bracket(X_, Y_) * Complex(-1, 0); // [X, [sigma X, X]]
  W_ = g.bracket(X_, ZA_);                  // [X, [sigma X, [X, sigma X]]]
  k_sX_ = g.killing_matrix().cast<Complex>() * sX_.c;
  k_ZA_ = g.killing_matrix().cast<Complex>() * ZA_.c;
}

Complex GeometryContext::ip(const Element& a, const Element& b) const {
  return scale_ * alg_->inner(a, b);
}

Complex GeometryContext::omega_c(const TangentVector& xi, const Element& B) const {
  const Complex direct = -ip(xi.value, B);
  if (xi.generator) {
    const Complex via_bracket = ip(X_, alg_->bracket(*xi.generator, B));
    if (std::abs(direct - via_bracket) > 1e-12 * std::max(1.0, std::abs(direct)))
      throw std::logic_error("omega_c: the two defining expressions disagree");
  }
  return direct;
}

GeometryContext::Right GeometryContext::prepare(const Element& v) const {
  const LieAlgebra& g = *alg_;
  const Element sv = g.sigma(v);
  const Element Bv = g.bracket(sv, Y_) + g.bracket(sX_, g.bracket(X_, sv));
  Right r;
  r.k_sv = g.killing_matrix().cast<Complex>() * sv.c;
  r.k_Bv = g.killing_matrix().cast<Complex>() * Bv.c;
  r.sv_X = ip(sv, X_);
  r.sv_ZB = ip(sv, ZB_);
  return r;
}

Complex GeometryContext::form(const Element& u, const Right& rv) const {
  // <a, b> = -a^T K b, bilinear (no conjugation)
  auto pair_with = [&](const VecC& kvec) -> Complex {
    return -scale_ * u.c.cwiseProduct(kvec).sum();
  };
  const Complex u_sv = pair_with(rv.k_sv);
  const Complex u_Bv = pair_with(rv.k_Bv);
  const Complex u_sX = pair_with(k_sX_);
  const Complex u_ZA = pair_with(k_ZA_);

  Complex z = 2.0 * jet_.rho1 * u_sv;
  z += -4.0 * jet_.rho2 * u_Bv;
  z += 2.0 * jet_.rho11 * (u_sX * rv.sv_X);
  z += -4.0 * jet_.rho12 * (u_ZA * rv.sv_X + u_sX * rv.sv_ZB);
  z += 8.0 * jet_.rho22 * (u_ZA * rv.sv_ZB);
  return z;
}

Element GeometryContext::J(const Element& u) const {
  const LieAlgebra& g = *alg_;
  const Element su = g.sigma(u);
  const Element Xsu = g.bracket(X_, su);
  Element out = Xsu * Complex(-2.0 * jet_.rho1, 0);
  if (jet_.rho2 != 0) {
    const Element t1 = g.bracket(X_, g.bracket(sX_, Xsu));
    const Element t2 = g.bracket(X_, g.bracket(X_, g.bracket(sX_, su)));
    out = out + (t1 * Complex(2, 0) - t2) * Complex(4.0 * jet_.rho2, 0);
  }
  const Complex su_X = ip(su, X_);
  const Complex su_ZB = ip(su, ZB_);
  out = out + Y_ * (-2.0 * jet_.rho11 * su_X);
  if (jet_.rho12 != 0) out = out + (Y_ * su_ZB + W_ * su_X) * Complex(4.0 * jet_.rho12, 0);
  if (jet_.rho22 != 0) out = out + W_ * (-8.0 * jet_.rho22 * su_ZB);
  return out;
}

GeometryContext make_context(const OrbitPoint& P, const Potential& pot, double scale) {
  return GeometryContext(P.X, pot.jet(P.eta1, P.eta2), scale);
}

std::vector<TangentVector> real_tangent_basis(const OrbitPoint& P) {
  std::vector<TangentVector> basis;
  basis.reserve(2 * P.tangent.size());
  for (const auto& tv : P.tangent) basis.push_back(tv);
  for (const auto& tv : P.tangent) {
    TangentVector itv{tv.value * Complex(0, 1), std::nullopt};
    if (tv.generator) itv.generator = *tv.generator * Complex(0, 1);
    basis.push_back(std::move(itv));
  }
  return basis;
}

double j_squared_residual(const OrbitPoint& P, const Potential& pot) {
  const GeometryContext ctx = make_context(P, pot);
  double worst = 0;
  for (const auto& tv : real_tangent_basis(P)) {
    const Element jj = ctx.J(ctx.J(tv.value));
    worst = std::max(worst, (jj + tv.value).norm() / tv.value.norm());
  }
  return worst;
}

MatR metric_gram(const OrbitPoint& P, const Potential& pot) {
  const GeometryContext ctx = make_context(P, pot);
  const auto basis = real_tangent_basis(P);
  const int n = int(basis.size());
  std::vector<GeometryContext::Right> rights;
  rights.reserve(n);
  for (const auto& tv : basis) rights.push_back(ctx.prepare(tv.value));
  MatR gram(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) gram(a, b) = ctx.metric(basis[a].value, rights[b]);
  const double asym = (gram - gram.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * std::max(1.0, gram.cwiseAbs().maxCoeff()))
    throw std::logic_error("metric Gram matrix is not symmetric");
  return 0.5 * (gram + gram.transpose());
}

double metric_positivity(const OrbitPoint& P, const Potential& pot) {
  Eigen::SelfAdjointEigenSolver<MatR> es(metric_gram(P, pot));
  return es.eigenvalues().minCoeff();
}

double TripleCheckResult::max() const {
  return std::max({anticommutator_residual, metric_I_invariance, metric_J_invariance,
                   omegaJ_vs_ReOmega_c, omegaK_vs_ImOmega_c});
}

TripleCheckResult triple_check(const OrbitPoint& P, const Potential& pot) {
  const GeometryContext ctx = make_context(P, pot);
  const auto basis = real_tangent_basis(P);
  const int n = int(basis.size());

  std::vector<Element> jv, ijv, iv;
  std::vector<double> hnorm(n);
  std::vector<GeometryContext::Right> r_v, r_iv, r_jv, r_ijv;
  for (int b = 0; b < n; ++b) {
    const Element& v = basis[b].value;
    jv.push_back(ctx.J(v));
    iv.push_back(v * Complex(0, 1));
    ijv.push_back(jv.back() * Complex(0, 1));
    hnorm[b] = std::sqrt(std::abs(ctx.ip(v, ctx.point().alg->sigma(v)).real()));
    r_v.push_back(ctx.prepare(v));
    r_iv.push_back(ctx.prepare(iv.back()));
    r_jv.push_back(ctx.prepare(jv.back()));
    r_ijv.push_back(ctx.prepare(ijv.back()));
  }

  TripleCheckResult res;
  for (int b = 0; b < n; ++b) {
    // (IJ + JI) v = i J(v) + J(i v)
    const Element anti = ijv[b] + ctx.J(iv[b]);
    res.anticommutator_residual =
        std::max(res.anticommutator_residual, anti.norm() / basis[b].value.norm());
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const double denom = std::max(1e-300, hnorm[a] * hnorm[b]);
      const double gab = ctx.metric(basis[a].value, r_v[b]);
      const double g_ii = ctx.metric(iv[a], r_iv[b]);
      res.metric_I_invariance = std::max(res.metric_I_invariance, std::abs(g_ii - gab) / denom);
      const double g_jj = ctx.metric(jv[a], r_jv[b]);
      res.metric_J_invariance = std::max(res.metric_J_invariance, std::abs(g_jj - gab) / denom);

      const Element gen_b = basis[b].generator.value();
      const Complex oc = ctx.omega_c(basis[a], gen_b);
      const double g_a_jb = ctx.metric(basis[a].value, r_jv[b]);
      res.omegaJ_vs_ReOmega_c =
          std::max(res.omegaJ_vs_ReOmega_c, std::abs(oc.real() - g_a_jb) / denom);
      const double g_a_ijb = ctx.metric(basis[a].value, r_ijv[b]);
      res.omegaK_vs_ImOmega_c =
          std::max(res.omegaK_vs_ImOmega_c, std::abs(oc.imag() - g_a_ijb) / denom);
    }
  return res;
}

namespace {

// Richardson-extrapolated central difference of a scalar function of a flow
// parameter; also returns the step-halving discrepancy as an error estimate.
FdValue central_derivative(const std::function<double(double)>& f, double h) {
  auto diff = [&](double s) { return (f(s) - f(-s)) / (2 * s); };
  const double d1 = diff(h);
  const double d2 = diff(h / 2);
  FdValue out;
  out.value = (4 * d2 - d1) / 3;
  out.error_estimate = std::abs(d2 - d1) / 3;
  return out;
}

}  // namespace

FdValue fd_dIdrho_general(const LieAlgebra& g, const Element& X,
                          const std::function<double(const Element&)>& rho_at, const Element& A,
                          const Element& B, double step) {
  if (!(step > 1e-12))
    throw std::invalid_argument("finite-difference step underflow: " + std::to_string(step));
  // I d rho (xi_C) at Y is -d/ds rho(Ad(exp(s iC)) Y)
  auto Idrho = [&](const Element& C, const Element& Y) {
    const Element iC = C * Complex(0, 1);
    return -central_derivative([&](double s) { return rho_at(g.adjoint_flow(iC, s, Y)); }, step)
                .value;
  };
  const FdValue termA =
      central_derivative([&](double t) { return Idrho(B, g.adjoint_flow(A, t, X)); }, step);
  const FdValue termB =
      central_derivative([&](double t) { return Idrho(A, g.adjoint_flow(B, t, X)); }, step);
  // [xi_A, xi_B] = xi_{-[A,B]}
  const Element C = g.bracket(A, B) * Complex(-1, 0);
  const double termC = Idrho(C, X);
  FdValue out;
  out.value = -0.5 * (termA.value - termB.value - termC);
  out.error_estimate = 0.5 * (termA.error_estimate + termB.error_estimate);
  return out;
}

FdValue fd_dIdrho(const OrbitPoint& P, const Potential& pot, const Element& A, const Element& B,
                  const Tolerances& tol) {
  const LieAlgebra& g = P.algebra();
  auto rho_at = [&](const Element& Y) {
    const auto [e1, e2] = eta_invariants(Y);
    return pot.jet(e1, e2).rho;
  };
  return fd_dIdrho_general(g, P.X, rho_at, A, B, tol.fd_step_nested);
}

double fd_didrho_agreement(const OrbitPoint& P, const Potential& pot, int npairs,
                           std::uint64_t seed, const Tolerances& tol) {
  const LieAlgebra& g = P.algebra();
  const GeometryContext ctx = make_context(P, pot);
  Rng rng(seed);
  auto unit = [&]() {
    VecC v = rng.cnormal_vector(g.dim());
    return g.element(v / v.norm());  // unit generators keep the flow step calibrated
  };
  double worst = 0;
  for (int n = 0; n < npairs; ++n) {
    const Element A = unit();
    const Element B = unit();
    const double analytic = ctx.omega_I(g.bracket(A, P.X), g.bracket(B, P.X));
    const FdValue fd = fd_dIdrho(P, pot, A, B, tol);
    worst = std::max(worst, std::abs(fd.value - analytic) / std::max(1.0, std::abs(analytic)));
  }
  return worst;
}

double closedness_residual(const OrbitPoint& P, const Potential& pot, const Element& A,
                           const Element& B, const Element& C, const Tolerances& tol) {
  const LieAlgebra& g = P.algebra();
  // omega_I antisymmetrized structurally, so the alternating-form
  // cancellations below are exact in floating point
  auto omega_at = [&](const Element& Y, const Element& U, const Element& V) {
    const auto [e1, e2] = eta_invariants(Y);
    const GeometryContext c(Y, pot.jet(e1, e2));
    return c.omega_I(g.bracket(U, Y), g.bracket(V, Y));
  };
  auto deriv = [&](const Element& D, const Element& U, const Element& V) {
    return central_derivative(
               [&](double t) { return omega_at(g.adjoint_flow(D, t, P.X), U, V); },
               tol.fd_step)
        .value;
  };
  const GeometryContext ctx = make_context(P, pot);
  auto xi = [&](const Element& D) { return g.bracket(D, P.X); };

  double d = deriv(A, B, C) - deriv(B, A, C) + deriv(C, A, B);
  // [xi_U, xi_V] = xi_{-[U,V]}
  d -= ctx.omega_I(xi(g.bracket(A, B) * Complex(-1, 0)), xi(C));
  d += ctx.omega_I(xi(g.bracket(A, C) * Complex(-1, 0)), xi(B));
  d -= ctx.omega_I(xi(g.bracket(B, C) * Complex(-1, 0)), xi(A));

  auto hnorm = [&](const Element& v) {
    return std::sqrt(std::abs(ctx.ip(v, g.sigma(v)).real()));
  };
  const double denom =
      std::max(1e-300, hnorm(xi(A)) * hnorm(xi(B)) * hnorm(xi(C)));
  return std::abs(d) / denom;
}

double closedness_max(const OrbitPoint& P, const Potential& pot, int ntriples, std::uint64_t seed,
                      const Tolerances& tol) {
  const LieAlgebra& g = P.algebra();
  Rng rng(seed);
  auto unit = [&]() {
    VecC v = rng.cnormal_vector(g.dim());
    return g.element(v / v.norm());
  };
  double worst = 0;
  for (int n = 0; n < ntriples; ++n) {
    const Element A = unit();
    const Element B = unit();
    const Element C = unit();
    worst = std::max(worst, closedness_residual(P, pot, A, B, C, tol));
  }
  return worst;
}

double so4_cross_block_norm(const OrbitPoint& P, const Potential& pot) {
  if (!P.frame) throw std::invalid_argument("point carries no su(2)+su(2) frame");
  const LieAlgebra& g = P.algebra();
  const GeometryContext ctx = make_context(P, pot);
  const So4Frame& fr = *P.frame;

  MatC plus(g.dim(), 3), minus(g.dim(), 3);
  plus.col(0) = fr.eplus.c;
  plus.col(1) = fr.fplus.c;
  plus.col(2) = fr.hplus.c;
  minus.col(0) = fr.eminus.c;
  minus.col(1) = fr.fminus.c;
  minus.col(2) = fr.hminus.c;
  MatC frame6(g.dim(), 6);
  frame6 << plus, minus;

  // tangent directions of each factor orbit: [f, X], [h, X] and their i-images;
  // J applied to a plus-side direction must have no minus-side component.
  const Eigen::ColPivHouseholderQR<MatC> qr(frame6);
  auto leakage = [&](const Element& gen, bool from_plus) {
    const Element v = g.bracket(gen, P.X);
    if (v.norm() < 1e-12) return 0.0;
    const Element jvec = ctx.J(v);
    const VecC coef = qr.solve(jvec.c);
    const double outside = (frame6 * coef - jvec.c).norm();
    const double cross =
        from_plus ? (minus * coef.tail(3)).norm() : (plus * coef.head(3)).norm();
    return std::max(outside, cross) / std::max(1e-300, jvec.norm());
  };
  double worst = 0;
  for (Complex phase : {Complex(1, 0), Complex(0, 1)}) {
    worst = std::max(worst, leakage(fr.fplus * phase, true));
    worst = std::max(worst, leakage(fr.hplus * phase, true));
    worst = std::max(worst, leakage(fr.fminus * phase, false));
    worst = std::max(worst, leakage(fr.hminus * phase, false));
  }
  return worst;
}

Sl2Model::Sl2Model(double k, double c) : g_(build_algebra(AlgebraSpec{Family::A, 2})), k_(k), c_(c) {
  MatC em = MatC::Zero(2, 2), fm = MatC::Zero(2, 2), hm = MatC::Zero(2, 2);
  em(0, 1) = 1;
  fm(1, 0) = 1;
  hm(0, 0) = 1;
  hm(1, 1) = -1;
  e_ = g_.from_matrix(em);
  f_ = g_.from_matrix(fm);
  h_ = g_.from_matrix(hm);
}

GeometryContext Sl2Model::context_at(double t) const {
  const Jet1 j1 = Potential::sl2_family(k_, c_).jet1(eta(t));
  PotentialJet jet;
  jet.rho = j1.rho;
  jet.rho1 = j1.d1;
  jet.rho11 = j1.d2;
  return GeometryContext(point(t), jet, k_ * k_);
}

double Sl2Model::metric_closed_form(double t, const Element& xi, const Element& zeta) const {
  // the explicit model metric, written with the unscaled pairing
  const Element X = point(t);
  const Element sX = g_.sigma(X);
  const Element sz = g_.sigma(zeta);
  const double etav = eta(t);
  const double rp = Potential::sl2_family(k_, c_).jet1(etav).d1;
  const double k2 = k_ * k_;
  const Complex term1 = g_.inner(xi, sz) * g_.inner(X, sX) - g_.inner(xi, sX) * g_.inner(X, sz);
  const Complex term2 = g_.inner(xi, sX) * g_.inner(X, sz);
  const Complex val =
      (2 * k2 * k2 / etav) * (rp * term1 + (k2 / (2 * etav * rp)) * term2);
  return val.real();
}

Sl2Model::MomentCheck Sl2Model::moment_vector_check(double t) const {
  if (!(t > 0)) throw std::invalid_argument("moment check needs t > 0");
  const GeometryContext ctx = context_at(t);
  const Element X = point(t);
  const Element sX = g_.sigma(X);
  const double rp = Potential::sl2_family(k_, c_).jet1(eta(t)).d1;

  const std::vector<Element> basis = {e_, h_, e_ * Complex(0, 1), h_ * Complex(0, 1)};
  const int n = int(basis.size());
  MatR gram(n, n);
  VecR rhs(n);
  for (int a = 0; a < n; ++a) {
    rhs[a] = rp * 2.0 * ctx.ip(basis[a], sX).real();  // d rho (xi) = rho' d eta (xi)
    for (int b = 0; b < n; ++b) gram(a, b) = ctx.metric(basis[a], basis[b]);
  }
  Eigen::LDLT<MatR> solver(0.5 * (gram + gram.transpose()));
  if (solver.info() != Eigen::Success) throw std::runtime_error("moment check: singular Gram");
  const VecR y = solver.solve(rhs);
  Element Y = g_.zero();
  for (int a = 0; a < n; ++a) Y = Y + basis[a] * Complex(y[a], 0);

  MomentCheck out;
  const Complex lam = X.c.dot(Y.c) / X.c.squaredNorm();
  out.lambda = lam.real();
  out.residual = (Y - X * lam).norm() / X.norm();
  return out;
}

G2PdeResiduals g2_pde_residuals(double s, double t) {
  if (!(s > 0) || !(t > 0)) throw std::invalid_argument("pde residuals need s, t > 0");
  const double Q = s * s + 9 * t * t;
  const double rq = std::sqrt(Q);
  const double rho_s = 8 * s / rq;
  const double rho_t = 72 * t / rq;
  const double rho_ss = 72 * t * t / (Q * rq);
  const double rho_st = -72 * s * t / (Q * rq);
  const double rho_tt = 72 * s * s / (Q * rq);

  G2PdeResiduals r;
  r.r1 = std::abs(rho_s * (s * rho_s + t * rho_t) / (64 * s) - 1.0);
  r.rA = std::abs(s * (2 * s * rho_s + t * rho_t) * rho_ss + t * (t * rho_t + 3 * s * rho_s) * rho_st +
                  t * t * rho_s * rho_tt + 2 * (t * rho_t + s * rho_s) * rho_s - 128 * s) /
         (128 * s);
  r.rB = std::abs(9 * s * rho_s * rho_ss + (9 * t * rho_s + s * rho_t) * rho_st +
                  t * rho_t * rho_tt + 9 * rho_s * rho_s + rho_t * rho_t - 576) /
         576;
  const double lhsC = 3 * s * t * (9 * t * rho_s + s * rho_t) * rho_ss -
                      s * t * (s * rho_t - 3 * t * rho_s) * rho_tt +
                      (3 * t * (s * s + 9 * t * t) * rho_s + s * (3 * t * t - s * s) * rho_t) *
                          rho_st;
  const double rhsC = (s * rho_t - 9 * t * rho_s) * (s * rho_t + 3 * t * rho_s);
  r.rC = std::abs(lhsC - rhsC) / (576 * s * t);
  r.branch_ii = std::abs(rho_t - 9 * (t / s) * rho_s);
  r.branch_i = std::abs(rho_t + 2 * (s / t) * rho_s);
  return r;
}

bool GeometryReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

GeometryReport run_point_checks(const OrbitPoint& P, const Potential& pot, const Tolerances& tol,
                                const PointCheckOptions& opt) {
  GeometryReport r;
  r.s = P.s;
  r.t = P.t;
  r.eta1 = P.eta1;
  r.eta2 = P.eta2;

  r.j_squared_residual = j_squared_residual(P, pot);
  r.min_metric_eigenvalue = metric_positivity(P, pot);
  const TripleCheckResult tc = triple_check(P, pot);
  r.anticommutator_residual = tc.anticommutator_residual;
  r.metric_I_invariance = tc.metric_I_invariance;
  r.metric_J_invariance = tc.metric_J_invariance;
  r.omegaJ_vs_ReOmega_c = tc.omegaJ_vs_ReOmega_c;
  r.omegaK_vs_ImOmega_c = tc.omegaK_vs_ImOmega_c;

  auto add = [&](const std::string& name, double value, double tolv, bool smaller_is_pass = true) {
    GeometryReport::Check c{name, value, tolv, smaller_is_pass ? value <= tolv : value > tolv};
    r.checks.push_back(std::move(c));
  };
  add("j_squared_residual", r.j_squared_residual, tol.identity);
  add("min_metric_eigenvalue", r.min_metric_eigenvalue, 0.0, false);
  add("anticommutator_residual", r.anticommutator_residual, tol.identity);
  add("metric_I_invariance", r.metric_I_invariance, tol.identity);
  add("metric_J_invariance", r.metric_J_invariance, tol.identity);
  add("omegaJ_vs_ReOmega_c", r.omegaJ_vs_ReOmega_c, tol.identity);
  add("omegaK_vs_ImOmega_c", r.omegaK_vs_ImOmega_c, tol.identity);

  if (opt.with_fd) {
    r.fd_checked = true;
    r.dIdrho_agreement = fd_didrho_agreement(P, pot, opt.fd_pairs, opt.seed, tol);
    r.closedness_residual = closedness_max(P, pot, opt.fd_triples, opt.seed + 1, tol);
    add("dIdrho_agreement", r.dIdrho_agreement, tol.fd);
    add("closedness_residual", r.closedness_residual, tol.closedness);
  }
  return r;
}

}  // namespace nilorb
