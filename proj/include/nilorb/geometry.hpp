#ifndef NILORB_GEOMETRY_HPP
#define NILORB_GEOMETRY_HPP

#include <functional>
#include <string>
#include <vector>

#include "nilorb/orbits.hpp"
#include "nilorb/potentials.hpp"

namespace nilorb {

/// Evaluator state at a point X for a fixed potential jet.  `scale`
/// multiplies the ambient pairing throughout (k^2 for the rank-one model,
/// 1 on the orbits themselves); the complex symplectic form is scaled the
/// same way.  All evaluators are pure; instances are cheap to build.
class GeometryContext {
public:
  GeometryContext(const Element& X, const PotentialJet& jet, double scale = 1.0);

  const Element& point() const { return X_; }
  const PotentialJet& jet() const { return jet_; }
  double scale() const { return scale_; }

  Complex ip(const Element& a, const Element& b) const;  // scale * <a, b>

  /// Kirillov-Kostant-Souriau pairing against the generator of the second
  /// slot: omega_c(xi, xi_B) = -<xi, B>.  When xi carries its own generator
  /// A, the equivalent expression <X,[A,B]> is cross-checked.
  Complex omega_c(const TangentVector& xi, const Element& B_generator) const;

  /// Preprocessed right-slot data for repeated bilinear evaluations.
  struct Right {
    VecC k_sv;  // K sigma(v)
    VecC k_Bv;  // K ([sigma v, Y] + [sigma X, [X, sigma v]])
    Complex sv_X, sv_ZB;
  };
  Right prepare(const Element& v) const;

  /// The five-term complex combination whose imaginary part is omega_I and
  /// whose real part is the candidate metric.
  Complex form(const Element& u, const Right& rv) const;

  /// Structurally antisymmetrized, so omega_I(u, u) is exactly zero.
  double omega_I(const Element& u, const Element& v) const {
    return 0.5 * (form(u, prepare(v)).imag() - form(v, prepare(u)).imag());
  }
  double metric(const Element& u, const Element& v) const { return form(u, prepare(v)).real(); }
  double omega_I_raw(const Element& u, const Right& rv) const { return form(u, rv).imag(); }
  double metric(const Element& u, const Right& rv) const { return form(u, rv).real(); }

  /// The candidate almost complex structure; consumes only the vector.
  Element J(const Element& u) const;

private:
  const LieAlgebra* alg_;
  double scale_;
  PotentialJet jet_;
  Element X_, sX_, Y_, ZA_, ZB_, W_;
  VecC k_sX_, k_ZA_;
};

GeometryContext make_context(const OrbitPoint& P, const Potential& pot, double scale = 1.0);

/// Real tangent basis {xi_k, i xi_k} with generators.
std::vector<TangentVector> real_tangent_basis(const OrbitPoint& P);

/// max over the real tangent basis of ||J(J xi) + xi|| / ||xi||.
double j_squared_residual(const OrbitPoint& P, const Potential& pot);

/// Gram matrix of the candidate metric on the real tangent basis.
MatR metric_gram(const OrbitPoint& P, const Potential& pot);

/// Minimum eigenvalue of the Gram matrix (sign is the verdict).
double metric_positivity(const OrbitPoint& P, const Potential& pot);

struct TripleCheckResult {
  double anticommutator_residual = 0;  // IJ + JI
  double metric_I_invariance = 0;      // g(I.,I.) = g(.,.)
  double metric_J_invariance = 0;      // g(J.,J.) = g(.,.)
  double omegaJ_vs_ReOmega_c = 0;      // Re omega_c(u,v) = g(u, Jv)
  double omegaK_vs_ImOmega_c = 0;      // Im omega_c(u,v) = g(u, IJv)
  double max() const;
};

TripleCheckResult triple_check(const OrbitPoint& P, const Potential& pot);

struct FdValue {
  double value = 0;
  double error_estimate = 0;
};

/// -1/2 dId(rho) evaluated on (xi_A, xi_B) by nested Richardson-extrapolated
/// central differences along adjoint flows; rho_at gives the potential value
/// at a point of the orbit.
FdValue fd_dIdrho_general(const LieAlgebra& g, const Element& X,
                          const std::function<double(const Element&)>& rho_at, const Element& A,
                          const Element& B, double step);

FdValue fd_dIdrho(const OrbitPoint& P, const Potential& pot, const Element& A, const Element& B,
                  const Tolerances& tol = {});

/// max over sampled generator pairs of |fd - omega_I| / max(1, |omega_I|).
double fd_didrho_agreement(const OrbitPoint& P, const Potential& pot, int npairs,
                           std::uint64_t seed, const Tolerances& tol = {});

/// d omega_I (xi_A, xi_B, xi_C) via the invariant-field formula, normalized
/// by the Hermitian norms of the three vectors.
double closedness_residual(const OrbitPoint& P, const Potential& pot, const Element& A,
                           const Element& B, const Element& C, const Tolerances& tol = {});

double closedness_max(const OrbitPoint& P, const Potential& pot, int ntriples, std::uint64_t seed,
                      const Tolerances& tol = {});

/// Cross-factor leakage of J on the su(2)+su(2) frame directions: J must
/// preserve the two summands when it squares to -1.
double so4_cross_block_norm(const OrbitPoint& P, const Potential& pot);

/// The rank-one model: the nilpotent orbit of sl(2) with pairing k^2 <.,.>
/// and the one-parameter family of potentials.
class Sl2Model {
public:
  Sl2Model(double k, double c);

  const LieAlgebra& algebra() const { return g_; }
  double k() const { return k_; }
  double c() const { return c_; }
  const Element& e() const { return e_; }
  const Element& f() const { return f_; }
  const Element& h() const { return h_; }

  double eta(double t) const { return 4 * k_ * k_ * t * t; }
  Element point(double t) const { return e_ * Complex(t, 0); }
  GeometryContext context_at(double t) const;

  /// The explicit metric formula of the model (independent closed form).
  double metric_closed_form(double t, const Element& xi, const Element& zeta) const;

  struct MomentCheck {
    double lambda = 0;
    double residual = 0;
  };
  /// Solves g(Y, .) = d rho on the tangent space at t e and extracts
  /// Y = lambda X; lambda should be 2 + 2c/(k^2 eta).
  MomentCheck moment_vector_check(double t) const;

private:
  LieAlgebra g_;
  double k_, c_;
  Element e_, f_, h_;
};

struct G2PdeResiduals {
  double r1 = 0;        // (1/64s) rho_s (s rho_s + t rho_t) = 1
  double rA = 0, rB = 0, rC = 0;  // the three J^2 X component equations
  double branch_ii = 0;  // rho_t = 9 (t/s) rho_s, satisfied branch
  double branch_i = 0;   // rho_t = -2 (s/t) rho_s, contradictory branch
};

/// Residuals of the closed-form solution rho = 8 sqrt(s^2 + 9 t^2) in the
/// defining first-order equation and the three second-order component
/// equations, normalized scale-invariantly.
G2PdeResiduals g2_pde_residuals(double s, double t);

/// Report of one verification point.
struct GeometryReport {
  double s = 0, t = 0, eta1 = 0, eta2 = 0;
  double j_squared_residual = 0;
  double min_metric_eigenvalue = 0;
  double anticommutator_residual = 0;
  double omegaJ_vs_ReOmega_c = 0;
  double omegaK_vs_ImOmega_c = 0;
  double metric_I_invariance = 0;
  double metric_J_invariance = 0;
  double dIdrho_agreement = 0;
  double closedness_residual = 0;
  bool fd_checked = false;

  struct Check {
    std::string name;
    double value = 0;
    double tolerance = 0;
    bool pass = false;
  };
  std::vector<Check> checks;
  bool pass() const;
};

struct PointCheckOptions {
  bool with_fd = true;
  int fd_pairs = 4;
  int fd_triples = 4;
  std::uint64_t seed = 20240915;
};

GeometryReport run_point_checks(const OrbitPoint& P, const Potential& pot, const Tolerances& tol,
                                const PointCheckOptions& opt = {});

}  // namespace nilorb

#endif
