#ifndef NILORB_TYPES_HPP
#define NILORB_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

namespace nilorb {

using Complex = std::complex<double>;
using VecC = Eigen::VectorXcd;
using MatC = Eigen::MatrixXcd;
using VecR = Eigen::VectorXd;
using MatR = Eigen::MatrixXd;
using MatI = Eigen::MatrixXi;

/// Default tolerances.  Exact rational checks use none; these govern the
/// floating-point suites.  All overridable through the CLI.
struct Tolerances {
  double identity = 1e-9;    // J^2, quaternionic and metric identities
  double exact_float = 1e-10;  // float checks of algebraically exact relations
  double fd = 1e-6;          // finite-difference agreement (single derivatives)
  double closedness = 1e-5;  // d(omega_I) residual
  double fd_step = 1e-4;     // central-difference step, first derivatives
  double fd_step_nested = 2e-3;  // step for nested (second-order) differences
  double rank_rel = 1e-9;    // singular values below rank_rel * s_max count as zero
  double rank_gap = 1e3;     // required ratio across the rank cut
};

/// Deterministic random source.  Box-Muller on top of mt19937_64 so that a
/// seed produces identical streams on every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed), spare_valid_(false) {}

  double uniform() {  // in [0,1)
    return (eng_() >> 11) * 0x1.0p-53;
  }

  double normal() {
    if (spare_valid_) {
      spare_valid_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 <= 1e-300) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    spare_valid_ = true;
    return r * std::cos(a);
  }

  Complex cnormal() { return Complex(normal(), normal()) / std::sqrt(2.0); }

  VecC cnormal_vector(Eigen::Index n) {
    VecC v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = cnormal();
    return v;
  }

  VecR normal_vector(Eigen::Index n) {
    VecR v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool spare_valid_;
};

}  // namespace nilorb

#endif
