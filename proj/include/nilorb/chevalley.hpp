#ifndef NILORB_CHEVALLEY_HPP
#define NILORB_CHEVALLEY_HPP

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nilorb/rational.hpp"

namespace nilorb {

/// Exact structure data for the 14-dimensional exceptional algebra built on
/// its rank-2 root system.  Basis order: h1, h2 (coroots of the simple
/// roots), then E_gamma over the six positive roots by increasing height,
/// then F_gamma in the same order.
///
/// Sign convention: structure constants of extraspecial positive root pairs
/// are +(p+1); the single remaining positive special pair takes the sign
/// that satisfies the Jacobi identity exactly (resolved at build time and
/// recorded in `resolved_sign`).
struct G2Tables {
  int dim = 14;
  int n_positive = 6;
  std::vector<std::string> labels;  // size 14

  struct Trip {
    int i, j, k;
    Rational c;
  };
  std::vector<Trip> constants;  // c_{ij}^k over all ordered pairs

  Eigen::MatrixXi sigma;  // compact real structure: sigma(x) = S * conj(x)
  int resolved_sign = 0;  // sign chosen for the non-extraspecial pair
};

G2Tables g2_chevalley_tables();

}  // namespace nilorb

#endif
