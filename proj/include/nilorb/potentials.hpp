#ifndef NILORB_POTENTIALS_HPP
#define NILORB_POTENTIALS_HPP

#include <string>

#include "nilorb/types.hpp"

namespace nilorb {

/// 2-jet of a potential in the two invariants.
struct PotentialJet {
  double rho = 0;
  double rho1 = 0, rho2 = 0;
  double rho11 = 0, rho12 = 0, rho22 = 0;
};

/// 2-jet of a one-invariant potential.
struct Jet1 {
  double rho = 0;
  double d1 = 0, d2 = 0;
};

enum class PotentialKind { Theorem, G2, Sl2Family, ProductFamily };

/// Potential evaluators.  Theorem and G2 are the closed forms in the
/// invariants; Sl2Family is the one-invariant family rho' = sqrt(k^2 eta + c)/eta;
/// ProductFamily is the two-factor family with equal constants, converted to
/// invariant coordinates through the chain rule.
class Potential {
public:
  static Potential theorem(double k);
  static Potential g2();
  static Potential sl2_family(double k, double c);
  static Potential product_family(double k, double c);
  /// "theorem", "g2", "sl2:c=0.5", "family:c=0.5"; k is bound here.
  static Potential parse(const std::string& text, double k);

  PotentialKind kind() const { return kind_; }
  double k() const { return k_; }
  double c() const { return c_; }
  bool two_invariant() const { return kind_ != PotentialKind::Sl2Family; }
  std::string to_string() const;

  PotentialJet jet(double eta1, double eta2) const;
  Jet1 jet1(double eta) const;  // Sl2Family only

private:
  Potential(PotentialKind kind, double k, double c) : kind_(kind), k_(k), c_(c) {}
  PotentialKind kind_;
  double k_, c_;
};

/// Max relative error of the analytic jet against central differences of the
/// potential values (Richardson-extrapolated first and cross derivatives,
/// five-point pure seconds).
double jet_fd_validate(const Potential& p, double eta1, double eta2);

}  // namespace nilorb

#endif
