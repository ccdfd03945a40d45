#include "nilorb/potentials.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace nilorb {

namespace {

// Jet of rho = outer * sqrt(v) with v = eta1 + inner * sqrt(u) and
// u = qa*eta1^2 + qb*eta2, evaluated where u, v > 0.  Covers both closed
// forms.  On the cone boundary u = 0 (the minimal-orbit stratum) the
// one-invariant reduction rho = outer * sqrt(eta1) is returned.
PotentialJet radical_jet(double eta1, double eta2, double qa, double qb, double inner,
                         double outer, const char* name) {
  const double u = qa * eta1 * eta1 + qb * eta2;
  const double uscale = std::abs(qa * eta1 * eta1) + std::abs(qb * eta2);
  PotentialJet j;
  if (u < -1e-12 * std::max(1.0, uscale))
    throw std::domain_error(std::string(name) + ": invariants outside the domain (inner radical " +
                            std::to_string(u) + " < 0)");
  if (eta1 <= 0) throw std::domain_error(std::string(name) + ": eta1 must be positive");
  if (u <= 1e-14 * std::max(1.0, uscale)) {
    // boundary value: rho = outer sqrt(eta1), jet of the reduced potential
    j.rho = outer * std::sqrt(eta1);
    j.rho1 = 0.5 * outer / std::sqrt(eta1);
    j.rho11 = -0.25 * outer / std::pow(eta1, 1.5);
    return j;
  }
  const double w = std::sqrt(u);
  const double u1 = 2 * qa * eta1, u2 = qb, u11 = 2 * qa;
  const double w1 = u1 / (2 * w), w2 = u2 / (2 * w);
  const double w11 = u11 / (2 * w) - u1 * u1 / (4 * std::pow(u, 1.5));
  const double w12 = -u1 * u2 / (4 * std::pow(u, 1.5));
  const double w22 = -u2 * u2 / (4 * std::pow(u, 1.5));

  const double v = eta1 + inner * w;
  if (v <= 0) throw std::domain_error(std::string(name) + ": outer radical not positive");
  const double v1 = 1 + inner * w1, v2 = inner * w2;
  const double v11 = inner * w11, v12 = inner * w12, v22 = inner * w22;

  const double sv = std::sqrt(v);
  j.rho = outer * sv;
  const double half = 0.5 * outer;
  j.rho1 = half * v1 / sv;
  j.rho2 = half * v2 / sv;
  j.rho11 = half * (v11 / sv - 0.5 * v1 * v1 / std::pow(v, 1.5));
  j.rho12 = half * (v12 / sv - 0.5 * v1 * v2 / std::pow(v, 1.5));
  j.rho22 = half * (v22 / sv - 0.5 * v2 * v2 / std::pow(v, 1.5));
  return j;
}

// antiderivative of sqrt(16 k^4 + c/x^2); fixes rho = 4k^2 x at c = 0
double family_antiderivative(double k, double c, double x) {
  const double q = std::sqrt(16 * std::pow(k, 4) * x * x + c);
  if (c <= 0) return q;
  const double sc = std::sqrt(c);
  return q + 0.5 * sc * std::log((q - sc) / (q + sc));
}

}  // namespace

Potential Potential::theorem(double k) {
  if (!(k > 0)) throw std::invalid_argument("theorem potential needs k > 0");
  return Potential(PotentialKind::Theorem, k, 0);
}

Potential Potential::g2() { return Potential(PotentialKind::G2, 0, 0); }

Potential Potential::sl2_family(double k, double c) {
  if (!(k > 0) || c < 0) throw std::invalid_argument("sl2 family needs k > 0, c >= 0");
  return Potential(PotentialKind::Sl2Family, k, c);
}

Potential Potential::product_family(double k, double c) {
  if (!(k > 0) || c < 0) throw std::invalid_argument("product family needs k > 0, c >= 0");
  return Potential(PotentialKind::ProductFamily, k, c);
}

Potential Potential::parse(const std::string& text, double k) {
  auto get_c = [&](const std::string& rest) -> double {
    if (rest.empty()) return 0.0;
    if (rest.rfind(":c=", 0) != 0)
      throw std::invalid_argument("potential parameter must be ':c=<value>', got '" + rest + "'");
    try {
      size_t pos = 0;
      const double c = std::stod(rest.substr(3), &pos);
      if (pos != rest.size() - 3) throw std::invalid_argument("");
      return c;
    } catch (...) {
      throw std::invalid_argument("bad c value in potential '" + text + "'");
    }
  };
  if (text == "theorem") return theorem(k);
  if (text == "g2") return g2();
  if (text.rfind("sl2", 0) == 0) return sl2_family(k, get_c(text.substr(3)));
  if (text.rfind("family", 0) == 0) return product_family(k, get_c(text.substr(6)));
  throw std::invalid_argument("unknown potential '" + text + "'");
}

std::string Potential::to_string() const {
  switch (kind_) {
    case PotentialKind::Theorem: return "theorem";
    case PotentialKind::G2: return "g2";
    case PotentialKind::Sl2Family: return "sl2:c=" + std::to_string(c_);
    case PotentialKind::ProductFamily: return "family:c=" + std::to_string(c_);
  }
  return "?";
}

Jet1 Potential::jet1(double eta) const {
  if (kind_ != PotentialKind::Sl2Family)
    throw std::invalid_argument("jet1 is only defined for the one-invariant family");
  if (eta <= 0) throw std::domain_error("sl2 family: eta must be positive");
  const double k2 = k_ * k_;
  const double q = std::sqrt(k2 * eta + c_);
  Jet1 j;
  j.d1 = q / eta;
  j.d2 = 0.5 * k2 / (q * eta) - q / (eta * eta);
  if (c_ == 0) {
    j.rho = 2 * k_ * std::sqrt(eta);
  } else {
    const double sc = std::sqrt(c_);
    j.rho = 2 * q + sc * std::log((q - sc) / (q + sc));
  }
  return j;
}

PotentialJet Potential::jet(double eta1, double eta2) const {
  switch (kind_) {
    case PotentialKind::Theorem:
      return radical_jet(eta1, eta2, 0.5, -k_ * k_, 2.0, 2 * k_, "theorem potential");
    case PotentialKind::G2:
      return radical_jet(eta1, eta2, 1.0, -4.0, std::sqrt(6.0), std::sqrt(8.0), "g2 potential");
    case PotentialKind::Sl2Family:
      throw std::invalid_argument("one-invariant family has no (eta1, eta2) jet");
    case PotentialKind::ProductFamily:
      break;
  }

  // recover s >= t from eta1 = 4k^2(s^2+t^2), eta2 = 8k^2(s^4+t^4)
  const double k2 = k_ * k_, k4 = k2 * k2;
  const double P = eta1 / (4 * k2);
  const double Q = eta2 / (8 * k2);
  if (P <= 0) throw std::domain_error("family potential: eta1 must be positive");
  const double disc = 2 * Q - P * P;  // (s^2 - t^2)^2
  const double prod = (P * P - Q) / 2;  // s^2 t^2
  if (disc < -1e-10 * P * P || prod < -1e-10 * P * P)
    throw std::domain_error("family potential: invariants outside the orbit cone");
  const double s2 = 0.5 * (P + std::sqrt(std::max(disc, 0.0)));
  const double t2 = 0.5 * (P - std::sqrt(std::max(disc, 0.0)));
  const double s = std::sqrt(std::max(s2, 0.0));
  const double t = std::sqrt(std::max(t2, 0.0));
  if (std::min(s, t) < 1e-3)
    throw std::domain_error("family potential: factor parameter below the 1e-3 guard");
  if (s - t < 1e-3)
    throw std::domain_error("family potential: near-diagonal point, (s^2-t^2) inversion singular");

  const double rho_s = std::sqrt(16 * k4 + c_ / (s * s));
  const double rho_t = std::sqrt(16 * k4 + c_ / (t * t));
  const double rho_ss = -c_ / (s * s * s * rho_s);
  const double rho_tt = -c_ / (t * t * t * rho_t);

  PotentialJet j;
  j.rho = family_antiderivative(k_, c_, s) + family_antiderivative(k_, c_, t);
  // first order: the closed-form inversion of the 2x2 chain rule
  j.rho1 = -(t * t * t * rho_s - s * s * s * rho_t) / (8 * k2 * s * t * (s * s - t * t));
  j.rho2 = (t * rho_s - s * rho_t) / (32 * k2 * s * t * (s * s - t * t));
  // second order: 3x3 linear solve of the differentiated chain rule
  const double C1 = 8 * k2 * s, C2 = 32 * k2 * s * s * s;
  const double D1 = 8 * k2 * t, D2 = 32 * k2 * t * t * t;
  Eigen::Matrix3d M;
  M << C1 * C1, 2 * C1 * C2, C2 * C2,
       C1 * D1, C1 * D2 + C2 * D1, C2 * D2,
       D1 * D1, 2 * D1 * D2, D2 * D2;
  Eigen::Vector3d rhs;
  rhs << rho_ss - 8 * k2 * j.rho1 - 96 * k2 * s * s * j.rho2,
         0.0 /* rho_st */,
         rho_tt - 8 * k2 * j.rho1 - 96 * k2 * t * t * j.rho2;
  const Eigen::Vector3d h = M.colPivHouseholderQr().solve(rhs);
  j.rho11 = h[0];
  j.rho12 = h[1];
  j.rho22 = h[2];
  return j;
}

double jet_fd_validate(const Potential& p, double eta1, double eta2) {
  double worst = 0;
  auto update = [&](double fd, double analytic) {
    worst = std::max(worst, std::abs(fd - analytic) / std::max(1.0, std::abs(analytic)));
  };

  if (!p.two_invariant()) {
    const Jet1 j = p.jet1(eta1);
    const double h = 1e-4 * std::max(1.0, std::abs(eta1));
    auto rho = [&](double e) { return p.jet1(e).rho; };
    auto d1 = [&](double step) { return (rho(eta1 + step) - rho(eta1 - step)) / (2 * step); };
    update((4 * d1(h / 2) - d1(h)) / 3, j.d1);
    const double h2 = 1e-3 * std::max(1.0, std::abs(eta1));
    const double five = (-rho(eta1 + 2 * h2) + 16 * rho(eta1 + h2) - 30 * rho(eta1) +
                         16 * rho(eta1 - h2) - rho(eta1 - 2 * h2)) /
                        (12 * h2 * h2);
    update(five, j.d2);
    return worst;
  }

  const PotentialJet j = p.jet(eta1, eta2);
  auto rho = [&](double e1, double e2) { return p.jet(e1, e2).rho; };
  const double h1 = 1e-4 * std::max(1.0, std::abs(eta1));
  const double h2 = 1e-4 * std::max(1.0, std::abs(eta2));

  auto dr1 = [&](double s) { return (rho(eta1 + s, eta2) - rho(eta1 - s, eta2)) / (2 * s); };
  auto dr2 = [&](double s) { return (rho(eta1, eta2 + s) - rho(eta1, eta2 - s)) / (2 * s); };
  update((4 * dr1(h1 / 2) - dr1(h1)) / 3, j.rho1);
  update((4 * dr2(h2 / 2) - dr2(h2)) / 3, j.rho2);

  const double g1 = 1e-3 * std::max(1.0, std::abs(eta1));
  const double g2 = 1e-3 * std::max(1.0, std::abs(eta2));
  const double f11 = (-rho(eta1 + 2 * g1, eta2) + 16 * rho(eta1 + g1, eta2) -
                      30 * rho(eta1, eta2) + 16 * rho(eta1 - g1, eta2) -
                      rho(eta1 - 2 * g1, eta2)) /
                     (12 * g1 * g1);
  update(f11, j.rho11);
  const double f22 = (-rho(eta1, eta2 + 2 * g2) + 16 * rho(eta1, eta2 + g2) -
                      30 * rho(eta1, eta2) + 16 * rho(eta1, eta2 - g2) -
                      rho(eta1, eta2 - 2 * g2)) /
                     (12 * g2 * g2);
  update(f22, j.rho22);

  auto cross = [&](double a, double b) {
    return (rho(eta1 + a, eta2 + b) - rho(eta1 + a, eta2 - b) - rho(eta1 - a, eta2 + b) +
            rho(eta1 - a, eta2 - b)) /
           (4 * a * b);
  };
  update((4 * cross(g1 / 2, g2 / 2) - cross(g1, g2)) / 3, j.rho12);
  return worst;
}

}  // namespace nilorb
