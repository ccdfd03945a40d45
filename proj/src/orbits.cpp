#include "nilorb/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nilorb {

int Partition::sum() const {
  int s = 0;
  for (int p : parts) s += p;
  return s;
}

std::string Partition::to_string() const {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(parts[i]);
  }
  return out;
}

Partition Partition::parse(const std::string& text) {
  Partition p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      const int v = std::stoi(item, &pos);
      if (pos != item.size() || v <= 0) throw std::invalid_argument("");
      p.parts.push_back(v);
    } catch (...) {
      throw std::invalid_argument("bad partition entry '" + item + "'");
    }
  }
  if (p.parts.empty()) throw std::invalid_argument("empty partition");
  if (!std::is_sorted(p.parts.rbegin(), p.parts.rend()))
    throw std::invalid_argument("partition not weakly decreasing: " + text);
  return p;
}

namespace {

Partition two_two_ones(int n) {
  Partition p;
  p.parts = {2, 2};
  for (int i = 0; i < n - 4; ++i) p.parts.push_back(1);
  return p;
}

Partition three_ones(int n) {
  Partition p;
  p.parts = {3};
  for (int i = 0; i < n - 3; ++i) p.parts.push_back(1);
  return p;
}

Partition two_four_ones(int n) {
  Partition p;
  p.parts = {2, 2, 2, 2};
  for (int i = 0; i < n - 8; ++i) p.parts.push_back(1);
  return p;
}

}  // namespace

void OrbitId::validate() const {
  algebra.validate();
  const int n = algebra.matrix_size();
  switch (algebra.family) {
    case Family::A:
      if (n < 4 || !(partition == two_two_ones(n)))
        throw std::invalid_argument("sl(" + std::to_string(n) +
                                    ") cohomogeneity-two orbit must be 2,2,1^(m-4) with m >= 4");
      if (variant != 0) throw std::invalid_argument("variant only applies to the D family");
      return;
    case Family::C:
      if (!(partition == two_two_ones(n)))
        throw std::invalid_argument("sp(" + std::to_string(n) +
                                    ") cohomogeneity-two orbit must be 2,2,1^(2n-4)");
      if (variant != 0) throw std::invalid_argument("variant only applies to the D family");
      return;
    case Family::B:
    case Family::D: {
      if (algebra.family == Family::D && n < 6)
        throw std::invalid_argument("so(" + std::to_string(n) + ") carries no such orbit");
      const bool is31 = partition == three_ones(n);
      const bool is24 = n >= 8 && partition == two_four_ones(n);
      if (!is31 && !is24)
        throw std::invalid_argument("so(" + std::to_string(n) +
                                    ") orbit must be 3,1^(n-3) or 2,2,2,2,1^(n-8)");
      if (variant != 0) {
        if (!(is24 && algebra.family == Family::D && n % 4 == 0))
          throw std::invalid_argument(
              "+- variants exist only for the D-family 2^4 type with size divisible by 4");
      }
      return;
    }
    case Family::G2:
      if (!partition.parts.empty() || variant != 0)
        throw std::invalid_argument("the G2 orbit takes no partition or variant");
      return;
  }
  throw std::invalid_argument("unknown family");
}

std::string OrbitId::to_string() const {
  if (algebra.family == Family::G2) return "G2";
  std::string s = algebra.to_string() + ":" + partition.to_string();
  if (variant > 0) s += ":+";
  if (variant < 0) s += ":-";
  return s;
}

OrbitId OrbitId::parse(const std::string& text) {
  OrbitId id;
  if (text == "G2" || text == "g2") {
    id.algebra = AlgebraSpec{Family::G2, 0};
    id.validate();
    return id;
  }
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() < 3 || parts.size() > 4)
    throw std::invalid_argument("orbit id '" + text + "' not of the form F:m:partition[:+-]");
  id.algebra = AlgebraSpec::parse(parts[0] + ":" + parts[1]);
  id.partition = Partition::parse(parts[2]);
  if (parts.size() == 4) {
    if (parts[3] == "+") id.variant = +1;
    else if (parts[3] == "-") id.variant = -1;
    else throw std::invalid_argument("orbit variant must be + or -");
  }
  id.validate();
  return id;
}

double ad_spectral_radius(const Element& X, int iterations) {
  const MatC ad = X.alg->ad_matrix(X);
  const double scale = ad.norm();
  if (scale == 0) return 0;
  VecC v = VecC::Ones(ad.rows());
  v /= v.norm();
  double rho = 0;
  for (int i = 0; i < iterations; ++i) {
    v = ad * v;
    rho = v.norm();
    if (rho < 1e-300) return 0;
    v /= rho;
  }
  return rho;
}

std::pair<double, double> eta_invariants(const Element& X) {
  const LieAlgebra& g = *X.alg;
  const Element sX = g.sigma(X);
  const Complex e1 = g.inner(X, sX);
  const Element Y = g.bracket(X, sX);
  const Complex e2 = -g.inner(Y, Y);
  return {e1.real(), e2.real()};
}

std::vector<TangentVector> tangent_basis(const Element& X, const Tolerances& tol) {
  const LieAlgebra& g = *X.alg;
  const MatC ad = g.ad_matrix(X);
  Eigen::JacobiSVD<MatC> svd(ad);
  const int r = rank_with_gap(svd.singularValues(), tol, "tangent basis");
  std::vector<TangentVector> out;
  if (r == 0) return out;
  Eigen::ColPivHouseholderQR<MatC> qr(ad);
  const auto perm = qr.colsPermutation().indices();
  for (int k = 0; k < r; ++k) {
    const int j = perm[k];
    // xi_A = [A, X] = -ad(X) A for the generator A = b_j
    TangentVector tv{Element{&g, -ad.col(j)}, g.basis_element(j)};
    out.push_back(std::move(tv));
  }
  return out;
}

int cohomogeneity(const Element& X, const Tolerances& tol) {
  const LieAlgebra& g = *X.alg;
  const int n = g.dim();
  const int zc = g.centralizer_dimension(X, CoefField::Complex, tol);
  const int zr = g.centralizer_dimension(X, CoefField::RealCompact, tol);
  return 2 * (n - zc) - (n - zr);
}

Partition jordan_type(const Element& X, const Tolerances& tol) {
  const LieAlgebra& g = *X.alg;
  if (!g.has_matrix_realization())
    throw std::invalid_argument("jordan_type needs a classical matrix realization");
  const int n = g.matrix_size();
  const MatC M = g.to_matrix(X);

  std::vector<int> ranks = {n};
  MatC P = MatC::Identity(n, n);
  for (int k = 1; k <= n; ++k) {
    P = P * M;
    if (P.norm() <= 1e-12 * std::max(1.0, std::pow(M.norm(), k))) {
      ranks.push_back(0);
      break;
    }
    Eigen::JacobiSVD<MatC> svd(P);
    ranks.push_back(rank_with_gap(svd.singularValues(), tol, "jordan rank sequence"));
    if (ranks.back() == 0) break;
  }
  if (ranks.back() != 0) throw std::invalid_argument("jordan_type: element is not nilpotent");

  Partition p;
  // blocks of size >= k number r_{k-1} - r_k
  std::vector<int> atleast;
  for (size_t k = 1; k < ranks.size(); ++k) atleast.push_back(ranks[k - 1] - ranks[k]);
  for (size_t k = 0; k < atleast.size(); ++k) {
    const int exact = atleast[k] - (k + 1 < atleast.size() ? atleast[k + 1] : 0);
    for (int c = 0; c < exact; ++c) p.parts.push_back(int(k) + 1);
  }
  std::sort(p.parts.rbegin(), p.parts.rend());
  return p;
}

namespace {

// 0-based matrix-unit element builders in the defining representation
Element mat_elem(const LieAlgebra& g, std::initializer_list<std::tuple<int, int, double>> entries) {
  MatC m = MatC::Zero(g.matrix_size(), g.matrix_size());
  for (const auto& [i, j, v] : entries) m(i, j) += v;
  return g.from_matrix(m);
}

Element so_F(const LieAlgebra& g, int i, int j) {  // E_ij - E_{m-1-j, m-1-i}
  const int m = g.matrix_size();
  return mat_elem(g, {{i, j, 1.0}, {m - 1 - j, m - 1 - i, -1.0}});
}

struct FramePlan {
  Element eplus, eminus;
};

So4Frame frame_from_pair(const LieAlgebra& g, const Element& eplus, const Element& eminus) {
  So4Frame f{eplus,
             g.sigma(eplus) * Complex(-1, 0),
             g.zero(),
             eminus,
             g.sigma(eminus) * Complex(-1, 0),
             g.zero()};
  f.hplus = g.bracket(f.eplus, f.fplus);
  f.hminus = g.bracket(f.eminus, f.fminus);
  // sl2 normalization and commutation of the two factors
  auto check = [&](const Element& e, const Element& h) {
    if ((g.bracket(h, e) - e * 2.0).norm() > 1e-10 * e.norm())
      throw std::logic_error("frame not sl2-normalized");
  };
  check(f.eplus, f.hplus);
  check(f.eminus, f.hminus);
  if (g.bracket(f.eplus, f.eminus).norm() > 1e-10 ||
      g.bracket(f.eplus, f.fminus).norm() > 1e-10 ||
      g.bracket(f.hplus, f.eminus).norm() > 1e-10)
    throw std::logic_error("frame factors do not commute");
  return f;
}

}  // namespace

OrbitPoint representative(const LieAlgebra& g, const OrbitId& id, double s, double t,
                          const Tolerances& tol) {
  id.validate();
  if (!(g.spec() == id.algebra))
    throw std::invalid_argument("algebra does not match the orbit id");
  if (s < 0 || t < 0 || (s == 0 && t == 0))
    throw std::invalid_argument("representative needs s, t >= 0, not both zero");

  OrbitPoint P;
  P.alg = &g;
  P.id = id;
  P.s = s;
  P.t = t;

  const int n = g.matrix_size();
  if (id.algebra.family == Family::G2) {
    // X = s E_long + t E_short on the two commuting roots of the orbit;
    // the s-label goes with the long root so that eta1 = 8(s^2 + 3t^2).
    const Element Elong = g.basis_element(7);   // E[3a+2b]
    const Element Eshort = g.basis_element(5);  // E[2a+b]
    P.X = Elong * Complex(s, 0) + Eshort * Complex(t, 0);
  } else {
    FramePlan plan{g.zero(), g.zero()};
    switch (id.algebra.family) {
      case Family::A:
      case Family::C:
        plan.eplus = mat_elem(g, {{0, 1, 1.0}});
        plan.eminus = mat_elem(g, {{2, 3, 1.0}});
        break;
      case Family::B:
      case Family::D: {
        const bool is31 = (id.partition.parts[0] == 3);
        if (is31) {
          plan.eplus = so_F(g, 0, 1);
          plan.eminus = so_F(g, 0, n - 2);
        } else if (id.variant >= 0) {
          plan.eplus = so_F(g, 0, 1);
          plan.eminus = so_F(g, 2, 3);
        } else {
          plan.eplus = so_F(g, n - 2, 0);
          plan.eminus = so_F(g, 2, 3);
        }
        break;
      }
      default:
        throw std::logic_error("unreachable");
    }
    P.frame = frame_from_pair(g, plan.eplus, plan.eminus);
    P.X = plan.eplus * Complex(s, 0) + plan.eminus * Complex(t, 0);

    if (s > 0 && t > 0) {
      const Partition jt = jordan_type(P.X, tol);
      if (!(jt == id.partition))
        throw std::logic_error("representative has Jordan type " + jt.to_string() +
                               ", expected " + id.partition.to_string());
    }
  }

  const double scale = g.ad_matrix(P.X).norm();
  if (ad_spectral_radius(P.X) > 1e-8 * std::max(1.0, scale))
    throw std::logic_error("representative is not nilpotent");

  const auto [e1, e2] = eta_invariants(P.X);
  P.eta1 = e1;
  P.eta2 = e2;
  P.tangent = tangent_basis(P.X, tol);
  return P;
}

double measure_k2(const LieAlgebra& g, const OrbitId& id) {
  if (id.algebra.family == Family::G2)
    throw std::invalid_argument("k^2 is defined through the su(2)+su(2) frame; unsupported for G2");
  const OrbitPoint P = representative(g, id, 1.0, 1.0);
  const Element eplus = P.frame->eplus;
  return g.inner(eplus, g.sigma(eplus)).real() / 4.0;
}

std::pair<Element, Element> so4_components(const OrbitPoint& P) {
  if (!P.frame)
    throw std::invalid_argument("point carries no su(2)+su(2) frame (not from representative)");
  return {P.frame->eplus * Complex(P.s, 0), P.frame->eminus * Complex(P.t, 0)};
}

OrbitPoint random_orbit_point(const OrbitPoint& P, std::uint64_t seed, const Tolerances& tol) {
  const LieAlgebra& g = P.algebra();
  Rng rng(seed);
  const Element a = g.random_compact_element(rng);

  OrbitPoint Q;
  Q.alg = P.alg;
  Q.id = P.id;
  Q.s = P.s;
  Q.t = P.t;
  Q.X = g.adjoint_flow(a, 1.0, P.X);
  if (P.frame) {
    So4Frame f{g.adjoint_flow(a, 1.0, P.frame->eplus),  g.adjoint_flow(a, 1.0, P.frame->fplus),
               g.adjoint_flow(a, 1.0, P.frame->hplus),  g.adjoint_flow(a, 1.0, P.frame->eminus),
               g.adjoint_flow(a, 1.0, P.frame->fminus), g.adjoint_flow(a, 1.0, P.frame->hminus)};
    Q.frame = std::move(f);
  }
  const auto [e1, e2] = eta_invariants(Q.X);
  if (std::abs(e1 - P.eta1) > 1e-9 * std::max(1.0, std::abs(P.eta1)) ||
      std::abs(e2 - P.eta2) > 1e-9 * std::max(1.0, std::abs(P.eta2)))
    throw std::logic_error("invariants drifted under the compact flow");
  Q.eta1 = e1;
  Q.eta2 = e2;
  Q.tangent = tangent_basis(Q.X, tol);
  return Q;
}

std::vector<OrbitId> desk_orbits() {
  std::vector<OrbitId> ids;
  auto add = [&](const std::string& s) { ids.push_back(OrbitId::parse(s)); };
  add("A:4:2,2");
  add("A:5:2,2,1");
  add("A:6:2,2,1,1");
  add("A:7:2,2,1,1,1");
  add("B:7:3,1,1,1,1");
  add("D:8:3,1,1,1,1,1");
  add("B:9:3,1,1,1,1,1,1");
  add("D:10:3,1,1,1,1,1,1,1");
  add("D:8:2,2,2,2:+");
  add("D:8:2,2,2,2:-");
  add("B:9:2,2,2,2,1");
  add("D:10:2,2,2,2,1,1");
  add("C:2:2,2");
  add("C:3:2,2,1,1");
  add("C:4:2,2,1,1,1,1");
  add("G2");
  return ids;
}

}  // namespace nilorb
