#ifndef NILORB_ORBITS_HPP
#define NILORB_ORBITS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilorb/algebra.hpp"

namespace nilorb {

struct Partition {
  std::vector<int> parts;  // weakly decreasing, positive

  int sum() const;
  std::string to_string() const;           // "2,2,1"
  static Partition parse(const std::string& text);
  bool operator==(const Partition& o) const { return parts == o.parts; }
};

/// Identifier of a cohomogeneity-two nilpotent orbit: the algebra, the
/// Jordan partition (classical) and, for the D-family 2^4 type on matrix
/// sizes divisible by four, the +- variant distinguishing the two
/// SO-conjugacy classes of representatives.
struct OrbitId {
  AlgebraSpec algebra;
  Partition partition;  // empty for G2
  int variant = 0;      // 0 none, +1 or -1

  void validate() const;  // admissibility against the orbit table
  std::string to_string() const;
  static OrbitId parse(const std::string& text);  // "A:5:2,2,1", "D:8:2,2,2,2:+", "G2"
};

struct TangentVector {
  Element value;
  std::optional<Element> generator;  // A with value = [A, X]
};

/// The su(2)+su(2) frame the representative is built in: two commuting
/// sl2-triples with f = -sigma(e).  Flows map frames to frames.
struct So4Frame {
  Element eplus, fplus, hplus;
  Element eminus, fminus, hminus;
};

struct OrbitPoint {
  const LieAlgebra* alg = nullptr;
  OrbitId id;
  double s = 0, t = 0;
  Element X;
  double eta1 = 0, eta2 = 0;
  std::vector<TangentVector> tangent;  // complex basis of [g, X], with generators
  std::optional<So4Frame> frame;

  const LieAlgebra& algebra() const { return *alg; }
};

/// The standard representative X_{s,t} of the orbit.  t = 0 gives a
/// minimal-orbit point; generic cohomogeneity-two points need s, t > 0 with
/// s != t.
OrbitPoint representative(const LieAlgebra& g, const OrbitId& id, double s, double t,
                          const Tolerances& tol = {});

/// Jordan partition from the rank sequence of matrix powers in the defining
/// representation.  Classical algebras only; throws on non-nilpotent input.
Partition jordan_type(const Element& X, const Tolerances& tol = {});

/// eta1 = <X, sigma X>, eta2 = -<[X,sigma X],[X,sigma X]>.
std::pair<double, double> eta_invariants(const Element& X);

std::vector<TangentVector> tangent_basis(const Element& X, const Tolerances& tol = {});

int cohomogeneity(const Element& X, const Tolerances& tol = {});

/// Squared homothety constant of the su(2)-factor embedding, measured as
/// <e_+, sigma e_+> / 4 on the orbit's frame.  Classical ids only.
double measure_k2(const LieAlgebra& g, const OrbitId& id);

/// (X_+, X_-) with X = X_+ + X_-, [X_+, X_-] = 0, <X_+, sigma X_-> = 0.
/// Requires a point carrying its construction frame.
std::pair<Element, Element> so4_components(const OrbitPoint& P);

/// Conjugates the point (and its frame) by exp(a) for a pseudo-random
/// compact-form element a; invariants are preserved.
OrbitPoint random_orbit_point(const OrbitPoint& P, std::uint64_t seed,
                              const Tolerances& tol = {});

/// Spectral-radius estimate of ad(X) by power iteration; near zero for
/// nilpotent elements.
double ad_spectral_radius(const Element& X, int iterations = 50);

/// All orbit ids of the table at desk sizes: sl(4..7), so(7..10) both
/// admissible types (so(8) in both variants), sp(2..4), G2.
std::vector<OrbitId> desk_orbits();

}  // namespace nilorb

#endif
