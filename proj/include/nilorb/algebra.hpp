#ifndef NILORB_ALGEBRA_HPP
#define NILORB_ALGEBRA_HPP

#include <optional>
#include <string>
#include <vector>

#include "nilorb/rational.hpp"
#include "nilorb/types.hpp"

namespace nilorb {

enum class Family { A, B, C, D, G2 };

std::string family_name(Family f);

/// Which coefficient field a kernel computation runs over.
enum class CoefField { Complex, RealCompact };

/// Specification of a complex simple Lie algebra.
/// m is the matrix size for sl(m) / so(m), the rank for sp(2m); ignored for G2.
struct AlgebraSpec {
  Family family = Family::A;
  int m = 0;

  void validate() const;  // throws std::invalid_argument
  std::string to_string() const;
  static AlgebraSpec parse(const std::string& text);  // "A:5", "D:8", "G2"

  int matrix_size() const;  // defining representation size; 0 for G2
  int dimension() const;

  bool operator==(const AlgebraSpec& o) const { return family == o.family && m == o.m; }
};

class LieAlgebra;

/// An algebra element in basis coordinates.  The algebra must outlive it.
struct Element {
  const LieAlgebra* alg = nullptr;
  VecC c;

  double norm() const { return c.norm(); }
  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator*(Complex s) const;
  friend Element operator*(Complex s, const Element& x) { return x * s; }
};

/// A complex simple Lie algebra with exact rational structure constants,
/// exact Killing matrix, and the compact real structure.  Immutable after
/// construction; safe for concurrent reads.
class LieAlgebra {
public:
  static LieAlgebra build(const AlgebraSpec& spec);

  const AlgebraSpec& spec() const { return spec_; }
  int dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  bool has_matrix_realization() const { return !basis_mats_.empty(); }
  int matrix_size() const { return mat_size_; }
  int n_positive_roots() const { return n_positive_roots_; }

  Element zero() const;
  Element element(VecC coords) const;
  Element basis_element(int i) const;

  // Classical realizations only.
  MatC to_matrix(const Element& x) const;
  Element from_matrix(const MatC& m) const;
  /// Bilinear form of the realization (anti-diagonal ones for so, the
  /// 2x2-block skew form for sp); identity-sized zero matrix for sl.
  const MatR& form_matrix() const { return form_; }

  Element bracket(const Element& x, const Element& y) const;
  Complex killing(const Element& x, const Element& y) const;
  Complex inner(const Element& x, const Element& y) const;  // -killing
  Element sigma(const Element& x) const;
  MatC ad_matrix(const Element& x) const;
  /// Ad(exp(t a)) x.  Matrix-exponential conjugation for classical
  /// realizations, exp(t ad a) otherwise.
  Element adjoint_flow(const Element& a, double t, const Element& x) const;
  int centralizer_dimension(const Element& x, CoefField field,
                            const Tolerances& tol = {}) const;

  const MatR& sigma_matrix() const { return sigma_d_; }
  const MatR& killing_matrix() const { return killing_d_; }
  const Rational& killing_exact(int i, int j) const { return killing_q_[i * dim_ + j]; }
  /// Real basis of the compact form g = Fix(sigma), as complex coordinate
  /// vectors; real linear combinations of these are exactly the sigma-fixed
  /// elements.
  const std::vector<VecC>& compact_basis() const { return compact_basis_; }

  Element random_compact_element(Rng& rng) const;

  // Exact validation of the algebraic ground truth.  Both run at build and
  // throw on failure; exposed for the selftest and the corruption fixture.
  bool jacobi_exact() const;
  bool killing_invariance_exact() const;
  double jacobi_residual_float() const;

  /// Test fixture: returns a copy with one structure constant perturbed and
  /// build-time validation skipped.  Exists so negative controls can verify
  /// that the exact checks actually detect corruption.
  LieAlgebra corrupted_copy() const;

private:
  LieAlgebra() = default;
  void finalize(bool validate);

  struct TripQ {
    int i, j, k;
    Rational c;
  };
  struct TripD {
    int i, j, k;
    double c;
  };

  AlgebraSpec spec_;
  int dim_ = 0;
  int mat_size_ = 0;
  int n_positive_roots_ = -1;
  std::vector<std::string> labels_;

  std::vector<TripQ> constants_q_;
  std::vector<TripD> constants_d_;
  // dense pair index -> offsets into constants_q_ (contiguous per pair)
  std::vector<int> pair_begin_, pair_end_;

  std::vector<Rational> killing_q_;
  MatR killing_d_;
  MatC killing_c_;
  MatR sigma_d_;
  Eigen::MatrixXi sigma_i_;
  std::vector<VecC> compact_basis_;

  // classical realization: basis matrices with integer entries
  std::vector<MatI> basis_mats_;
  MatR form_;

  VecC coords_from_matrix(const MatC& m) const;

  friend LieAlgebra build_classical(const AlgebraSpec& spec);
  friend LieAlgebra build_g2();
};

inline Element bracket(const Element& x, const Element& y) { return x.alg->bracket(x, y); }
inline Complex inner(const Element& x, const Element& y) { return x.alg->inner(x, y); }
inline Complex killing(const Element& x, const Element& y) { return x.alg->killing(x, y); }
inline Element sigma(const Element& x) { return x.alg->sigma(x); }
inline MatC ad_matrix(const Element& x) { return x.alg->ad_matrix(x); }
inline Element adjoint_flow(const Element& a, double t, const Element& x) {
  return a.alg->adjoint_flow(a, t, x);
}

LieAlgebra build_algebra(const AlgebraSpec& spec);

/// Rank of a singular-value list under the shared tolerance policy:
/// values below rank_rel * s_max count as zero and the ratio across the cut
/// must exceed rank_gap, otherwise a std::runtime_error carrying the gap is
/// thrown.
int rank_with_gap(const VecR& singular_values, const Tolerances& tol,
                  const char* what);

}  // namespace nilorb

#endif
