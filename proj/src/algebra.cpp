#include "nilorb/algebra.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "nilorb/chevalley.hpp"

namespace nilorb {

std::string family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::G2: return "G2";
  }
  return "?";
}

void AlgebraSpec::validate() const {
  switch (family) {
    case Family::A:
      if (m < 2) throw std::invalid_argument("sl(m) needs m >= 2");
      return;
    case Family::B:
      if (m < 5 || m % 2 == 0) throw std::invalid_argument("so(m), B family, needs odd m >= 5");
      return;
    case Family::D:
      // m = 4 is the non-simple rank-2 product; kept constructible as a model.
      if (m < 4 || m % 2 != 0) throw std::invalid_argument("so(m), D family, needs even m >= 4");
      return;
    case Family::C:
      if (m < 2) throw std::invalid_argument("sp(2m) needs m >= 2");
      return;
    case Family::G2:
      return;
  }
  throw std::invalid_argument("unknown family");
}

std::string AlgebraSpec::to_string() const {
  if (family == Family::G2) return "G2";
  return family_name(family) + ":" + std::to_string(m);
}

AlgebraSpec AlgebraSpec::parse(const std::string& text) {
  std::string t = text;
  if (t == "G2" || t == "g2") {
    AlgebraSpec s{Family::G2, 0};
    return s;
  }
  const auto colon = t.find(':');
  if (colon == std::string::npos || colon == 0)
    throw std::invalid_argument("algebra spec '" + text + "' not of the form F:m or G2");
  const std::string fam = t.substr(0, colon);
  AlgebraSpec s;
  if (fam == "A") s.family = Family::A;
  else if (fam == "B") s.family = Family::B;
  else if (fam == "C") s.family = Family::C;
  else if (fam == "D") s.family = Family::D;
  else throw std::invalid_argument("unknown family '" + fam + "'");
  try {
    size_t pos = 0;
    s.m = std::stoi(t.substr(colon + 1), &pos);
    if (pos != t.size() - colon - 1) throw std::invalid_argument("");
  } catch (...) {
    throw std::invalid_argument("bad size in algebra spec '" + text + "'");
  }
  s.validate();
  return s;
}

int AlgebraSpec::matrix_size() const {
  switch (family) {
    case Family::A:
    case Family::B:
    case Family::D: return m;
    case Family::C: return 2 * m;
    case Family::G2: return 0;
  }
  return 0;
}

int AlgebraSpec::dimension() const {
  switch (family) {
    case Family::A: return m * m - 1;
    case Family::B:
    case Family::D: return m * (m - 1) / 2;
    case Family::C: return m * (2 * m + 1);
    case Family::G2: return 14;
  }
  return 0;
}

Element Element::operator+(const Element& o) const { return {alg, c + o.c}; }
Element Element::operator-(const Element& o) const { return {alg, c - o.c}; }
Element Element::operator*(Complex s) const { return {alg, (c * s).eval()}; }

namespace {

void require_same(const Element& x, const Element& y) {
  if (x.alg != y.alg || x.c.size() != y.c.size())
    throw std::invalid_argument("elements from different algebras");
}

using Vec64 = std::vector<std::int64_t>;

// Exact coordinates of an integer matrix in the family basis.  Throws if the
// matrix is not in the algebra.
Vec64 int_coords(Family fam, int m, const MatI& M, int dim) {
  Vec64 c(dim, 0);
  if (fam == Family::A) {
    int idx = 0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (i != j) c[idx++] = M(i, j);
    std::int64_t run = 0;
    for (int k = 0; k < m - 1; ++k) {
      run += M(k, k);
      c[idx++] = run;
    }
  } else if (fam == Family::B || fam == Family::D) {
    int idx = 0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (i + j <= m - 2) c[idx++] = M(i, j);
  } else {  // C
    const int n = 2 * m;
    int idx = 0;
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        const int qb = q ^ 1, pb = p ^ 1;
        if (std::make_pair(p, q) <= std::make_pair(qb, pb)) c[idx++] = M(p, q);
      }
  }
  return c;
}

struct ClassicalBasis {
  std::vector<MatI> mats;
  std::vector<std::string> labels;
};

ClassicalBasis make_basis(Family fam, int m) {
  ClassicalBasis b;
  auto unit = [&](int n, int i, int j) {
    MatI e = MatI::Zero(n, n);
    e(i, j) = 1;
    return e;
  };
  if (fam == Family::A) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (i != j) {
          b.mats.push_back(unit(m, i, j));
          b.labels.push_back("E(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
        }
    for (int k = 0; k < m - 1; ++k) {
      b.mats.push_back(unit(m, k, k) - unit(m, k + 1, k + 1));
      b.labels.push_back("H(" + std::to_string(k + 1) + ")");
    }
  } else if (fam == Family::B || fam == Family::D) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (i + j <= m - 2) {
          MatI f = unit(m, i, j);
          f(m - 1 - j, m - 1 - i) -= 1;
          b.mats.push_back(f);
          b.labels.push_back("F(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
        }
  } else {  // C: sp(2m) with the 2x2-block skew form
    const int n = 2 * m;
    auto mu = [](int p) { return (p % 2 == 0) ? -1 : +1; };
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        const int qb = q ^ 1, pb = p ^ 1;
        if (std::make_pair(p, q) > std::make_pair(qb, pb)) continue;
        MatI mat = unit(n, p, q);
        if (std::make_pair(p, q) != std::make_pair(qb, pb))
          mat(qb, pb) -= mu(p) * mu(q);
        b.mats.push_back(mat);
        b.labels.push_back("B(" + std::to_string(p + 1) + "," + std::to_string(q + 1) + ")");
      }
  }
  return b;
}

MatI form_matrix_int(Family fam, int m) {
  if (fam == Family::B || fam == Family::D) {
    MatI f = MatI::Zero(m, m);
    for (int i = 0; i < m; ++i) f(i, m - 1 - i) = 1;
    return f;
  }
  if (fam == Family::C) {
    const int n = 2 * m;
    MatI f = MatI::Zero(n, n);
    for (int a = 0; a < m; ++a) {
      f(2 * a, 2 * a + 1) = 1;
      f(2 * a + 1, 2 * a) = -1;
    }
    return f;
  }
  return MatI::Zero(0, 0);
}

}  // namespace

LieAlgebra build_classical(const AlgebraSpec& spec) {
  const int m = spec.m;
  const int n = spec.matrix_size();
  const int dim = spec.dimension();
  ClassicalBasis basis = make_basis(spec.family, m);
  if (int(basis.mats.size()) != dim) throw std::logic_error("basis enumeration size mismatch");

  const MatI form = form_matrix_int(spec.family, m);
  for (const MatI& B : basis.mats) {
    if (spec.family == Family::A) {
      if (B.trace() != 0) throw std::logic_error("sl basis element has nonzero trace");
    } else {
      const MatI r = B.transpose() * form + form * B;
      if (r.cwiseAbs().maxCoeff() != 0)
        throw std::logic_error("basis element violates the defining bilinear form");
    }
  }

  LieAlgebra g;
  g.spec_ = spec;
  g.dim_ = dim;
  g.mat_size_ = n;
  g.labels_ = basis.labels;
  g.basis_mats_ = basis.mats;
  g.form_ = form.cast<double>();

  auto check_reconstruct = [&](const Vec64& c, const MatI& M) {
    MatI r = MatI::Zero(n, n);
    for (int k = 0; k < dim; ++k)
      if (c[k] != 0) r += static_cast<int>(c[k]) * basis.mats[k];
    if ((r - M).cwiseAbs().maxCoeff() != 0)
      throw std::logic_error("matrix outside the algebra in coordinatization");
  };

  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      if (i == j) continue;
      const MatI comm = basis.mats[i] * basis.mats[j] - basis.mats[j] * basis.mats[i];
      const Vec64 c = int_coords(spec.family, m, comm, dim);
      check_reconstruct(c, comm);
      for (int k = 0; k < dim; ++k)
        if (c[k] != 0) g.constants_q_.push_back({i, j, k, Rational(c[k])});
    }

  g.sigma_i_ = Eigen::MatrixXi::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const MatI s = -basis.mats[i].transpose();  // sigma(X) = -conj(X)^t on real matrices
    const Vec64 c = int_coords(spec.family, m, s, dim);
    check_reconstruct(c, s);
    for (int k = 0; k < dim; ++k) g.sigma_i_(k, i) = static_cast<int>(c[k]);
  }

  g.finalize(true);
  return g;
}

LieAlgebra build_g2() {
  const G2Tables t = g2_chevalley_tables();
  LieAlgebra g;
  g.spec_ = AlgebraSpec{Family::G2, 0};
  g.dim_ = t.dim;
  g.mat_size_ = 0;
  g.n_positive_roots_ = t.n_positive;
  g.labels_ = t.labels;
  for (const auto& tr : t.constants) g.constants_q_.push_back({tr.i, tr.j, tr.k, tr.c});
  g.sigma_i_ = t.sigma;
  g.form_ = MatR::Zero(0, 0);
  g.finalize(true);
  return g;
}

LieAlgebra LieAlgebra::build(const AlgebraSpec& spec) {
  spec.validate();
  if (spec.family == Family::G2) return build_g2();
  return build_classical(spec);
}

LieAlgebra build_algebra(const AlgebraSpec& spec) { return LieAlgebra::build(spec); }

void LieAlgebra::finalize(bool validate) {
  const int n = dim_;

  std::sort(constants_q_.begin(), constants_q_.end(), [](const TripQ& a, const TripQ& b) {
    return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
  });
  pair_begin_.assign(n * n + 1, 0);
  pair_end_.assign(n * n, 0);
  {
    std::vector<int> count(n * n, 0);
    for (const auto& t : constants_q_) count[t.i * n + t.j]++;
    int acc = 0;
    for (int p = 0; p < n * n; ++p) {
      pair_begin_[p] = acc;
      acc += count[p];
      pair_end_[p] = acc;
    }
    pair_begin_[n * n] = acc;
  }
  // numeric mirror over pairs i < j only; the two-sided accumulation in
  // bracket() then gives bit-exact antisymmetry
  constants_d_.clear();
  for (const auto& t : constants_q_)
    if (t.i < t.j) constants_d_.push_back({t.i, t.j, t.k, t.c.to_double()});

  // exact Killing matrix: K_ij = sum_{a,b} c_{ia}^b c_{jb}^a
  killing_q_.assign(n * n, Rational(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rational k(0);
      for (int a = 0; a < n; ++a) {
        for (int idx = pair_begin_[i * n + a]; idx < pair_end_[i * n + a]; ++idx) {
          const int b = constants_q_[idx].k;
          for (int idx2 = pair_begin_[j * n + b]; idx2 < pair_end_[j * n + b]; ++idx2)
            if (constants_q_[idx2].k == a) k += constants_q_[idx].c * constants_q_[idx2].c;
        }
      }
      killing_q_[i * n + j] = k;
    }

  killing_d_ = MatR::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) killing_d_(i, j) = killing_q_[i * n + j].to_double();
  killing_c_ = killing_d_.cast<Complex>();
  sigma_d_ = sigma_i_.cast<double>();

  // compact form: z with S conj(z) = z, i.e. Re z in ker(S-1), Im z in ker(S+1)
  compact_basis_.clear();
  {
    Eigen::FullPivLU<MatR> lup(MatR(sigma_d_ + MatR::Identity(n, n)));
    const MatR plus = lup.image(MatR(sigma_d_ + MatR::Identity(n, n)));
    Eigen::FullPivLU<MatR> lum(MatR(sigma_d_ - MatR::Identity(n, n)));
    const MatR minus = lum.image(MatR(sigma_d_ - MatR::Identity(n, n)));
    for (int c = 0; c < plus.cols(); ++c)
      compact_basis_.push_back(plus.col(c).cast<Complex>());
    for (int c = 0; c < minus.cols(); ++c)
      compact_basis_.push_back(Complex(0, 1) * minus.col(c).cast<Complex>());
    if (int(compact_basis_.size()) != n)
      throw std::logic_error("compact form dimension mismatch");
  }

  if (!validate) return;

  // sigma is an involution
  if (((sigma_i_ * sigma_i_) - Eigen::MatrixXi::Identity(n, n)).cwiseAbs().maxCoeff() != 0)
    throw std::logic_error("sigma is not an involution");

  // sigma is an automorphism: sigma[b_i, b_j] = [sigma b_i, sigma b_j] exactly.
  // S has a single +-1 entry per column, so both sides stay exact.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<Rational> lhs(n), rhs(n);
      for (int idx = pair_begin_[i * n + j]; idx < pair_end_[i * n + j]; ++idx) {
        const auto& t = constants_q_[idx];
        for (int k = 0; k < n; ++k)
          if (sigma_i_(k, t.k) != 0) lhs[k] += t.c * Rational(sigma_i_(k, t.k));
      }
      int pi = -1, pj = -1, si = 0, sj = 0;
      for (int k = 0; k < n; ++k) {
        if (sigma_i_(k, i) != 0) { pi = k; si = sigma_i_(k, i); }
        if (sigma_i_(k, j) != 0) { pj = k; sj = sigma_i_(k, j); }
      }
      for (int idx = pair_begin_[pi * n + pj]; idx < pair_end_[pi * n + pj]; ++idx)
        rhs[constants_q_[idx].k] += constants_q_[idx].c * Rational(si * sj);
      for (int k = 0; k < n; ++k)
        if (lhs[k] != rhs[k]) throw std::logic_error("sigma is not an automorphism");
    }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (killing_q_[i * n + j] != killing_q_[j * n + i])
        throw std::logic_error("Killing matrix not symmetric");

  if (!jacobi_exact()) throw std::logic_error("Jacobi identity violated");
  if (!killing_invariance_exact()) throw std::logic_error("Killing invariance violated");

  // -K(x, sigma y) must be Hermitian positive definite (compact real form)
  MatR herm = -killing_d_ * sigma_d_;
  if ((herm - herm.transpose()).cwiseAbs().maxCoeff() > 1e-9 * herm.cwiseAbs().maxCoeff())
    throw std::logic_error("-K(x, sigma y) not symmetric");
  Eigen::SelfAdjointEigenSolver<MatR> es(0.5 * (herm + herm.transpose()));
  if (es.eigenvalues().minCoeff() <= 0)
    throw std::logic_error("-K(x, sigma y) not positive definite");
}

Element LieAlgebra::zero() const { return {this, VecC::Zero(dim_)}; }

Element LieAlgebra::element(VecC coords) const {
  if (coords.size() != dim_) throw std::invalid_argument("coordinate size mismatch");
  return {this, std::move(coords)};
}

Element LieAlgebra::basis_element(int i) const {
  VecC c = VecC::Zero(dim_);
  c[i] = 1.0;
  return {this, std::move(c)};
}

MatC LieAlgebra::to_matrix(const Element& x) const {
  if (!has_matrix_realization()) throw std::invalid_argument("no matrix realization");
  MatC M = MatC::Zero(mat_size_, mat_size_);
  for (int k = 0; k < dim_; ++k) {
    if (x.c[k] == 0.0) continue;
    M += x.c[k] * basis_mats_[k].cast<Complex>();
  }
  return M;
}

VecC LieAlgebra::coords_from_matrix(const MatC& M) const {
  const int m = spec_.m;
  VecC c = VecC::Zero(dim_);
  if (spec_.family == Family::A) {
    int idx = 0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (i != j) c[idx++] = M(i, j);
    Complex run = 0;
    for (int k = 0; k < m - 1; ++k) {
      run += M(k, k);
      c[idx++] = run;
    }
  } else if (spec_.family == Family::B || spec_.family == Family::D) {
    int idx = 0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (i + j <= m - 2) c[idx++] = M(i, j);
  } else {
    const int n = 2 * m;
    int idx = 0;
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        const int qb = q ^ 1, pb = p ^ 1;
        if (std::make_pair(p, q) <= std::make_pair(qb, pb)) c[idx++] = M(p, q);
      }
  }
  return c;
}

Element LieAlgebra::from_matrix(const MatC& M) const {
  if (!has_matrix_realization()) throw std::invalid_argument("no matrix realization");
  if (M.rows() != mat_size_ || M.cols() != mat_size_)
    throw std::invalid_argument("matrix size mismatch");
  Element x{this, coords_from_matrix(M)};
  const double res = (to_matrix(x) - M).norm();
  if (res > 1e-9 * std::max(1.0, M.norm()))
    throw std::invalid_argument("matrix is not in the algebra (residual " + std::to_string(res) + ")");
  return x;
}

Element LieAlgebra::bracket(const Element& x, const Element& y) const {
  require_same(x, y);
  if (x.alg != this) throw std::invalid_argument("foreign element");
  VecC z = VecC::Zero(dim_);
  for (const auto& t : constants_d_) {
    const Complex term = x.c[t.i] * y.c[t.j] - x.c[t.j] * y.c[t.i];
    if (term != 0.0) z[t.k] += t.c * term;
  }
  return {this, std::move(z)};
}

Complex LieAlgebra::killing(const Element& x, const Element& y) const {
  require_same(x, y);
  return x.c.transpose() * (killing_c_ * y.c);
}

Complex LieAlgebra::inner(const Element& x, const Element& y) const { return -killing(x, y); }

Element LieAlgebra::sigma(const Element& x) const {
  VecC z = VecC::Zero(dim_);
  const VecC xc = x.c.conjugate();
  for (int j = 0; j < dim_; ++j) {
    if (xc[j] == 0.0) continue;
    for (int k = 0; k < dim_; ++k)
      if (sigma_i_(k, j) != 0) z[k] += double(sigma_i_(k, j)) * xc[j];
  }
  return {this, std::move(z)};
}

MatC LieAlgebra::ad_matrix(const Element& x) const {
  MatC A = MatC::Zero(dim_, dim_);
  for (const auto& t : constants_d_) {
    if (x.c[t.i] != 0.0) A(t.k, t.j) += t.c * x.c[t.i];
    if (x.c[t.j] != 0.0) A(t.k, t.i) -= t.c * x.c[t.j];
  }
  return A;
}

Element LieAlgebra::adjoint_flow(const Element& a, double t, const Element& x) const {
  require_same(a, x);
  if (has_matrix_realization()) {
    const MatC A = to_matrix(a);
    const MatC ep = (t * A).exp();
    const MatC em = (-t * A).exp();
    const MatC Y = ep * to_matrix(x) * em;
    Element out{this, coords_from_matrix(Y)};
    return out;
  }
  const MatC ad = ad_matrix(a);
  return {this, ((t * ad).exp() * x.c).eval()};
}

int rank_with_gap(const VecR& sv, const Tolerances& tol, const char* what) {
  const int n = int(sv.size());
  if (n == 0) return 0;
  const double smax = sv[0];
  if (smax <= 0) return 0;
  const double cut = tol.rank_rel * smax;
  int r = 0;
  while (r < n && sv[r] > cut) ++r;
  if (r > 0 && r < n && sv[r] > 0 && sv[r - 1] / sv[r] < tol.rank_gap) {
    std::ostringstream os;
    os << what << ": ambiguous rank cut, singular values " << sv[r - 1] << " / " << sv[r]
       << " give gap " << sv[r - 1] / sv[r] << " < required " << tol.rank_gap;
    throw std::runtime_error(os.str());
  }
  return r;
}

int LieAlgebra::centralizer_dimension(const Element& x, CoefField field,
                                      const Tolerances& tol) const {
  if (field == CoefField::Complex) {
    Eigen::JacobiSVD<MatC> svd(ad_matrix(x));
    const int r = rank_with_gap(svd.singularValues(), tol, "centralizer (complex)");
    return dim_ - r;
  }
  // real-compact: restrict generators to the compact form
  const MatC ad = ad_matrix(x);
  MatR M(2 * dim_, dim_);
  for (int j = 0; j < dim_; ++j) {
    const VecC col = ad * compact_basis_[j];
    M.col(j).head(dim_) = col.real();
    M.col(j).tail(dim_) = col.imag();
  }
  Eigen::JacobiSVD<MatR> svd(M);
  const int r = rank_with_gap(svd.singularValues(), tol, "centralizer (real-compact)");
  return dim_ - r;
}

Element LieAlgebra::random_compact_element(Rng& rng) const {
  VecC v = VecC::Zero(dim_);
  for (const auto& b : compact_basis_) v += rng.normal() * b;
  const double n = v.norm();
  if (n > 0) v /= n;
  return {this, std::move(v)};
}

bool LieAlgebra::jacobi_exact() const {
  const int n = dim_;
  auto acc = [&](std::vector<Rational>& out, int i, int j, const Rational& w) {
    for (int idx = pair_begin_[i * n + j]; idx < pair_end_[i * n + j]; ++idx)
      out[constants_q_[idx].k] += w * constants_q_[idx].c;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        std::vector<Rational> res(n);
        for (int idx = pair_begin_[j * n + k]; idx < pair_end_[j * n + k]; ++idx)
          acc(res, i, constants_q_[idx].k, constants_q_[idx].c);
        for (int idx = pair_begin_[k * n + i]; idx < pair_end_[k * n + i]; ++idx)
          acc(res, j, constants_q_[idx].k, constants_q_[idx].c);
        for (int idx = pair_begin_[i * n + j]; idx < pair_end_[i * n + j]; ++idx)
          acc(res, k, constants_q_[idx].k, constants_q_[idx].c);
        for (const auto& r : res)
          if (!r.is_zero()) return false;
      }
  // antisymmetry c_{ij}^k = -c_{ji}^k
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<Rational> res(n);
      for (int idx = pair_begin_[i * n + j]; idx < pair_end_[i * n + j]; ++idx)
        res[constants_q_[idx].k] += constants_q_[idx].c;
      for (int idx = pair_begin_[j * n + i]; idx < pair_end_[j * n + i]; ++idx)
        res[constants_q_[idx].k] += constants_q_[idx].c;
      for (const auto& r : res)
        if (!r.is_zero()) return false;
    }
  return true;
}

double LieAlgebra::jacobi_residual_float() const {
  const int n = dim_;
  double worst = 0;
  std::vector<double> res(n);
  auto cd = [&](int idx) { return constants_q_[idx].c.to_double(); };
  auto acc = [&](int i, int j, double w) {
    for (int idx = pair_begin_[i * n + j]; idx < pair_end_[i * n + j]; ++idx)
      res[constants_q_[idx].k] += w * cd(idx);
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        std::fill(res.begin(), res.end(), 0.0);
        for (int idx = pair_begin_[j * n + k]; idx < pair_end_[j * n + k]; ++idx)
          acc(i, constants_q_[idx].k, cd(idx));
        for (int idx = pair_begin_[k * n + i]; idx < pair_end_[k * n + i]; ++idx)
          acc(j, constants_q_[idx].k, cd(idx));
        for (int idx = pair_begin_[i * n + j]; idx < pair_end_[i * n + j]; ++idx)
          acc(k, constants_q_[idx].k, cd(idx));
        for (double r : res) worst = std::max(worst, std::abs(r));
      }
  return worst;
}

bool LieAlgebra::killing_invariance_exact() const {
  const int n = dim_;
  // K([b_i,b_j], b_k) + K(b_j, [b_i,b_k]) = 0
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Rational r(0);
        for (int idx = pair_begin_[i * n + j]; idx < pair_end_[i * n + j]; ++idx)
          r += constants_q_[idx].c * killing_q_[constants_q_[idx].k * n + k];
        for (int idx = pair_begin_[i * n + k]; idx < pair_end_[i * n + k]; ++idx)
          r += constants_q_[idx].c * killing_q_[j * n + constants_q_[idx].k];
        if (!r.is_zero()) return false;
      }
  return true;
}

LieAlgebra LieAlgebra::corrupted_copy() const {
  LieAlgebra g = *this;
  if (g.constants_q_.empty()) throw std::logic_error("no constants to corrupt");
  g.constants_q_[0].c += Rational(1);
  return g;
}

}  // namespace nilorb
