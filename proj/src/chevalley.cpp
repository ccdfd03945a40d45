#include "nilorb/chevalley.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace nilorb {

namespace {

using Root = std::array<int, 2>;  // coefficients over the simple roots a (short), b (long)

// Gram matrix of the simple roots, short root normalized to length^2 = 2.
long ip(const Root& x, const Root& y) {
  return 2L * x[0] * y[0] + 6L * x[1] * y[1] - 3L * (x[0] * y[1] + x[1] * y[0]);
}

Root neg(const Root& r) { return {-r[0], -r[1]}; }
Root add(const Root& r, const Root& s) { return {r[0] + s[0], r[1] + s[1]}; }
bool positive(const Root& r) { return r[0] > 0 || (r[0] == 0 && r[1] > 0); }
int height(const Root& r) { return r[0] + r[1]; }

struct RootSystem {
  std::vector<Root> positives;  // sorted by (height, lex)
  std::vector<Root> all;

  bool is_root(const Root& r) const {
    return std::find(all.begin(), all.end(), r) != all.end();
  }
  int pos_index(const Root& r) const {
    auto it = std::find(positives.begin(), positives.end(), r);
    return it == positives.end() ? -1 : int(it - positives.begin());
  }
};

RootSystem g2_roots() {
  RootSystem rs;
  rs.positives = {{0, 1}, {1, 0}, {1, 1}, {2, 1}, {3, 1}, {3, 2}};
  std::sort(rs.positives.begin(), rs.positives.end(), [](const Root& x, const Root& y) {
    if (height(x) != height(y)) return height(x) < height(y);
    return x < y;
  });
  rs.all = rs.positives;
  for (const Root& r : rs.positives) rs.all.push_back(neg(r));
  return rs;
}

// Down-length of the a-string through b; |N_{a,b}| = p + 1.
int string_p(const RootSystem& rs, const Root& a, const Root& b) {
  int p = 0;
  Root r = b;
  for (;;) {
    r = add(r, neg(a));
    if (!rs.is_root(r)) break;
    ++p;
  }
  return p;
}

// Total order on positive roots used for the extraspecial-pair convention.
bool before(const Root& x, const Root& y) {
  if (height(x) != height(y)) return height(x) < height(y);
  return x < y;
}

struct ConstantTable {
  std::map<std::pair<Root, Root>, Rational> n;

  bool has(const Root& a, const Root& b) const { return n.count({a, b}) != 0; }
  Rational get(const Root& a, const Root& b) const { return n.at({a, b}); }
  void set_pair(const Root& a, const Root& b, const Rational& v) {
    n[{a, b}] = v;
    n[{b, a}] = -v;
  }
};

// Structure constants for every ordered root pair whose sum is a root.
// Positive-positive pairs follow the extraspecial convention (extraspecial
// pairs take +(p+1); the single remaining special pair takes candidate_sign).
// Everything else is forced by
//   N(b,a)   = -N(a,b)
//   N(-a,-b) = -N(a,b)
//   a+b+c=0  =>  N(a,b)/(c,c) = N(b,c)/(a,a) = N(c,a)/(b,b).
ConstantTable fill_constants(const RootSystem& rs, int candidate_sign) {
  ConstantTable t;

  std::map<Root, std::vector<std::pair<Root, Root>>> by_sum;
  for (const Root& r : rs.positives)
    for (const Root& s : rs.positives) {
      if (!before(r, s)) continue;
      const Root sum = add(r, s);
      if (rs.is_root(sum)) by_sum[sum].push_back({r, s});
    }

  for (auto& [sum, pairs] : by_sum) {
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& p, const auto& q) { return before(p.first, q.first); });
    for (size_t idx = 0; idx < pairs.size(); ++idx) {
      const auto& [r, s] = pairs[idx];
      const int mag = string_p(rs, r, s) + 1;
      const int sgn = (idx == 0) ? +1 : candidate_sign;
      t.set_pair(r, s, Rational(sgn * mag));
    }
  }

  // negative-negative
  for (const Root& r : rs.positives)
    for (const Root& s : rs.positives) {
      if (r == s || !rs.is_root(add(r, s))) continue;
      if (!t.has(neg(r), neg(s))) t.set_pair(neg(r), neg(s), -t.get(r, s));
    }

  // Mixed pairs with positive sum: the zero-sum triple is {p, q, c} with
  // p > 0 and q, c < 0, and (-q) + (-c) = p gives the known positive pair.
  for (const Root& p : rs.positives)
    for (const Root& q : rs.all) {
      if (positive(q)) continue;
      const Root sum = add(p, q);
      if (sum == Root{0, 0} || !rs.is_root(sum) || !positive(sum)) continue;
      const Root c = neg(sum);
      const Rational nqc = -t.get(neg(q), neg(c));
      if (!t.has(q, c)) t.set_pair(q, c, nqc);
      if (!t.has(p, q)) t.set_pair(p, q, nqc * Rational(ip(c, c), ip(p, p)));
      if (!t.has(c, p)) t.set_pair(c, p, nqc * Rational(ip(q, q), ip(p, p)));
    }

  // Mixed pairs with negative sum follow by negation.
  for (const Root& a : rs.all)
    for (const Root& b : rs.all) {
      if (a == b || a == neg(b) || !rs.is_root(add(a, b))) continue;
      if (!t.has(a, b)) t.set_pair(a, b, -t.get(neg(a), neg(b)));
    }

  return t;
}

std::string root_label(const Root& r) {
  auto term = [](int coeff, const char* sym, bool lead) -> std::string {
    if (coeff == 0) return "";
    std::string s;
    if (coeff < 0) s += "-";
    else if (!lead) s += "+";
    if (std::abs(coeff) != 1) s += std::to_string(std::abs(coeff));
    s += sym;
    return s;
  };
  std::string s = term(r[0], "a", true);
  s += term(r[1], "b", s.empty());
  return s;
}

// Exact Jacobi check on an assembled sparse tensor.
bool jacobi_ok(int dim, const std::vector<G2Tables::Trip>& trips) {
  std::vector<std::vector<std::pair<int, Rational>>> tab(dim * dim);
  for (const auto& t : trips) tab[t.i * dim + t.j].push_back({t.k, t.c});
  auto acc = [&](std::vector<Rational>& out, int i, int j, const Rational& w) {
    for (const auto& [k, c] : tab[i * dim + j]) out[k] += w * c;
  };
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = j + 1; k < dim; ++k) {
        std::vector<Rational> res(dim);
        for (const auto& [l, c] : tab[j * dim + k]) acc(res, i, l, c);
        for (const auto& [l, c] : tab[k * dim + i]) acc(res, j, l, c);
        for (const auto& [l, c] : tab[i * dim + j]) acc(res, k, l, c);
        for (const auto& r : res)
          if (!r.is_zero()) return false;
      }
  return true;
}

G2Tables assemble(const RootSystem& rs, int candidate_sign) {
  const ConstantTable t = fill_constants(rs, candidate_sign);
  const int np = int(rs.positives.size());
  const int dim = 2 + 2 * np;

  G2Tables out;
  out.dim = dim;
  out.n_positive = np;
  out.resolved_sign = candidate_sign;

  auto e_index = [&](int g) { return 2 + g; };
  auto f_index = [&](int g) { return 2 + np + g; };
  auto root_slot = [&](const Root& r) {
    return positive(r) ? e_index(rs.pos_index(r)) : f_index(rs.pos_index(neg(r)));
  };

  out.labels = {"h1", "h2"};
  for (const Root& r : rs.positives) out.labels.push_back("E[" + root_label(r) + "]");
  for (const Root& r : rs.positives) out.labels.push_back("F[" + root_label(r) + "]");

  const Root simple[2] = {{1, 0}, {0, 1}};

  auto emit = [&](int i, int j, int k, const Rational& c) {
    if (!c.is_zero()) out.constants.push_back({i, j, k, c});
  };

  // [h_i, E_g] = <g, a_i^v> E_g ; [h_i, F_g] = -<g, a_i^v> F_g
  for (int i = 0; i < 2; ++i)
    for (int g = 0; g < np; ++g) {
      const Root& r = rs.positives[g];
      const Rational pairing(2 * ip(r, simple[i]), ip(simple[i], simple[i]));
      if (!pairing.is_integer()) throw std::logic_error("g2: non-integral Cartan pairing");
      emit(i, e_index(g), e_index(g), pairing);
      emit(e_index(g), i, e_index(g), -pairing);
      emit(i, f_index(g), f_index(g), -pairing);
      emit(f_index(g), i, f_index(g), pairing);
    }

  // [E_g, F_g] = H_g, the coroot written over h1, h2 (exact integers)
  for (int g = 0; g < np; ++g) {
    const Root& r = rs.positives[g];
    for (int i = 0; i < 2; ++i) {
      const Rational ci(r[i] * ip(simple[i], simple[i]), ip(r, r));
      if (!ci.is_integer()) throw std::logic_error("g2: non-integral coroot");
      emit(e_index(g), f_index(g), i, ci);
      emit(f_index(g), e_index(g), i, -ci);
    }
  }

  // root-root brackets through the constant table
  for (const Root& x : rs.all)
    for (const Root& y : rs.all) {
      if (x == y || x == neg(y)) continue;
      const Root sum = add(x, y);
      if (!rs.is_root(sum)) continue;
      const Rational c = t.get(x, y);
      if (!c.is_integer()) throw std::logic_error("g2: non-integral structure constant");
      emit(root_slot(x), root_slot(y), root_slot(sum), c);
    }

  out.sigma = Eigen::MatrixXi::Zero(dim, dim);
  out.sigma(0, 0) = -1;
  out.sigma(1, 1) = -1;
  for (int g = 0; g < np; ++g) {
    out.sigma(f_index(g), e_index(g)) = -1;  // sigma(E) = -F
    out.sigma(e_index(g), f_index(g)) = -1;  // sigma(F) = -E
  }
  return out;
}

}  // namespace

G2Tables g2_chevalley_tables() {
  const RootSystem rs = g2_roots();
  G2Tables plus = assemble(rs, +1);
  const bool plus_ok = jacobi_ok(plus.dim, plus.constants);
  G2Tables minus = assemble(rs, -1);
  const bool minus_ok = jacobi_ok(minus.dim, minus.constants);
  if (plus_ok == minus_ok)
    throw std::logic_error("g2: sign resolution failed (jacobi accepted " +
                           std::to_string(int(plus_ok) + int(minus_ok)) + " candidates)");
  return plus_ok ? plus : minus;
}

}  // namespace nilorb
