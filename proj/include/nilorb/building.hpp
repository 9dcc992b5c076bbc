#pragma once

// Root-space decomposition of a representative relative to the split torus of
// the Witt basis, the affine linear system cutting out the facet in the
// standard apartment, and the dimension counts the facet is compared with.
//
// Coordinates: the origin is the pinning in which every unit root vector of
// the roots namespace has valuation 0 and the short root vectors attached to
// slot l have valuation val(r_l)/2.

#include "nilorb/repbuild.hpp"

#include <boost/rational.hpp>

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilorb {

// Compare against Rational values, not int literals: mixed comparisons with
// long long rationals recurse in some Boost versions.
using Rational = boost::rational<long long>;

enum class RootType { Diff, Sum, Short };  // e_i - e_j, s(e_i + e_j), s e_i

/// One root-space component of a matrix. Indices are 0-based Witt indices;
/// slot is the 1-based kernel slot of a short root (0 otherwise).
struct RootTerm {
  RootType type = RootType::Diff;
  int i = 0;
  int j = -1;
  int sign = 1;
  int slot = 0;
  Rational valuation{0};

  RootTerm negated() const {
    RootTerm r = *this;
    if (type == RootType::Diff)
      std::swap(r.i, r.j);
    else
      r.sign = -sign;
    return r;
  }

  bool same_root_space(const RootTerm& o) const {
    return type == o.type && i == o.i && j == o.j && sign == o.sign && slot == o.slot;
  }

  /// Coefficients of the functional on R^m.
  std::vector<int> functional(int m) const {
    std::vector<int> f(static_cast<std::size_t>(m), 0);
    switch (type) {
      case RootType::Diff:
        f.at(static_cast<std::size_t>(i)) += 1;
        f.at(static_cast<std::size_t>(j)) -= 1;
        break;
      case RootType::Sum:
        f.at(static_cast<std::size_t>(i)) += sign;
        f.at(static_cast<std::size_t>(j)) += sign;
        break;
      case RootType::Short: f.at(static_cast<std::size_t>(i)) += sign; break;
    }
    return f;
  }

  std::string root_string() const {
    std::ostringstream os;
    auto e = [](int k) { return "e" + std::to_string(k + 1); };
    switch (type) {
      case RootType::Diff: os << e(i) << "-" << e(j); break;
      case RootType::Sum: os << (sign < 0 ? "-" : "") << e(i) << (sign < 0 ? "-" : "+") << e(j); break;
      case RootType::Short: os << (sign < 0 ? "-" : "") << e(i) << "^" << slot; break;
    }
    return os.str();
  }
};

inline std::string to_string(const Rational& q) {
  return q.denominator() == 1 ? std::to_string(q.numerator())
                              : std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

struct FacetSolution {
  int dim = 0;
  std::vector<Rational> point;
  std::vector<std::vector<int>> lineality;
};

namespace detail {

enum class Slot { V, W, Z };

inline std::pair<Slot, int> classify(const BasisMap& b, int k) {
  if (k < b.m) return {Slot::V, k};
  if (k < 2 * b.m) return {Slot::W, k - b.m};
  return {Slot::Z, k - 2 * b.m + 1};
}

inline Matrix root_vector(const RootTerm& t, const BasisMap& b, const PadicCtx& ctx) {
  switch (t.type) {
    case RootType::Diff: return roots::x_ij(b, ctx, t.i, t.j);
    case RootType::Sum: return t.sign > 0 ? roots::x_i_mj(b, ctx, t.i, t.j) : roots::x_mi_j(b, ctx, t.i, t.j);
    case RootType::Short: return t.sign > 0 ? roots::x_i_l(b, ctx, t.i, t.slot) : roots::x_mi_l(b, ctx, t.i, t.slot);
  }
  return {};
}

}  // namespace detail

/// Root-space components of an element of so(q) written in the basis b.
/// Components in the Cartan part (torus plus the anisotropic block) are
/// dropped; anything else that the root vectors fail to reproduce throws.
inline std::vector<RootTerm> root_decomposition(const Matrix& x, const BasisMap& b, const PadicCtx& ctx) {
  using detail::Slot;
  std::vector<RootTerm> terms;
  Matrix rebuilt(x.rows(), x.cols());
  for (int r = 0; r < x.rows(); ++r)
    for (const auto& [c, coef] : x.row(r)) {
      if (negligible(coef, ctx)) continue;
      auto [sr, a] = detail::classify(b, r);
      auto [sc, bb] = detail::classify(b, c);
      std::optional<RootTerm> t;
      if (sr == Slot::V && sc == Slot::V && a != bb) {
        t = RootTerm{RootType::Diff, a, bb, 1, 0, {}};
      } else if (sr == Slot::V && sc == Slot::W && a < bb) {
        t = RootTerm{RootType::Sum, a, bb, 1, 0, {}};
      } else if (sr == Slot::W && sc == Slot::V && bb < a) {
        t = RootTerm{RootType::Sum, bb, a, -1, 0, {}};
      } else if (sr == Slot::Z && sc == Slot::W) {
        t = RootTerm{RootType::Short, bb, -1, 1, a, {}};
      } else if (sr == Slot::Z && sc == Slot::V) {
        t = RootTerm{RootType::Short, bb, -1, -1, a, {}};
      } else if ((sr == Slot::V && sc == Slot::V) || (sr == Slot::W && sc == Slot::W && a == bb) ||
                 (sr == Slot::Z && sc == Slot::Z)) {
        rebuilt.add_to(r, c, coef);  // Cartan part
        continue;
      } else {
        continue;  // the partner entry of a root vector, checked by the rebuild
      }
      Rational val(coef.valuation());
      if (t->type == RootType::Short)
        val += Rational(b.r_list.at(static_cast<std::size_t>(t->slot - 1)).valuation(), 2);
      t->valuation = val;
      Matrix rv = detail::root_vector(*t, b, ctx);
      for (int rr = 0; rr < rv.rows(); ++rr)
        for (const auto& [cc, e] : rv.row(rr)) rebuilt.add_to(rr, cc, coef * e);
      terms.push_back(*t);
    }
  Matrix residual = x - rebuilt;
  for (int r = 0; r < residual.rows(); ++r)
    for (const auto& [c, e] : residual.row(r))
      if (!negligible(e, ctx))
        throw std::runtime_error("component at (" + std::to_string(r) + ", " + std::to_string(c) +
                                 ") lies outside every root space");
  return terms;
}

/// Phi_X with valuations.
inline std::vector<RootTerm> phi_x(const LieTriple& t, const PadicCtx& ctx) {
  return root_decomposition(t.X, t.basis, ctx);
}

/// Whether a root term of X has a valuation the pinning table allows for its
/// root type and scalar.
inline bool matches_valuation_table(const RootTerm& t, const BasisMap& b) {
  switch (t.type) {
    case RootType::Diff: return t.valuation == Rational(0);
    case RootType::Sum: return t.valuation == Rational(0) || t.valuation == Rational(1);
    case RootType::Short:
      return t.valuation == Rational(b.r_list.at(static_cast<std::size_t>(t.slot - 1)).valuation(), 2);
  }
  return false;
}

/// Every X component must be matched by a Y component on the opposite root
/// space with the opposite valuation. Returns one message per failure.
inline std::vector<std::string> duality_violations(const std::vector<RootTerm>& xs, const std::vector<RootTerm>& ys) {
  std::vector<std::string> out;
  for (const RootTerm& x : xs) {
    const RootTerm want = x.negated();
    auto it = std::find_if(ys.begin(), ys.end(), [&](const RootTerm& y) { return y.same_root_space(want); });
    if (it == ys.end())
      out.push_back("no Y component on " + want.root_string());
    else if (it->valuation != -x.valuation)
      out.push_back("val(Y) = " + to_string(it->valuation) + " on " + want.root_string() + " but val(X) = " +
                    to_string(x.valuation));
  }
  if (ys.size() != xs.size()) out.push_back("Y has components off -Phi_X");
  return out;
}

/// Solves alpha(x) = -val for every term in exact rational arithmetic. Free
/// coordinates are set to 0 in the sample point; the lineality basis has one
/// vector per free coordinate, signed so its first nonzero entry is positive.
inline FacetSolution facet_solve(const std::vector<RootTerm>& terms, int m) {
  const std::size_t cols = static_cast<std::size_t>(m);
  std::vector<std::vector<Rational>> a;
  for (const RootTerm& t : terms) {
    std::vector<Rational> row;
    for (int c : t.functional(m)) row.emplace_back(c);
    row.push_back(-t.valuation);
    a.push_back(std::move(row));
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == Rational(0)) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    const Rational inv = Rational(1) / a[r][c];
    for (auto& e : a[r]) e *= inv;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (k == r || a[k][c] == Rational(0)) continue;
      const Rational f = a[k][c];
      for (std::size_t j = c; j <= cols; ++j) a[k][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t k = r; k < a.size(); ++k)
    if (a[k][cols] != Rational(0)) throw std::domain_error("facet system is infeasible");

  FacetSolution s;
  s.dim = m - static_cast<int>(r);
  s.point.assign(cols, Rational(0));
  for (std::size_t k = 0; k < r; ++k) s.point[pivots[k]] = a[k][cols];
  for (std::size_t f = 0; f < cols; ++f) {
    if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
    std::vector<int> v(cols, 0);
    v[f] = 1;
    for (std::size_t k = 0; k < r; ++k) {
      const Rational e = -a[k][f];
      if (e.denominator() != 1) throw std::logic_error("non-integral lineality vector");
      v[pivots[k]] = static_cast<int>(e.numerator());
    }
    auto first = std::find_if(v.begin(), v.end(), [](int e) { return e != 0; });
    if (*first < 0)
      for (int& e : v) e = -e;
    s.lineality.push_back(std::move(v));
  }
  return s;
}

inline int dim_formula_gamma(const Gamma& g) { return count_even_hyp(g); }

inline int dim_formula_theorem(const OrbitLabel& l) {
  int d = 0;
  for (const QFormClass& q : l.qtup) d += aniso_dim(q.cls);
  const int twice = l.lambda.num_parts() - d;
  if (twice < 0 || twice % 2) throw std::logic_error("label has inconsistent anisotropic dimensions");
  return twice / 2;
}

/// Split rank of the centralizer: Sp(m_i) factors for even parts, the Witt
/// index of the orthogonal factor for odd parts.
inline int centralizer_split_rank(const OrbitLabel& l) {
  int rank = 0;
  for (int i : l.lambda.even_parts()) rank += l.lambda.multiplicity(i) / 2;
  const auto odd = l.lambda.odd_parts();
  for (std::size_t k = 0; k < odd.size(); ++k) rank += (l.qtup.at(k).degree - aniso_dim(l.qtup[k].cls)) / 2;
  return rank;
}

struct DimensionReport {
  FacetSolution facet;
  int gamma = 0;
  int theorem = 0;
  int split_rank = 0;
  std::vector<std::string> duality;  // empty when val(Y_a) = -val(X_a) throughout
  std::vector<std::string> table;    // terms off the valuation table

  bool dims_agree() const { return facet.dim == gamma && gamma == theorem && theorem == split_rank; }
};

inline DimensionReport dimension_report(const LieTriple& t, const PadicCtx& ctx) {
  DimensionReport r;
  auto xs = phi_x(t, ctx);
  r.facet = facet_solve(xs, t.basis.m);
  r.gamma = dim_formula_gamma(t.gamma);
  r.theorem = dim_formula_theorem(t.label);
  r.split_rank = centralizer_split_rank(t.label);
  r.duality = duality_violations(xs, root_decomposition(t.Y, t.basis, ctx));
  for (const RootTerm& x : xs)
    if (!matches_valuation_table(x, t.basis)) r.table.push_back(x.root_string() + " has valuation " + to_string(x.valuation));
  return r;
}

}  // namespace nilorb
