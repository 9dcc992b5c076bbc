#pragma once

// Independent checks that a triple represents its label: brackets, membership
// in so(q), Jordan type of X, and the forms carried by the multiplicity
// spaces of the odd parts.

#include "nilorb/repbuild.hpp"

#include <array>
#include <mutex>
#include <random>
#include <tuple>

namespace nilorb {

struct VerifyReport {
  std::array<bool, 3> in_so{};  // X, H, Y
  bool triple_ok = false;
  std::vector<int> jordan;  // descending
  std::map<int, QFormClass> mult_forms;
  bool matches_label = false;
  int precision_margin = 0;
};

inline Matrix power(const Matrix& x, int k, const PadicCtx& ctx) {
  Matrix out = Matrix::identity(ctx, x.rows());
  for (int t = 0; t < k; ++t) out = out * x;
  return out;
}

/// Partition from the ranks of X^k: the number of parts equal to i is
/// rank X^{i-1} - 2 rank X^i + rank X^{i+1}.
/// Jordan block sizes in descending order; arbitrary nilpotents are accepted.
inline std::vector<int> jordan_type(const Matrix& x, const PadicCtx& ctx) {
  const int n = x.rows();
  std::vector<int> rk{n};
  Matrix pw = Matrix::identity(ctx, n);
  while (rk.back() > 0) {
    if (static_cast<int>(rk.size()) > n) throw std::domain_error("matrix is not nilpotent");
    pw = pw * x;
    rk.push_back(rank(pw, ctx));
  }
  rk.push_back(0);
  std::vector<int> parts;
  for (std::size_t i = 1; i + 1 < rk.size(); ++i) {
    const int mult = rk[i - 1] - 2 * rk[i] + rk[i + 1];
    if (mult < 0) throw PrecisionError("inconsistent ranks of powers");
    parts.insert(parts.end(), static_cast<std::size_t>(mult), static_cast<int>(i));
  }
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return parts;
}

/// All bracket and so(q) residuals; ok iff each is zero to working precision.
/// The margin is the smallest residual valuation (ctx.N when all vanish).
inline std::pair<bool, int> check_triple(const LieTriple& t, const PadicCtx& ctx) {
  const PadicNum two = PadicNum::from_int(ctx, 2);
  const Matrix residuals[] = {
      bracket(t.H, t.X) - two * t.X, bracket(t.H, t.Y) + two * t.Y, bracket(t.X, t.Y) - t.H,
      so_defect(t.X, t.gram),        so_defect(t.H, t.gram),        so_defect(t.Y, t.gram),
  };
  int margin = ctx.N;
  for (const Matrix& r : residuals) margin = std::min(margin, r.min_valuation());
  return {margin >= ctx.zero_threshold(), margin};
}

namespace detail {

inline PadicNum dot(const Vec& a, const Vec& b) {
  PadicNum s;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!a[k].is_zero() && !b[k].is_zero()) s = s + a[k] * b[k];
  return s;
}

// Gram matrix B(u_a, X^{i-1} u_b) on the lowest-weight space of weight -(i-1).
inline std::vector<Vec> lowest_weight_gram(const LieTriple& t, int i, const PadicCtx& ctx, std::size_t& dim) {
  const int n = t.X.rows();
  Matrix shifted = t.H + PadicNum::from_int(ctx, i - 1) * Matrix::identity(ctx, n);
  auto basis = kernel(Matrix::stack(t.Y, shifted), ctx);
  dim = basis.size();
  Matrix xp = power(t.X, i - 1, ctx);
  std::vector<Vec> mx;
  for (const Vec& u : basis) mx.push_back(t.gram.apply(xp.apply(u)));
  std::vector<Vec> g(basis.size(), Vec(basis.size()));
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = 0; b < basis.size(); ++b) g[a][b] = dot(basis[a], mx[b]);
  return g;
}

inline DiagonalForm classes_of(const Vec& diag) {
  DiagonalForm f;
  for (const PadicNum& x : diag) f.push_back(square_class(x));
  return f;
}

}  // namespace detail

/// Class of the extracted form on the single module U_i realized with <1>; the
/// extracted forms are rescaled by it so that <1> comes back as <1>.
inline SquareClass multiplicity_scale(int i, const PadicCtx& ctx) {
  static std::mutex mu;
  static std::map<std::tuple<std::int64_t, int, int>, SquareClass> cache;
  const auto key = std::make_tuple(ctx.p, ctx.N, i);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  OrbitLabel model{Partition({i}), {{1, witt_of_entry(SquareClass::One)}}, std::nullopt};
  auto sh = PadicCtx::make(ctx.p, ctx.N);
  LieTriple t = build_triple(model, *sh);
  std::size_t dim = 0;
  auto g = detail::lowest_weight_gram(t, i, *sh, dim);
  if (dim != 1) throw std::logic_error("model module has a lowest-weight space of dimension " + std::to_string(dim));
  SquareClass s = square_class(g[0][0]);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, s);
  return s;
}

/// Form class carried by the multiplicity space of the odd part i.
inline QFormClass multiplicity_form(const LieTriple& t, int i, const PadicCtx& ctx) {
  if (i % 2 == 0) throw std::invalid_argument("multiplicity forms are defined for odd parts only");
  std::size_t dim = 0;
  auto g = detail::lowest_weight_gram(t, i, ctx, dim);
  const int m = t.label.lambda.multiplicity(i);
  if (static_cast<int>(dim) != m)
    throw std::runtime_error("lowest-weight space for part " + std::to_string(i) + " has dimension " +
                             std::to_string(dim) + ", expected " + std::to_string(m));
  if (dim == 0) return {0, WittClass{}};
  DiagonalForm f = detail::classes_of(diagonalize_symmetric(g, ctx));
  const SquareClass s = multiplicity_scale(i, ctx);
  for (auto& c : f) c = c * s;
  return qform_of_diagonal(f, ctx);
}

/// Dimension of ker(Y) cap ker(H + (i - 1)).
inline int lowest_weight_dim(const LieTriple& t, int i, const PadicCtx& ctx) {
  const int n = t.X.rows();
  Matrix shifted = t.H + PadicNum::from_int(ctx, i - 1) * Matrix::identity(ctx, n);
  return static_cast<int>(kernel(Matrix::stack(t.Y, shifted), ctx).size());
}

/// Never throws on a malformed triple: failures show up in the report, with
/// mult_forms left empty when the triple or its Jordan type is already wrong.
inline VerifyReport verify(const LieTriple& t, const PadicCtx& ctx) {
  VerifyReport r;
  const Matrix* ms[] = {&t.X, &t.H, &t.Y};
  for (std::size_t k = 0; k < 3; ++k) r.in_so[k] = so_defect(*ms[k], t.gram).min_valuation() >= ctx.zero_threshold();
  std::tie(r.triple_ok, r.precision_margin) = check_triple(t, ctx);
  try {
    r.jordan = jordan_type(t.X, ctx);
  } catch (const std::domain_error&) {
    r.jordan.clear();  // X is not nilpotent
  }
  bool ok = r.triple_ok && r.jordan == t.label.lambda.parts();
  // The multiplicity spaces are only meaningful for an honest sl2-triple.
  if (!ok) {
    r.matches_label = false;
    return r;
  }
  auto odd = t.label.lambda.odd_parts();
  for (std::size_t k = 0; k < odd.size(); ++k) {
    QFormClass f = multiplicity_form(t, odd[k], ctx);
    r.mult_forms[odd[k]] = f;
    ok = ok && f == t.label.qtup[k];
  }
  for (int i : t.label.lambda.even_parts()) ok = ok && lowest_weight_dim(t, i, ctx) == t.label.lambda.multiplicity(i);
  r.matches_label = ok;
  return r;
}

/// The permutation exchanging v_i and w_i on the first EVEN part, which
/// conjugates the tag I triple to the tag II triple. Throws if it does not.
inline Matrix ve_conjugation_witness(const LieTriple& t1, const LieTriple& t2, const PadicCtx& ctx) {
  if (t1.basis.n() != t2.basis.n() || t1.gamma.parts.empty() || t1.gamma.parts[0].kind != GammaKind::Even)
    throw std::invalid_argument("witness needs the two builds of one very even label");
  const int n = t1.basis.n();
  const int i = t1.gamma.parts[0].members[0].part;
  const int idx = t1.basis.ranges[0].start + i - 1;
  const int a = t1.basis.v(idx), b = t1.basis.w(idx);
  Matrix g(n, n);
  const PadicNum one = PadicNum::from_int(ctx, 1);
  for (int c = 0; c < n; ++c) g.set(c == a ? b : c == b ? a : c, c, one);
  const int thr = ctx.zero_threshold();
  if ((g.transpose() * t1.gram * g - t1.gram).min_valuation() < thr) throw std::runtime_error("witness is not orthogonal");
  for (auto [m1, m2] : {std::pair{&t1.X, &t2.X}, std::pair{&t1.H, &t2.H}, std::pair{&t1.Y, &t2.Y}})
    if ((g * *m1 * g - *m2).min_valuation() < thr) throw std::runtime_error("witness does not conjugate the triples");
  return g;
}

/// Product of `count` random unipotent elements exp(tE) of O(q), E a root
/// vector and t a unit, together with its inverse.
inline std::pair<Matrix, Matrix> random_orthogonal(const BasisMap& b, const PadicCtx& ctx, std::mt19937_64& rng,
                                                   int count = 20) {
  const int n = b.n();
  Matrix g = Matrix::identity(ctx, n), ginv = g;
  if (b.m == 0) return {g, ginv};
  std::uniform_int_distribution<int> kind(0, b.d > 0 ? 4 : 2), idx(0, b.m - 1), slot(1, std::max(b.d, 1));
  std::uniform_int_distribution<std::int64_t> unit(1, ctx.p - 1);
  const PadicNum half = PadicNum::from_int(ctx, 1) / PadicNum::from_int(ctx, 2);
  for (int step = 0; step < count; ++step) {
    const int k = kind(rng);
    int i = idx(rng), j = idx(rng);
    Matrix e;
    if (k == 0) {
      if (i == j) continue;
      e = roots::x_ij(b, ctx, i, j);
    } else if (k == 1 || k == 2) {
      if (i == j) continue;
      e = k == 1 ? roots::x_i_mj(b, ctx, i, j) : roots::x_mi_j(b, ctx, i, j);
    } else {
      e = k == 3 ? roots::x_i_l(b, ctx, i, slot(rng)) : roots::x_mi_l(b, ctx, i, slot(rng));
    }
    const PadicNum t = PadicNum::from_int(ctx, unit(rng));
    Matrix id = Matrix::identity(ctx, n);
    Matrix e2 = e * e;
    Matrix fwd = id + t * e + (t * t * half) * e2;
    Matrix bwd = id - t * e + (t * t * half) * e2;
    g = fwd * g;
    ginv = ginv * bwd;
  }
  return {g, ginv};
}

}  // namespace nilorb
