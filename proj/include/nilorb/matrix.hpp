#pragma once

// Sparse square/rectangular matrices over PadicNum and the valuation-aware
// elimination routines built on them (rank, kernel, inverse, congruence
// diagonalization). Pivots are always an entry of minimal valuation, so every
// multiplier used during elimination is integral.

#include "nilorb/padic.hpp"

#include <climits>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace nilorb {

using Vec = std::vector<PadicNum>;

/// True for exact zero and for values that are zero up to the exactness slack.
inline bool negligible(const PadicNum& x, const PadicCtx& ctx) {
  return x.is_zero() || x.valuation() >= ctx.zero_threshold();
}

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows)) {}

  static Matrix identity(const PadicCtx& ctx, int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, PadicNum::from_int(ctx, 1));
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  PadicNum get(int r, int c) const {
    const auto& row = data_.at(static_cast<std::size_t>(r));
    auto it = row.find(c);
    return it == row.end() ? PadicNum() : it->second;
  }

  void set(int r, int c, const PadicNum& v) {
    check_index(r, c);
    auto& row = data_[static_cast<std::size_t>(r)];
    if (v.is_zero())
      row.erase(c);
    else
      row[c] = v;
  }

  void add_to(int r, int c, const PadicNum& v) {
    if (v.is_zero()) return;
    set(r, c, get(r, c) + v);
  }

  const std::map<int, PadicNum>& row(int r) const { return data_.at(static_cast<std::size_t>(r)); }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& row : data_) n += row.size();
    return n;
  }

  bool is_zero() const { return nnz() == 0; }

  /// Smallest valuation among the stored entries, INT_MAX for the zero matrix.
  int min_valuation() const {
    int v = INT_MAX;
    for (const auto& row : data_)
      for (const auto& [c, x] : row) v = std::min(v, x.valuation());
    return v;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (const auto& [c, x] : row(r)) t.set(c, r, x);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (int r = 0; r < a.rows_; ++r) {
      std::map<int, PadicNum> acc;
      for (const auto& [k, x] : a.row(r))
        for (const auto& [c, y] : b.row(k)) {
          auto it = acc.find(c);
          if (it == acc.end())
            acc.emplace(c, x * y);
          else
            it->second += x * y;
        }
      for (auto& [c, v] : acc)
        if (!v.is_zero()) out.data_[static_cast<std::size_t>(r)].emplace(c, std::move(v));
    }
    return out;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.check_same_shape(b);
    Matrix out = a;
    for (int r = 0; r < b.rows_; ++r)
      for (const auto& [c, y] : b.row(r)) out.add_to(r, c, y);
    return out;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.check_same_shape(b);
    Matrix out = a;
    for (int r = 0; r < b.rows_; ++r)
      for (const auto& [c, y] : b.row(r)) out.add_to(r, c, -y);
    return out;
  }

  friend Matrix operator*(const PadicNum& s, const Matrix& a) {
    Matrix out(a.rows_, a.cols_);
    for (int r = 0; r < a.rows_; ++r)
      for (const auto& [c, x] : a.row(r)) out.set(r, c, s * x);
    return out;
  }

  Vec apply(const Vec& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("matrix-vector product: shape mismatch");
    Vec out(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r)
      for (const auto& [c, x] : row(r)) out[static_cast<std::size_t>(r)] += x * v[static_cast<std::size_t>(c)];
    return out;
  }

  std::vector<Vec> to_dense() const {
    std::vector<Vec> d(static_cast<std::size_t>(rows_), Vec(static_cast<std::size_t>(cols_)));
    for (int r = 0; r < rows_; ++r)
      for (const auto& [c, x] : row(r)) d[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = x;
    return d;
  }

  static Matrix from_dense(const std::vector<Vec>& d) {
    int rows = static_cast<int>(d.size());
    int cols = rows == 0 ? 0 : static_cast<int>(d[0].size());
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) m.set(r, c, d[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
    return m;
  }

  /// Vertical concatenation.
  static Matrix stack(const Matrix& top, const Matrix& bottom) {
    if (top.cols_ != bottom.cols_) throw std::invalid_argument("stack: column mismatch");
    Matrix out(top.rows_ + bottom.rows_, top.cols_);
    for (int r = 0; r < top.rows_; ++r) out.data_[static_cast<std::size_t>(r)] = top.data_[static_cast<std::size_t>(r)];
    for (int r = 0; r < bottom.rows_; ++r)
      out.data_[static_cast<std::size_t>(top.rows_ + r)] = bottom.data_[static_cast<std::size_t>(r)];
    return out;
  }

 private:
  void check_index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("matrix index out of range");
  }
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::map<int, PadicNum>> data_;
};

/// A^T M + M A, the defect of A from the orthogonal Lie algebra of M.
inline Matrix so_defect(const Matrix& a, const Matrix& gram) { return a.transpose() * gram + gram * a; }

/// [A, B] = AB - BA.
inline Matrix bracket(const Matrix& a, const Matrix& b) { return a * b - b * a; }

/// Minimal valuation over the stored entries; INT_MAX for the zero matrix.
inline int residual_valuation(const Matrix& m) { return m.min_valuation(); }

namespace detail {

// Gauss-Jordan elimination with full pivoting on an entry of minimal
// valuation. Returns the pivot column of each pivot row (rows are permuted so
// pivot rows come first and are normalized to 1 at their pivot).
inline std::vector<int> gauss_jordan(std::vector<Vec>& a, const PadicCtx& ctx) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  for (auto& row : a)
    for (auto& x : row)
      if (negligible(x, ctx)) x = PadicNum();
  std::vector<int> pivots;
  std::vector<bool> used_col(cols, false);
  for (std::size_t step = 0; step < rows; ++step) {
    int best_r = -1, best_c = -1, best_v = INT_MAX;
    for (std::size_t r = step; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        if (used_col[c] || a[r][c].is_zero()) continue;
        int v = a[r][c].valuation();
        if (v < best_v) {
          best_v = v;
          best_r = static_cast<int>(r);
          best_c = static_cast<int>(c);
        }
      }
    if (best_r < 0) break;
    std::swap(a[step], a[static_cast<std::size_t>(best_r)]);
    const std::size_t pc = static_cast<std::size_t>(best_c);
    used_col[pc] = true;
    PadicNum inv = a[step][pc].inverse();
    for (auto& x : a[step]) x = x * inv;
    a[step][pc] = PadicNum::from_int(ctx, 1);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == step || a[r][pc].is_zero()) continue;
      PadicNum f = a[r][pc];
      for (std::size_t c = 0; c < cols; ++c) {
        if (c == pc || a[step][c].is_zero()) continue;
        a[r][c] = a[r][c] - f * a[step][c];
        if (negligible(a[r][c], ctx)) a[r][c] = PadicNum();
      }
      a[r][pc] = PadicNum();
    }
    pivots.push_back(best_c);
  }
  return pivots;
}

}  // namespace detail

inline int rank(const Matrix& m, const PadicCtx& ctx) {
  auto d = m.to_dense();
  return static_cast<int>(detail::gauss_jordan(d, ctx).size());
}

/// Basis of the right kernel {x : Mx = 0}, one vector per free column.
inline std::vector<Vec> kernel(const Matrix& m, const PadicCtx& ctx) {
  auto d = m.to_dense();
  auto pivots = detail::gauss_jordan(d, ctx);
  const std::size_t cols = static_cast<std::size_t>(m.cols());
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Vec> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v(cols);
    v[f] = PadicNum::from_int(ctx, 1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[static_cast<std::size_t>(pivots[r])] = -d[r][f];
    out.push_back(std::move(v));
  }
  return out;
}

inline Matrix inverse(const Matrix& m, const PadicCtx& ctx) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  const int n = m.rows();
  auto d = m.to_dense();
  for (int r = 0; r < n; ++r) {
    d[static_cast<std::size_t>(r)].resize(static_cast<std::size_t>(2 * n));
    d[static_cast<std::size_t>(r)][static_cast<std::size_t>(n + r)] = PadicNum::from_int(ctx, 1);
  }
  // Restrict pivot search to the left block by eliminating column by column.
  for (int c = 0; c < n; ++c) {
    int best = -1, best_v = INT_MAX;
    for (int r = c; r < n; ++r) {
      const PadicNum& x = d[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      if (negligible(x, ctx)) continue;
      if (x.valuation() < best_v) {
        best_v = x.valuation();
        best = r;
      }
    }
    if (best < 0) throw std::domain_error("inverse of a singular matrix");
    std::swap(d[static_cast<std::size_t>(c)], d[static_cast<std::size_t>(best)]);
    Vec& prow = d[static_cast<std::size_t>(c)];
    PadicNum inv = prow[static_cast<std::size_t>(c)].inverse();
    for (auto& x : prow) x = x * inv;
    prow[static_cast<std::size_t>(c)] = PadicNum::from_int(ctx, 1);
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      Vec& row = d[static_cast<std::size_t>(r)];
      PadicNum f = row[static_cast<std::size_t>(c)];
      if (f.is_zero()) continue;
      for (std::size_t k = 0; k < row.size(); ++k)
        if (k != static_cast<std::size_t>(c) && !prow[k].is_zero()) row[k] = row[k] - f * prow[k];
      row[static_cast<std::size_t>(c)] = PadicNum();
    }
  }
  Matrix out(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const PadicNum& x = d[static_cast<std::size_t>(r)][static_cast<std::size_t>(n + c)];
      if (!negligible(x, ctx)) out.set(r, c, x);
    }
  return out;
}

/// Determinant by column elimination with minimal-valuation row pivots.
inline PadicNum determinant(const Matrix& m, const PadicCtx& ctx) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = static_cast<std::size_t>(m.rows());
  auto d = m.to_dense();
  PadicNum det = PadicNum::from_int(ctx, 1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = n;
    int best_v = INT_MAX;
    for (std::size_t r = c; r < n; ++r)
      if (!negligible(d[r][c], ctx) && d[r][c].valuation() < best_v) {
        best_v = d[r][c].valuation();
        best = r;
      }
    if (best == n) return PadicNum::from_int(ctx, 0);
    if (best != c) {
      std::swap(d[c], d[best]);
      det = -det;
    }
    det = det * d[c][c];
    const PadicNum inv = d[c][c].inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (d[r][c].is_zero()) continue;
      const PadicNum f = d[r][c] * inv;
      for (std::size_t k = c + 1; k < n; ++k)
        if (!d[c][k].is_zero()) d[r][k] = d[r][k] - f * d[c][k];
    }
  }
  return det;
}

/// Diagonal entries of a form congruent to the symmetric matrix g. The pivot is
/// an entry of minimal valuation; an off-diagonal pivot (a, b) is first moved
/// to the diagonal by replacing basis vector a with a + b.
inline Vec diagonalize_symmetric(std::vector<Vec> g, const PadicCtx& ctx) {
  const std::size_t n = g.size();
  std::vector<bool> done(n, false);
  Vec out;
  for (std::size_t step = 0; step < n; ++step) {
    int best_v = INT_MAX;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (!done[a] && !done[b] && !negligible(g[a][b], ctx)) best_v = std::min(best_v, g[a][b].valuation());
    std::size_t ba = n, bb = n;
    for (std::size_t a = 0; a < n && ba == n; ++a)
      if (!done[a] && !negligible(g[a][a], ctx) && g[a][a].valuation() == best_v) ba = bb = a;
    for (std::size_t a = 0; a < n && ba == n; ++a)
      for (std::size_t b = 0; b < n && ba == n; ++b)
        if (!done[a] && !done[b] && !negligible(g[a][b], ctx) && g[a][b].valuation() == best_v) {
          ba = a;
          bb = b;
        }
    if (best_v == INT_MAX) throw std::domain_error("degenerate symmetric form");
    if (ba != bb) {
      // e_a <- e_a + e_b.
      for (std::size_t k = 0; k < n; ++k) g[ba][k] = g[ba][k] + g[bb][k];
      for (std::size_t k = 0; k < n; ++k) g[k][ba] = g[k][ba] + g[k][bb];
    }
    const std::size_t a = ba;
    PadicNum piv = g[a][a];
    if (negligible(piv, ctx)) throw PrecisionError("lost the diagonal pivot during congruence diagonalization");
    PadicNum inv = piv.inverse();
    for (std::size_t r = 0; r < n; ++r) {
      if (done[r] || r == a || g[r][a].is_zero()) continue;
      PadicNum f = g[r][a] * inv;
      for (std::size_t k = 0; k < n; ++k)
        if (k != a) g[r][k] = g[r][k] - f * g[a][k];
      g[r][a] = PadicNum();
      for (std::size_t k = 0; k < n; ++k)
        if (k != a && k != r) g[k][r] = g[k][r] - f * g[k][a];
      g[a][r] = PadicNum();
    }
    done[a] = true;
    out.push_back(piv);
  }
  return out;
}

}  // namespace nilorb
