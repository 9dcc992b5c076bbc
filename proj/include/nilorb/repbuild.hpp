#pragma once

// Explicit Lie triples {Y, H, X} in so(q) for an orbit label. Each part of the
// partition gets a block of the Witt basis and one or more sl2-bases
// (strings b_1, ..., b_i with X b_t = b_{t-1}, H b_t = (i - 2t + 1) b_t and
// Y b_t = t(i - t) b_{t+1}); the block matrices are P J P^{-1} where P holds
// those strings in the block's coordinates.

#include "nilorb/gammapart.hpp"
#include "nilorb/matrix.hpp"

#include <map>
#include <vector>

namespace nilorb {

/// Witt indices [start, start + pairs) (0-based) and kernel slots (1-based) of one part.
struct PartRange {
  int start = 0;
  int pairs = 0;
  std::vector<int> z;

  friend bool operator==(const PartRange&, const PartRange&) = default;
};

/// Basis v_1..v_m, w_1..w_m, z_1..z_d with B(v_i, w_j) = delta_ij and B(z_l, z_l) = r_l.
struct BasisMap {
  int m = 0;
  int d = 0;
  Vec r_list;
  std::vector<PartRange> ranges;  // parallel to Gamma::parts

  int n() const { return 2 * m + d; }
  int v(int i) const { return i; }          // i is a 0-based Witt index
  int w(int i) const { return m + i; }      // i is a 0-based Witt index
  int z(int l) const { return 2 * m + l - 1; }  // l is a 1-based kernel slot
};

struct LieTriple {
  Matrix X, H, Y;
  Matrix gram;
  BasisMap basis;
  OrbitLabel label;
  Gamma gamma;
};

/// Witt pairs a part occupies.
inline int witt_pairs(const GammaPart& p) {
  auto k = [](const IndexPair& m) { return (m.part - 1) / 2; };
  int sum_k = 0;
  for (const auto& m : p.members) sum_k += k(m);
  switch (p.kind) {
    case GammaKind::Even:
    case GammaKind::Hyp: return p.members.front().part;
    case GammaKind::Pairs: return sum_k + 1;
    case GammaKind::Quad: return sum_k + 2;
    case GammaKind::Trip: return sum_k + 1;
    case GammaKind::Sign: return sum_k;
    case GammaKind::Ani: return sum_k;
  }
  return 0;
}

inline Matrix build_gram(const BasisMap& b, const PadicCtx& ctx) {
  Matrix g(b.n(), b.n());
  const PadicNum one = PadicNum::from_int(ctx, 1);
  for (int i = 0; i < b.m; ++i) {
    g.set(b.v(i), b.w(i), one);
    g.set(b.w(i), b.v(i), one);
  }
  for (int l = 1; l <= b.d; ++l) g.set(b.z(l), b.z(l), b.r_list.at(static_cast<std::size_t>(l - 1)));
  return g;
}

/// Contiguous allocation of Witt indices in partition order.
inline BasisMap allocate_basis(const OrbitLabel& label, const Gamma& gamma, const PadicCtx& ctx) {
  BasisMap b;
  for (SquareClass c : kernel_diagonal(label, ctx)) b.r_list.push_back(representative(c, ctx));
  b.d = static_cast<int>(b.r_list.size());
  int next = 0;
  for (const GammaPart& p : gamma.parts) {
    PartRange r{next, witt_pairs(p), p.ani_slots};
    next += r.pairs;
    b.ranges.push_back(std::move(r));
  }
  b.m = next;
  if (b.n() != label.lambda.size())
    throw std::logic_error("basis allocation covers " + std::to_string(b.n()) + " dimensions, expected " +
                           std::to_string(label.lambda.size()));
  return b;
}

/// Root vectors of so(q) for the basis b, with 0-based Witt indices and
/// 1-based kernel slots.
namespace roots {

inline Matrix x_ij(const BasisMap& b, const PadicCtx& ctx, int i, int j) {  // e_i - e_j
  Matrix x(b.n(), b.n());
  x.set(b.v(i), b.v(j), PadicNum::from_int(ctx, 1));
  x.set(b.w(j), b.w(i), PadicNum::from_int(ctx, -1));
  return x;
}

inline Matrix x_i_mj(const BasisMap& b, const PadicCtx& ctx, int i, int j) {  // e_i + e_j
  Matrix x(b.n(), b.n());
  x.set(b.v(i), b.w(j), PadicNum::from_int(ctx, 1));
  x.set(b.v(j), b.w(i), PadicNum::from_int(ctx, -1));
  return x;
}

inline Matrix x_mi_j(const BasisMap& b, const PadicCtx& ctx, int i, int j) {  // -e_i - e_j
  Matrix x(b.n(), b.n());
  x.set(b.w(j), b.v(i), PadicNum::from_int(ctx, 1));
  x.set(b.w(i), b.v(j), PadicNum::from_int(ctx, -1));
  return x;
}

inline Matrix x_i_l(const BasisMap& b, const PadicCtx& ctx, int i, int l) {  // e_i
  Matrix x(b.n(), b.n());
  x.set(b.z(l), b.w(i), PadicNum::from_int(ctx, 1));
  x.set(b.v(i), b.z(l), -b.r_list.at(static_cast<std::size_t>(l - 1)));
  return x;
}

inline Matrix x_mi_l(const BasisMap& b, const PadicCtx& ctx, int i, int l) {  // -e_i
  Matrix x(b.n(), b.n());
  x.set(b.z(l), b.v(i), PadicNum::from_int(ctx, 1));
  x.set(b.w(i), b.z(l), -b.r_list.at(static_cast<std::size_t>(l - 1)));
  return x;
}

}  // namespace roots

namespace detail {

using SparseVec = std::map<int, PadicNum>;
using Sl2String = std::vector<SparseVec>;  // b_1 (highest weight) ... b_i

inline void axpy(SparseVec& acc, const PadicNum& a, const SparseVec& x) {
  for (const auto& [k, v] : x) {
    PadicNum s = acc.count(k) ? acc[k] + a * v : a * v;
    if (s.is_zero())
      acc.erase(k);
    else
      acc[k] = s;
  }
}

// Builds sl2-strings in global coordinates for one part.
class CaseBuilder {
 public:
  CaseBuilder(const BasisMap& b, const PartRange& r, const PadicCtx& ctx) : b_(b), r_(r), ctx_(ctx) {}

  PadicNum num(std::int64_t x) const { return PadicNum::from_int(ctx_, x); }
  PadicNum half() const { return num(1) / num(2); }

  // Local 1-based Witt index t inside the part's range.
  SparseVec V(int t, const PadicNum& a) const { return {{b_.v(r_.start + t - 1), a}}; }
  SparseVec W(int t, const PadicNum& a) const { return {{b_.w(r_.start + t - 1), a}}; }
  SparseVec Z(int l, const PadicNum& a) const { return {{b_.z(l), a}}; }

  SparseVec sum(std::initializer_list<SparseVec> xs) const {
    SparseVec out;
    for (const auto& x : xs) axpy(out, num(1), x);
    return out;
  }

  // {s v_{o+1}, ..., s v_{o+k}, x, eps*(-w_{o+k}), eps*w_{o+k-1}, ..., eps*(-1)^k w_{o+1}}.
  Sl2String odd_string(const PadicNum& s, int o, int k, const SparseVec& x, int eps) const {
    Sl2String out;
    for (int t = 1; t <= k; ++t) out.push_back(V(o + t, s));
    out.push_back(x);
    for (int u = 1; u <= k; ++u) out.push_back(W(o + k + 1 - u, num(eps * (u % 2 ? -1 : 1))));
    return out;
  }

  std::vector<Sl2String> hyp(int i) const {
    Sl2String b1, b2;
    for (int t = 1; t <= i; ++t) b1.push_back(V(t, num(1)));
    for (int j = 1; j <= i; ++j) b2.push_back(W(i + 1 - j, num(j % 2 ? -1 : 1)));
    return {b1, b2};
  }

  // Second SO-class: v_i and w_i exchanged.
  std::vector<Sl2String> very_even(int i) const {
    Sl2String b1, b2;
    for (int t = 1; t < i; ++t) b1.push_back(V(t, num(1)));
    b1.push_back(W(i, num(1)));
    b2.push_back(V(i, num(1)));
    for (int t = 2; t <= i; ++t) b2.push_back(W(i + 1 - t, num(t % 2 ? 1 : -1)));
    return {b1, b2};
  }

  std::vector<Sl2String> pairs(int k, int k2, const PadicNum& r) const {
    const int p = k + k2 + 1;
    SparseVec xp = sum({V(p, r * half()), W(p, num(1))});
    SparseVec xm = sum({V(p, r * half()), W(p, num(-1))});
    return {odd_string(r, 0, k, xp, 1), odd_string(r, k, k2, xm, -1)};
  }

  std::vector<Sl2String> quad(const std::vector<int>& k, const PadicNum& r) const {
    const auto [c, s] = sum_of_squares_minus_one(ctx_);
    int p = 2;
    for (int x : k) p += x;
    const PadicNum h = r * half();
    std::vector<SparseVec> x{
        sum({V(p - 1, h), W(p - 1, num(1))}),
        sum({V(p, h), W(p, num(1))}),
        sum({V(p - 1, c * h), V(p, s * h), W(p - 1, -c), W(p, -s)}),
        sum({V(p - 1, -s * h), V(p, c * h), W(p - 1, s), W(p, -c)}),
    };
    std::vector<Sl2String> out;
    int off = 0;
    for (std::size_t t = 0; t < 4; ++t) {
      out.push_back(odd_string(r, off, k[t], x[t], 1));
      off += k[t];
    }
    return out;
  }

  std::vector<Sl2String> trip(const std::vector<int>& k, int l, const PadicNum& r) const {
    const auto [c, s] = sum_of_squares_minus_one(ctx_);
    const int p = k[0] + k[1] + k[2] + 1;
    const PadicNum h = r * half();
    std::vector<SparseVec> x{
        sum({V(p, c * h), W(p, c), Z(l, s)}),
        sum({V(p, h), W(p, num(-1))}),
        sum({V(p, -(s * h)), W(p, -s), Z(l, c)}),
    };
    std::vector<Sl2String> out;
    int off = 0;
    for (std::size_t t = 0; t < 3; ++t) {
      out.push_back(odd_string(-r, off, k[t], x[t], 1));
      off += k[t];
    }
    return out;
  }

  std::vector<Sl2String> sign(int k, int k2, int l, int kappa, const PadicNum& r) const {
    const auto [c, s] = sum_of_squares_minus_one(ctx_);
    SparseVec x1 = sum({Z(l, c), Z(kappa, -s)});
    SparseVec x2 = sum({Z(l, s), Z(kappa, c)});
    return {odd_string(-r, 0, k, x1, 1), odd_string(-r, k, k2, x2, 1)};
  }

  std::vector<Sl2String> ani(const std::vector<int>& k, const std::vector<int>& slots) const {
    std::vector<Sl2String> out;
    int off = 0;
    for (std::size_t t = 0; t < k.size(); ++t) {
      const PadicNum& r = b_.r_list.at(static_cast<std::size_t>(slots[t] - 1));
      out.push_back(odd_string(r, off, k[t], Z(slots[t], num(1)), 1));
      off += k[t];
    }
    return out;
  }

 private:
  const BasisMap& b_;
  const PartRange& r_;
  const PadicCtx& ctx_;
};

// Adds P J P^{-1} (and the H, Y analogues) for the given strings into the triple.
inline void add_strings(const std::vector<Sl2String>& strings, Matrix& X, Matrix& H, Matrix& Y, const PadicCtx& ctx) {
  std::map<int, int> local;
  for (const auto& s : strings)
    for (const auto& vec : s)
      for (const auto& [g, a] : vec) local.emplace(g, 0);
  int L = 0;
  for (auto& [g, idx] : local) idx = L++;
  std::vector<int> global(static_cast<std::size_t>(L));
  for (const auto& [g, idx] : local) global[static_cast<std::size_t>(idx)] = g;

  Matrix P(L, L), J(L, L), D(L, L), Ym(L, L);
  int col = 0;
  for (const auto& s : strings) {
    const int i = static_cast<int>(s.size());
    for (int t = 1; t <= i; ++t, ++col) {
      if (col >= L) throw std::logic_error("sl2-strings exceed the block dimension");
      for (const auto& [g, a] : s[static_cast<std::size_t>(t - 1)]) P.set(local.at(g), col, a);
      if (t > 1) J.set(col - 1, col, PadicNum::from_int(ctx, 1));
      if (i - 2 * t + 1 != 0) D.set(col, col, PadicNum::from_int(ctx, i - 2 * t + 1));
      if (t < i) Ym.set(col + 1, col, PadicNum::from_int(ctx, static_cast<std::int64_t>(t) * (i - t)));
    }
  }
  if (col != L) throw std::logic_error("sl2-strings do not span the block");
  Matrix Pinv = inverse(P, ctx);
  auto scatter = [&](const Matrix& loc, Matrix& out) {
    for (int a = 0; a < L; ++a)
      for (const auto& [b, val] : loc.row(a))
        if (!negligible(val, ctx)) out.set(global[static_cast<std::size_t>(a)], global[static_cast<std::size_t>(b)], val);
  };
  scatter(P * J * Pinv, X);
  scatter(P * D * Pinv, H);
  scatter(P * Ym * Pinv, Y);
}

inline std::vector<int> member_ks(const GammaPart& p) {
  std::vector<int> k;
  for (const auto& m : p.members) k.push_back((m.part - 1) / 2);
  return k;
}

}  // namespace detail

/// The sl2-strings of one part (exposed for inspection and testing).
inline std::vector<std::vector<std::map<int, PadicNum>>> part_strings(const GammaPart& part, const PartRange& range,
                                                                      const BasisMap& b, const PadicCtx& ctx,
                                                                      bool very_even_variant = false) {
  detail::CaseBuilder cb(b, range, ctx);
  const auto k = detail::member_ks(part);
  switch (part.kind) {
    case GammaKind::Even:
    case GammaKind::Hyp: {
      const int i = part.members.front().part;
      return very_even_variant ? cb.very_even(i) : cb.hyp(i);
    }
    case GammaKind::Pairs: return cb.pairs(k[0], k[1], representative(part.scalars.at(0), ctx));
    case GammaKind::Quad: return cb.quad(k, representative(part.scalars.at(0), ctx));
    case GammaKind::Trip:
      return cb.trip(k, range.z.at(0), b.r_list.at(static_cast<std::size_t>(range.z.at(0) - 1)));
    case GammaKind::Sign:
      return cb.sign(k[0], k[1], range.z.at(0), range.z.at(1), b.r_list.at(static_cast<std::size_t>(range.z.at(0) - 1)));
    case GammaKind::Ani: return cb.ani(k, range.z);
  }
  return {};
}

inline LieTriple build_triple(const OrbitLabel& label, const Gamma& gamma, const PadicCtx& ctx) {
  LieTriple t;
  t.label = label;
  t.gamma = gamma;
  t.basis = allocate_basis(label, gamma, ctx);
  const int n = t.basis.n();
  t.gram = build_gram(t.basis, ctx);
  t.X = t.H = t.Y = Matrix(n, n);
  bool ve_pending = label.ve == VeTag::II;
  for (std::size_t q = 0; q < gamma.parts.size(); ++q) {
    const GammaPart& part = gamma.parts[q];
    const bool ve = ve_pending && part.kind == GammaKind::Even;
    if (ve) ve_pending = false;
    auto strings = part_strings(part, t.basis.ranges[q], t.basis, ctx, ve);
    if (!strings.empty()) detail::add_strings(strings, t.X, t.H, t.Y, ctx);
  }
  if (ve_pending) throw std::invalid_argument("tag II requires a very even partition");
  return t;
}

inline LieTriple build_triple(const OrbitLabel& label, const PadicCtx& ctx) {
  return build_triple(label, build_gamma(label, ctx), ctx);
}

}  // namespace nilorb
