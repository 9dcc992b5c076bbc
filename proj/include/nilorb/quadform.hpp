#pragma once

// Witt group of a p-adic field (p odd) and isometry classes of quadratic forms.
//
// W_k is isomorphic to W_f x W_f, where f is the residue field: the first
// factor collects the unit diagonal entries, the second the entries of odd
// valuation (scaled down by the uniformizer). Each W_f has four elements,
// {Hyp, <1>, <rho>, <1,-rho>}; it is a Klein four-group when -1 is a square
// and cyclic of order four (generated by <1>) otherwise.

#include "nilorb/padic.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilorb {

enum class ResWittClass { Zero, U1, URho, U1Rho };

inline constexpr ResWittClass kAllResWittClasses[] = {ResWittClass::Zero, ResWittClass::U1, ResWittClass::URho,
                                                      ResWittClass::U1Rho};

namespace detail {

// Klein encoding: bit 0 = <1>, bit 1 = <rho>, so <1,-rho> = <1,rho> = 3.
inline int klein_code(ResWittClass c) {
  switch (c) {
    case ResWittClass::Zero: return 0;
    case ResWittClass::U1: return 1;
    case ResWittClass::URho: return 2;
    case ResWittClass::U1Rho: return 3;
  }
  return 0;
}

inline ResWittClass from_klein_code(int c) {
  constexpr ResWittClass table[] = {ResWittClass::Zero, ResWittClass::U1, ResWittClass::URho, ResWittClass::U1Rho};
  return table[c & 3];
}

// Cyclic encoding: <1> generates; 2<1> = <1,1> = <1,-rho>, 3<1> = <rho>.
inline int cyclic_code(ResWittClass c) {
  switch (c) {
    case ResWittClass::Zero: return 0;
    case ResWittClass::U1: return 1;
    case ResWittClass::U1Rho: return 2;
    case ResWittClass::URho: return 3;
  }
  return 0;
}

inline ResWittClass from_cyclic_code(int c) {
  constexpr ResWittClass table[] = {ResWittClass::Zero, ResWittClass::U1, ResWittClass::U1Rho, ResWittClass::URho};
  return table[((c % 4) + 4) % 4];
}

}  // namespace detail

inline ResWittClass res_add(ResWittClass a, ResWittClass b, bool scno) {
  if (scno) return detail::from_klein_code(detail::klein_code(a) ^ detail::klein_code(b));
  return detail::from_cyclic_code(detail::cyclic_code(a) + detail::cyclic_code(b));
}

inline ResWittClass res_neg(ResWittClass a, bool scno) {
  if (scno) return a;
  return detail::from_cyclic_code(-detail::cyclic_code(a));
}

inline int res_dim(ResWittClass a) {
  switch (a) {
    case ResWittClass::Zero: return 0;
    case ResWittClass::U1:
    case ResWittClass::URho: return 1;
    case ResWittClass::U1Rho: return 2;
  }
  return 0;
}

inline std::string to_string(ResWittClass a) {
  switch (a) {
    case ResWittClass::Zero: return "ZERO";
    case ResWittClass::U1: return "U1";
    case ResWittClass::URho: return "URHO";
    case ResWittClass::U1Rho: return "U1RHO";
  }
  return "?";
}

inline ResWittClass res_witt_from_string(const std::string& s) {
  for (ResWittClass c : kAllResWittClasses)
    if (to_string(c) == s) return c;
  throw std::invalid_argument("unknown residue Witt class '" + s + "' (expected ZERO, U1, URHO or U1RHO)");
}

/// Element of W_k as a (unit part, uniformizer part) pair.
struct WittClass {
  ResWittClass unit = ResWittClass::Zero;
  ResWittClass pi = ResWittClass::Zero;

  friend bool operator==(const WittClass&, const WittClass&) = default;
  friend auto operator<=>(const WittClass&, const WittClass&) = default;

  bool is_zero() const { return unit == ResWittClass::Zero && pi == ResWittClass::Zero; }
};

inline std::vector<WittClass> all_witt_classes() {
  std::vector<WittClass> out;
  for (ResWittClass u : kAllResWittClasses)
    for (ResWittClass v : kAllResWittClasses) out.push_back({u, v});
  return out;
}

inline std::string to_string(const WittClass& w) { return to_string(w.unit) + "." + to_string(w.pi); }

inline WittClass witt_add(const WittClass& u, const WittClass& v, const PadicCtx& ctx) {
  return {res_add(u.unit, v.unit, ctx.scno), res_add(u.pi, v.pi, ctx.scno)};
}

inline WittClass witt_neg(const WittClass& u, const PadicCtx& ctx) {
  return {res_neg(u.unit, ctx.scno), res_neg(u.pi, ctx.scno)};
}

inline WittClass witt_sub(const WittClass& u, const WittClass& v, const PadicCtx& ctx) {
  return witt_add(u, witt_neg(v, ctx), ctx);
}

/// Dimension of the anisotropic kernel, 0..4.
inline int aniso_dim(const WittClass& u) { return res_dim(u.unit) + res_dim(u.pi); }

using DiagonalForm = std::vector<SquareClass>;

inline WittClass witt_of_entry(SquareClass c) {
  ResWittClass r = has_rho(c) ? ResWittClass::URho : ResWittClass::U1;
  return has_odd_valuation(c) ? WittClass{ResWittClass::Zero, r} : WittClass{r, ResWittClass::Zero};
}

inline WittClass witt_of_diagonal(const DiagonalForm& f, const PadicCtx& ctx) {
  WittClass acc;
  for (SquareClass c : f) acc = witt_add(acc, witt_of_entry(c), ctx);
  return acc;
}

namespace detail {

inline DiagonalForm res_representative(ResWittClass c, bool pi, bool scno) {
  SquareClass one = pi ? SquareClass::Pi : SquareClass::One;
  SquareClass rho = pi ? SquareClass::RhoPi : SquareClass::Rho;
  switch (c) {
    case ResWittClass::Zero: return {};
    case ResWittClass::U1: return {one};
    case ResWittClass::URho: return {rho};
    case ResWittClass::U1Rho: return scno ? DiagonalForm{one, rho} : DiagonalForm{one, one};
  }
  return {};
}

}  // namespace detail

/// Canonical diagonal of the anisotropic kernel: unit entries first, then the
/// entries of odd valuation.
inline DiagonalForm aniso_representative(const WittClass& u, const PadicCtx& ctx) {
  DiagonalForm out = detail::res_representative(u.unit, false, ctx.scno);
  DiagonalForm pi = detail::res_representative(u.pi, true, ctx.scno);
  out.insert(out.end(), pi.begin(), pi.end());
  return out;
}

/// Isometry class of a nondegenerate form: degree plus Witt class.
struct QFormClass {
  int degree = 0;
  WittClass cls;

  friend bool operator==(const QFormClass&, const QFormClass&) = default;
  friend auto operator<=>(const QFormClass&, const QFormClass&) = default;

  bool valid() const {
    int d = aniso_dim(cls);
    return degree >= d && (degree - d) % 2 == 0;
  }
};

inline std::string to_string(const QFormClass& q) {
  return std::to_string(q.degree) + ":" + to_string(q.cls);
}

/// All isometry classes of a given degree: 4 for degree 1, 7 for degree 2 and
/// 8 from degree 3 on.
inline std::vector<QFormClass> isometry_classes(int degree) {
  if (degree < 0) throw std::invalid_argument("negative degree");
  std::vector<QFormClass> out;
  for (const WittClass& w : all_witt_classes()) {
    QFormClass q{degree, w};
    if (q.valid()) out.push_back(q);
  }
  return out;
}

/// Kernel representative followed by hyperbolic pads (1, -1).
inline DiagonalForm canonical_diagonal(const QFormClass& c, const PadicCtx& ctx) {
  if (!c.valid()) throw std::invalid_argument("invalid quadratic form class " + to_string(c));
  DiagonalForm out = aniso_representative(c.cls, ctx);
  const SquareClass minus_one = minus_one_class(ctx);
  for (int t = 0; t < (c.degree - aniso_dim(c.cls)) / 2; ++t) {
    out.push_back(SquareClass::One);
    out.push_back(minus_one);
  }
  return out;
}

inline QFormClass qform_of_diagonal(const DiagonalForm& f, const PadicCtx& ctx) {
  return {static_cast<int>(f.size()), witt_of_diagonal(f, ctx)};
}

}  // namespace nilorb
