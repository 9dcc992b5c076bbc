#pragma once

// JSON encodings of the library types. Objects use nlohmann's ordered-by-key
// maps, so equal values always print to the same bytes.

#include "nilorb/building.hpp"
#include "nilorb/verify.hpp"

#include "json.hpp"

#include <string>

namespace nilorb {

using Json = nlohmann::json;

inline Json to_json(SquareClass c) { return to_string(c); }

inline Json to_json(const WittClass& w) { return {{"unit", to_string(w.unit)}, {"pi", to_string(w.pi)}}; }

inline Json to_json(const QFormClass& q) { return {{"deg", q.degree}, {"witt", to_json(q.cls)}}; }

inline Json to_json(const DiagonalForm& f) {
  Json a = Json::array();
  for (SquareClass c : f) a.push_back(to_string(c));
  return a;
}

inline Json to_json(const OrbitLabel& l) {
  Json q = Json::array();
  for (const QFormClass& f : l.qtup) q.push_back(to_json(f));
  return {{"lambda", l.lambda.parts()}, {"qtup", q}, {"ve", l.ve ? Json(to_string(*l.ve)) : Json(nullptr)}};
}

inline Json to_json(const Gamma& g) {
  Json parts = Json::array();
  for (const GammaPart& p : g.parts) {
    Json members = Json::array();
    for (const IndexPair& m : p.members) members.push_back({m.part, m.slot});
    parts.push_back({{"kind", to_string(p.kind)}, {"members", members}, {"scalars", to_json(p.scalars)},
                     {"ani_slots", p.ani_slots}});
  }
  Json rewritten = Json::object();
  for (const auto& [part, diag] : g.rewritten_diagonals) rewritten[std::to_string(part)] = to_json(diag);
  return {{"parts", parts}, {"rewritten_diagonals", rewritten}};
}

/// Unit digits as a balanced decimal residue mod p^precision, so -1 prints as "-1".
inline std::string unit_digits(const PadicNum& x) {
  const BigInt& mod = x.ctx()->pow(x.precision());
  BigInt u = x.unit();
  if (2 * u > mod) u -= mod;
  return u.str();
}

/// Nonzero entries as [row, col, valuation, unit digits], row-major.
inline Json to_json(const Matrix& m, const PadicCtx& ctx) {
  Json a = Json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (const auto& [c, x] : m.row(r))
      if (!negligible(x, ctx)) a.push_back({r, c, x.valuation(), unit_digits(x)});
  return a;
}

inline Json to_json(const BasisMap& b) {
  Json ranges = Json::array();
  for (const PartRange& r : b.ranges) ranges.push_back({{"start", r.start}, {"pairs", r.pairs}, {"z", r.z}});
  Json rl = Json::array();
  for (const PadicNum& r : b.r_list) rl.push_back(to_string(square_class(r)));
  return {{"m", b.m}, {"d", b.d}, {"r_list", rl}, {"ranges", ranges}};
}

inline Json to_json(const LieTriple& t, const PadicCtx& ctx) {
  return {{"n", t.basis.n()},           {"basis", to_json(t.basis)}, {"gram", to_json(t.gram, ctx)},
          {"X", to_json(t.X, ctx)},     {"H", to_json(t.H, ctx)},    {"Y", to_json(t.Y, ctx)},
          {"label", to_json(t.label)},  {"gamma", to_json(t.gamma)}};
}

inline Json to_json(const VerifyReport& r) {
  Json forms = Json::object();
  for (const auto& [i, f] : r.mult_forms) forms[std::to_string(i)] = to_json(f);
  return {{"in_so", {r.in_so[0], r.in_so[1], r.in_so[2]}},
          {"triple_ok", r.triple_ok},
          {"jordan", r.jordan},
          {"mult_forms", forms},
          {"matches_label", r.matches_label},
          {"precision_margin", r.precision_margin}};
}

inline Json to_json(const FacetSolution& s) {
  Json point = Json::array();
  for (const Rational& x : s.point) point.push_back(to_string(x));
  return {{"dim", s.dim}, {"point", point}, {"lineality", s.lineality}};
}

inline Json to_json(const RootTerm& t) { return {{"root", t.root_string()}, {"valuation", to_string(t.valuation)}}; }

}  // namespace nilorb
