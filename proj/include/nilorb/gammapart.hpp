#pragma once

// Partition of the index set {(i, j) : i in lambda, 1 <= j <= m_i} into the
// seven case types used to build orbit representatives. build_gamma always
// returns a partition with as many EVEN/HYP parts as possible.

#include "nilorb/orbitlab.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace nilorb {

struct IndexPair {
  int part = 0;
  int slot = 0;  // 1-based position in the diagonal of q_part

  friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

enum class GammaKind { Even, Hyp, Pairs, Quad, Trip, Sign, Ani };

inline std::string to_string(GammaKind k) {
  switch (k) {
    case GammaKind::Even: return "even";
    case GammaKind::Hyp: return "hyp";
    case GammaKind::Pairs: return "pairs";
    case GammaKind::Quad: return "quad";
    case GammaKind::Trip: return "trip";
    case GammaKind::Sign: return "sign";
    case GammaKind::Ani: return "ani";
  }
  return "?";
}

inline GammaKind gamma_kind_from_string(const std::string& s) {
  for (GammaKind k : {GammaKind::Even, GammaKind::Hyp, GammaKind::Pairs, GammaKind::Quad, GammaKind::Trip,
                      GammaKind::Sign, GammaKind::Ani})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown part kind '" + s + "'");
}

/// One block of the partition. scalars[t] is the square class of the diagonal
/// entry at members[t] (empty for EVEN). ani_slots are 1-based kernel slots:
/// one for TRIP, two ascending for SIGN, one per member for ANI.
struct GammaPart {
  GammaKind kind = GammaKind::Even;
  std::vector<IndexPair> members;
  std::vector<SquareClass> scalars;
  std::vector<int> ani_slots;

  friend bool operator==(const GammaPart&, const GammaPart&) = default;
};

struct Gamma {
  std::vector<GammaPart> parts;
  std::map<int, DiagonalForm> rewritten_diagonals;  // odd part -> final diagonal of q_part

  friend bool operator==(const Gamma&, const Gamma&) = default;
};

/// Canonical diagonal of each q_i, keyed by the odd part i.
inline std::map<int, DiagonalForm> initial_diagonals(const OrbitLabel& label, const PadicCtx& ctx) {
  check_tuple_shape(label.lambda, label.qtup);
  std::map<int, DiagonalForm> out;
  auto odd = label.lambda.odd_parts();
  for (std::size_t t = 0; t < odd.size(); ++t) out[odd[t]] = canonical_diagonal(label.qtup[t], ctx);
  return out;
}

/// Diagonal <r_1, ..., r_d> of the anisotropic kernel of q.
inline DiagonalForm kernel_diagonal(const OrbitLabel& label, const PadicCtx& ctx) {
  return aniso_representative(witt_of_tuple(label.qtup, ctx), ctx);
}

namespace detail {

// Allocates kernel slots whose class is c, smallest index first.
struct SlotPool {
  DiagonalForm kernel;
  std::vector<bool> used;

  explicit SlotPool(DiagonalForm k) : kernel(std::move(k)), used(kernel.size(), false) {}

  int take(SquareClass c) {
    for (std::size_t l = 0; l < kernel.size(); ++l)
      if (!used[l] && kernel[l] == c) {
        used[l] = true;
        return static_cast<int>(l) + 1;
      }
    throw std::logic_error("no free kernel slot of class " + to_string(c));
  }

  bool can_take(std::vector<SquareClass> cs) const {
    auto free = used;
    for (SquareClass c : cs) {
      bool found = false;
      for (std::size_t l = 0; l < kernel.size() && !found; ++l)
        if (!free[l] && kernel[l] == c) free[l] = found = true;
      if (!found) return false;
    }
    return true;
  }
};

struct Entry {
  IndexPair at;
  SquareClass cls;
};

inline GammaPart make_pairs(const Entry& a, const Entry& b) {
  // The member with the larger part carries r.
  const Entry& hi = a.at.part > b.at.part ? a : b;
  const Entry& lo = a.at.part > b.at.part ? b : a;
  return {GammaKind::Pairs, {hi.at, lo.at}, {hi.cls, lo.cls}, {}};
}

// Greedy matching of r against -r across distinct parts. Entries are
// expected in (part descending, slot ascending) order.
inline std::vector<Entry> match_pairs(const std::vector<Entry>& in, std::vector<GammaPart>& out, const PadicCtx& ctx) {
  std::vector<bool> done(in.size(), false);
  for (std::size_t e = 0; e < in.size(); ++e) {
    if (done[e]) continue;
    for (std::size_t f = e + 1; f < in.size(); ++f) {
      if (done[f] || in[f].at.part == in[e].at.part || in[f].cls != negate(in[e].cls, ctx)) continue;
      done[e] = done[f] = true;
      out.push_back(make_pairs(in[e], in[f]));
      break;
    }
  }
  std::vector<Entry> rest;
  for (std::size_t e = 0; e < in.size(); ++e)
    if (!done[e]) rest.push_back(in[e]);
  return rest;
}

inline void sort_entries(std::vector<Entry>& v) {
  std::stable_sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) {
    return a.at.part != b.at.part ? a.at.part > b.at.part : a.at.slot < b.at.slot;
  });
}

// Resolves a homogeneous leftover S_r (noar) into PAIRS / QUAD / terminal parts.
// Terminal ANI members are appended to ani (matched to slots later).
inline void resolve_group(std::vector<Entry> s, std::map<int, DiagonalForm>& diag, std::vector<GammaPart>& out,
                          std::vector<Entry>& ani, SlotPool& pool, const PadicCtx& ctx) {
  if (s.empty()) return;
  const SquareClass r = s.front().cls;
  const SquareClass minus_r = negate(r, ctx);

  // Same-part sign rewrites, each followed by two PAIRS with other parts.
  for (;;) {
    if (s.size() <= 2) break;
    std::size_t a = s.size(), b = s.size();
    for (std::size_t x = 0; x < s.size() && a == s.size(); ++x)
      for (std::size_t y = x + 1; y < s.size(); ++y)
        if (s[x].at.part == s[y].at.part) {
          a = x;
          b = y;
          break;
        }
    if (a == s.size()) break;
    Entry ea = s[a], eb = s[b];
    ea.cls = eb.cls = minus_r;
    diag[ea.at.part][static_cast<std::size_t>(ea.at.slot - 1)] = minus_r;
    diag[eb.at.part][static_cast<std::size_t>(eb.at.slot - 1)] = minus_r;
    std::vector<Entry> others;
    for (std::size_t x = 0; x < s.size(); ++x)
      if (x != a && x != b) others.push_back(s[x]);
    sort_entries(others);
    std::vector<Entry> rest;
    std::size_t used = 0;
    std::vector<bool> taken(others.size(), false);
    for (const Entry& e : {ea, eb}) {
      std::size_t x = 0;
      while (x < others.size() && (taken[x] || others[x].at.part == e.at.part)) ++x;
      if (x == others.size()) {
        rest.push_back(e);
        continue;
      }
      taken[x] = true;
      out.push_back(make_pairs(e, others[x]));
      ++used;
    }
    for (std::size_t x = 0; x < others.size(); ++x)
      if (!taken[x]) rest.push_back(others[x]);
    // A lone -r left by the rewrite becomes an anisotropic member.
    std::vector<Entry> still;
    for (const Entry& e : rest) {
      if (e.cls == minus_r)
        ani.push_back(e);
      else
        still.push_back(e);
    }
    s = std::move(still);
    if (used == 0) throw std::logic_error("sign rewrite found no partner");
  }

  sort_entries(s);
  // All parts are now distinct when |S_r| > 2: eliminate quadruples, largest parts first.
  while (s.size() > 3) {
    GammaPart q{GammaKind::Quad, {}, {}, {}};
    for (std::size_t x = 0; x < 4; ++x) {
      q.members.push_back(s[x].at);
      q.scalars.push_back(s[x].cls);
    }
    out.push_back(std::move(q));
    s.erase(s.begin(), s.begin() + 4);
  }

  if (s.size() == 3) {
    GammaPart t{GammaKind::Trip, {}, {}, {pool.take(minus_r)}};
    for (const Entry& e : s) {
      t.members.push_back(e.at);
      t.scalars.push_back(e.cls);
    }
    out.push_back(std::move(t));
  } else if (s.size() == 2 && !pool.can_take({r, r})) {
    int k1 = pool.take(minus_r), k2 = pool.take(minus_r);
    out.push_back({GammaKind::Sign, {s[0].at, s[1].at}, {s[0].cls, s[1].cls}, {std::min(k1, k2), std::max(k1, k2)}});
  } else {
    for (const Entry& e : s) ani.push_back(e);
  }
}

}  // namespace detail

/// Builds the maximal partition for a label. The flag is reserved: only the
/// maximal partition is produced.
inline Gamma build_gamma(const OrbitLabel& label, const PadicCtx& ctx, bool maximize = true) {
  (void)maximize;
  Gamma g;
  g.rewritten_diagonals = initial_diagonals(label, ctx);
  const Partition& lambda = label.lambda;

  std::vector<GammaPart> even, hyp, pairs, terminal;
  for (int i : lambda.even_parts())
    for (int j = 1; j + 1 <= lambda.multiplicity(i); j += 2) even.push_back({GammaKind::Even, {{i, j}, {i, j + 1}}, {}, {}});

  std::vector<detail::Entry> kernel_entries;
  auto odd = lambda.odd_parts();
  for (std::size_t t = odd.size(); t-- > 0;) {
    const int i = odd[t];
    const DiagonalForm& f = g.rewritten_diagonals[i];
    const int d = aniso_dim(label.qtup[t].cls);
    for (int j = 1; j <= d; ++j) kernel_entries.push_back({{i, j}, f[static_cast<std::size_t>(j - 1)]});
    for (int j = d + 1; j + 1 <= static_cast<int>(f.size()); j += 2)
      hyp.push_back({GammaKind::Hyp, {{i, j}, {i, j + 1}}, {f[static_cast<std::size_t>(j - 1)], f[static_cast<std::size_t>(j)]}, {}});
  }

  detail::SlotPool pool(kernel_diagonal(label, ctx));
  auto rest = detail::match_pairs(kernel_entries, pairs, ctx);
  std::vector<detail::Entry> ani;
  std::vector<GammaPart> quads;
  if (ctx.scno) {
    ani = rest;
  } else {
    std::vector<detail::Entry> units, pis;
    for (const auto& e : rest) (has_odd_valuation(e.cls) ? pis : units).push_back(e);
    detail::resolve_group(units, g.rewritten_diagonals, pairs, ani, pool, ctx);
    detail::resolve_group(pis, g.rewritten_diagonals, pairs, ani, pool, ctx);
  }
  // Split resolved parts by kind; resolve_group appends everything to pairs.
  std::vector<GammaPart> pairs_only, quad, trip, sign;
  for (auto& p : pairs) {
    switch (p.kind) {
      case GammaKind::Pairs: pairs_only.push_back(std::move(p)); break;
      case GammaKind::Quad: quad.push_back(std::move(p)); break;
      case GammaKind::Trip: trip.push_back(std::move(p)); break;
      case GammaKind::Sign: sign.push_back(std::move(p)); break;
      default: throw std::logic_error("unexpected part kind during resolution");
    }
  }

  for (auto* v : {&even, &hyp, &pairs_only, &quad, &trip, &sign})
    for (auto& p : *v) g.parts.push_back(std::move(p));
  if (!ani.empty()) {
    GammaPart a{GammaKind::Ani, {}, {}, {}};
    for (const auto& e : ani) {
      a.members.push_back(e.at);
      a.scalars.push_back(e.cls);
      a.ani_slots.push_back(pool.take(e.cls));
    }
    g.parts.push_back(std::move(a));
  }
  return g;
}

/// Every violated invariant, as a human-readable line. Empty means valid.
inline std::vector<std::string> validate_gamma(const Gamma& g, const OrbitLabel& label, const PadicCtx& ctx) {
  std::vector<std::string> bad;
  const Partition& lambda = label.lambda;
  auto odd = lambda.odd_parts();
  const DiagonalForm kernel = kernel_diagonal(label, ctx);

  for (std::size_t t = 0; t < odd.size(); ++t) {
    auto it = g.rewritten_diagonals.find(odd[t]);
    if (it == g.rewritten_diagonals.end()) {
      bad.push_back("missing diagonal for part " + std::to_string(odd[t]));
      continue;
    }
    if (static_cast<int>(it->second.size()) != lambda.multiplicity(odd[t]) ||
        witt_of_diagonal(it->second, ctx) != label.qtup[t].cls)
      bad.push_back("diagonal for part " + std::to_string(odd[t]) + " does not represent q_" + std::to_string(odd[t]));
  }

  auto cls_at = [&](const IndexPair& ip) -> std::optional<SquareClass> {
    auto it = g.rewritten_diagonals.find(ip.part);
    if (it == g.rewritten_diagonals.end() || ip.slot < 1 || ip.slot > static_cast<int>(it->second.size()))
      return std::nullopt;
    return it->second[static_cast<std::size_t>(ip.slot - 1)];
  };
  auto distinct_parts = [](const GammaPart& p) {
    std::set<int> s;
    for (const auto& m : p.members) s.insert(m.part);
    return s.size() == p.members.size();
  };
  auto all_odd = [](const GammaPart& p) {
    return std::all_of(p.members.begin(), p.members.end(), [](const IndexPair& m) { return m.part % 2 == 1; });
  };

  std::set<IndexPair> seen;
  std::vector<int> slot_use(kernel.size(), 0);
  int terminal = 0;
  for (std::size_t n = 0; n < g.parts.size(); ++n) {
    const GammaPart& p = g.parts[n];
    const std::string tag = "part " + std::to_string(n) + " (" + to_string(p.kind) + "): ";
    for (const auto& m : p.members) {
      if (m.slot < 1 || m.slot > lambda.multiplicity(m.part)) bad.push_back(tag + "index outside the index set");
      if (!seen.insert(m).second) bad.push_back(tag + "index used twice");
    }
    if (p.kind != GammaKind::Even) {
      if (p.scalars.size() != p.members.size()) {
        bad.push_back(tag + "scalar count mismatch");
        continue;
      }
      for (std::size_t t = 0; t < p.members.size(); ++t)
        if (cls_at(p.members[t]) != p.scalars[t]) bad.push_back(tag + "scalar disagrees with the diagonal");
    }
    for (int l : p.ani_slots) {
      if (l < 1 || l > static_cast<int>(kernel.size()))
        bad.push_back(tag + "kernel slot out of range");
      else
        ++slot_use[static_cast<std::size_t>(l - 1)];
    }
    auto kclass = [&](int l) { return kernel.at(static_cast<std::size_t>(l - 1)); };
    auto slots_ok = [&](std::size_t k) {
      return p.ani_slots.size() == k && std::all_of(p.ani_slots.begin(), p.ani_slots.end(), [&](int l) {
               return l >= 1 && l <= static_cast<int>(kernel.size());
             });
    };
    const auto& s = p.scalars;
    switch (p.kind) {
      case GammaKind::Even:
        if (p.members.size() != 2 || p.members[0].part != p.members[1].part || p.members[0].part % 2)
          bad.push_back(tag + "not two indices of one even part");
        break;
      case GammaKind::Hyp:
        if (p.members.size() != 2 || p.members[0].part != p.members[1].part || !all_odd(p) ||
            p.members[0].slot == p.members[1].slot || s[0] != negate(s[1], ctx))
          bad.push_back(tag + "not a hyperbolic pair within one odd part");
        break;
      case GammaKind::Pairs:
        if (p.members.size() != 2 || !distinct_parts(p) || !all_odd(p) || s[0] != negate(s[1], ctx))
          bad.push_back(tag + "not a hyperbolic pair across two odd parts");
        break;
      case GammaKind::Quad:
        if (ctx.scno || p.members.size() != 4 || !distinct_parts(p) || !all_odd(p) ||
            std::count(s.begin(), s.end(), s[0]) != 4)
          bad.push_back(tag + "not four equal classes on distinct odd parts");
        break;
      case GammaKind::Trip:
        ++terminal;
        if (ctx.scno || p.members.size() != 3 || !distinct_parts(p) || !all_odd(p) || !slots_ok(1) ||
            std::count(s.begin(), s.end(), s[0]) != 3 || s[0] != negate(kclass(p.ani_slots[0]), ctx))
          bad.push_back(tag + "not three classes <-r_l> on distinct odd parts");
        break;
      case GammaKind::Sign:
        ++terminal;
        if (ctx.scno || p.members.size() != 2 || !distinct_parts(p) || !all_odd(p) || !slots_ok(2) ||
            p.ani_slots[0] >= p.ani_slots[1] || s[0] != s[1] || s[0] != negate(kclass(p.ani_slots[0]), ctx) ||
            s[0] != negate(kclass(p.ani_slots[1]), ctx))
          bad.push_back(tag + "not two classes <-r_k> = <-r_l> on distinct odd parts");
        break;
      case GammaKind::Ani:
        ++terminal;
        if (!all_odd(p) || !slots_ok(p.members.size()))
          bad.push_back(tag + "members not matched to kernel slots");
        else
          for (std::size_t t = 0; t < s.size(); ++t)
            if (s[t] != kclass(p.ani_slots[t])) bad.push_back(tag + "member class differs from its kernel slot");
        break;
    }
  }

  for (int i : lambda.parts())
    for (int j = 1; j <= lambda.multiplicity(i); ++j)
      if (!seen.count({i, j})) bad.push_back("index (" + std::to_string(i) + "," + std::to_string(j) + ") not covered");
  for (std::size_t l = 0; l < slot_use.size(); ++l)
    if (slot_use[l] != 1) bad.push_back("kernel slot " + std::to_string(l + 1) + " used " + std::to_string(slot_use[l]) + " times");
  if (terminal > 2) bad.push_back("more than two TRIP/SIGN/ANI parts");
  return bad;
}

/// Number of EVEN plus HYP parts.
inline int count_even_hyp(const Gamma& g) {
  return static_cast<int>(std::count_if(g.parts.begin(), g.parts.end(), [](const GammaPart& p) {
    return p.kind == GammaKind::Even || p.kind == GammaKind::Hyp;
  }));
}

}  // namespace nilorb
