#pragma once

// Partitions with even parts of even multiplicity, orbit labels (partition
// plus a tuple of quadratic forms on the odd-part multiplicity spaces), the
// closed-form orbit counts and a brute-force oracle, and the four-step
// enumeration of tuples representing a given Witt class.

#include "nilorb/quadform.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilorb {

class Partition {
 public:
  Partition() = default;

  /// Any order is accepted; parts are stored in descending order. Throws if a
  /// part is nonpositive or an even part has odd multiplicity.
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
    for (int x : parts_)
      if (x <= 0) throw std::invalid_argument("partition parts must be positive");
    for (const auto& [part, mult] : multiplicities())
      if (part % 2 == 0 && mult % 2 != 0)
        throw std::invalid_argument("even part " + std::to_string(part) + " has odd multiplicity");
  }

  const std::vector<int>& parts() const { return parts_; }

  int size() const {
    int n = 0;
    for (int x : parts_) n += x;
    return n;
  }

  /// Number of parts, |lambda|.
  int num_parts() const { return static_cast<int>(parts_.size()); }

  std::map<int, int> multiplicities() const {
    std::map<int, int> m;
    for (int x : parts_) ++m[x];
    return m;
  }

  int multiplicity(int part) const { return static_cast<int>(std::count(parts_.begin(), parts_.end(), part)); }

  /// Distinct odd parts in ascending order: the index set of a form tuple.
  std::vector<int> odd_parts() const {
    std::vector<int> out;
    for (const auto& [part, mult] : multiplicities())
      if (part % 2) out.push_back(part);
    return out;
  }

  /// Distinct even parts in descending order.
  std::vector<int> even_parts() const {
    std::vector<int> out;
    for (const auto& [part, mult] : multiplicities())
      if (part % 2 == 0) out.insert(out.begin(), part);
    return out;
  }

  bool very_even() const { return !parts_.empty() && odd_parts().empty(); }

  /// Numbers of distinct odd parts with multiplicity 1, 2 and at least 3.
  int count_a() const { return count_odd_with([](int m) { return m == 1; }); }
  int count_b() const { return count_odd_with([](int m) { return m == 2; }); }
  int count_c() const { return count_odd_with([](int m) { return m >= 3; }); }

  /// Total multiplicity of the odd parts.
  int odd_multiplicity() const {
    int m = 0;
    for (int x : parts_)
      if (x % 2) ++m;
    return m;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
    return s + ")";
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  template <class Pred>
  int count_odd_with(Pred pred) const {
    int k = 0;
    for (const auto& [part, mult] : multiplicities())
      if (part % 2 && pred(mult)) ++k;
    return k;
  }

  std::vector<int> parts_;
};

/// Lambda(n) in reverse-lexicographic order, e.g. n=4: (3,1), (2,2), (1,1,1,1).
inline std::vector<Partition> partitions_even_mult(int n) {
  if (n < 1) throw std::invalid_argument("partitions_even_mult: n must be positive");
  std::vector<Partition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      std::map<int, int> mult;
      for (int x : cur) ++mult[x];
      for (const auto& [part, m] : mult)
        if (part % 2 == 0 && m % 2) return;
      out.emplace_back(cur);
      return;
    }
    for (int x = std::min(remaining, max_part); x >= 1; --x) {
      cur.push_back(x);
      self(self, remaining - x, x);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

/// Tuple of form classes indexed by the distinct odd parts in ascending order.
using QTuple = std::vector<QFormClass>;

enum class VeTag { I, II };

inline std::string to_string(VeTag t) { return t == VeTag::I ? "I" : "II"; }

enum class GroupKind { O, SO };

struct OrbitLabel {
  Partition lambda;
  QTuple qtup;
  std::optional<VeTag> ve;

  friend bool operator==(const OrbitLabel&, const OrbitLabel&) = default;
};

inline WittClass witt_of_tuple(const QTuple& t, const PadicCtx& ctx) {
  WittClass acc;
  for (const auto& q : t) acc = witt_add(acc, q.cls, ctx);
  return acc;
}

/// Throws unless the tuple has the degrees prescribed by lambda.
inline void check_tuple_shape(const Partition& lambda, const QTuple& t) {
  auto odd = lambda.odd_parts();
  if (odd.size() != t.size())
    throw std::invalid_argument("tuple length " + std::to_string(t.size()) + " does not match the " +
                                std::to_string(odd.size()) + " distinct odd parts of " + lambda.to_string());
  for (std::size_t i = 0; i < odd.size(); ++i) {
    if (t[i].degree != lambda.multiplicity(odd[i]))
      throw std::invalid_argument("form for part " + std::to_string(odd[i]) + " has degree " +
                                  std::to_string(t[i].degree) + ", expected its multiplicity");
    if (!t[i].valid()) throw std::invalid_argument("invalid form class " + to_string(t[i]));
  }
}

namespace detail {

inline std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace detail

/// Number of a-tuples of degree-one forms representing u. Zero on a parity
/// mismatch; for a = 0 the empty tuple represents only the zero class.
inline std::int64_t count_n1(int a, const WittClass& u) {
  const int d = aniso_dim(u);
  if (a < 0) throw std::invalid_argument("count_n1: negative a");
  if (a == 0) return d == 0 ? 1 : 0;
  if ((a - d) % 2 != 0) return 0;
  // (4^a + (2 - d) 2^(a+1)) / 8
  return (detail::ipow(4, a) + (2 - d) * detail::ipow(2, a + 1)) / 8;
}

namespace detail {

inline std::int64_t nearest_seventh(int b) {  // closest integer to 7^b / 8
  return (ipow(7, b) - (b % 2 ? -1 : 1)) / 8;
}

inline std::int64_t epsilon(int d, int b) {
  if (d == 0 && b % 2 == 0) return 1;
  if (d == 4 && b % 2 == 1) return -1;
  return 0;
}

}  // namespace detail

/// Number of b-tuples of degree-two forms representing u; zero when u has odd
/// anisotropic dimension.
inline std::int64_t count_n2(int b, const WittClass& u) {
  const int d = aniso_dim(u);
  if (b < 0) throw std::invalid_argument("count_n2: negative b");
  if (d % 2) return 0;
  return detail::nearest_seventh(b) + detail::epsilon(d, b);
}

/// Closed-form count of form tuples on a subspaces of dimension 1, b of
/// dimension 2 and c of dimension at least 3 representing u. When c = 0 the
/// total parity is a mod 2 and a mismatch yields 0; with a = b = c = 0 the
/// empty tuple represents only the zero class. With c >= 1 the caller must
/// ensure the total degree has the parity of aniso_dim(u) (see count_orbits).
inline std::int64_t count_closed(int a, int b, int c, const WittClass& u) {
  const int d = aniso_dim(u);
  if (a < 0 || b < 0 || c < 0) throw std::invalid_argument("count_closed: negative count");
  if (c >= 1) return detail::ipow(4, a) * detail::ipow(7, b) * detail::ipow(8, c - 1);
  if ((a - d) % 2 != 0) return 0;
  if (a > 0) return (detail::ipow(4, a) * detail::ipow(7, b) + (2 - d) * detail::ipow(2, a + 1)) / 8;
  if (b == 0) return d == 0 ? 1 : 0;
  return count_n2(b, u);
}

/// Number of O(q)-orbit labels with partition lambda for a form of class u,
/// including the parity check on n.
inline std::int64_t count_orbits(const Partition& lambda, const WittClass& u) {
  if ((lambda.size() - aniso_dim(u)) % 2 != 0) return 0;
  return count_closed(lambda.count_a(), lambda.count_b(), lambda.count_c(), u);
}

/// Calls f on every tuple in Q_lambda, in odometer order.
template <class F>
void for_each_tuple(const Partition& lambda, F&& f) {
  std::vector<std::vector<QFormClass>> choices;
  for (int j : lambda.odd_parts()) choices.push_back(isometry_classes(lambda.multiplicity(j)));
  std::vector<std::size_t> idx(choices.size(), 0);
  QTuple cur(choices.size());
  while (true) {
    for (std::size_t i = 0; i < choices.size(); ++i) cur[i] = choices[i][idx[i]];
    f(static_cast<const QTuple&>(cur));
    std::size_t i = 0;
    while (i < choices.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
    if (i == choices.size()) break;
  }
}

/// Exhaustive count of tuples in Q_lambda whose Witt sum is u.
inline std::int64_t count_brute(const Partition& lambda, const WittClass& u, const PadicCtx& ctx) {
  std::int64_t n = 0;
  for_each_tuple(lambda, [&](const QTuple& t) {
    if (witt_of_tuple(t, ctx) == u) ++n;
  });
  return n;
}

namespace detail {

// Step 2 of the enumeration: the small subset E of the distinct odd parts whose
// tuples are tabulated by Witt class. Parts are scanned in ascending order.
inline std::vector<int> choose_e(const Partition& lambda, int d) {
  auto odd = lambda.odd_parts();
  for (int j : odd)
    if (lambda.multiplicity(j) >= 3) return {j};
  const int m = lambda.odd_multiplicity();
  if (m < 4) return odd;
  const int target = d % 2 ? 3 : 4;
  std::vector<int> e;
  int sum = 0;
  for (int j : odd) {
    int mj = lambda.multiplicity(j);
    if (sum + mj <= target) {
      e.push_back(j);
      sum += mj;
    }
    if (sum == target) return e;
  }
  // Greedy accumulation cannot miss with multiplicities in {1, 2} and matching
  // parity; fall back to all parts if the label was inconsistent.
  return odd;
}

}  // namespace detail

/// All tuples in Q_lambda representing u (the empty tuple when lambda has no
/// odd parts and u = 0), sorted. S-tuples over the parts outside E are
/// completed by a Witt-class lookup into the tabulated E-tuples.
inline std::vector<QTuple> enumerate_tuples(const Partition& lambda, const WittClass& u, const PadicCtx& ctx) {
  const int d = aniso_dim(u);
  const int m = lambda.odd_multiplicity();
  if (m < d) return {};
  if (m == 0) return {QTuple{}};
  if ((m - d) % 2 != 0) return {};

  const auto odd = lambda.odd_parts();
  const auto e = detail::choose_e(lambda, d);
  std::vector<int> s_parts;
  for (int j : odd)
    if (std::find(e.begin(), e.end(), j) == e.end()) s_parts.push_back(j);

  auto sub_partition = [&](const std::vector<int>& parts) {
    std::vector<int> xs;
    for (int j : parts)
      for (int t = 0; t < lambda.multiplicity(j); ++t) xs.push_back(j);
    return Partition(xs);
  };

  std::map<WittClass, std::vector<QTuple>> t_by_class;
  for_each_tuple(sub_partition(e), [&](const QTuple& t) { t_by_class[witt_of_tuple(t, ctx)].push_back(t); });

  std::vector<QTuple> out;
  auto emit = [&](const QTuple& s) {
    WittClass need = witt_sub(u, witt_of_tuple(s, ctx), ctx);
    auto it = t_by_class.find(need);
    if (it == t_by_class.end()) return;
    for (const QTuple& t : it->second) {
      // Interleave back into ascending part order.
      QTuple full;
      std::size_t si = 0, ti = 0;
      for (int j : odd) {
        if (std::find(e.begin(), e.end(), j) != e.end())
          full.push_back(t[ti++]);
        else
          full.push_back(s[si++]);
      }
      out.push_back(std::move(full));
    }
  };
  if (s_parts.empty())
    emit(QTuple{});
  else
    for_each_tuple(sub_partition(s_parts), emit);
  std::sort(out.begin(), out.end());
  return out;
}

/// Orbit labels of nilpotent O(q)- or SO(q)-orbits, partitions in
/// reverse-lexicographic order. Under SO with [q] = 0 every very even
/// partition carries two labels, tagged I and II.
inline std::vector<OrbitLabel> orbit_labels(const QFormClass& q, GroupKind group, const PadicCtx& ctx,
                                            const std::optional<Partition>& only = std::nullopt) {
  if (!q.valid()) throw std::invalid_argument("invalid form class " + to_string(q));
  if (q.degree < 1) throw std::invalid_argument("orbit_labels: degree must be positive");
  std::vector<OrbitLabel> out;
  for (const Partition& lambda : partitions_even_mult(q.degree)) {
    if (only && lambda != *only) continue;
    for (QTuple& t : enumerate_tuples(lambda, q.cls, ctx)) {
      if (lambda.very_even() && group == GroupKind::SO) {
        out.push_back({lambda, t, VeTag::I});
        out.push_back({lambda, t, VeTag::II});
      } else {
        out.push_back({lambda, std::move(t), std::nullopt});
      }
    }
  }
  return out;
}

/// Throws unless the label belongs to the parameter set for (q, group).
inline void check_label(const OrbitLabel& label, const QFormClass& q, GroupKind group, const PadicCtx& ctx) {
  if (label.lambda.size() != q.degree)
    throw std::invalid_argument("partition " + label.lambda.to_string() + " does not sum to " +
                                std::to_string(q.degree));
  check_tuple_shape(label.lambda, label.qtup);
  if (witt_of_tuple(label.qtup, ctx) != q.cls) throw std::invalid_argument("tuple does not represent the form");
  bool needs_tag = label.lambda.very_even() && group == GroupKind::SO;
  if (needs_tag != label.ve.has_value())
    throw std::invalid_argument(needs_tag ? "very even SO label needs a tag I or II"
                                          : "only very even SO labels carry a tag");
}

}  // namespace nilorb
