#pragma once

// Command implementations behind the nilorb command-line tool. Each command
// returns a JSON document and an exit code: 0 ok, 1 verification failure,
// 2 bad input. Argument parsing itself lives in the tool.

#include "nilorb/serialize.hpp"

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace nilorb::cli {

struct BadInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct JobSpec {
  std::int64_t p = 0;
  std::optional<int> n;
  std::string q;
  GroupKind group = GroupKind::SO;
  std::optional<std::string> lambda;
  std::optional<std::string> qtup;
  std::optional<std::string> ve;
  int precision = 64;
  bool check = false;
};

struct Result {
  Json out;
  int exit_code = 0;
};

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw BadInput("bad " + what + " '" + s + "'");
  }
}

/// "diag:1,r,w,rw" or "witt:<deg>:<unit>.<pi>" with residue tags ZERO, U1, URHO, U1RHO.
inline QFormClass parse_form(const std::string& spec, const PadicCtx& ctx) {
  try {
    if (spec.rfind("diag:", 0) == 0) {
      DiagonalForm f;
      for (const std::string& c : split(spec.substr(5), ',')) f.push_back(square_class_from_string(c));
      if (f.empty()) throw BadInput("empty diagonal form");
      return qform_of_diagonal(f, ctx);
    }
    if (spec.rfind("witt:", 0) == 0) {
      auto fields = split(spec.substr(5), ':');
      if (fields.size() != 2) throw BadInput("expected witt:<deg>:<unit>.<pi>");
      auto tags = split(fields[1], '.');
      if (tags.size() != 2) throw BadInput("expected <unit>.<pi> Witt tags");
      QFormClass q{parse_int(fields[0], "degree"), {res_witt_from_string(tags[0]), res_witt_from_string(tags[1])}};
      if (q.degree < 1 || !q.valid())
        throw BadInput("no form of degree " + fields[0] + " has Witt class " + fields[1] + " (anisotropic dimension " +
                       std::to_string(aniso_dim(q.cls)) + ")");
      return q;
    }
  } catch (const BadInput&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw BadInput(e.what());
  }
  throw BadInput("form spec must start with diag: or witt:, got '" + spec + "'");
}

inline Partition parse_partition(const std::string& s) {
  std::vector<int> parts;
  for (const std::string& x : split(s, ',')) parts.push_back(parse_int(x, "partition part"));
  try {
    return Partition(parts);
  } catch (const std::invalid_argument& e) {
    throw BadInput(e.what());
  }
}

/// Forms on the odd-part multiplicity spaces, ascending odd part, separated by ';'.
inline QTuple parse_qtup(const std::string& s, const PadicCtx& ctx) {
  QTuple t;
  if (s.empty()) return t;
  for (const std::string& f : split(s, ';')) t.push_back(parse_form(f, ctx));
  return t;
}

inline GroupKind parse_group(const std::string& s) {
  if (s == "O") return GroupKind::O;
  if (s == "SO") return GroupKind::SO;
  throw BadInput("group must be O or SO, got '" + s + "'");
}

inline std::string to_string(GroupKind g) { return g == GroupKind::O ? "O" : "SO"; }

/// Coxeter number of SO(n).
inline int coxeter_number(int n) {
  const int m = n / 2;
  return n % 2 ? 2 * m : 2 * (m - 1);
}

struct Context {
  PadicCtxPtr ctx;
  QFormClass q;
  Json warnings = Json::array();
};

inline Context open(const JobSpec& spec) {
  if (spec.precision < 16) throw BadInput("precision must be at least 16");
  Context c;
  try {
    c.ctx = PadicCtx::make(spec.p, spec.precision);
  } catch (const std::invalid_argument& e) {
    throw BadInput(e.what());
  }
  if (spec.q.empty()) throw BadInput("--q is required");
  c.q = parse_form(spec.q, *c.ctx);
  if (spec.n && *spec.n != c.q.degree)
    throw BadInput("--n " + std::to_string(*spec.n) + " does not match the form degree " + std::to_string(c.q.degree));
  const int h = coxeter_number(c.q.degree);
  if (spec.p <= 3 * (h - 1))
    c.warnings.push_back("p = " + std::to_string(spec.p) + " <= 3(h-1) = " + std::to_string(3 * (h - 1)) +
                         ": the building interpretation needs a larger residual characteristic");
  return c;
}

inline Json header(const std::string& command, const JobSpec& spec, const Context& c) {
  return {{"command", command},
          {"p", spec.p},
          {"n", c.q.degree},
          {"q", to_json(c.q)},
          {"group", to_string(spec.group)},
          {"precision", spec.precision}};
}

inline OrbitLabel label_from(const JobSpec& spec, const Context& c) {
  if (!spec.lambda) throw BadInput("--lambda is required");
  OrbitLabel l{parse_partition(*spec.lambda), parse_qtup(spec.qtup.value_or(""), *c.ctx), std::nullopt};
  if (spec.ve) {
    if (*spec.ve == "I")
      l.ve = VeTag::I;
    else if (*spec.ve == "II")
      l.ve = VeTag::II;
    else
      throw BadInput("--ve must be I or II");
  }
  try {
    check_label(l, c.q, spec.group, *c.ctx);
  } catch (const std::invalid_argument& e) {
    throw BadInput(std::string("label not in the parameter set: ") + e.what());
  }
  return l;
}

/// Fault injection for the self-test: doubles X and adds the identity to H,
/// so even the zero orbit fails verification.
inline void sabotage_triple(LieTriple& t, const PadicCtx& ctx) {
  t.X = PadicNum::from_int(ctx, 2) * t.X;
  t.H = t.H + Matrix::identity(ctx, t.basis.n());
}

inline Result cmd_count(const JobSpec& spec) {
  Context c = open(spec);
  std::optional<Partition> only;
  if (spec.lambda) only = parse_partition(*spec.lambda);
  Json out = header("count", spec, c);
  Json rows = Json::array();
  std::int64_t total_o = 0, total_so = 0;
  int exit_code = 0;
  for (const Partition& l : partitions_even_mult(c.q.degree)) {
    if (only && l != *only) continue;
    const std::int64_t closed = count_orbits(l, c.q.cls);
    const std::int64_t so = l.very_even() ? 2 * closed : closed;
    total_o += closed;
    total_so += so;
    Json row = {{"lambda", l.parts()}, {"a", l.count_a()}, {"b", l.count_b()}, {"c", l.count_c()},
                {"closed", closed},    {"count", spec.group == GroupKind::SO ? so : closed}};
    if (spec.check) {
      const std::int64_t brute = count_brute(l, c.q.cls, *c.ctx);
      row["brute"] = brute;
      if (brute != closed) exit_code = 1;
    }
    rows.push_back(row);
  }
  if (only && rows.empty()) throw BadInput("partition " + only->to_string() + " is not in Lambda(n)");
  out["rows"] = rows;
  out["totals"] = {{"O", total_o}, {"SO", total_so}};
  out["warnings"] = c.warnings;
  return {out, exit_code};
}

inline Result cmd_enumerate(const JobSpec& spec) {
  Context c = open(spec);
  std::optional<Partition> only;
  if (spec.lambda) only = parse_partition(*spec.lambda);
  Json out = header("enumerate", spec, c);
  Json labels = Json::array();
  for (const OrbitLabel& l : orbit_labels(c.q, spec.group, *c.ctx, only)) labels.push_back(to_json(l));
  out["count"] = labels.size();
  out["labels"] = labels;
  out["warnings"] = c.warnings;
  return {out, 0};
}

inline Result cmd_represent(const JobSpec& spec, bool sabotage = false) {
  Context c = open(spec);
  OrbitLabel l = label_from(spec, c);
  LieTriple t = build_triple(l, *c.ctx);
  if (sabotage) sabotage_triple(t, *c.ctx);
  VerifyReport r = verify(t, *c.ctx);
  Json out = header("represent", spec, c);
  out["label"] = to_json(l);
  out["verify"] = to_json(r);
  if (r.precision_margin < 16)
    c.warnings.push_back("precision margin " + std::to_string(r.precision_margin) + " is below 16");
  out["warnings"] = c.warnings;
  if (!r.matches_label) {
    out["error"] = "the constructed triple does not verify";
    return {out, 1};
  }
  out["triple"] = to_json(t, *c.ctx);
  return {out, 0};
}

inline Json dims_json(const DimensionReport& r) {
  return {{"facet", r.facet.dim}, {"gamma", r.gamma}, {"theorem", r.theorem}, {"split_rank", r.split_rank}};
}

inline Result cmd_facet(const JobSpec& spec) {
  Context c = open(spec);
  OrbitLabel l = label_from(spec, c);
  LieTriple t = build_triple(l, *c.ctx);
  DimensionReport r = dimension_report(t, *c.ctx);
  Json out = header("facet", spec, c);
  Json terms = Json::array();
  for (const RootTerm& term : phi_x(t, *c.ctx)) terms.push_back(to_json(term));
  out["label"] = to_json(l);
  out["gamma"] = to_json(t.gamma);
  out["phi_x"] = terms;
  out["facet"] = to_json(r.facet);
  out["dims"] = dims_json(r);
  out["dims_agree"] = r.dims_agree();
  out["duality_violations"] = r.duality;
  if (!r.duality.empty())
    c.warnings.push_back("val(Y) = -val(X) fails on some root; an sl2 structure constant is divisible by p");
  out["warnings"] = c.warnings;
  return {out, r.dims_agree() && r.table.empty() ? 0 : 1};
}

/// Invariant battery over p in ps and every form of degree n <= n_max.
/// With sabotage every built triple is corrupted and must be reported.
inline Result cmd_selftest(const std::vector<std::int64_t>& ps, int n_max, bool sabotage = false,
                           int precision = 64) {
  if (ps.empty()) throw BadInput("at least one prime is required");
  if (n_max < 1) throw BadInput("n_max must be positive");
  if (precision < 16) throw BadInput("precision must be at least 16");
  Json checks = Json::array();
  Json failures = Json::array();
  bool all_ok = true;
  auto note = [&](const std::string& msg) {
    all_ok = false;
    if (failures.size() < 20) failures.push_back(msg);
  };
  for (std::int64_t p : ps) {
    PadicCtxPtr ctx;
    try {
      ctx = PadicCtx::make(p, precision);
    } catch (const std::invalid_argument& e) {
      throw BadInput(e.what());
    }
    int counted = 0, built = 0, faceted = 0, bad_count = 0, bad_verify = 0, bad_dims = 0;
    for (int n = 1; n <= n_max; ++n) {
      for (const Partition& l : partitions_even_mult(n))
        for (const WittClass& u : all_witt_classes()) {
          if ((n - aniso_dim(u)) % 2) continue;
          const auto closed = count_orbits(l, u);
          const auto brute = count_brute(l, u, *ctx);
          const auto listed = static_cast<std::int64_t>(enumerate_tuples(l, u, *ctx).size());
          ++counted;
          if (closed != brute || brute != listed) {
            ++bad_count;
            note("count " + l.to_string() + " " + nilorb::to_string(u));
          }
        }
      for (const QFormClass& q : isometry_classes(n))
        for (const OrbitLabel& l : orbit_labels(q, GroupKind::SO, *ctx)) {
          const std::string name = "p=" + std::to_string(p) + " " + l.lambda.to_string() + " " + to_string(q);
          LieTriple t = build_triple(l, *ctx);
          if (sabotage) sabotage_triple(t, *ctx);
          ++built;
          bool ok = false;
          try {
            ok = verify(t, *ctx).matches_label;
          } catch (const std::exception&) {
          }
          if (!ok) {
            ++bad_verify;
            note("verify " + name);
            continue;
          }
          DimensionReport r = dimension_report(t, *ctx);
          ++faceted;
          if (!r.dims_agree()) {
            ++bad_dims;
            note("dimensions " + name);
          }
        }
    }
    checks.push_back({{"p", p},
                      {"counting", {{"cases", counted}, {"failed", bad_count}}},
                      {"representatives", {{"cases", built}, {"failed", bad_verify}}},
                      {"dimensions", {{"cases", faceted}, {"failed", bad_dims}}}});
  }
  Json out = {{"command", "selftest"}, {"primes", ps},        {"n_max", n_max},
              {"sabotage", sabotage},  {"checks", checks},    {"failures", failures},
              {"passed", all_ok}};
  return {out, all_ok ? 0 : 1};
}

}  // namespace nilorb::cli
