#pragma once

// Core model: finite graphs, finite categories with explicit composition
// tables, morphism systems, validation, and duality.  Everything is a plain
// value; algorithms live in free functions and never mutate their inputs.

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fincat {

/// Opaque object identifier.  Ordered and compared by token.
struct obj_id {
  std::string token;
  auto operator<=>(const obj_id&) const = default;
};

/// Opaque morphism identifier.  Ordered and compared by token.
struct mor_id {
  std::string token;
  auto operator<=>(const mor_id&) const = default;
};

inline obj_id obj(std::string token) { return obj_id{std::move(token)}; }
inline mor_id mor(std::string token) { return mor_id{std::move(token)}; }

/// Outcome of a validation pass.  Empty means valid; each violation is a
/// human-readable sentence naming the offending witnesses.
struct validation_report {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string message) { violations.push_back(std::move(message)); }
};

/// Thrown when a search or enumeration exceeds its configured budget.
struct budget_exceeded : std::runtime_error {
  explicit budget_exceeded(const std::string& what) : std::runtime_error(what) {}
};

struct graph_edge {
  mor_id id;
  obj_id src;
  obj_id tgt;
  auto operator<=>(const graph_edge&) const = default;
};

/// Directed multigraph with identified edges.
struct finite_graph {
  std::set<obj_id> vertices;
  std::vector<graph_edge> edges;

  friend bool operator==(const finite_graph&, const finite_graph&) = default;
};

/// Finite category presented by explicit source/target/identity/composition
/// tables.  `comp[{u, v}]` is u after v, defined exactly when
/// `src[u] == tgt[v]`.  Use validate_category to certify the axioms.
struct finite_category {
  std::set<obj_id> objects;
  std::set<mor_id> morphisms;
  std::map<mor_id, obj_id> src;
  std::map<mor_id, obj_id> tgt;
  std::map<obj_id, mor_id> ident;
  std::map<std::pair<mor_id, mor_id>, mor_id> comp;

  const obj_id& source(const mor_id& u) const {
    auto it = src.find(u);
    if (it == src.end()) throw std::invalid_argument("unknown morphism '" + u.token + "'");
    return it->second;
  }

  const obj_id& target(const mor_id& u) const {
    auto it = tgt.find(u);
    if (it == tgt.end()) throw std::invalid_argument("unknown morphism '" + u.token + "'");
    return it->second;
  }

  const mor_id& identity(const obj_id& x) const {
    auto it = ident.find(x);
    if (it == ident.end()) throw std::invalid_argument("unknown object '" + x.token + "'");
    return it->second;
  }

  bool composable(const mor_id& u, const mor_id& v) const {
    return source(u) == target(v);
  }

  /// u after v.  Throws if the pair is not composable or has no table entry.
  const mor_id& composite(const mor_id& u, const mor_id& v) const {
    auto it = comp.find({u, v});
    if (it == comp.end())
      throw std::invalid_argument("no composite for ('" + u.token + "', '" + v.token + "')");
    return it->second;
  }

  std::optional<mor_id> try_composite(const mor_id& u, const mor_id& v) const {
    auto it = comp.find({u, v});
    if (it == comp.end()) return std::nullopt;
    return it->second;
  }

  bool has_object(const obj_id& x) const { return objects.count(x) != 0; }
  bool has_morphism(const mor_id& u) const { return morphisms.count(u) != 0; }

  friend bool operator==(const finite_category&, const finite_category&) = default;
};

/// Subset of morphisms intended to be inverted, with its ambient category.
/// validate_mult_system certifies closure under defined composition.
struct mult_system {
  finite_category base;
  std::set<mor_id> members;

  friend bool operator==(const mult_system&, const mult_system&) = default;
};

inline validation_report validate_graph(const finite_graph& g) {
  validation_report report;
  std::set<mor_id> seen;
  for (const auto& e : g.edges) {
    if (!seen.insert(e.id).second)
      report.add("duplicate edge id '" + e.id.token + "'");
    if (g.vertices.count(e.src) == 0)
      report.add("edge '" + e.id.token + "' has unknown source vertex '" + e.src.token + "'");
    if (g.vertices.count(e.tgt) == 0)
      report.add("edge '" + e.id.token + "' has unknown target vertex '" + e.tgt.token + "'");
  }
  return report;
}

inline validation_report validate_category(const finite_category& c) {
  validation_report report;

  for (const auto& u : c.morphisms) {
    auto s = c.src.find(u);
    auto t = c.tgt.find(u);
    if (s == c.src.end())
      report.add("morphism '" + u.token + "' has no source");
    else if (c.objects.count(s->second) == 0)
      report.add("morphism '" + u.token + "' has unknown source '" + s->second.token + "'");
    if (t == c.tgt.end())
      report.add("morphism '" + u.token + "' has no target");
    else if (c.objects.count(t->second) == 0)
      report.add("morphism '" + u.token + "' has unknown target '" + t->second.token + "'");
  }
  for (const auto& [u, x] : c.src)
    if (c.morphisms.count(u) == 0)
      report.add("stray source entry for non-morphism '" + u.token + "'");
  for (const auto& [u, x] : c.tgt)
    if (c.morphisms.count(u) == 0)
      report.add("stray target entry for non-morphism '" + u.token + "'");

  for (const auto& x : c.objects) {
    auto it = c.ident.find(x);
    if (it == c.ident.end()) {
      report.add("object '" + x.token + "' has no identity");
      continue;
    }
    const mor_id& i = it->second;
    if (c.morphisms.count(i) == 0) {
      report.add("identity '" + i.token + "' of '" + x.token + "' is not a morphism");
      continue;
    }
    if (c.src.count(i) && c.src.at(i) != x)
      report.add("identity '" + i.token + "' of '" + x.token + "' has source '" + c.src.at(i).token + "'");
    if (c.tgt.count(i) && c.tgt.at(i) != x)
      report.add("identity '" + i.token + "' of '" + x.token + "' has target '" + c.tgt.at(i).token + "'");
  }
  for (const auto& [x, i] : c.ident)
    if (c.objects.count(x) == 0)
      report.add("stray identity entry for non-object '" + x.token + "'");

  if (!report.ok()) return report;  // endpoint structure is broken; stop here

  // Composition table is defined exactly on composable pairs.
  for (const auto& u : c.morphisms)
    for (const auto& v : c.morphisms) {
      bool should = c.src.at(u) == c.tgt.at(v);
      bool has = c.comp.count({u, v}) != 0;
      if (should && !has)
        report.add("missing composite for composable pair ('" + u.token + "', '" + v.token + "')");
      if (!should && has)
        report.add("composite declared for non-composable pair ('" + u.token + "', '" + v.token + "')");
    }
  for (const auto& [key, w] : c.comp) {
    if (c.morphisms.count(key.first) == 0 || c.morphisms.count(key.second) == 0) {
      report.add("composite entry references unknown morphism ('" + key.first.token + "', '" +
                 key.second.token + "')");
      continue;
    }
    if (c.morphisms.count(w) == 0)
      report.add("composite of ('" + key.first.token + "', '" + key.second.token +
                 "') is unknown morphism '" + w.token + "'");
  }

  if (!report.ok()) return report;

  for (const auto& [key, w] : c.comp) {
    const auto& [u, v] = key;
    if (c.src.at(w) != c.src.at(v) || c.tgt.at(w) != c.tgt.at(u))
      report.add("composite '" + w.token + "' of ('" + u.token + "', '" + v.token +
                 "') has wrong endpoints");
  }

  if (!report.ok()) return report;  // laws below chain lookups through composites

  for (const auto& u : c.morphisms) {
    const mor_id& is = c.ident.at(c.src.at(u));
    const mor_id& it = c.ident.at(c.tgt.at(u));
    if (c.comp.at({u, is}) != u)
      report.add("right identity law fails for '" + u.token + "'");
    if (c.comp.at({it, u}) != u)
      report.add("left identity law fails for '" + u.token + "'");
  }

  for (const auto& u : c.morphisms)
    for (const auto& v : c.morphisms) {
      if (c.src.at(u) != c.tgt.at(v)) continue;
      for (const auto& w : c.morphisms) {
        if (c.src.at(v) != c.tgt.at(w)) continue;
        const mor_id& uv = c.comp.at({u, v});
        const mor_id& vw = c.comp.at({v, w});
        if (c.comp.at({uv, w}) != c.comp.at({u, vw}))
          report.add("associativity fails on ('" + u.token + "', '" + v.token + "', '" +
                     w.token + "')");
      }
    }

  return report;
}

/// Opposite category: same object and morphism tokens, source/target swapped,
/// composition transposed.  Involutive on the nose.
inline finite_category opposite(const finite_category& c) {
  validation_report r = validate_category(c);
  if (!r.ok()) throw std::invalid_argument("opposite: invalid category: " + r.violations.front());
  finite_category o;
  o.objects = c.objects;
  o.morphisms = c.morphisms;
  o.src = c.tgt;
  o.tgt = c.src;
  o.ident = c.ident;
  for (const auto& [key, w] : c.comp) o.comp[{key.second, key.first}] = w;
  return o;
}

inline validation_report validate_mult_system(const mult_system& s) {
  validation_report report;
  for (const auto& m : s.members)
    if (!s.base.has_morphism(m))
      report.add("member '" + m.token + "' is not a morphism of the base category");
  if (!report.ok()) return report;
  for (const auto& y : s.members)
    for (const auto& z : s.members) {
      if (s.base.source(y) != s.base.target(z)) continue;
      const mor_id& yz = s.base.composite(y, z);
      if (s.members.count(yz) == 0) {
        report.add("members ('" + y.token + "', '" + z.token + "') compose to non-member '" +
                   yz.token + "'");
        return report;  // first violating pair is enough
      }
    }
  return report;
}

/// Same member tokens over the opposite category.  Involutive.
inline mult_system oppose_system(const mult_system& s) {
  for (const auto& m : s.members)
    if (!s.base.has_morphism(m))
      throw std::invalid_argument("oppose_system: member '" + m.token + "' is not a morphism");
  return mult_system{opposite(s.base), s.members};
}

/// Two-sided inverse of u, if one exists.  Inverses in a category are unique,
/// so the result does not depend on search order.
inline std::optional<mor_id> inverse_of(const finite_category& c, const mor_id& u) {
  if (!c.has_morphism(u)) throw std::invalid_argument("inverse_of: unknown morphism '" + u.token + "'");
  const obj_id& a = c.source(u);
  const obj_id& b = c.target(u);
  for (const auto& v : c.morphisms) {
    if (c.source(v) != b || c.target(v) != a) continue;
    if (c.composite(u, v) == c.identity(b) && c.composite(v, u) == c.identity(a))
      return v;
  }
  return std::nullopt;
}

inline bool is_invertible(const finite_category& c, const mor_id& u) {
  return inverse_of(c, u).has_value();
}

namespace detail {

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace detail

}  // namespace fincat
