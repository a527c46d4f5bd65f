#pragma once

// Congruences on a finite category: endpoint-compatible relations, their
// congruence closure, and the quotient category with its projection.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fincat/core.hpp"
#include "fincat/functors.hpp"

namespace fincat {

/// Relation on parallel morphisms of a fixed base category.
struct mor_relation {
  finite_category base;
  std::set<std::pair<mor_id, mor_id>> pairs;

  friend bool operator==(const mor_relation&, const mor_relation&) = default;
};

inline validation_report validate_mor_relation(const mor_relation& r) {
  validation_report report;
  for (const auto& [u, v] : r.pairs) {
    if (!r.base.has_morphism(u) || !r.base.has_morphism(v)) {
      report.add("pair ('" + u.token + "', '" + v.token + "') references an unknown morphism");
      continue;
    }
    if (r.base.source(u) != r.base.source(v) || r.base.target(u) != r.base.target(v))
      report.add("pair ('" + u.token + "', '" + v.token + "') relates non-parallel morphisms");
  }
  return report;
}

/// Partition of the morphism set into congruence classes.  Class ids are
/// minted from the least member; every class is endpoint-homogeneous.
struct congruence {
  finite_category base;
  std::map<mor_id, mor_id> class_of;
  std::map<mor_id, mor_id> rep_of;

  bool related(const mor_id& u, const mor_id& v) const {
    return class_of.at(u) == class_of.at(v);
  }

  friend bool operator==(const congruence&, const congruence&) = default;
};

/// Least congruence containing r: reflexive, symmetric, transitive, and
/// closed under composition with equal partners on either side.  Union-find
/// with a worklist; each merge re-derives the composites its members enter.
inline congruence congruence_closure(const mor_relation& r) {
  validation_report check = validate_mor_relation(r);
  if (!check.ok()) throw std::invalid_argument("congruence_closure: " + check.violations.front());
  const finite_category& c = r.base;

  std::map<mor_id, mor_id> parent;
  for (const auto& u : c.morphisms) parent[u] = u;
  auto find = [&](mor_id u) {
    while (parent[u] != u) {
      parent[u] = parent[parent[u]];
      u = parent[u];
    }
    return u;
  };

  std::vector<std::pair<mor_id, mor_id>> worklist(r.pairs.begin(), r.pairs.end());
  auto unite = [&](const mor_id& a, const mor_id& b) {
    mor_id ra = find(a), rb = find(b);
    if (ra == rb) return;
    if (rb < ra) std::swap(ra, rb);
    parent[rb] = ra;
    worklist.push_back({ra, rb});
  };

  while (!worklist.empty()) {
    auto [x, y] = worklist.back();
    worklist.pop_back();
    unite(x, y);
    if (x == y) continue;
    for (const auto& u : c.morphisms) {
      if (c.source(x) == c.target(u))
        unite(c.composite(x, u), c.composite(y, u));
      if (c.source(u) == c.target(x))
        unite(c.composite(u, x), c.composite(u, y));
    }
  }

  congruence p;
  p.base = c;
  std::map<mor_id, mor_id> least;  // root -> least member
  for (const auto& u : c.morphisms) {
    mor_id root = find(u);
    auto it = least.find(root);
    if (it == least.end() || u < it->second) least[root] = u;
  }
  for (const auto& u : c.morphisms) {
    const mor_id& rep = least.at(find(u));
    mor_id cls{"[" + rep.token + "]"};
    p.class_of[u] = cls;
    p.rep_of[cls] = rep;
  }
  return p;
}

/// Quotient category: same objects, one morphism per class, tables induced
/// through representatives.
inline finite_category make_quotient(const congruence& p) {
  const finite_category& c = p.base;
  finite_category q;
  q.objects = c.objects;
  for (const auto& [cls, rep] : p.rep_of) {
    q.morphisms.insert(cls);
    q.src[cls] = c.source(rep);
    q.tgt[cls] = c.target(rep);
  }
  for (const auto& x : c.objects) q.ident[x] = p.class_of.at(c.identity(x));
  for (const auto& [cu, ru] : p.rep_of)
    for (const auto& [cv, rv] : p.rep_of) {
      if (c.source(ru) != c.target(rv)) continue;
      q.comp[{cu, cv}] = p.class_of.at(c.composite(ru, rv));
    }
  return q;
}

/// Projection onto the quotient: identity on objects, class map on morphisms.
inline functor projection_functor(const congruence& p) {
  functor f{p.base, make_quotient(p), {}, {}};
  for (const auto& x : p.base.objects) f.on_objects[x] = x;
  for (const auto& u : p.base.morphisms) f.on_morphisms[u] = p.class_of.at(u);
  return f;
}

/// Kernel of a functor: all parallel pairs with equal images.  Contains the
/// diagonal and is itself a congruence-closed relation.
inline mor_relation kernel_rel(const functor& f) {
  mor_relation r;
  r.base = f.dom;
  for (const auto& u : f.dom.morphisms)
    for (const auto& v : f.dom.morphisms) {
      if (f.dom.source(u) != f.dom.source(v) || f.dom.target(u) != f.dom.target(v)) continue;
      if (f.on_morphisms.at(u) == f.on_morphisms.at(v)) r.pairs.insert({u, v});
    }
  return r;
}

/// Factor f through the quotient of p.  Requires the partition to refine the
/// kernel of f; the result h is the unique functor with h after projection
/// equal to f.
inline functor factor_through_quotient(const congruence& p, const functor& f) {
  if (!(f.dom == p.base))
    throw std::invalid_argument("factor_through_quotient: functor domain differs from the base");
  for (const auto& u : p.base.morphisms)
    for (const auto& v : p.base.morphisms) {
      if (!p.related(u, v)) continue;
      if (f.on_morphisms.at(u) != f.on_morphisms.at(v))
        throw std::invalid_argument("factor_through_quotient: incompatible pair ('" + u.token +
                                    "', '" + v.token + "') with distinct images");
    }
  functor h{make_quotient(p), f.cod, f.on_objects, {}};
  for (const auto& [cls, rep] : p.rep_of) h.on_morphisms[cls] = f.on_morphisms.at(rep);
  return h;
}

}  // namespace fincat
