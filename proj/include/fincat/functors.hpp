#pragma once

// Functors between finite categories as explicit tables, composition,
// structural predicates, and exhaustive functor enumeration.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fincat/core.hpp"

namespace fincat {

/// Functor as a pair of total tables over the domain's carriers.  Compared
/// table-exactly, domains and codomains included.
struct functor {
  finite_category dom;
  finite_category cod;
  std::map<obj_id, obj_id> on_objects;
  std::map<mor_id, mor_id> on_morphisms;

  const obj_id& object_image(const obj_id& x) const {
    auto it = on_objects.find(x);
    if (it == on_objects.end()) throw std::invalid_argument("no object image for '" + x.token + "'");
    return it->second;
  }

  const mor_id& morphism_image(const mor_id& u) const {
    auto it = on_morphisms.find(u);
    if (it == on_morphisms.end()) throw std::invalid_argument("no morphism image for '" + u.token + "'");
    return it->second;
  }

  friend bool operator==(const functor&, const functor&) = default;
};

inline functor identity_functor(const finite_category& c) {
  functor f{c, c, {}, {}};
  for (const auto& x : c.objects) f.on_objects[x] = x;
  for (const auto& u : c.morphisms) f.on_morphisms[u] = u;
  return f;
}

inline validation_report validate_functor(const functor& f) {
  validation_report report;
  for (const auto& x : f.dom.objects) {
    auto it = f.on_objects.find(x);
    if (it == f.on_objects.end())
      report.add("object '" + x.token + "' has no image");
    else if (!f.cod.has_object(it->second))
      report.add("object '" + x.token + "' maps to unknown object '" + it->second.token + "'");
  }
  for (const auto& u : f.dom.morphisms) {
    auto it = f.on_morphisms.find(u);
    if (it == f.on_morphisms.end())
      report.add("morphism '" + u.token + "' has no image");
    else if (!f.cod.has_morphism(it->second))
      report.add("morphism '" + u.token + "' maps to unknown morphism '" + it->second.token + "'");
  }
  if (!report.ok()) return report;

  for (const auto& u : f.dom.morphisms) {
    const mor_id& fu = f.on_morphisms.at(u);
    if (f.cod.source(fu) != f.on_objects.at(f.dom.source(u)))
      report.add("image of '" + u.token + "' has source off the object map");
    if (f.cod.target(fu) != f.on_objects.at(f.dom.target(u)))
      report.add("image of '" + u.token + "' has target off the object map");
  }
  if (!report.ok()) return report;  // composite lookups below need commuting endpoints

  for (const auto& x : f.dom.objects)
    if (f.on_morphisms.at(f.dom.identity(x)) != f.cod.identity(f.on_objects.at(x)))
      report.add("identity at '" + x.token + "' is not preserved");
  for (const auto& [key, w] : f.dom.comp) {
    const auto& [u, v] = key;
    const mor_id& fu = f.on_morphisms.at(u);
    const mor_id& fv = f.on_morphisms.at(v);
    if (f.cod.composite(fu, fv) != f.on_morphisms.at(w))
      report.add("composition not preserved on ('" + u.token + "', '" + v.token + "')");
  }
  return report;
}

/// g after f.  Requires f.cod == g.dom table-exactly.
inline functor fcompose(const functor& g, const functor& f) {
  if (!(f.cod == g.dom)) throw std::invalid_argument("fcompose: middle categories differ");
  functor h{f.dom, g.cod, {}, {}};
  for (const auto& [x, fx] : f.on_objects) h.on_objects[x] = g.object_image(fx);
  for (const auto& [u, fu] : f.on_morphisms) h.on_morphisms[u] = g.morphism_image(fu);
  return h;
}

inline std::set<mor_id> mor_image(const functor& f) {
  std::set<mor_id> image;
  for (const auto& [u, fu] : f.on_morphisms) image.insert(fu);
  return image;
}

struct functor_traits {
  bool faithful = false;
  bool full = false;
  bool ob_inj = false;
  bool ob_surj = false;
  bool ob_iso = false;
  bool has_finverse = false;
};

/// Exhaustive structural predicates.  faithful/full quantify over hom-sets;
/// has_finverse is the conjunction making an inverse functor constructible.
inline functor_traits analyze(const functor& f) {
  functor_traits t;

  t.faithful = true;
  for (const auto& u : f.dom.morphisms)
    for (const auto& v : f.dom.morphisms) {
      if (u == v) continue;
      if (f.dom.source(u) != f.dom.source(v) || f.dom.target(u) != f.dom.target(v)) continue;
      if (f.on_morphisms.at(u) == f.on_morphisms.at(v)) t.faithful = false;
    }

  std::set<obj_id> ob_image;
  for (const auto& [x, fx] : f.on_objects) ob_image.insert(fx);

  t.full = true;
  for (const auto& m : f.cod.morphisms) {
    if (ob_image.count(f.cod.source(m)) == 0 || ob_image.count(f.cod.target(m)) == 0) continue;
    bool hit = false;
    for (const auto& [u, fu] : f.on_morphisms)
      if (fu == m) { hit = true; break; }
    if (!hit) t.full = false;
  }

  t.ob_inj = ob_image.size() == f.dom.objects.size();
  t.ob_surj = ob_image.size() == f.cod.objects.size();
  t.ob_iso = t.ob_inj && t.ob_surj;
  t.has_finverse = t.faithful && t.full && t.ob_iso;
  return t;
}

/// Explicit inverse when analyze(f).has_finverse holds.
inline std::optional<functor> finverse(const functor& f) {
  if (!analyze(f).has_finverse) return std::nullopt;
  functor g{f.cod, f.dom, {}, {}};
  for (const auto& [x, fx] : f.on_objects) g.on_objects[fx] = x;
  for (const auto& m : f.cod.morphisms)
    for (const auto& [u, fu] : f.on_morphisms)
      if (fu == m) { g.on_morphisms[m] = u; break; }
  return g;
}

/// Morphisms of s together with every invertible morphism whose inverse lies
/// in s.  No new composites are added; closure is the caller's concern.
inline std::set<mor_id> add_inverses(const finite_category& c, const std::set<mor_id>& s) {
  for (const auto& m : s)
    if (!c.has_morphism(m))
      throw std::invalid_argument("add_inverses: '" + m.token + "' is not a morphism");
  std::set<mor_id> out = s;
  for (const auto& y : c.morphisms) {
    auto inv = inverse_of(c, y);
    if (inv && s.count(*inv)) out.insert(y);
  }
  return out;
}

/// Least subcategory of c whose morphisms include s: objects are the
/// endpoints of s, morphisms close s plus those objects' identities under
/// composition.  Empty s yields the empty subcategory.
inline finite_category generated_subcategory(const finite_category& c, const std::set<mor_id>& s) {
  for (const auto& m : s)
    if (!c.has_morphism(m))
      throw std::invalid_argument("generated_subcategory: '" + m.token + "' is not a morphism");
  finite_category sub;
  for (const auto& m : s) {
    sub.objects.insert(c.source(m));
    sub.objects.insert(c.target(m));
  }
  std::set<mor_id> mors = s;
  for (const auto& x : sub.objects) mors.insert(c.identity(x));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<mor_id> current(mors.begin(), mors.end());
    for (const auto& u : current)
      for (const auto& v : current) {
        if (c.source(u) != c.target(v)) continue;
        if (mors.insert(c.composite(u, v)).second) grew = true;
      }
  }
  sub.morphisms = mors;
  for (const auto& u : mors) {
    sub.src[u] = c.source(u);
    sub.tgt[u] = c.target(u);
  }
  for (const auto& x : sub.objects) sub.ident[x] = c.identity(x);
  for (const auto& u : mors)
    for (const auto& v : mors)
      if (c.source(u) == c.target(v)) sub.comp[{u, v}] = c.composite(u, v);
  return sub;
}

/// True iff the least subcategory containing s is all of c.
inline bool generates(const finite_category& c, const std::set<mor_id>& s) {
  finite_category sub = generated_subcategory(c, s);
  return sub.morphisms == c.morphisms && sub.objects == c.objects;
}

/// All functors from a to b, ordered by their tables.  The search assigns
/// object images, then morphism images per hom-set, pruning by endpoint
/// compatibility and by composition entries as soon as both factors are
/// assigned.  Throws budget_exceeded when more than `budget` partial
/// assignments are visited.
inline std::vector<functor> enumerate_functors(const finite_category& a, const finite_category& b,
                                               std::uint64_t budget = 2'000'000) {
  std::vector<obj_id> objs(a.objects.begin(), a.objects.end());
  std::vector<obj_id> target_objs(b.objects.begin(), b.objects.end());
  std::vector<mor_id> mors;
  for (const auto& u : a.morphisms) mors.push_back(u);  // already sorted

  std::vector<functor> found;
  std::uint64_t visited = 0;
  auto spend = [&]() {
    if (++visited > budget)
      throw budget_exceeded("enumerate_functors: budget of " + std::to_string(budget) +
                            " partial assignments exceeded");
  };

  std::map<obj_id, obj_id> fo;
  std::map<mor_id, mor_id> fm;

  // Checks every composition entry of a whose operands and result are all
  // assigned; called after each morphism assignment.
  auto comp_consistent = [&](const mor_id& just) {
    for (const auto& [key, w] : a.comp) {
      const auto& [u, v] = key;
      if (u != just && v != just && w != just) continue;
      auto iu = fm.find(u);
      auto iv = fm.find(v);
      auto iw = fm.find(w);
      if (iu == fm.end() || iv == fm.end() || iw == fm.end()) continue;
      if (b.composite(iu->second, iv->second) != iw->second) return false;
    }
    return true;
  };

  auto assign_mors = [&](auto&& self, std::size_t i) -> void {
    if (i == mors.size()) {
      found.push_back(functor{a, b, fo, fm});
      return;
    }
    const mor_id& u = mors[i];
    const obj_id& sx = fo.at(a.source(u));
    const obj_id& tx = fo.at(a.target(u));
    if (u == a.identity(a.source(u))) {
      // identities are forced
      spend();
      fm[u] = b.identity(sx);
      if (comp_consistent(u)) self(self, i + 1);
      fm.erase(u);
      return;
    }
    for (const auto& m : b.morphisms) {
      if (b.source(m) != sx || b.target(m) != tx) continue;
      spend();
      fm[u] = m;
      if (comp_consistent(u)) self(self, i + 1);
      fm.erase(u);
    }
  };

  auto assign_objs = [&](auto&& self, std::size_t i) -> void {
    if (i == objs.size()) {
      assign_mors(assign_mors, 0);
      return;
    }
    for (const auto& y : target_objs) {
      spend();
      fo[objs[i]] = y;
      self(self, i + 1);
      fo.erase(objs[i]);
    }
  };

  if (objs.empty()) {
    // the empty category admits exactly the empty functor
    found.push_back(functor{a, b, {}, {}});
    return found;
  }
  assign_objs(assign_objs, 0);
  return found;
}

}  // namespace fincat
