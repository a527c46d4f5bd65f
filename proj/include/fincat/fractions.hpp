#pragma once

// Calculus of left fractions over a morphism system: the four calculus
// clauses, fraction symbols and their equivalence, the fraction category
// with its projection, the universal factorization, and the dual
// right-fraction bundle.
//
// A fraction {forward, backward} stands for backward⁻¹ ∘ forward: both legs
// share their target (the vertex), the backward leg lies in the system,
// source is src(forward) and target is src(backward).

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fincat/core.hpp"
#include "fincat/functors.hpp"

namespace fincat {

struct fraction {
  mor_id forward;
  mor_id backward;
  auto operator<=>(const fraction&) const = default;
};

inline bool is_fraction(const mult_system& s, const fraction& u) {
  return s.base.has_morphism(u.forward) && s.base.has_morphism(u.backward) &&
         s.members.count(u.backward) != 0 &&
         s.base.target(u.forward) == s.base.target(u.backward);
}

inline const obj_id& fraction_source(const finite_category& c, const fraction& u) {
  return c.source(u.forward);
}

inline const obj_id& fraction_target(const finite_category& c, const fraction& u) {
  return c.source(u.backward);
}

inline const obj_id& fraction_vertex(const finite_category& c, const fraction& u) {
  return c.target(u.forward);
}

/// y presented as a fraction: y over the identity.
inline fraction embed_fraction(const finite_category& c, const mor_id& y) {
  return fraction{y, c.identity(c.target(y))};
}

/// The formal inverse of y: identity over y.
inline fraction inverse_fraction(const finite_category& c, const mor_id& y) {
  return fraction{c.identity(c.target(y)), y};
}

inline fraction identity_fraction(const finite_category& c, const obj_id& x) {
  return fraction{c.identity(x), c.identity(x)};
}

/// All valid fractions over s, in (forward, backward) order.
inline std::vector<fraction> enumerate_fractions(const mult_system& s) {
  std::vector<fraction> out;
  for (const auto& f : s.base.morphisms)
    for (const auto& t : s.members)
      if (s.base.target(f) == s.base.target(t)) out.push_back(fraction{f, t});
  return out;
}

/// Verdict of a calculus check: on failure, the first violated clause and a
/// witness naming the morphisms for which it fails.
struct calculus_report {
  bool ok = true;
  std::string clause;
  std::string witness;
};

/// The four clauses of a calculus of left fractions: multiplicative closure,
/// identities in the system, the left Ore condition, and left equalization.
inline calculus_report check_left_calculus(const mult_system& s) {
  const finite_category& c = s.base;

  validation_report ms = validate_mult_system(s);
  if (!ms.ok()) return {false, "multiplicative-system", ms.violations.front()};

  for (const auto& x : c.objects)
    if (s.members.count(c.identity(x)) == 0)
      return {false, "identities", "identity of '" + x.token + "' is not a member"};

  // Ore: every member r and morphism g from the same source admit a fraction
  // u with src u = tgt r, tgt u = tgt g and bwd(u) ∘ g = fwd(u) ∘ r.
  for (const auto& r : s.members)
    for (const auto& g : c.morphisms) {
      if (c.source(r) != c.source(g)) continue;
      bool found = false;
      for (const auto& f : c.morphisms) {
        if (c.source(f) != c.target(r)) continue;
        for (const auto& t : s.members) {
          if (c.source(t) != c.target(g) || c.target(t) != c.target(f)) continue;
          if (c.composite(t, g) == c.composite(f, r)) { found = true; break; }
        }
        if (found) break;
      }
      if (!found)
        return {false, "ore", "no square over member '" + r.token + "' and morphism '" + g.token + "'"};
    }

  // Equalization: whenever r ∘ v = t ∘ v with v a member, some member w
  // equalizes r and t from the left.
  for (const auto& v : s.members)
    for (const auto& r : c.morphisms) {
      if (c.source(r) != c.target(v)) continue;
      for (const auto& t : c.morphisms) {
        if (c.source(t) != c.target(v)) continue;
        if (c.composite(r, v) != c.composite(t, v)) continue;
        bool found = false;
        for (const auto& w : s.members)
          if (c.source(w) == c.target(r) && c.target(r) == c.target(t) &&
              c.composite(w, r) == c.composite(w, t)) {
            found = true;
            break;
          }
        if (!found)
          return {false, "equalization",
                  "no member equalizes '" + r.token + "' and '" + t.token + "' after member '" +
                      v.token + "'"};
      }
    }

  return {};
}

/// Least fraction (in (forward, backward) order) filling the Ore square over
/// member r and morphism g.  Throws when no candidate exists, which signals
/// a calculus violation upstream.
inline fraction ore_filler(const mult_system& s, const mor_id& r, const mor_id& g) {
  const finite_category& c = s.base;
  if (s.members.count(r) == 0)
    throw std::invalid_argument("ore_filler: '" + r.token + "' is not a member");
  if (!c.has_morphism(g))
    throw std::invalid_argument("ore_filler: '" + g.token + "' is not a morphism");
  if (c.source(r) != c.source(g))
    throw std::invalid_argument("ore_filler: '" + r.token + "' and '" + g.token +
                                "' have different sources");
  for (const auto& f : c.morphisms) {
    if (c.source(f) != c.target(r)) continue;
    for (const auto& t : s.members) {
      if (c.source(t) != c.target(g) || c.target(t) != c.target(f)) continue;
      if (c.composite(t, g) == c.composite(f, r)) return fraction{f, t};
    }
  }
  throw std::runtime_error("ore_filler: no candidate over ('" + r.token + "', '" + g.token +
                           "'); the left calculus fails upstream");
}

/// Post-compose both legs with p.  The result is a valid fraction exactly
/// when p ∘ backward stays in the system.
inline fraction extend_fraction(const finite_category& c, const mor_id& p, const fraction& u) {
  if (c.source(p) != fraction_vertex(c, u))
    throw std::invalid_argument("extend_fraction: '" + p.token + "' does not start at the vertex");
  return fraction{c.composite(p, u.forward), c.composite(p, u.backward)};
}

/// v lies beyond u: some morphism from u's vertex carries u onto v.
inline bool fraction_beyond(const mult_system& s, const fraction& u, const fraction& v) {
  const finite_category& c = s.base;
  if (!is_fraction(s, u) || !is_fraction(s, v)) return false;
  if (fraction_source(c, u) != fraction_source(c, v) ||
      fraction_target(c, u) != fraction_target(c, v))
    return false;
  for (const auto& p : c.morphisms) {
    if (c.source(p) != fraction_vertex(c, u)) continue;
    if (extend_fraction(c, p, u) == v) return true;
  }
  return false;
}

/// v lies under u: beyond, with the carrying morphism in the system.
inline bool fraction_under(const mult_system& s, const fraction& u, const fraction& v) {
  const finite_category& c = s.base;
  if (!is_fraction(s, u) || !is_fraction(s, v)) return false;
  if (fraction_source(c, u) != fraction_source(c, v) ||
      fraction_target(c, u) != fraction_target(c, v))
    return false;
  for (const auto& p : s.members) {
    if (c.source(p) != fraction_vertex(c, u)) continue;
    if (extend_fraction(c, p, u) == v) return true;
  }
  return false;
}

/// All valid fractions beyond u.  Extending by a composite equals extending
/// twice, so one extension step already reaches everything beyond u.
inline std::set<fraction> beyond_set(const mult_system& s, const fraction& u) {
  const finite_category& c = s.base;
  std::set<fraction> out;
  for (const auto& p : c.morphisms) {
    if (c.source(p) != fraction_vertex(c, u)) continue;
    fraction v = extend_fraction(c, p, u);
    if (s.members.count(v.backward)) out.insert(v);
  }
  return out;
}

/// Fractions are equivalent when something lies beyond both.
inline bool fraction_equiv(const mult_system& s, const fraction& u, const fraction& v) {
  const finite_category& c = s.base;
  if (!is_fraction(s, u) || !is_fraction(s, v)) return false;
  if (fraction_source(c, u) != fraction_source(c, v) ||
      fraction_target(c, u) != fraction_target(c, v))
    return false;
  std::set<fraction> bu = beyond_set(s, u);
  for (const auto& w : beyond_set(s, v))
    if (bu.count(w)) return true;
  return false;
}

/// Representative-level composite u ∘ v through the canonical Ore filler
/// over (backward v, forward u).
inline fraction compose_fractions(const mult_system& s, const fraction& u, const fraction& v) {
  const finite_category& c = s.base;
  if (!is_fraction(s, u) || !is_fraction(s, v))
    throw std::invalid_argument("compose_fractions: operand is not a valid fraction");
  if (fraction_source(c, u) != fraction_target(c, v))
    throw std::invalid_argument("compose_fractions: fractions are not composable");
  fraction w = ore_filler(s, v.backward, u.forward);
  return fraction{c.composite(w.forward, v.forward), c.composite(w.backward, u.backward)};
}

/// The localization presented by left fractions: one morphism per
/// equivalence class of fractions, composition through representatives.
struct fraction_category {
  mult_system system;
  finite_category category;
  std::map<fraction, mor_id> class_of;
  std::map<mor_id, fraction> rep_of;

  const mor_id& class_id(const fraction& u) const {
    auto it = class_of.find(u);
    if (it == class_of.end())
      throw std::invalid_argument("class_id: not a valid fraction: '" + u.forward.token + "' / '" +
                                  u.backward.token + "'");
    return it->second;
  }
};

/// Builds the fraction category.  Requires the left calculus; throws with
/// the failing clause otherwise.  Class ids are "forward/backward" of the
/// least member fraction.
inline fraction_category build_fraction_category(const mult_system& s) {
  calculus_report check = check_left_calculus(s);
  if (!check.ok)
    throw std::invalid_argument("build_fraction_category: left calculus fails at clause '" +
                                check.clause + "': " + check.witness);
  const finite_category& c = s.base;

  std::vector<fraction> fractions = enumerate_fractions(s);
  std::map<fraction, std::set<fraction>> beyond;
  for (const auto& u : fractions) beyond[u] = beyond_set(s, u);

  std::map<fraction, fraction> parent;
  for (const auto& u : fractions) parent[u] = u;
  auto find = [&](fraction u) {
    while (!(parent.at(u) == u)) {
      parent[u] = parent.at(parent.at(u));
      u = parent.at(u);
    }
    return u;
  };

  for (std::size_t i = 0; i < fractions.size(); ++i)
    for (std::size_t j = i + 1; j < fractions.size(); ++j) {
      const fraction& u = fractions[i];
      const fraction& v = fractions[j];
      if (fraction_source(c, u) != fraction_source(c, v) ||
          fraction_target(c, u) != fraction_target(c, v))
        continue;
      fraction ru = find(u), rv = find(v);
      if (ru == rv) continue;
      bool related = false;
      for (const auto& w : beyond.at(u))
        if (beyond.at(v).count(w)) { related = true; break; }
      if (related) parent[rv < ru ? ru : rv] = rv < ru ? rv : ru;
    }

  fraction_category fc;
  fc.system = s;
  std::map<fraction, fraction> least;  // root -> least class member
  for (const auto& u : fractions) {
    fraction root = find(u);
    auto it = least.find(root);
    if (it == least.end() || u < it->second) least[root] = u;
  }
  for (const auto& u : fractions) {
    const fraction& rep = least.at(find(u));
    mor_id cls{rep.forward.token + "/" + rep.backward.token};
    fc.class_of[u] = cls;
    fc.rep_of[cls] = rep;
  }

  finite_category& q = fc.category;
  q.objects = c.objects;
  for (const auto& [cls, rep] : fc.rep_of) {
    q.morphisms.insert(cls);
    q.src[cls] = fraction_source(c, rep);
    q.tgt[cls] = fraction_target(c, rep);
  }
  for (const auto& x : c.objects) q.ident[x] = fc.class_of.at(identity_fraction(c, x));
  for (const auto& [cu, ru] : fc.rep_of)
    for (const auto& [cv, rv] : fc.rep_of) {
      if (fraction_source(c, ru) != fraction_target(c, rv)) continue;
      q.comp[{cu, cv}] = fc.class_of.at(compose_fractions(s, ru, rv));
    }
  return fc;
}

/// Projection onto the fraction category: identity on objects, each morphism
/// to the class of its embedded fraction.
inline functor fraction_projection(const fraction_category& fc) {
  const finite_category& c = fc.system.base;
  functor f{c, fc.category, {}, {}};
  for (const auto& x : c.objects) f.on_objects[x] = x;
  for (const auto& y : c.morphisms) f.on_morphisms[y] = fc.class_of.at(embed_fraction(c, y));
  return f;
}

/// True when f is defined on the system's base and sends every member to an
/// invertible morphism, i.e. f admits a factorization through the fractions.
inline bool localizes(const mult_system& s, const functor& f) {
  if (!(f.dom == s.base)) return false;
  for (const auto& q : s.members)
    if (!is_invertible(f.cod, f.on_morphisms.at(q))) return false;
  return true;
}

/// The unique functor from the fraction category with g ∘ projection = f.
/// Each class maps to f(backward)⁻¹ ∘ f(forward) of its representative.
inline functor factor_through_fractions(const fraction_category& fc, const functor& f) {
  const finite_category& c = fc.system.base;
  if (!(f.dom == c))
    throw std::invalid_argument("factor_through_fractions: functor domain is not the base");
  for (const auto& q : fc.system.members)
    if (!is_invertible(f.cod, f.on_morphisms.at(q)))
      throw std::invalid_argument("factor_through_fractions: member '" + q.token +
                                  "' has non-invertible image '" + f.on_morphisms.at(q).token + "'");
  functor g{fc.category, f.cod, f.on_objects, {}};
  for (const auto& [cls, rep] : fc.rep_of) {
    const mor_id& fwd = f.on_morphisms.at(rep.forward);
    const mor_id& bwd = f.on_morphisms.at(rep.backward);
    g.on_morphisms[cls] = f.cod.composite(*inverse_of(f.cod, bwd), fwd);
  }
  return g;
}

/// Two commuting squares over the same base pair (e, f) with src e = src f:
/// the first closes with (g, h) via g ∘ e = h ∘ f, the second with (i, j)
/// via i ∘ e = j ∘ f.  Both e and h lie in the system.
struct lean_to {
  mor_id e, f, g, h, i, j;
};

inline validation_report validate_lean_to(const mult_system& s, const lean_to& lt) {
  const finite_category& c = s.base;
  validation_report report;
  for (const mor_id* m : {&lt.e, &lt.f, &lt.g, &lt.h, &lt.i, &lt.j})
    if (!c.has_morphism(*m)) {
      report.add("'" + m->token + "' is not a morphism");
      return report;
    }
  if (s.members.count(lt.e) == 0) report.add("'" + lt.e.token + "' (e) is not a member");
  if (s.members.count(lt.h) == 0) report.add("'" + lt.h.token + "' (h) is not a member");
  if (c.source(lt.e) != c.source(lt.f)) report.add("e and f have different sources");
  if (c.source(lt.g) != c.target(lt.e)) report.add("g does not start at tgt e");
  if (c.source(lt.h) != c.target(lt.f)) report.add("h does not start at tgt f");
  if (c.target(lt.g) != c.target(lt.h)) report.add("g and h have different targets");
  if (c.source(lt.i) != c.target(lt.e)) report.add("i does not start at tgt e");
  if (c.source(lt.j) != c.target(lt.f)) report.add("j does not start at tgt f");
  if (c.target(lt.i) != c.target(lt.j)) report.add("i and j have different targets");
  if (!report.ok()) return report;
  if (c.composite(lt.g, lt.e) != c.composite(lt.h, lt.f)) report.add("first square does not commute");
  if (c.composite(lt.i, lt.e) != c.composite(lt.j, lt.f)) report.add("second square does not commute");
  return report;
}

/// Closes a lean-to: the least pair (k, l) with l in the system, k ∘ g = l ∘ i
/// and k ∘ h = l ∘ j.  Existence is guaranteed by the left calculus.
inline std::pair<mor_id, mor_id> close_lean_to(const mult_system& s, const lean_to& lt) {
  validation_report check = validate_lean_to(s, lt);
  if (!check.ok()) throw std::invalid_argument("close_lean_to: " + check.violations.front());
  const finite_category& c = s.base;
  for (const auto& k : c.morphisms) {
    if (c.source(k) != c.target(lt.g)) continue;
    for (const auto& l : s.members) {
      if (c.source(l) != c.target(lt.i) || c.target(l) != c.target(k)) continue;
      if (c.composite(k, lt.g) == c.composite(l, lt.i) &&
          c.composite(k, lt.h) == c.composite(l, lt.j))
        return {k, l};
    }
  }
  throw std::runtime_error("close_lean_to: no closing pair; the left calculus fails upstream");
}

/// A vee: a morphism p and a member q into a common target, denoting the
/// would-be composite q⁻¹ ∘ p in any category inverting the system.
struct vee {
  mor_id p;
  mor_id q;
  auto operator<=>(const vee&) const = default;
};

inline bool is_vee(const mult_system& s, const vee& v) {
  return s.base.has_morphism(v.p) && s.members.count(v.q) != 0 &&
         s.base.target(v.p) == s.base.target(v.q);
}

/// f(q)⁻¹ ∘ f(p) in the codomain of f.
inline mor_id vee_image(const functor& f, const vee& v) {
  const mor_id& fq = f.on_morphisms.at(v.q);
  auto inv = inverse_of(f.cod, fq);
  if (!inv)
    throw std::invalid_argument("vee_image: image '" + fq.token + "' of '" + v.q.token +
                                "' is not invertible");
  return f.cod.composite(*inv, f.on_morphisms.at(v.p));
}

/// Two vees are equivalent when a pair of morphisms carries them onto a
/// common vee whose member leg stays in the system.
inline bool vee_equivalent(const mult_system& s, const vee& a, const vee& b) {
  const finite_category& c = s.base;
  if (!is_vee(s, a) || !is_vee(s, b)) return false;
  if (c.source(a.p) != c.source(b.p) || c.source(a.q) != c.source(b.q)) return false;
  for (const auto& y : c.morphisms) {
    if (c.source(y) != c.target(a.p)) continue;
    for (const auto& z : c.morphisms) {
      if (c.source(z) != c.target(b.p)) continue;
      if (c.target(y) != c.target(z)) continue;
      if (c.composite(y, a.p) != c.composite(z, b.p)) continue;
      if (c.composite(y, a.q) != c.composite(z, b.q)) continue;
      if (s.members.count(c.composite(y, a.q))) return true;
    }
  }
  return false;
}

/// Checks that f presents its codomain by left fractions: f localizes, is a
/// bijection on objects, every codomain morphism is a vee image, and equal
/// vee images come from equivalent vees.
inline validation_report verify_fraction_description(const mult_system& s, const functor& f) {
  const finite_category& c = s.base;
  validation_report report;

  if (!(f.dom == c)) {
    report.add("functor domain is not the base category");
    return report;
  }
  validation_report wf = validate_functor(f);
  if (!wf.ok()) {
    report.add("functor is invalid: " + wf.violations.front());
    return report;
  }
  for (const auto& q : s.members)
    if (!is_invertible(f.cod, f.on_morphisms.at(q)))
      report.add("member '" + q.token + "' has non-invertible image");
  if (!report.ok()) return report;

  if (!analyze(f).ob_iso) report.add("functor is not a bijection on objects");

  std::vector<vee> vees;
  for (const auto& p : c.morphisms)
    for (const auto& q : s.members)
      if (c.target(p) == c.target(q)) vees.push_back(vee{p, q});

  for (const auto& y : f.cod.morphisms) {
    bool hit = false;
    for (const auto& v : vees)
      if (vee_image(f, v) == y) { hit = true; break; }
    if (!hit) report.add("morphism '" + y.token + "' is not a vee image");
  }

  for (const auto& a : vees)
    for (const auto& b : vees) {
      if (c.source(a.p) != c.source(b.p) || c.source(a.q) != c.source(b.q)) continue;
      if (vee_image(f, a) != vee_image(f, b)) continue;
      if (!vee_equivalent(s, a, b))
        report.add("vees '" + a.p.token + "/" + a.q.token + "' and '" + b.p.token + "/" +
                   b.q.token + "' have equal images but are not equivalent");
    }

  return report;
}

/// The four clauses of a calculus of right fractions, stated directly on the
/// base category.  Equivalent to the left calculus on the opposite system;
/// kept as an independent code path so the duality can be cross-checked.
inline calculus_report check_right_calculus(const mult_system& s) {
  const finite_category& c = s.base;

  validation_report ms = validate_mult_system(s);
  if (!ms.ok()) return {false, "multiplicative-system", ms.violations.front()};

  for (const auto& x : c.objects)
    if (s.members.count(c.identity(x)) == 0)
      return {false, "identities", "identity of '" + x.token + "' is not a member"};

  // Co-Ore: every member r and morphism g into the same target admit p in
  // the system and q with g ∘ p = r ∘ q from a common source.
  for (const auto& r : s.members)
    for (const auto& g : c.morphisms) {
      if (c.target(r) != c.target(g)) continue;
      bool found = false;
      for (const auto& p : s.members) {
        if (c.target(p) != c.source(g)) continue;
        for (const auto& q : c.morphisms) {
          if (c.source(q) != c.source(p) || c.target(q) != c.source(r)) continue;
          if (c.composite(g, p) == c.composite(r, q)) { found = true; break; }
        }
        if (found) break;
      }
      if (!found)
        return {false, "co-ore", "no square under member '" + r.token + "' and morphism '" + g.token + "'"};
    }

  // Co-equalization: whenever v ∘ r = v ∘ t with v a member, some member w
  // equalizes r and t from the right.
  for (const auto& v : s.members)
    for (const auto& r : c.morphisms) {
      if (c.source(v) != c.target(r)) continue;
      for (const auto& t : c.morphisms) {
        if (c.source(v) != c.target(t)) continue;
        if (c.composite(v, r) != c.composite(v, t)) continue;
        bool found = false;
        for (const auto& w : s.members)
          if (c.target(w) == c.source(r) && c.source(r) == c.source(t) &&
              c.composite(r, w) == c.composite(t, w)) {
            found = true;
            break;
          }
        if (!found)
          return {false, "co-equalization",
                  "no member equalizes '" + r.token + "' and '" + t.token + "' before member '" +
                      v.token + "'"};
      }
    }

  return {};
}

/// Right-fraction localization, derived from the left machinery on the
/// opposite system.  The category and projection are present when the
/// calculus holds.
struct right_fraction_bundle {
  calculus_report check;
  std::optional<finite_category> category;
  std::optional<functor> projection;
};

inline right_fraction_bundle build_right_fractions(const mult_system& s) {
  right_fraction_bundle out;
  out.check = check_right_calculus(s);
  if (!out.check.ok) return out;
  fraction_category dual = build_fraction_category(oppose_system(s));
  functor proj = fraction_projection(dual);
  out.category = opposite(dual.category);
  out.projection = functor{s.base, *out.category, proj.on_objects, proj.on_morphisms};
  return out;
}

}  // namespace fincat
