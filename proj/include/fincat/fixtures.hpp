#pragma once

// Desk-scale fixture categories: standard small shapes, coarse categories,
// the beyond-versus-under counterexample, and a seeded random generator for
// fuzzing.  Tokens are short and stable so expected values can be frozen in
// tests and CLI output.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fincat/chains.hpp"
#include "fincat/congruence.hpp"
#include "fincat/core.hpp"
#include "fincat/fractions.hpp"
#include "fincat/zigzag.hpp"

namespace fincat {

/// One object "x" with its identity.
inline finite_category terminal_category() {
  finite_category c;
  obj_id x{"x"};
  mor_id i{"id_x"};
  c.objects = {x};
  c.morphisms = {i};
  c.src[i] = x;
  c.tgt[i] = x;
  c.ident[x] = i;
  c.comp[{i, i}] = i;
  return c;
}

/// Two objects with a single non-identity arrow q: x -> y.
inline finite_category walking_arrow() {
  finite_category c;
  obj_id x{"x"}, y{"y"};
  mor_id ix{"id_x"}, iy{"id_y"}, q{"q"};
  c.objects = {x, y};
  c.morphisms = {ix, iy, q};
  c.src = {{ix, x}, {iy, y}, {q, x}};
  c.tgt = {{ix, x}, {iy, y}, {q, y}};
  c.ident = {{x, ix}, {y, iy}};
  c.comp = {{{ix, ix}, ix}, {{iy, iy}, iy}, {{q, ix}, q}, {{iy, q}, q}};
  return c;
}

/// Two objects with mutually inverse arrows q and qi.
inline finite_category walking_isomorphism() {
  finite_category c;
  obj_id x{"x"}, y{"y"};
  mor_id ix{"id_x"}, iy{"id_y"}, q{"q"}, qi{"qi"};
  c.objects = {x, y};
  c.morphisms = {ix, iy, q, qi};
  c.src = {{ix, x}, {iy, y}, {q, x}, {qi, y}};
  c.tgt = {{ix, x}, {iy, y}, {q, y}, {qi, x}};
  c.ident = {{x, ix}, {y, iy}};
  c.comp = {{{ix, ix}, ix}, {{iy, iy}, iy}, {{q, ix}, q},   {{iy, q}, q},
            {{qi, iy}, qi}, {{ix, qi}, qi}, {{qi, q}, ix},  {{q, qi}, iy}};
  return c;
}

/// Linear poset p0 <= p1 <= ... with morphisms le_i_j for i <= j.
inline finite_category chain_poset(std::size_t n) {
  if (n == 0) throw std::invalid_argument("chain_poset: need at least one object");
  finite_category c;
  auto o = [](std::size_t i) { return obj_id{"p" + std::to_string(i)}; };
  auto m = [](std::size_t i, std::size_t j) {
    return mor_id{"le_" + std::to_string(i) + "_" + std::to_string(j)};
  };
  for (std::size_t i = 0; i < n; ++i) {
    c.objects.insert(o(i));
    c.ident[o(i)] = m(i, i);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      c.morphisms.insert(m(i, j));
      c.src[m(i, j)] = o(i);
      c.tgt[m(i, j)] = o(j);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) c.comp[{m(j, k), m(i, j)}] = m(i, k);
  return c;
}

/// Exactly one morphism between every ordered pair of objects; the morphism
/// from a to b is named "na" + a + b.
inline finite_category coarse_category(const std::set<obj_id>& objects) {
  if (objects.empty()) throw std::invalid_argument("coarse_category: need at least one object");
  finite_category c;
  c.objects = objects;
  auto m = [](const obj_id& a, const obj_id& b) { return mor_id{"na" + a.token + b.token}; };
  for (const auto& a : objects)
    for (const auto& b : objects) {
      mor_id u = m(a, b);
      if (!c.morphisms.insert(u).second)
        throw std::invalid_argument("coarse_category: token collision at '" + u.token + "'");
      c.src[u] = a;
      c.tgt[u] = b;
    }
  for (const auto& a : objects) c.ident[a] = m(a, a);
  for (const auto& a : objects)
    for (const auto& b : objects)
      for (const auto& d : objects) c.comp[{m(b, d), m(a, b)}] = m(a, d);
  return c;
}

/// The seven-morphism category on objects 0, 1, 2: the coarse category with
/// na10 and na20 removed, paired with the system {na00, na11, na22, na01,
/// na02}.  Hosts the beyond-versus-under counterexample.
inline mult_system counterexample_system() {
  finite_category c;
  obj_id o0{"0"}, o1{"1"}, o2{"2"};
  c.objects = {o0, o1, o2};
  auto m = [&c](const std::string& token, const obj_id& a, const obj_id& b) {
    mor_id u{token};
    c.morphisms.insert(u);
    c.src[u] = a;
    c.tgt[u] = b;
    return u;
  };
  mor_id na00 = m("na00", o0, o0);
  mor_id na11 = m("na11", o1, o1);
  mor_id na22 = m("na22", o2, o2);
  mor_id na01 = m("na01", o0, o1);
  mor_id na02 = m("na02", o0, o2);
  m("na12", o1, o2);
  m("na21", o2, o1);
  c.ident = {{o0, na00}, {o1, na11}, {o2, na22}};
  // composites land at na(src, tgt); the missing na10, na20 are unreachable
  // because only na00 targets object 0
  auto nm = [&c](const mor_id& u, const mor_id& v) {
    std::string token = "na" + std::string{c.src.at(v).token} + std::string{c.tgt.at(u).token};
    return mor_id{token};
  };
  for (const auto& u : c.morphisms)
    for (const auto& v : c.morphisms)
      if (c.src.at(u) == c.tgt.at(v)) c.comp[{u, v}] = nm(u, v);
  return mult_system{c, {na00, na11, na22, na01, na02}};
}

/// Replays the counterexample: the fraction na11/na01 extends onto na12/na02
/// through a plain morphism, yet the two admit no common extension through
/// the system, and the doubled graph has the expected shape.  An empty
/// report reproduces the phenomenon.
inline validation_report verify_counterexample() {
  validation_report report;
  mult_system s = counterexample_system();
  const finite_category& c = s.base;

  validation_report cat = validate_category(c);
  if (!cat.ok()) {
    report.add("category invalid: " + cat.violations.front());
    return report;
  }
  calculus_report calc = check_left_calculus(s);
  if (!calc.ok) {
    report.add("left calculus fails at clause '" + calc.clause + "': " + calc.witness);
    return report;
  }

  fraction u{mor_id{"na11"}, mor_id{"na01"}};
  fraction v{mor_id{"na12"}, mor_id{"na02"}};
  if (!is_fraction(s, u)) report.add("na11/na01 is not a valid fraction");
  if (!is_fraction(s, v)) report.add("na12/na02 is not a valid fraction");
  if (!report.ok()) return report;

  if (fraction_vertex(c, u) != obj_id{"1"}) report.add("na11/na01 has unexpected vertex");
  if (fraction_vertex(c, v) != obj_id{"2"}) report.add("na12/na02 has unexpected vertex");
  if (u == v) report.add("the two fractions coincide");

  if (!fraction_beyond(s, u, v)) report.add("na12/na02 is not beyond na11/na01");
  if (!fraction_equiv(s, u, v)) report.add("the two fractions are not equivalent");

  // Exhaustive: nothing lies under both fractions.
  for (const auto& w : enumerate_fractions(s))
    if (fraction_under(s, u, w) && fraction_under(s, v, w))
      report.add("common under-witness '" + w.forward.token + "/" + w.backward.token + "'");

  // Stronger: each fraction's only under-extension is itself.
  for (const auto& w : enumerate_fractions(s)) {
    if (fraction_under(s, u, w) && !(w == u))
      report.add("na11/na01 extends within the system onto '" + w.forward.token + "/" +
                 w.backward.token + "'");
    if (fraction_under(s, v, w) && !(w == v))
      report.add("na12/na02 extends within the system onto '" + w.forward.token + "/" +
                 w.backward.token + "'");
  }

  finite_graph g = localization_graph(s);
  if (g.vertices.size() != 3)
    report.add("doubled graph has " + std::to_string(g.vertices.size()) + " vertices, expected 3");
  if (g.edges.size() != 12)
    report.add("doubled graph has " + std::to_string(g.edges.size()) + " edges, expected 12");
  return report;
}

/// Seeded random category: the path category of a random acyclic quiver on
/// up to max_objects vertices with up to max_extra_morphisms generating
/// edges, optionally quotiented by a random congruence.  Deterministic in
/// the seed and always a valid category; sparse inputs keep hom-sets small.
inline finite_category random_category(std::uint64_t seed, std::size_t max_objects,
                                       std::size_t max_extra_morphisms) {
  if (max_objects == 0) throw std::invalid_argument("random_category: need at least one object");
  std::mt19937_64 rng(seed);
  auto pick = [&rng](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

  std::size_t n = 1 + pick(max_objects);
  finite_graph g;
  std::vector<obj_id> objs;
  for (std::size_t i = 0; i < n; ++i) {
    objs.push_back(obj_id{"o" + std::to_string(i)});
    g.vertices.insert(objs.back());
  }
  std::size_t edge_count = n >= 2 ? pick(max_extra_morphisms + 1) : 0;
  for (std::size_t e = 0; e < edge_count; ++e) {
    std::size_t i = pick(n - 1);
    std::size_t j = i + 1 + pick(n - 1 - i);  // i < j keeps the quiver acyclic
    g.edges.push_back(graph_edge{mor_id{"e" + std::to_string(e)}, objs[i], objs[j]});
  }

  // Path category: every chain is a morphism, concatenation composes.
  std::vector<chain> all;
  for (const auto& x : g.vertices)
    for (const auto& y : g.vertices)
      for (auto& u : enumerate_chains(g, x, y, n > 0 ? n - 1 : 0)) all.push_back(std::move(u));
  std::sort(all.begin(), all.end());

  finite_category c;
  c.objects = g.vertices;
  std::map<chain, mor_id> name;
  std::size_t counter = 0;
  for (const auto& u : all) {
    mor_id id = u.segments.empty() ? mor_id{"id_" + u.src.token}
                                   : mor_id{"m" + std::to_string(counter++)};
    name[u] = id;
    c.morphisms.insert(id);
    c.src[id] = u.src;
    c.tgt[id] = u.tgt;
    if (u.segments.empty()) c.ident[u.src] = id;
  }
  for (const auto& [u, un] : name)
    for (const auto& [v, vn] : name)
      if (u.src == v.tgt) c.comp[{un, vn}] = name.at(compose_chains(u, v));

  if (rng() % 2 == 0) return c;

  // Random congruence quotient over parallel pairs.
  std::vector<std::pair<mor_id, mor_id>> parallel;
  for (const auto& u : c.morphisms)
    for (const auto& v : c.morphisms)
      if (u < v && c.source(u) == c.source(v) && c.target(u) == c.target(v))
        parallel.push_back({u, v});
  if (parallel.empty()) return c;
  mor_relation rel{c, {}};
  std::size_t picks = 1 + pick(2);
  for (std::size_t k = 0; k < picks; ++k) rel.pairs.insert(parallel[pick(parallel.size())]);
  return make_quotient(congruence_closure(rel));
}

}  // namespace fincat
