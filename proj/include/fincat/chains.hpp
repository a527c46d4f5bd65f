#pragma once

// Chains over a graph (the arrows of the free category) and their evaluation
// into finite categories.  A chain records its endpoints explicitly so that
// the empty chain at each vertex is a distinct value.

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fincat/core.hpp"

namespace fincat {

/// Composable edge sequence.  segments[0] is traversed first; an empty
/// segment list is the identity chain at src (== tgt).
struct chain {
  obj_id src;
  obj_id tgt;
  std::vector<graph_edge> segments;

  std::size_t length() const { return segments.size(); }

  friend bool operator==(const chain&, const chain&) = default;
  auto operator<=>(const chain&) const = default;
};

inline chain empty_chain(const obj_id& x) { return chain{x, x, {}}; }

inline chain edge_chain(const graph_edge& e) { return chain{e.src, e.tgt, {e}}; }

/// Internal consistency: endpoints of consecutive segments agree and the
/// chain's endpoints match the segment list.
inline validation_report validate_chain(const finite_graph& g, const chain& u) {
  validation_report report;
  if (g.vertices.count(u.src) == 0) report.add("chain source '" + u.src.token + "' is not a vertex");
  if (g.vertices.count(u.tgt) == 0) report.add("chain target '" + u.tgt.token + "' is not a vertex");
  obj_id at = u.src;
  for (const auto& e : u.segments) {
    bool known = false;
    for (const auto& ge : g.edges)
      if (ge == e) { known = true; break; }
    if (!known) report.add("segment '" + e.id.token + "' is not an edge of the graph");
    if (e.src != at)
      report.add("segment '" + e.id.token + "' starts at '" + e.src.token + "', expected '" +
                 at.token + "'");
    at = e.tgt;
  }
  if (at != u.tgt) report.add("chain ends at '" + at.token + "', declared target '" + u.tgt.token + "'");
  return report;
}

/// u after v: traverse v, then u.  Requires src(u) == tgt(v).
inline chain compose_chains(const chain& u, const chain& v) {
  if (u.src != v.tgt)
    throw std::invalid_argument("compose_chains: endpoint mismatch at '" + u.src.token + "' vs '" +
                                v.tgt.token + "'");
  chain w{v.src, u.tgt, v.segments};
  w.segments.insert(w.segments.end(), u.segments.begin(), u.segments.end());
  return w;
}

/// Append one edge after the chain.
inline chain chain_append(const graph_edge& e, const chain& v) {
  return compose_chains(edge_chain(e), v);
}

/// Vertex visited after i segments.
inline const obj_id& chain_object_at(std::size_t i, const chain& u) {
  if (i > u.length()) throw std::invalid_argument("chain_object_at: index out of range");
  if (i == u.length()) return u.tgt;
  return u.segments[i].src;
}

/// First i segments, retargeted to the vertex reached after them.
inline chain chain_prefix(std::size_t i, const chain& u) {
  if (i > u.length()) throw std::invalid_argument("chain_prefix: index out of range");
  chain w{u.src, chain_object_at(i, u), {u.segments.begin(), u.segments.begin() + i}};
  return w;
}

/// Vertex and edge images of a graph morphism into a category's underlying
/// data; used to relabel chains and to induce functors from free categories.
struct graph_morphism_map {
  std::map<obj_id, obj_id> on_vertices;
  std::map<mor_id, mor_id> on_edges;
};

/// Relabel a chain through a graph morphism, given the target endpoints for
/// each relabeled segment.  endpoint_of(e) must give the (src, tgt) the image
/// edge has in the target graph/category.
inline chain relabel_chain(const graph_morphism_map& m, const finite_category& c, const chain& u) {
  chain w;
  auto vmap = [&](const obj_id& x) -> obj_id {
    auto it = m.on_vertices.find(x);
    if (it == m.on_vertices.end())
      throw std::invalid_argument("relabel_chain: no image for vertex '" + x.token + "'");
    return it->second;
  };
  w.src = vmap(u.src);
  w.tgt = vmap(u.tgt);
  for (const auto& e : u.segments) {
    auto it = m.on_edges.find(e.id);
    if (it == m.on_edges.end())
      throw std::invalid_argument("relabel_chain: no image for edge '" + e.id.token + "'");
    const mor_id& im = it->second;
    w.segments.push_back(graph_edge{im, c.source(im), c.target(im)});
  }
  return w;
}

/// Fold a chain into a composite morphism of c.  The chain's vertices must be
/// objects of c; eval relabels segment ids to morphisms of c with matching
/// endpoints.  Result: eval(s_n) ∘ ... ∘ eval(s_1) ∘ ident, starting from the
/// identity at the chain's source.
inline mor_id evaluate_chain(const finite_category& c, const chain& u,
                             const std::map<mor_id, mor_id>& eval) {
  if (!c.has_object(u.src))
    throw std::invalid_argument("evaluate_chain: source '" + u.src.token + "' is not an object");
  mor_id acc = c.identity(u.src);
  for (const auto& e : u.segments) {
    auto it = eval.find(e.id);
    if (it == eval.end())
      throw std::invalid_argument("evaluate_chain: no value for segment '" + e.id.token + "'");
    const mor_id& m = it->second;
    if (!c.has_morphism(m))
      throw std::invalid_argument("evaluate_chain: value '" + m.token + "' is not a morphism");
    if (c.source(m) != c.target(acc))
      throw std::invalid_argument("evaluate_chain: segment '" + e.id.token +
                                  "' evaluates off the running composite");
    acc = c.composite(m, acc);
  }
  return acc;
}

/// Identity relabeling: the chain's segments are already morphisms of c.
inline mor_id evaluate_chain(const finite_category& c, const chain& u) {
  std::map<mor_id, mor_id> eval;
  for (const auto& e : u.segments) eval.emplace(e.id, e.id);
  return evaluate_chain(c, u, eval);
}

/// Checks that m sends each edge of g to a morphism of c whose endpoints are
/// the images of the edge's endpoints.
inline validation_report validate_graph_morphism(const finite_graph& g, const finite_category& c,
                                                 const graph_morphism_map& m) {
  validation_report report;
  for (const auto& x : g.vertices) {
    auto it = m.on_vertices.find(x);
    if (it == m.on_vertices.end())
      report.add("vertex '" + x.token + "' has no image");
    else if (!c.has_object(it->second))
      report.add("vertex '" + x.token + "' maps to unknown object '" + it->second.token + "'");
  }
  if (!report.ok()) return report;
  for (const auto& e : g.edges) {
    auto it = m.on_edges.find(e.id);
    if (it == m.on_edges.end()) {
      report.add("edge '" + e.id.token + "' has no image");
      continue;
    }
    const mor_id& im = it->second;
    if (!c.has_morphism(im)) {
      report.add("edge '" + e.id.token + "' maps to unknown morphism '" + im.token + "'");
      continue;
    }
    if (c.source(im) != m.on_vertices.at(e.src) || c.target(im) != m.on_vertices.at(e.tgt))
      report.add("edge '" + e.id.token + "' image '" + im.token + "' does not commute with endpoints");
  }
  return report;
}

/// Action of the functor the graph morphism m freely generates: relabel the
/// chain and fold it in c.
inline mor_id apply_free_functor(const finite_graph& g, const finite_category& c,
                                 const graph_morphism_map& m, const chain& u) {
  validation_report r = validate_graph_morphism(g, c, m);
  if (!r.ok()) throw std::invalid_argument("apply_free_functor: " + r.violations.front());
  chain image = relabel_chain(m, c, u);
  return evaluate_chain(c, image);
}

/// All chains from x to y with at most max_len segments, ordered by length
/// then lexicographically by segment ids.
inline std::vector<chain> enumerate_chains(const finite_graph& g, const obj_id& x, const obj_id& y,
                                           std::size_t max_len) {
  if (g.vertices.count(x) == 0 || g.vertices.count(y) == 0)
    throw std::invalid_argument("enumerate_chains: endpoint is not a vertex");
  std::map<obj_id, std::vector<graph_edge>> out;
  for (const auto& e : g.edges) out[e.src].push_back(e);
  for (auto& [v, es] : out)
    std::sort(es.begin(), es.end());

  std::vector<chain> found;
  std::vector<chain> frontier{empty_chain(x)};
  for (std::size_t len = 0; len <= max_len; ++len) {
    for (const auto& u : frontier)
      if (u.tgt == y) found.push_back(u);
    if (len == max_len) break;
    std::vector<chain> next;
    for (const auto& u : frontier) {
      auto it = out.find(u.tgt);
      if (it == out.end()) continue;
      for (const auto& e : it->second) next.push_back(chain_append(e, u));
    }
    frontier = std::move(next);
  }
  return found;
}

/// True when the graph has no directed cycle through an edge, so chain
/// enumeration at sufficient length is exhaustive.
inline bool is_acyclic(const finite_graph& g) {
  std::map<obj_id, std::vector<obj_id>> out;
  for (const auto& e : g.edges) out[e.src].push_back(e.tgt);
  std::map<obj_id, int> state;  // 0 fresh, 1 on stack, 2 done
  std::vector<std::pair<obj_id, std::size_t>> stack;
  for (const auto& root : g.vertices) {
    if (state[root] != 0) continue;
    stack.push_back({root, 0});
    state[root] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      auto& succ = out[v];
      if (i == succ.size()) {
        state[v] = 2;
        stack.pop_back();
        continue;
      }
      const obj_id& w = succ[i++];
      if (state[w] == 1) return false;
      if (state[w] == 0) {
        state[w] = 1;
        stack.push_back({w, 0});
      }
    }
  }
  return true;
}

}  // namespace fincat
