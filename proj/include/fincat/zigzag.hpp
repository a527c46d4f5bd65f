#pragma once

// Localization by generators and relations: zigzag words over the doubled
// graph (a forward edge per morphism, a backward edge per member), the
// relation generators presenting the localization, word evaluation through
// functors that invert the system, and a word equality decision.

#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fincat/chains.hpp"
#include "fincat/core.hpp"
#include "fincat/fractions.hpp"
#include "fincat/functors.hpp"

namespace fincat {

enum class step_dir { forward, backward };

/// One traversal step: a morphism walked with or against its direction.
/// Backward steps are only meaningful for members of the system.
struct zig_step {
  step_dir dir;
  mor_id arrow;
  auto operator<=>(const zig_step&) const = default;
};

/// Word in the localization's generators, with explicit endpoints so that
/// the empty word at each object is a distinct value.  steps[0] is first.
struct zigzag {
  obj_id src;
  obj_id tgt;
  std::vector<zig_step> steps;
  auto operator<=>(const zigzag&) const = default;
};

inline zigzag empty_zigzag(const obj_id& x) { return zigzag{x, x, {}}; }

/// The image of a single morphism: one forward step.
inline zigzag embed_zigzag(const finite_category& c, const mor_id& u) {
  return zigzag{c.source(u), c.target(u), {{step_dir::forward, u}}};
}

inline validation_report validate_zigzag(const mult_system& s, const zigzag& w) {
  const finite_category& c = s.base;
  validation_report report;
  if (!c.has_object(w.src)) report.add("source '" + w.src.token + "' is not an object");
  if (!c.has_object(w.tgt)) report.add("target '" + w.tgt.token + "' is not an object");
  if (!report.ok()) return report;
  obj_id at = w.src;
  for (const auto& st : w.steps) {
    if (!c.has_morphism(st.arrow)) {
      report.add("step arrow '" + st.arrow.token + "' is not a morphism");
      return report;
    }
    if (st.dir == step_dir::forward) {
      if (c.source(st.arrow) != at) {
        report.add("forward step '" + st.arrow.token + "' does not start at '" + at.token + "'");
        return report;
      }
      at = c.target(st.arrow);
    } else {
      if (s.members.count(st.arrow) == 0) {
        report.add("backward step '" + st.arrow.token + "' is not a member");
        return report;
      }
      if (c.target(st.arrow) != at) {
        report.add("backward step '" + st.arrow.token + "' does not end at '" + at.token + "'");
        return report;
      }
      at = c.source(st.arrow);
    }
  }
  if (at != w.tgt) report.add("word ends at '" + at.token + "', declared target '" + w.tgt.token + "'");
  return report;
}

/// Objects visited along the word, length() + 1 entries.
inline std::vector<obj_id> zigzag_trace(const finite_category& c, const zigzag& w) {
  std::vector<obj_id> trace{w.src};
  for (const auto& st : w.steps)
    trace.push_back(st.dir == step_dir::forward ? c.target(st.arrow) : c.source(st.arrow));
  return trace;
}

/// The doubled graph generating the localization: one forward edge per
/// morphism, one backward edge per member.
inline finite_graph localization_graph(const mult_system& s) {
  const finite_category& c = s.base;
  finite_graph g;
  g.vertices = c.objects;
  for (const auto& u : c.morphisms)
    g.edges.push_back(graph_edge{mor_id{"F:" + u.token}, c.source(u), c.target(u)});
  for (const auto& q : s.members)
    g.edges.push_back(graph_edge{mor_id{"B:" + q.token}, c.target(q), c.source(q)});
  return g;
}

inline zigzag zigzag_of_chain(const chain& u) {
  zigzag w{u.src, u.tgt, {}};
  for (const auto& e : u.segments) {
    const std::string& token = e.id.token;
    if (token.rfind("F:", 0) == 0)
      w.steps.push_back({step_dir::forward, mor_id{token.substr(2)}});
    else if (token.rfind("B:", 0) == 0)
      w.steps.push_back({step_dir::backward, mor_id{token.substr(2)}});
    else
      throw std::invalid_argument("zigzag_of_chain: segment '" + token +
                                  "' is not a localization edge");
  }
  return w;
}

/// The relation generators presenting the localization over the doubled
/// graph: identity collapse per object, the two cancellation relations per
/// member, and one functoriality relation per composition entry.
inline std::vector<std::pair<zigzag, zigzag>> localization_relations(const mult_system& s) {
  const finite_category& c = s.base;
  std::vector<std::pair<zigzag, zigzag>> rels;
  for (const auto& x : c.objects)
    rels.push_back({zigzag{x, x, {{step_dir::forward, c.identity(x)}}}, empty_zigzag(x)});
  for (const auto& q : s.members) {
    const obj_id& a = c.source(q);
    const obj_id& b = c.target(q);
    rels.push_back(
        {zigzag{b, b, {{step_dir::backward, q}, {step_dir::forward, q}}}, empty_zigzag(b)});
    rels.push_back(
        {zigzag{a, a, {{step_dir::forward, q}, {step_dir::backward, q}}}, empty_zigzag(a)});
  }
  for (const auto& [key, w] : c.comp) {
    const auto& [u, v] = key;
    rels.push_back({zigzag{c.source(v), c.target(u),
                           {{step_dir::forward, v}, {step_dir::forward, u}}},
                    embed_zigzag(c, w)});
  }
  return rels;
}

/// Fold a word through a functor that inverts the members it walks
/// backward.  Forward steps compose the image, backward steps compose the
/// image's inverse; errors name any member whose image fails to invert.
inline mor_id evaluate_zigzag(const functor& f, const mult_system& s, const zigzag& w) {
  if (!(f.dom == s.base))
    throw std::invalid_argument("evaluate_zigzag: functor domain is not the base");
  validation_report wf = validate_zigzag(s, w);
  if (!wf.ok()) throw std::invalid_argument("evaluate_zigzag: " + wf.violations.front());
  mor_id acc = f.cod.identity(f.object_image(w.src));
  for (const auto& st : w.steps) {
    const mor_id& im = f.morphism_image(st.arrow);
    if (st.dir == step_dir::forward) {
      acc = f.cod.composite(im, acc);
    } else {
      auto inv = inverse_of(f.cod, im);
      if (!inv)
        throw std::invalid_argument("evaluate_zigzag: member '" + st.arrow.token +
                                    "' has non-invertible image '" + im.token + "'");
      acc = f.cod.composite(*inv, acc);
    }
  }
  return acc;
}

enum class equality_verdict { equal, unequal, unknown };

namespace detail {

/// All words one rewrite away from w, replacing occurrences of `from` by
/// `to` wherever steps and the entry object match.
inline void rewrite_neighbors(const finite_category& c, const zigzag& w, const zigzag& from,
                              const zigzag& to, std::vector<zigzag>& out) {
  std::vector<obj_id> trace = zigzag_trace(c, w);
  std::size_t n = from.steps.size();
  if (n > w.steps.size()) return;
  for (std::size_t i = 0; i + n <= w.steps.size(); ++i) {
    if (trace[i] != from.src) continue;
    bool match = true;
    for (std::size_t k = 0; k < n; ++k)
      if (!(w.steps[i + k] == from.steps[k])) { match = false; break; }
    if (!match) continue;
    zigzag next{w.src, w.tgt, {}};
    next.steps.assign(w.steps.begin(), w.steps.begin() + i);
    next.steps.insert(next.steps.end(), to.steps.begin(), to.steps.end());
    next.steps.insert(next.steps.end(), w.steps.begin() + i + n, w.steps.end());
    out.push_back(std::move(next));
  }
}

}  // namespace detail

/// Breadth-first search from w1 applying the relation generators as
/// bidirectional rewrites, at most `bound` applications deep.  Returns equal
/// when w2 is reached; otherwise unknown, never unequal: exhausting the
/// bounded frontier proves nothing about longer derivations.
inline equality_verdict zigzag_rewrite_search(const mult_system& s, const zigzag& w1,
                                              const zigzag& w2, std::size_t bound) {
  const finite_category& c = s.base;
  for (const zigzag* w : {&w1, &w2}) {
    validation_report r = validate_zigzag(s, *w);
    if (!r.ok()) throw std::invalid_argument("zigzag_rewrite_search: " + r.violations.front());
  }
  if (w1.src != w2.src || w1.tgt != w2.tgt)
    throw std::invalid_argument("zigzag_rewrite_search: words have different endpoints");
  if (w1 == w2) return equality_verdict::equal;

  std::vector<std::pair<zigzag, zigzag>> rels = localization_relations(s);
  std::set<zigzag> visited{w1};
  std::deque<std::pair<zigzag, std::size_t>> queue{{w1, 0}};
  std::vector<zigzag> neighbors;
  while (!queue.empty()) {
    auto [w, depth] = queue.front();
    queue.pop_front();
    if (depth == bound) continue;
    neighbors.clear();
    for (const auto& [lhs, rhs] : rels) {
      detail::rewrite_neighbors(c, w, lhs, rhs, neighbors);
      detail::rewrite_neighbors(c, w, rhs, lhs, neighbors);
    }
    for (auto& next : neighbors) {
      if (next == w2) return equality_verdict::equal;
      if (visited.insert(next).second) queue.push_back({next, depth + 1});
    }
  }
  return equality_verdict::unknown;
}

/// Word equality against a prebuilt fraction localization: exact, since the
/// fraction category is a faithful carrier of the localization.
inline equality_verdict zigzag_equal(const fraction_category& fc, const zigzag& w1,
                                     const zigzag& w2) {
  if (w1.src != w2.src || w1.tgt != w2.tgt)
    throw std::invalid_argument("zigzag_equal: words have different endpoints");
  functor proj = fraction_projection(fc);
  return evaluate_zigzag(proj, fc.system, w1) == evaluate_zigzag(proj, fc.system, w2)
             ? equality_verdict::equal
             : equality_verdict::unequal;
}

/// Word equality in the localization.  When the left calculus holds the
/// verdict is exact through the fraction route; otherwise a bounded rewrite
/// search runs and inequality is never claimed.
inline equality_verdict zigzag_equal(const mult_system& s, const zigzag& w1, const zigzag& w2,
                                     std::size_t bound) {
  for (const zigzag* w : {&w1, &w2}) {
    validation_report r = validate_zigzag(s, *w);
    if (!r.ok()) throw std::invalid_argument("zigzag_equal: " + r.violations.front());
  }
  if (w1.src != w2.src || w1.tgt != w2.tgt)
    throw std::invalid_argument("zigzag_equal: words have different endpoints");
  if (check_left_calculus(s).ok) return zigzag_equal(build_fraction_category(s), w1, w2);
  return zigzag_rewrite_search(s, w1, w2, bound);
}

}  // namespace fincat
