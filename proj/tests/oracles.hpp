#pragma once

// Independent reference implementations used to cross-check the library:
// deliberately brute-force and structured differently from the code under
// test, so agreement is evidence rather than tautology.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "fincat/chains.hpp"
#include "fincat/core.hpp"
#include "fincat/fractions.hpp"

namespace oracles {

using namespace fincat;

/// All set partitions of {0, ..., n-1} as restricted growth strings.
inline std::vector<std::vector<std::size_t>> all_set_partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  if (n == 0) {
    out.push_back({});
    return out;
  }
  std::vector<std::size_t> rgs(n, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t max_used) -> void {
    if (i == n) {
      out.push_back(rgs);
      return;
    }
    for (std::size_t b = 0; b <= max_used + 1; ++b) {
      rgs[i] = b;
      self(self, i + 1, std::max(max_used, b));
    }
  };
  rec(rec, 1, 0);
  return out;
}

struct congruence_intersection {
  // parallel pairs related in every congruence that contains the generators
  std::set<std::pair<mor_id, mor_id>> related;
  std::size_t qualifying = 0;  // number of congruences containing the generators
};

/// Enumerates every endpoint-compatible partition of the morphism set (one
/// set partition per hom-group), keeps those that are congruences containing
/// the generator pairs, and intersects them.  The least congruence must equal
/// this intersection.
inline congruence_intersection intersect_congruences(
    const finite_category& c, const std::set<std::pair<mor_id, mor_id>>& gens) {
  std::map<std::pair<obj_id, obj_id>, std::vector<mor_id>> groups;
  for (const auto& u : c.morphisms) groups[{c.source(u), c.target(u)}].push_back(u);
  std::vector<std::vector<mor_id>> members;
  std::vector<std::vector<std::vector<std::size_t>>> partitions;
  for (auto& [key, mors] : groups) {
    members.push_back(mors);
    partitions.push_back(all_set_partitions(mors.size()));
  }

  std::vector<std::pair<mor_id, mor_id>> parallel;
  for (const auto& [key, mors] : groups)
    for (const auto& u : mors)
      for (const auto& v : mors) parallel.push_back({u, v});

  congruence_intersection out;
  bool first = true;
  std::vector<std::size_t> choice(members.size(), 0);
  while (true) {
    std::map<mor_id, std::pair<std::size_t, std::size_t>> block;
    for (std::size_t gi = 0; gi < members.size(); ++gi)
      for (std::size_t i = 0; i < members[gi].size(); ++i)
        block[members[gi][i]] = {gi, partitions[gi][choice[gi]][i]};
    auto rel = [&block](const mor_id& u, const mor_id& v) { return block.at(u) == block.at(v); };

    bool ok = true;
    for (const auto& [u, v] : gens)
      if (!rel(u, v)) {
        ok = false;
        break;
      }
    if (ok) {
      // single-sided closure under composition implies the two-sided rule
      for (const auto& [u, v] : parallel) {
        if (!rel(u, v)) continue;
        for (const auto& w : c.morphisms) {
          if (c.source(u) == c.target(w) && !rel(c.composite(u, w), c.composite(v, w))) ok = false;
          if (c.source(w) == c.target(u) && !rel(c.composite(w, u), c.composite(w, v))) ok = false;
          if (!ok) break;
        }
        if (!ok) break;
      }
    }
    if (ok) {
      ++out.qualifying;
      std::set<std::pair<mor_id, mor_id>> cur;
      for (const auto& [u, v] : parallel)
        if (rel(u, v)) cur.insert({u, v});
      if (first) {
        out.related = std::move(cur);
        first = false;
      } else {
        std::set<std::pair<mor_id, mor_id>> kept;
        for (const auto& p : out.related)
          if (cur.count(p)) kept.insert(p);
        out.related = std::move(kept);
      }
    }
    std::size_t k = 0;
    while (k < choice.size() && ++choice[k] == partitions[k].size()) choice[k++] = 0;
    if (k == choice.size()) break;
  }
  return out;
}

/// Rough size of the partition search space, to keep fuzzed inputs feasible.
inline std::size_t partition_space_size(const finite_category& c, std::size_t cap) {
  std::map<std::pair<obj_id, obj_id>, std::size_t> sizes;
  for (const auto& u : c.morphisms) ++sizes[{c.source(u), c.target(u)}];
  static const std::size_t bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
  std::size_t total = 1;
  for (const auto& [key, n] : sizes) {
    if (n >= sizeof(bell) / sizeof(bell[0])) return cap;
    total *= bell[n];
    if (total >= cap) return cap;
  }
  return total;
}

/// One-step extension through a plain morphism, recomputed from scratch.
inline bool extends_onto(const mult_system& s, const fraction& u, const fraction& v) {
  const finite_category& c = s.base;
  for (const auto& p : c.morphisms) {
    if (c.source(p) != c.target(u.forward)) continue;
    if (c.composite(p, u.forward) == v.forward && c.composite(p, u.backward) == v.backward)
      return true;
  }
  return false;
}

/// Reference equivalence on fractions: the transitive closure of "shares a
/// one-step common extension".  Any gap between this and the library's
/// single-step test would expose pairs that only chaining relates.
inline std::map<fraction, std::size_t> equiv_classes_by_closure(const mult_system& s) {
  std::vector<fraction> fractions = enumerate_fractions(s);
  std::vector<std::size_t> parent(fractions.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };

  const finite_category& c = s.base;
  for (std::size_t i = 0; i < fractions.size(); ++i)
    for (std::size_t j = i + 1; j < fractions.size(); ++j) {
      const fraction& u = fractions[i];
      const fraction& v = fractions[j];
      if (c.source(u.forward) != c.source(v.forward)) continue;
      if (c.source(u.backward) != c.source(v.backward)) continue;
      bool shares = false;
      for (const auto& w : fractions)
        if (extends_onto(s, u, w) && extends_onto(s, v, w)) {
          shares = true;
          break;
        }
      if (shares) parent[find(i)] = find(j);
    }

  std::map<fraction, std::size_t> cls;
  for (std::size_t i = 0; i < fractions.size(); ++i) cls[fractions[i]] = find(i);
  return cls;
}

/// Right-fold chain evaluation, the mirror image of the library's left fold.
inline mor_id evaluate_chain_right(const finite_category& c, const chain& u,
                                   const std::map<mor_id, mor_id>& eval) {
  mor_id acc = c.identity(u.tgt);
  for (auto it = u.segments.rbegin(); it != u.segments.rend(); ++it)
    acc = c.composite(acc, eval.at(it->id));
  return acc;
}

}  // namespace oracles
