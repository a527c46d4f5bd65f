#pragma once

// Line-oriented text format for category documents:
//
//   # comment
//   category NAME
//   objects: a b c
//   mor f: a -> b
//   id a = ia            (optional; identities default to id_<object>)
//   comp h = g * f       (h equals g after f; identity composites are implied)
//   system S: f g        (optional, at most once)
//
// Parsing accumulates positioned errors (1-based line and column) and only
// yields a document that passes category and system validation.  Category
// level violations without a natural line are reported at line 0.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fincat/core.hpp"
#include "fincat/fractions.hpp"
#include "fincat/zigzag.hpp"

namespace fincat {

struct parse_error {
  std::size_t line = 0;  // 0 means document level
  std::size_t col = 0;
  std::string message;
};

struct category_document {
  std::string name;
  finite_category category;
  std::optional<std::string> system_name;
  std::set<mor_id> system_members;

  mult_system system() const { return mult_system{category, system_members}; }

  friend bool operator==(const category_document&, const category_document&) = default;
};

struct parse_result {
  std::optional<category_document> doc;
  std::vector<parse_error> errors;

  bool ok() const { return errors.empty() && doc.has_value(); }
};

namespace detail {

struct field {
  std::string text;
  std::size_t col;  // 1-based
};

inline std::vector<field> split_fields(const std::string& line) {
  std::vector<field> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

}  // namespace detail

inline parse_result parse_document(const std::string& text) {
  parse_result result;
  auto fail = [&result](std::size_t line, std::size_t col, std::string msg) {
    result.errors.push_back({line, col, std::move(msg)});
  };

  std::optional<std::string> name;
  std::vector<obj_id> objects;
  struct mor_decl { mor_id id; obj_id src, tgt; std::size_t line; };
  std::vector<mor_decl> mors;
  struct id_decl { obj_id x; mor_id id; std::size_t line; std::size_t col; };
  std::vector<id_decl> ids;
  struct comp_decl { mor_id h, g, f; std::size_t line; std::size_t col; };
  std::vector<comp_decl> comps;
  std::optional<std::string> system_name;
  std::vector<std::pair<mor_id, std::pair<std::size_t, std::size_t>>> system_members;

  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    auto fields = detail::split_fields(raw);
    if (fields.empty() || fields[0].text[0] == '#') continue;
    const std::string& head = fields[0].text;

    if (head == "category") {
      if (fields.size() != 2) { fail(lineno, fields[0].col, "expected: category NAME"); continue; }
      if (name) { fail(lineno, fields[0].col, "duplicate category line"); continue; }
      name = fields[1].text;
    } else if (head == "objects:") {
      if (fields.size() < 2) { fail(lineno, fields[0].col, "expected: objects: a b ..."); continue; }
      for (std::size_t i = 1; i < fields.size(); ++i) objects.push_back(obj_id{fields[i].text});
    } else if (head == "mor") {
      if (fields.size() != 5 || fields[1].text.size() < 2 || fields[1].text.back() != ':' ||
          fields[3].text != "->") {
        fail(lineno, fields[0].col, "expected: mor f: a -> b");
        continue;
      }
      std::string tok = fields[1].text.substr(0, fields[1].text.size() - 1);
      mors.push_back({mor_id{tok}, obj_id{fields[2].text}, obj_id{fields[4].text}, lineno});
    } else if (head == "id") {
      if (fields.size() != 4 || fields[2].text != "=") {
        fail(lineno, fields[0].col, "expected: id a = ia");
        continue;
      }
      ids.push_back({obj_id{fields[1].text}, mor_id{fields[3].text}, lineno, fields[1].col});
    } else if (head == "comp") {
      if (fields.size() != 6 || fields[2].text != "=" || fields[4].text != "*") {
        fail(lineno, fields[0].col, "expected: comp h = g * f");
        continue;
      }
      comps.push_back({mor_id{fields[1].text}, mor_id{fields[3].text}, mor_id{fields[5].text},
                       lineno, fields[1].col});
    } else if (head == "system") {
      if (fields.size() < 2 || fields[1].text.size() < 2 || fields[1].text.back() != ':') {
        fail(lineno, fields[0].col, "expected: system S: f g ...");
        continue;
      }
      if (system_name) { fail(lineno, fields[0].col, "duplicate system line"); continue; }
      system_name = fields[1].text.substr(0, fields[1].text.size() - 1);
      for (std::size_t i = 2; i < fields.size(); ++i)
        system_members.push_back({mor_id{fields[i].text}, {lineno, fields[i].col}});
    } else {
      fail(lineno, fields[0].col, "unknown directive '" + head + "'");
    }
  }

  if (!name) fail(0, 0, "missing category line");

  finite_category c;
  for (const auto& x : objects)
    if (!c.objects.insert(x).second) fail(0, 0, "duplicate object '" + x.token + "'");
  for (const auto& d : mors) {
    if (!c.morphisms.insert(d.id).second) {
      fail(d.line, 1, "duplicate morphism '" + d.id.token + "'");
      continue;
    }
    if (c.objects.count(d.src) == 0)
      fail(d.line, 1, "morphism '" + d.id.token + "' references undeclared object '" + d.src.token + "'");
    if (c.objects.count(d.tgt) == 0)
      fail(d.line, 1, "morphism '" + d.id.token + "' references undeclared object '" + d.tgt.token + "'");
    c.src[d.id] = d.src;
    c.tgt[d.id] = d.tgt;
  }
  for (const auto& d : ids) {
    if (c.objects.count(d.x) == 0) {
      fail(d.line, d.col, "identity for undeclared object '" + d.x.token + "'");
      continue;
    }
    if (c.morphisms.count(d.id) == 0) {
      fail(d.line, d.col, "identity references undeclared morphism '" + d.id.token + "'");
      continue;
    }
    if (c.ident.count(d.x)) {
      fail(d.line, d.col, "duplicate identity for object '" + d.x.token + "'");
      continue;
    }
    c.ident[d.x] = d.id;
  }
  for (const auto& x : c.objects) {
    if (c.ident.count(x)) continue;
    mor_id def{"id_" + x.token};
    if (c.morphisms.count(def)) {
      // a declared morphism already carries the default name; adopt it
      c.ident[x] = def;
      continue;
    }
    c.morphisms.insert(def);
    c.src[def] = x;
    c.tgt[def] = x;
    c.ident[x] = def;
  }
  for (const auto& d : comps) {
    bool refs_ok = true;
    for (const mor_id* u : {&d.h, &d.g, &d.f})
      if (c.morphisms.count(*u) == 0) {
        fail(d.line, d.col, "composite references undeclared morphism '" + u->token + "'");
        refs_ok = false;
      }
    if (!refs_ok) continue;
    if (c.src.at(d.g) != c.tgt.at(d.f)) {
      fail(d.line, d.col, "morphisms '" + d.g.token + "' and '" + d.f.token + "' are not composable");
      continue;
    }
    auto key = std::make_pair(d.g, d.f);
    auto it = c.comp.find(key);
    if (it != c.comp.end() && it->second != d.h) {
      fail(d.line, d.col, "conflicting composite for ('" + d.g.token + "', '" + d.f.token + "')");
      continue;
    }
    c.comp[key] = d.h;
  }
  // identity composites are implied
  for (const auto& u : c.morphisms) {
    if (c.src.count(u) == 0 || c.tgt.count(u) == 0) continue;
    auto is_ = c.ident.find(c.src.at(u));
    auto it_ = c.ident.find(c.tgt.at(u));
    if (is_ != c.ident.end() && c.comp.count({u, is_->second}) == 0) c.comp[{u, is_->second}] = u;
    if (it_ != c.ident.end() && c.comp.count({it_->second, u}) == 0) c.comp[{it_->second, u}] = u;
  }

  std::set<mor_id> members;
  for (const auto& [m, pos] : system_members) {
    if (c.morphisms.count(m) == 0) {
      fail(pos.first, pos.second, "system member '" + m.token + "' is not a declared morphism");
      continue;
    }
    members.insert(m);
  }

  if (!result.errors.empty()) return result;

  validation_report cat = validate_category(c);
  for (const auto& v : cat.violations) fail(0, 0, "category validation: " + v);
  if (!result.errors.empty()) return result;

  category_document doc;
  doc.name = *name;
  doc.category = std::move(c);
  doc.system_name = system_name;
  doc.system_members = std::move(members);
  result.doc = std::move(doc);
  return result;
}

/// Canonical serialization: sorted carriers, explicit identities, composite
/// lines only where identity laws do not already force the entry.
/// parse(serialize(doc)) reproduces doc exactly.
inline std::string serialize(const category_document& doc) {
  const finite_category& c = doc.category;
  std::ostringstream out;
  out << "category " << doc.name << "\n";
  out << "objects:";
  for (const auto& x : c.objects) out << " " << x.token;
  out << "\n";
  for (const auto& u : c.morphisms)
    out << "mor " << u.token << ": " << c.source(u).token << " -> " << c.target(u).token << "\n";
  for (const auto& x : c.objects) out << "id " << x.token << " = " << c.identity(x).token << "\n";
  for (const auto& [key, h] : c.comp) {
    const auto& [g, f] = key;
    if (f == c.identity(c.source(f)) || g == c.identity(c.target(f))) continue;
    out << "comp " << h.token << " = " << g.token << " * " << f.token << "\n";
  }
  if (doc.system_name) {
    out << "system " << *doc.system_name << ":";
    for (const auto& m : doc.system_members) out << " " << m.token;
    out << "\n";
  }
  return out.str();
}

inline std::string format_fraction(const fraction& u) {
  return u.forward.token + " / " + u.backward.token;
}

/// "x -f-> y <-q- z": forward steps point right, backward steps point left.
inline std::string format_zigzag(const finite_category& c, const zigzag& w) {
  std::string out = w.src.token;
  obj_id at = w.src;
  for (const auto& st : w.steps) {
    if (st.dir == step_dir::forward) {
      at = c.target(st.arrow);
      out += " -" + st.arrow.token + "-> " + at.token;
    } else {
      at = c.source(st.arrow);
      out += " <-" + st.arrow.token + "- " + at.token;
    }
  }
  return out;
}

/// Inverse of format_zigzag; reports the first offending token.
inline std::optional<zigzag> parse_zigzag(const finite_category& c, const std::string& text,
                                          std::string* error = nullptr) {
  auto fields = detail::split_fields(text);
  auto bad = [&](const std::string& msg) {
    if (error) *error = msg;
    return std::nullopt;
  };
  if (fields.empty()) return bad("empty word");
  zigzag w;
  w.src = obj_id{fields[0].text};
  if (!c.has_object(w.src)) return bad("unknown object '" + fields[0].text + "'");
  w.tgt = w.src;
  std::size_t i = 1;
  while (i < fields.size()) {
    if (i + 1 >= fields.size()) return bad("dangling step '" + fields[i].text + "'");
    const std::string& step = fields[i].text;
    const std::string& next = fields[i + 1].text;
    if (step.size() > 3 && step.front() == '-' && step.compare(step.size() - 2, 2, "->") == 0) {
      w.steps.push_back({step_dir::forward, mor_id{step.substr(1, step.size() - 3)}});
    } else if (step.size() > 3 && step.rfind("<-", 0) == 0 && step.back() == '-') {
      w.steps.push_back({step_dir::backward, mor_id{step.substr(2, step.size() - 3)}});
    } else {
      return bad("malformed step '" + step + "'");
    }
    if (!c.has_object(obj_id{next})) return bad("unknown object '" + next + "'");
    w.tgt = obj_id{next};
    i += 2;
  }
  return w;
}

}  // namespace fincat
