#pragma once

// Command layer behind the CLI binary.  Each command parses document text,
// runs the requested computation, and returns deterministic output with the
// exit-code contract: 0 success, 1 failed check, 2 parse error, 3 budget
// exceeded.  Keeping this in the library lets tests drive the full surface
// without spawning processes.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fincat/congruence.hpp"
#include "fincat/core.hpp"
#include "fincat/fractions.hpp"
#include "fincat/functors.hpp"
#include "fincat/text_format.hpp"
#include "fincat/zigzag.hpp"

namespace fincat::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_parse_error = 2;
inline constexpr int exit_budget = 3;

struct command_result {
  int code = exit_ok;
  std::string out;
  std::string err;
};

namespace detail {

inline std::string render_errors(const std::string& label, const std::vector<parse_error>& errors) {
  std::ostringstream out;
  for (const auto& e : errors) {
    if (e.line == 0)
      out << label << ": " << e.message << "\n";
    else
      out << label << ":" << e.line << ":" << e.col << ": " << e.message << "\n";
  }
  return out.str();
}

inline bool parse_or_fail(const std::string& text, const std::string& label, command_result& result,
                          category_document& doc) {
  parse_result parsed = parse_document(text);
  if (!parsed.ok()) {
    result.code = exit_parse_error;
    result.err += render_errors(label, parsed.errors);
    return false;
  }
  doc = std::move(*parsed.doc);
  return true;
}

}  // namespace detail

struct check_options {
  bool axioms = false;
  bool mult_system = false;
  bool left_fractions = false;
  bool right_fractions = false;
  bool json = false;
};

inline command_result cmd_check(const std::string& text, check_options opt) {
  command_result result;
  category_document doc;
  if (!detail::parse_or_fail(text, "input", result, doc)) return result;
  if (!opt.axioms && !opt.mult_system && !opt.left_fractions && !opt.right_fractions)
    opt.axioms = true;

  std::ostringstream out;
  bool all_ok = true;
  auto emit_report = [&](const std::string& which, const validation_report& r) {
    if (opt.json) {
      nlohmann::json j{{"check", which}, {"ok", r.ok()}, {"violations", r.violations}};
      out << j.dump() << "\n";
    } else if (r.ok()) {
      out << which << ": ok\n";
    } else {
      out << which << ": FAIL " << r.violations.front() << "\n";
    }
    all_ok = all_ok && r.ok();
  };
  auto emit_calculus = [&](const std::string& which, const calculus_report& r) {
    if (opt.json) {
      nlohmann::json j{{"check", which}, {"ok", r.ok}};
      if (!r.ok) {
        j["clause"] = r.clause;
        j["witness"] = r.witness;
      }
      out << j.dump() << "\n";
    } else if (r.ok) {
      out << which << ": ok\n";
    } else {
      out << which << ": FAIL [" << r.clause << "] " << r.witness << "\n";
    }
    all_ok = all_ok && r.ok;
  };

  if (opt.axioms) emit_report("axioms", validate_category(doc.category));
  if (opt.mult_system) emit_report("mult-system", validate_mult_system(doc.system()));
  if (opt.left_fractions) emit_calculus("left-fractions", check_left_calculus(doc.system()));
  if (opt.right_fractions) emit_calculus("right-fractions", check_right_calculus(doc.system()));

  result.out = out.str();
  result.code = all_ok ? exit_ok : exit_check_failed;
  return result;
}

struct localize_options {
  std::string method = "fractions";  // or "zigzag"
  bool json = false;
};

inline command_result cmd_localize(const std::string& text, const localize_options& opt) {
  command_result result;
  category_document doc;
  if (!detail::parse_or_fail(text, "input", result, doc)) return result;
  mult_system s = doc.system();
  std::ostringstream out;

  if (opt.method == "fractions") {
    calculus_report calc = check_left_calculus(s);
    if (!calc.ok) {
      result.out = "left-fractions: FAIL [" + calc.clause + "] " + calc.witness + "\n";
      result.code = exit_check_failed;
      return result;
    }
    fraction_category fc = build_fraction_category(s);
    if (opt.json) {
      nlohmann::json classes = nlohmann::json::array();
      for (const auto& [cls, rep] : fc.rep_of)
        classes.push_back({{"id", cls.token},
                           {"src", fc.category.source(cls).token},
                           {"tgt", fc.category.target(cls).token},
                           {"rep", format_fraction(rep)}});
      nlohmann::json objects = nlohmann::json::array();
      for (const auto& x : fc.category.objects) objects.push_back(x.token);
      nlohmann::json j{{"category", doc.name},
                       {"method", "fractions"},
                       {"objects", objects},
                       {"classes", classes}};
      out << j.dump() << "\n";
    } else {
      out << "localization " << doc.name << " by fractions\n";
      out << "objects:";
      for (const auto& x : fc.category.objects) out << " " << x.token;
      out << "\n";
      out << "morphisms: " << fc.category.morphisms.size() << "\n";
      for (const auto& [cls, rep] : fc.rep_of)
        out << cls.token << ": " << fc.category.source(cls).token << " -> "
            << fc.category.target(cls).token << "\n";
    }
  } else if (opt.method == "zigzag") {
    finite_graph g = localization_graph(s);
    auto rels = localization_relations(s);
    if (opt.json) {
      nlohmann::json edges = nlohmann::json::array();
      for (const auto& e : g.edges)
        edges.push_back({{"id", e.id.token}, {"src", e.src.token}, {"tgt", e.tgt.token}});
      nlohmann::json relations = nlohmann::json::array();
      for (const auto& [lhs, rhs] : rels)
        relations.push_back({{"lhs", format_zigzag(s.base, lhs)},
                             {"rhs", format_zigzag(s.base, rhs)}});
      nlohmann::json vertices = nlohmann::json::array();
      for (const auto& x : g.vertices) vertices.push_back(x.token);
      nlohmann::json j{{"category", doc.name},
                       {"method", "zigzag"},
                       {"vertices", vertices},
                       {"edges", edges},
                       {"relations", relations}};
      out << j.dump() << "\n";
    } else {
      out << "localization " << doc.name << " by zigzag\n";
      out << "vertices:";
      for (const auto& x : g.vertices) out << " " << x.token;
      out << "\n";
      out << "edges: " << g.edges.size() << "\n";
      for (const auto& e : g.edges)
        out << e.id.token << ": " << e.src.token << " -> " << e.tgt.token << "\n";
      out << "relations: " << rels.size() << "\n";
      for (const auto& [lhs, rhs] : rels)
        out << format_zigzag(s.base, lhs) << " == " << format_zigzag(s.base, rhs) << "\n";
    }
  } else {
    result.err = "unknown method '" + opt.method + "' (expected fractions or zigzag)\n";
    result.code = exit_check_failed;
    return result;
  }

  result.out = out.str();
  return result;
}

struct hom_options {
  bool count_only = false;
  bool json = false;
};

inline command_result cmd_hom(const std::string& text, const std::string& from,
                              const std::string& to, const hom_options& opt) {
  command_result result;
  category_document doc;
  if (!detail::parse_or_fail(text, "input", result, doc)) return result;
  mult_system s = doc.system();
  obj_id x{from}, y{to};
  for (const auto& o : {x, y})
    if (!doc.category.has_object(o)) {
      result.err = "unknown object '" + o.token + "'\n";
      result.code = exit_check_failed;
      return result;
    }
  calculus_report calc = check_left_calculus(s);
  if (!calc.ok) {
    result.out = "left-fractions: FAIL [" + calc.clause + "] " + calc.witness + "\n";
    result.code = exit_check_failed;
    return result;
  }
  fraction_category fc = build_fraction_category(s);
  std::vector<std::pair<mor_id, fraction>> classes;
  for (const auto& [cls, rep] : fc.rep_of)
    if (fc.category.source(cls) == x && fc.category.target(cls) == y)
      classes.push_back({cls, rep});

  std::ostringstream out;
  if (opt.json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [cls, rep] : classes)
      arr.push_back({{"id", cls.token}, {"rep", format_fraction(rep)}});
    nlohmann::json j{{"category", doc.name},
                     {"from", from},
                     {"to", to},
                     {"count", classes.size()}};
    if (!opt.count_only) j["classes"] = arr;
    out << j.dump() << "\n";
  } else if (opt.count_only) {
    out << classes.size() << "\n";
  } else {
    for (const auto& [cls, rep] : classes) out << cls.token << "\n";
    out << "count: " << classes.size() << "\n";
  }
  result.out = out.str();
  return result;
}

struct universal_options {
  std::uint64_t max_functors = 2'000'000;
  bool json = false;
};

inline command_result cmd_universal(const std::string& base_text, const std::string& target_text,
                                    const universal_options& opt) {
  command_result result;
  category_document base_doc, target_doc;
  if (!detail::parse_or_fail(base_text, "input", result, base_doc)) return result;
  if (!detail::parse_or_fail(target_text, "target", result, target_doc)) return result;
  mult_system s = base_doc.system();

  calculus_report calc = check_left_calculus(s);
  if (!calc.ok) {
    result.out = "left-fractions: FAIL [" + calc.clause + "] " + calc.witness + "\n";
    result.code = exit_check_failed;
    return result;
  }
  fraction_category fc = build_fraction_category(s);
  functor proj = fraction_projection(fc);

  std::vector<functor> from_base, from_loc;
  try {
    from_base = enumerate_functors(s.base, target_doc.category, opt.max_functors);
    from_loc = enumerate_functors(fc.category, target_doc.category, opt.max_functors);
  } catch (const budget_exceeded& e) {
    result.err = std::string(e.what()) + "\n";
    result.code = exit_budget;
    return result;
  }

  std::size_t localizing_count = 0;
  std::size_t factored = 0;
  std::size_t unique = 0;
  for (const auto& f : from_base) {
    if (!localizes(s, f)) continue;
    ++localizing_count;
    functor h = factor_through_fractions(fc, f);
    bool factors = fcompose(h, proj) == f;
    if (factors) ++factored;
    std::size_t matches = 0;
    for (const auto& g : from_loc)
      if (fcompose(g, proj) == f) ++matches;
    if (matches == 1) ++unique;
  }
  bool bijection = factored == localizing_count && unique == localizing_count &&
                   from_loc.size() == localizing_count;

  std::ostringstream out;
  if (opt.json) {
    nlohmann::json j{{"functors", from_base.size()},
                     {"localizing", localizing_count},
                     {"factored", factored},
                     {"unique", unique},
                     {"from_localization", from_loc.size()},
                     {"bijection", bijection}};
    out << j.dump() << "\n";
  } else {
    out << "functors: " << from_base.size() << "\n";
    out << "localizing: " << localizing_count << "\n";
    out << "factor exists: " << factored << "\n";
    out << "factor unique: " << unique << "\n";
    out << "from localization: " << from_loc.size() << "\n";
    out << "bijection: " << (bijection ? "ok" : "FAIL") << "\n";
  }
  result.out = out.str();
  result.code = bijection ? exit_ok : exit_check_failed;
  return result;
}

struct equal_options {
  std::size_t max_rewrites = 32;
  bool json = false;
};

inline command_result cmd_equal(const std::string& text, const std::string& word1,
                                const std::string& word2, const equal_options& opt) {
  command_result result;
  category_document doc;
  if (!detail::parse_or_fail(text, "input", result, doc)) return result;
  mult_system s = doc.system();

  zigzag w[2];
  const std::string* raw[2] = {&word1, &word2};
  for (int i = 0; i < 2; ++i) {
    std::string error;
    auto parsed = parse_zigzag(doc.category, *raw[i], &error);
    if (!parsed) {
      result.err = "word " + std::to_string(i + 1) + ": " + error + "\n";
      result.code = exit_parse_error;
      return result;
    }
    validation_report r = validate_zigzag(s, *parsed);
    if (!r.ok()) {
      result.err = "word " + std::to_string(i + 1) + ": " + r.violations.front() + "\n";
      result.code = exit_parse_error;
      return result;
    }
    w[i] = *parsed;
  }
  if (w[0].src != w[1].src || w[0].tgt != w[1].tgt) {
    result.err = "words have different endpoints\n";
    result.code = exit_check_failed;
    return result;
  }

  equality_verdict verdict = zigzag_equal(s, w[0], w[1], opt.max_rewrites);
  std::string name = verdict == equality_verdict::equal     ? "equal"
                     : verdict == equality_verdict::unequal ? "unequal"
                                                            : "unknown";
  if (opt.json) {
    nlohmann::json j{{"verdict", name}};
    result.out = j.dump() + "\n";
  } else {
    result.out = name + "\n";
  }
  if (verdict == equality_verdict::unequal) result.code = exit_check_failed;
  if (verdict == equality_verdict::unknown) {
    result.err = "inconclusive after " + std::to_string(opt.max_rewrites) + " rewrites\n";
    result.code = exit_budget;
  }
  return result;
}

}  // namespace fincat::cli
