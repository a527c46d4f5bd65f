// fincat: finite-category localization toolkit.
//
// Subcommands: check, localize, hom, universal, equal.  Exit codes: 0 ok,
// 1 failed check, 2 parse error, 3 budget exceeded.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fincat/commands.hpp"

namespace {

bool read_file(const std::string& path, std::string& content, std::string& error) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    error = "cannot read '" + path + "'";
    return false;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  content = buffer.str();
  return true;
}

int finish(const fincat::cli::command_result& result) {
  std::fputs(result.out.c_str(), stdout);
  std::fputs(result.err.c_str(), stderr);
  return result.code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-category localization toolkit"};
  app.require_subcommand(1);

  std::string file, target_file, from, to, word1, word2;
  fincat::cli::check_options check_opt;
  fincat::cli::localize_options localize_opt;
  fincat::cli::hom_options hom_opt;
  fincat::cli::universal_options universal_opt;
  fincat::cli::equal_options equal_opt;

  CLI::App* check = app.add_subcommand("check", "validate a category document");
  check->add_option("file", file, "category document")->required();
  check->add_flag("--axioms", check_opt.axioms, "category axioms");
  check->add_flag("--mult-system", check_opt.mult_system, "system closure");
  check->add_flag("--left-fractions", check_opt.left_fractions, "left calculus clauses");
  check->add_flag("--right-fractions", check_opt.right_fractions, "right calculus clauses");
  check->add_flag("--json", check_opt.json, "one JSON object per check");

  CLI::App* localize = app.add_subcommand("localize", "present the localization");
  localize->add_option("file", file, "category document")->required();
  localize->add_option("--method", localize_opt.method, "fractions or zigzag")
      ->check(CLI::IsMember({"fractions", "zigzag"}));
  localize->add_flag("--json", localize_opt.json, "JSON output");

  CLI::App* hom = app.add_subcommand("hom", "localized hom-set classes");
  hom->add_option("file", file, "category document")->required();
  hom->add_option("from", from, "source object")->required();
  hom->add_option("to", to, "target object")->required();
  hom->add_flag("--count", hom_opt.count_only, "print only the class count");
  hom->add_flag("--json", hom_opt.json, "JSON output");

  CLI::App* universal = app.add_subcommand("universal", "universal property against a target");
  universal->add_option("file", file, "category document")->required();
  universal->add_option("target", target_file, "target category document")->required();
  universal->add_option("--max-functors", universal_opt.max_functors,
                        "budget for functor enumeration");
  universal->add_flag("--json", universal_opt.json, "JSON output");

  CLI::App* equal = app.add_subcommand("equal", "decide equality of two zigzag words");
  equal->add_option("file", file, "category document")->required();
  equal->add_option("word1", word1, "first word, e.g. 'x -f-> y <-q- z'")->required();
  equal->add_option("word2", word2, "second word")->required();
  equal->add_option("--max-rewrites", equal_opt.max_rewrites, "rewrite search bound");
  equal->add_flag("--json", equal_opt.json, "JSON output");

  CLI11_PARSE(app, argc, argv);

  std::string text, error;
  if (!read_file(file, text, error)) {
    std::fprintf(stderr, "%s\n", error.c_str());
    return fincat::cli::exit_parse_error;
  }

  if (check->parsed()) return finish(fincat::cli::cmd_check(text, check_opt));
  if (localize->parsed()) return finish(fincat::cli::cmd_localize(text, localize_opt));
  if (hom->parsed()) return finish(fincat::cli::cmd_hom(text, from, to, hom_opt));
  if (universal->parsed()) {
    std::string target_text;
    if (!read_file(target_file, target_text, error)) {
      std::fprintf(stderr, "%s\n", error.c_str());
      return fincat::cli::exit_parse_error;
    }
    return finish(fincat::cli::cmd_universal(text, target_text, universal_opt));
  }
  if (equal->parsed()) return finish(fincat::cli::cmd_equal(text, word1, word2, equal_opt));
  return fincat::cli::exit_parse_error;
}
