#include <catch2/catch_amalgamated.hpp>

#include "fincat/core.hpp"
#include "fincat/fixtures.hpp"
#include "fincat/text_format.hpp"

#include <fstream>
#include <sstream>
#include <string>

using namespace fincat;

namespace {

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string{FINCAT_FIXTURE_DIR} + "/" + name);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

category_document parse_fixture(const std::string& name) {
  parse_result r = parse_document(read_fixture(name));
  std::string diag;
  for (const auto& e : r.errors) diag += std::to_string(e.line) + ": " + e.message + " ";
  CAPTURE(name, diag);
  REQUIRE(r.ok());
  return *r.doc;
}

const parse_error& single_error(const parse_result& r) {
  REQUIRE_FALSE(r.ok());
  REQUIRE(r.errors.size() == 1);
  return r.errors.front();
}

}  // namespace

TEST_CASE("fixture documents parse to the in-code fixtures", "[text_format]") {
  category_document cx = parse_fixture("cx.cat");
  mult_system s = counterexample_system();
  CHECK(cx.name == "cx");
  CHECK(cx.category == s.base);
  CHECK(cx.system_name == "S");
  CHECK(cx.system_members == s.members);
  CHECK(cx.system().members == s.members);

  CHECK(parse_fixture("walking_arrow.cat").category == walking_arrow());
  CHECK(parse_fixture("walking_iso.cat").category == walking_isomorphism());
  CHECK(parse_fixture("terminal.cat").category == terminal_category());
  CHECK(parse_fixture("coarse2.cat").category == coarse_category({obj_id{"0"}, obj_id{"1"}}));
  CHECK(parse_fixture("coarse3.cat").category ==
        coarse_category({obj_id{"0"}, obj_id{"1"}, obj_id{"2"}}));

  category_document pp = parse_fixture("parallel_pair.cat");
  CHECK_FALSE(pp.system_name.has_value());
  CHECK(pp.system_members.empty());

  category_document poset = parse_fixture("poset3.cat");
  CHECK(poset.category.morphisms.size() == 6);  // three declared, three minted
  CHECK(poset.category.identity(obj_id{"p0"}) == mor_id{"id_p0"});
  CHECK(poset.system_members ==
        std::set<mor_id>{mor_id{"id_p0"}, mor_id{"id_p1"}, mor_id{"id_p2"}});
}

TEST_CASE("identities default, adopt declared names, and honor id lines", "[text_format]") {
  parse_result minted = parse_document("category t\nobjects: a\n");
  REQUIRE(minted.ok());
  CHECK(minted.doc->category.morphisms == std::set<mor_id>{mor_id{"id_a"}});
  CHECK(minted.doc->category.identity(obj_id{"a"}) == mor_id{"id_a"});

  parse_result adopted = parse_document("category t\nobjects: a\nmor id_a: a -> a\n");
  REQUIRE(adopted.ok());
  CHECK(adopted.doc->category.morphisms.size() == 1);
  CHECK(adopted.doc->category.identity(obj_id{"a"}) == mor_id{"id_a"});

  parse_result named = parse_document("category t\nobjects: a\nmor ia: a -> a\nid a = ia\n");
  REQUIRE(named.ok());
  CHECK(named.doc->category.morphisms == std::set<mor_id>{mor_id{"ia"}});
  CHECK(named.doc->category.identity(obj_id{"a"}) == mor_id{"ia"});

  // adopting a declared id_<obj> with wrong endpoints surfaces in validation
  parse_result crooked = parse_document("category t\nobjects: a b\nmor id_a: a -> b\n");
  const parse_error& e = single_error(crooked);
  CHECK(e.line == 0);
  CHECK(e.message == "category validation: identity 'id_a' of 'a' has target 'b'");
}

TEST_CASE("identity composites are implied", "[text_format]") {
  parse_result r = parse_document(
      "category t\nobjects: a b\nmor f: a -> b\nmor g: a -> b\n");
  REQUIRE(r.ok());
  const finite_category& c = r.doc->category;
  CHECK(c.composite(mor_id{"f"}, mor_id{"id_a"}) == mor_id{"f"});
  CHECK(c.composite(mor_id{"id_b"}, mor_id{"g"}) == mor_id{"g"});
  CHECK(validate_category(c).ok());
}

TEST_CASE("parse errors carry position and message", "[text_format]") {
  struct sample {
    std::string text;
    std::size_t line;
    std::size_t col;
    std::string message;
  };
  const std::vector<sample> samples = {
      {"category t\nfoo bar\n", 2, 1, "unknown directive 'foo'"},
      {"category t\nobjects: a\nmor f a -> a\n", 3, 1, "expected: mor f: a -> b"},
      {"category t\ncategory u\n", 2, 1, "duplicate category line"},
      {"objects: a\n", 0, 0, "missing category line"},
      {"category t\nobjects: a a\n", 0, 0, "duplicate object 'a'"},
      {"category t\nobjects: a\nmor f: a -> a\nmor f: a -> a\n", 4, 1,
       "duplicate morphism 'f'"},
      {"category t\nobjects: a\nmor f: a -> z\n", 3, 1,
       "morphism 'f' references undeclared object 'z'"},
      {"category t\nobjects: a\nid z = id_a\n", 3, 4, "identity for undeclared object 'z'"},
      {"category t\nobjects: a\nid a = zz\n", 3, 4,
       "identity references undeclared morphism 'zz'"},
      {"category t\nobjects: a\nmor ia: a -> a\nid a = ia\nid a = ia\n", 5, 4,
       "duplicate identity for object 'a'"},
      {"category t\nobjects: a\ncomp h = id_a * zz\n", 3, 6,
       "composite references undeclared morphism 'h'"},
      {"category t\nobjects: a b\nmor f: a -> b\nmor g: a -> b\ncomp f = g * f\n", 5, 6,
       "morphisms 'g' and 'f' are not composable"},
      {"category t\nobjects: x y\nsystem S: q\nsystem T: q\n", 4, 1, "duplicate system line"},
      {"category t\nobjects: x\nsystem S: zz\n", 3, 11,
       "system member 'zz' is not a declared morphism"},
  };
  for (const auto& s : samples) {
    CAPTURE(s.text);
    parse_result r = parse_document(s.text);
    REQUIRE_FALSE(r.ok());
    const parse_error& e = r.errors.front();
    CHECK(e.line == s.line);
    CHECK(e.col == s.col);
    CHECK(e.message == s.message);
  }
}

TEST_CASE("conflicting and missing composites are rejected", "[text_format]") {
  std::string base =
      "category t\nobjects: a b c\nmor f: a -> b\nmor g: b -> c\nmor h: a -> c\nmor k: a -> c\n";
  parse_result conflict =
      parse_document(base + "comp h = g * f\ncomp k = g * f\n");
  const parse_error& e = single_error(conflict);
  CHECK(e.line == 8);
  CHECK(e.message == "conflicting composite for ('g', 'f')");

  parse_result missing = parse_document(
      "category t\nobjects: a b c\nmor f: a -> b\nmor g: b -> c\n");
  const parse_error& m = single_error(missing);
  CHECK(m.line == 0);
  CHECK(m.message == "category validation: missing composite for composable pair ('g', 'f')");
}

TEST_CASE("serialization round-trips and is canonical", "[text_format]") {
  for (const std::string name :
       {"cx.cat", "walking_arrow.cat", "walking_iso.cat", "terminal.cat", "poset3.cat",
        "coarse2.cat", "coarse3.cat", "parallel_pair.cat"}) {
    category_document doc = parse_fixture(name);
    std::string canon = serialize(doc);
    parse_result again = parse_document(canon);
    CAPTURE(name);
    REQUIRE(again.ok());
    CHECK(*again.doc == doc);
    CHECK(serialize(*again.doc) == canon);
  }

  category_document term = parse_fixture("terminal.cat");
  CHECK(serialize(term) ==
        "category terminal\n"
        "objects: x\n"
        "mor id_x: x -> x\n"
        "id x = id_x\n"
        "system S: id_x\n");
}

TEST_CASE("fractions and zigzag words format symmetrically", "[text_format]") {
  finite_category c = counterexample_system().base;

  CHECK(format_fraction(fraction{mor_id{"na11"}, mor_id{"na01"}}) == "na11 / na01");

  zigzag w{obj_id{"0"}, obj_id{"0"},
           {{step_dir::forward, mor_id{"na01"}}, {step_dir::backward, mor_id{"na01"}}}};
  CHECK(format_zigzag(c, w) == "0 -na01-> 1 <-na01- 0");
  CHECK(format_zigzag(c, empty_zigzag(obj_id{"2"})) == "2");

  for (const auto& word : {w, empty_zigzag(obj_id{"2"}),
                           zigzag{obj_id{"0"}, obj_id{"2"},
                                  {{step_dir::forward, mor_id{"na02"}},
                                   {step_dir::backward, mor_id{"na22"}}}}}) {
    auto back = parse_zigzag(c, format_zigzag(c, word));
    REQUIRE(back.has_value());
    CHECK(*back == word);
  }
}

TEST_CASE("zigzag parsing reports the offending token", "[text_format]") {
  finite_category c = counterexample_system().base;
  auto expect_error = [&](const std::string& text, const std::string& message) {
    std::string error;
    CHECK_FALSE(parse_zigzag(c, text, &error).has_value());
    CHECK(error == message);
  };
  expect_error("", "empty word");
  expect_error("zz", "unknown object 'zz'");
  expect_error("0 -na01->", "dangling step '-na01->'");
  expect_error("0 na01 1", "malformed step 'na01'");
  expect_error("0 -na01-> zz", "unknown object 'zz'");
}
