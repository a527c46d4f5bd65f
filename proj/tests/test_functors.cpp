#include <catch2/catch_amalgamated.hpp>

#include "fincat/core.hpp"
#include "fincat/fixtures.hpp"
#include "fincat/functors.hpp"

#include <algorithm>
#include <vector>

using namespace fincat;

namespace {

// Brute-force oracle: every raw (object map, morphism map) assignment that
// validate_functor accepts.  Exponential, so only desk-size inputs.
std::vector<functor> all_functors_brute(const finite_category& a, const finite_category& b) {
  std::vector<obj_id> dom_objs(a.objects.begin(), a.objects.end());
  std::vector<obj_id> cod_objs(b.objects.begin(), b.objects.end());
  std::vector<mor_id> dom_mors(a.morphisms.begin(), a.morphisms.end());
  std::vector<mor_id> cod_mors(b.morphisms.begin(), b.morphisms.end());

  std::vector<functor> found;
  std::vector<std::size_t> oidx(dom_objs.size(), 0);
  while (true) {
    std::vector<std::size_t> midx(dom_mors.size(), 0);
    while (true) {
      functor f{a, b, {}, {}};
      for (std::size_t i = 0; i < dom_objs.size(); ++i) f.on_objects[dom_objs[i]] = cod_objs[oidx[i]];
      for (std::size_t i = 0; i < dom_mors.size(); ++i) f.on_morphisms[dom_mors[i]] = cod_mors[midx[i]];
      if (validate_functor(f).ok()) found.push_back(std::move(f));

      std::size_t k = 0;
      while (k < midx.size() && ++midx[k] == cod_mors.size()) midx[k++] = 0;
      if (k == midx.size()) break;
    }
    std::size_t k = 0;
    while (k < oidx.size() && ++oidx[k] == cod_objs.size()) oidx[k++] = 0;
    if (k == oidx.size()) break;
  }
  return found;
}

bool same_functor_sets(const std::vector<functor>& a, const std::vector<functor>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& f : a)
    if (std::find(b.begin(), b.end(), f) == b.end()) return false;
  return true;
}

}  // namespace

TEST_CASE("identity functors validate and compose neutrally", "[functors]") {
  finite_category c = counterexample_system().base;
  functor id = identity_functor(c);
  CHECK(validate_functor(id).ok());
  CHECK(fcompose(id, id) == id);

  functor collapse{walking_isomorphism(), terminal_category(), {}, {}};
  for (const auto& x : collapse.dom.objects) collapse.on_objects[x] = obj_id{"x"};
  for (const auto& u : collapse.dom.morphisms) collapse.on_morphisms[u] = mor_id{"id_x"};
  REQUIRE(validate_functor(collapse).ok());
  CHECK(fcompose(identity_functor(collapse.cod), collapse) == collapse);
  CHECK(fcompose(collapse, identity_functor(collapse.dom)) == collapse);
  CHECK_THROWS_AS(fcompose(collapse, collapse), std::invalid_argument);
}

TEST_CASE("functor validation catches each failure mode", "[functors]") {
  finite_category arrow = walking_arrow();
  finite_category iso = walking_isomorphism();

  functor f{arrow, iso, {}, {}};
  f.on_objects = {{obj_id{"x"}, obj_id{"x"}}, {obj_id{"y"}, obj_id{"y"}}};
  f.on_morphisms = {{mor_id{"id_x"}, mor_id{"id_x"}},
                    {mor_id{"id_y"}, mor_id{"id_y"}},
                    {mor_id{"q"}, mor_id{"q"}}};
  CHECK(validate_functor(f).ok());

  functor missing = f;
  missing.on_morphisms.erase(mor_id{"q"});
  validation_report r = validate_functor(missing);
  REQUIRE_FALSE(r.ok());
  CHECK(r.violations.front() == "morphism 'q' has no image");

  functor off_endpoints = f;
  off_endpoints.on_morphisms[mor_id{"q"}] = mor_id{"qi"};
  r = validate_functor(off_endpoints);
  REQUIRE_FALSE(r.ok());
  CHECK(r.violations.front().find("source off the object map") != std::string::npos);

  functor bad_identity = f;
  bad_identity.on_objects = {{obj_id{"x"}, obj_id{"x"}}, {obj_id{"y"}, obj_id{"x"}}};
  bad_identity.on_morphisms = {{mor_id{"id_x"}, mor_id{"id_x"}},
                               {mor_id{"id_y"}, mor_id{"id_x"}},
                               {mor_id{"q"}, mor_id{"id_x"}}};
  CHECK(validate_functor(bad_identity).ok());
  bad_identity.on_morphisms[mor_id{"id_y"}] = mor_id{"qi"};
  r = validate_functor(bad_identity);
  REQUIRE_FALSE(r.ok());

  // composition breakage needs a composite to disagree
  functor swap{iso, iso, {}, {}};
  swap.on_objects = {{obj_id{"x"}, obj_id{"y"}}, {obj_id{"y"}, obj_id{"x"}}};
  swap.on_morphisms = {{mor_id{"id_x"}, mor_id{"id_y"}},
                       {mor_id{"id_y"}, mor_id{"id_x"}},
                       {mor_id{"q"}, mor_id{"qi"}},
                       {mor_id{"qi"}, mor_id{"q"}}};
  CHECK(validate_functor(swap).ok());
}

TEST_CASE("structural analysis of a collapse and of an isomorphism", "[functors]") {
  functor collapse{walking_isomorphism(), terminal_category(), {}, {}};
  for (const auto& x : collapse.dom.objects) collapse.on_objects[x] = obj_id{"x"};
  for (const auto& u : collapse.dom.morphisms) collapse.on_morphisms[u] = mor_id{"id_x"};
  functor_traits t = analyze(collapse);
  CHECK(t.faithful);  // every hom-set of the walking isomorphism is a singleton
  CHECK(t.full);
  CHECK_FALSE(t.ob_inj);
  CHECK(t.ob_surj);
  CHECK_FALSE(t.ob_iso);
  CHECK_FALSE(t.has_finverse);
  CHECK(finverse(collapse) == std::nullopt);
  CHECK(mor_image(collapse) == std::set<mor_id>{mor_id{"id_x"}});

  functor swap{walking_isomorphism(), walking_isomorphism(), {}, {}};
  swap.on_objects = {{obj_id{"x"}, obj_id{"y"}}, {obj_id{"y"}, obj_id{"x"}}};
  swap.on_morphisms = {{mor_id{"id_x"}, mor_id{"id_y"}},
                       {mor_id{"id_y"}, mor_id{"id_x"}},
                       {mor_id{"q"}, mor_id{"qi"}},
                       {mor_id{"qi"}, mor_id{"q"}}};
  functor_traits ts = analyze(swap);
  CHECK(ts.faithful);
  CHECK(ts.full);
  CHECK(ts.ob_iso);
  CHECK(ts.has_finverse);
  auto inv = finverse(swap);
  REQUIRE(inv.has_value());
  CHECK(*inv == swap);  // the swap is its own inverse
  CHECK(fcompose(*inv, swap) == identity_functor(swap.dom));
}

TEST_CASE("a non-faithful quotient-like functor is detected", "[functors]") {
  // parallel pair collapsed onto the walking arrow
  finite_category pp;
  obj_id a{"a"}, b{"b"};
  mor_id ia{"id_a"}, ib{"id_b"}, f{"f"}, g{"g"};
  pp.objects = {a, b};
  pp.morphisms = {ia, ib, f, g};
  pp.src = {{ia, a}, {ib, b}, {f, a}, {g, a}};
  pp.tgt = {{ia, a}, {ib, b}, {f, b}, {g, b}};
  pp.ident = {{a, ia}, {b, ib}};
  pp.comp = {{{ia, ia}, ia}, {{ib, ib}, ib}, {{f, ia}, f}, {{ib, f}, f}, {{g, ia}, g}, {{ib, g}, g}};
  REQUIRE(validate_category(pp).ok());

  functor h{pp, walking_arrow(), {}, {}};
  h.on_objects = {{a, obj_id{"x"}}, {b, obj_id{"y"}}};
  h.on_morphisms = {{ia, mor_id{"id_x"}}, {ib, mor_id{"id_y"}}, {f, mor_id{"q"}}, {g, mor_id{"q"}}};
  REQUIRE(validate_functor(h).ok());
  functor_traits t = analyze(h);
  CHECK_FALSE(t.faithful);
  CHECK(t.full);
  CHECK(t.ob_iso);
  CHECK_FALSE(t.has_finverse);
}

TEST_CASE("functor enumeration matches the brute-force oracle", "[functors]") {
  finite_category iso = walking_isomorphism();
  finite_category arrow = walking_arrow();

  auto fast = enumerate_functors(iso, arrow);
  auto slow = all_functors_brute(iso, arrow);
  CHECK(fast.size() == 2);  // only the two constant functors survive
  CHECK(same_functor_sets(fast, slow));

  fast = enumerate_functors(arrow, iso);
  slow = all_functors_brute(arrow, iso);
  CHECK(fast.size() == 4);  // hom-sets are singletons, so object maps decide
  CHECK(same_functor_sets(fast, slow));

  fast = enumerate_functors(arrow, arrow);
  slow = all_functors_brute(arrow, arrow);
  CHECK(fast.size() == 3);  // two constants plus the identity
  CHECK(same_functor_sets(fast, slow));

  for (const auto& f : fast) CHECK(validate_functor(f).ok());
}

TEST_CASE("functor enumeration from the empty category", "[functors]") {
  finite_category empty;
  auto fs = enumerate_functors(empty, walking_arrow());
  REQUIRE(fs.size() == 1);
  CHECK(fs.front().on_objects.empty());
  CHECK(validate_functor(fs.front()).ok());
}

TEST_CASE("functor enumeration respects its budget", "[functors]") {
  CHECK_THROWS_AS(enumerate_functors(walking_arrow(), walking_isomorphism(), 1), budget_exceeded);
  CHECK_NOTHROW(enumerate_functors(walking_arrow(), walking_isomorphism(), 1000));
}

TEST_CASE("add_inverses pulls in exactly the morphisms inverse to the set", "[functors]") {
  finite_category iso = walking_isomorphism();
  CHECK(add_inverses(iso, {mor_id{"q"}}) == std::set<mor_id>{mor_id{"q"}, mor_id{"qi"}});
  CHECK(add_inverses(iso, {}) == std::set<mor_id>{});
  CHECK(add_inverses(walking_arrow(), {mor_id{"q"}}) == std::set<mor_id>{mor_id{"q"}});
  CHECK_THROWS_AS(add_inverses(iso, {mor_id{"ghost"}}), std::invalid_argument);
}

TEST_CASE("generated subcategories close under composition", "[functors]") {
  finite_category cx = counterexample_system().base;
  finite_category sub = generated_subcategory(cx, {mor_id{"na01"}});
  CHECK(sub.objects == std::set<obj_id>{obj_id{"0"}, obj_id{"1"}});
  CHECK(sub.morphisms == std::set<mor_id>{mor_id{"na00"}, mor_id{"na01"}, mor_id{"na11"}});
  CHECK(validate_category(sub).ok());

  finite_category grown = generated_subcategory(cx, {mor_id{"na01"}, mor_id{"na12"}, mor_id{"na21"}});
  CHECK(grown.morphisms == cx.morphisms);
  CHECK(validate_category(grown).ok());

  CHECK(generates(cx, cx.morphisms));
  CHECK_FALSE(generates(cx, {mor_id{"na01"}}));
  CHECK(generates(cx, {mor_id{"na01"}, mor_id{"na12"}, mor_id{"na21"}}));
}

TEST_CASE("the empty set generates only the empty category", "[functors]") {
  CHECK_FALSE(generates(terminal_category(), {}));
  CHECK(generated_subcategory(terminal_category(), {}) == finite_category{});
  finite_category empty;
  CHECK(generates(empty, {}));
}
