#include "doctest.h"
#include "lg/cutelim.hpp"
#include "lg/kernel.hpp"
#include "lg/search.hpp"
#include "lg/standardize.hpp"
#include "support.hpp"

using namespace lg;

namespace {
const AtomSet kNeg = {"n", "m"};
Sequent S(const std::string& t) { return parse_sequent(t, kNeg); }
Term F(const std::string& t) { return parse_formula(t, kNeg); }
}  // namespace

TEST_CASE("identity expansion ends in the standard sequent") {
  CHECK(identity_expansion(F("p")).conclusion == S("p |- p"));
  CHECK(identity_expansion(F("p * q")).conclusion == S("p .* q |- p * q"));
  lgtest::Gen g(3);
  for (int i = 0; i < 300; ++i) {
    Term a = g.formula(g.any_sort(), 1 + g.pick(5));
    Derivation d = identity_expansion(a);
    CAPTURE(render(a));
    CHECK(check_derivation(d).ok);
    CHECK(is_cut_free(d));
    auto st = standard_sequent({a, a});
    REQUIRE(st);
    CHECK(d.conclusion == *st);
  }
}

TEST_CASE("saturation turns a side into its formula") {
  Derivation u = identity_expansion(F("p \\ n"));
  CHECK(u.conclusion == S("p \\ n |- p .\\ n"));
  CHECK_THROWS_AS(saturate_translations(u, 1), RuleError);
  Derivation w = saturate_translations(prove(S("q |- p .\\ up (p * q)")).front(), 1);
  CHECK(w.conclusion == S("q |- p \\ up (p * q)"));
  CHECK(check_derivation(w).ok);
  CHECK(saturate_translations(w, 1) == w);
  // p .* q |- p * q is focused: no translation can apply, and p * q |- p * q is not derivable
  CHECK_THROWS_AS(saturate_translations(identity_expansion(F("p * q")), 0), RuleError);
}

TEST_CASE("display isolates a substructure") {
  Derivation u = prove(S("q |- p .\\ up (p * q)")).front();
  int side = -1;
  Derivation shown = display(u, {1, {0}}, &side);
  CHECK(side == 0);
  CHECK(render(shown.conclusion.pre) == "p");
  CHECK(check_derivation(shown).ok);
  Derivation same = display(u, {0, {}}, &side);
  CHECK(same == u);
  CHECK(side == 0);
  CHECK_THROWS_AS(display(identity_expansion(F("p \\ n")), {1, {1}}, nullptr, false), RuleError);
  Derivation viaVariant = display(identity_expansion(F("p \\ n")), {1, {1}}, &side);
  CHECK(check_derivation(viaVariant).ok);
  CHECK(side == 1);
}

TEST_CASE("structural cut") {
  Derivation l = prove(S("q |- p .\\ up (p * q)")).front();
  Derivation r = identity_expansion(F("p \\ up (p * q)"));
  Derivation c = structural_cut(l, r);
  CHECK(check_derivation(c).ok);
  CHECK(c.conclusion == S("q |- p .\\ up (p * q)"));
  CHECK(is_cut(c.rule));
  Derivation e = eliminate_cuts(c);
  CHECK(is_cut_free(e));
  CHECK(e.conclusion == c.conclusion);
}

TEST_CASE("variants have no identity expansion") {
  CHECK_THROWS_AS(identity_expansion(parse_structure(".upl (dn n)", kNeg)), RuleError);
}
