#include <algorithm>

#include "doctest.h"
#include "lg/kernel.hpp"

using namespace lg;

namespace {
const AtomSet kNeg = {"n", "m", "d", "s"};
Sequent S(const std::string& t) { return parse_sequent(t, kNeg); }
Derivation leaf(const char* rule, const std::string& s) { return {{rule}, S(s), {}}; }
}  // namespace

TEST_CASE("rule inventory") {
  int dps = 0;
  for (const auto& r : rules())
    if (r.group == Group::Display && r.id.dir == Dir::Fwd) ++dps;
  CHECK(dps == 19);
  CHECK(find_rule({"otimes_R"}) != nullptr);
  CHECK(find_rule({"s-up", Dir::Inv}) != nullptr);
  CHECK(find_rule({"P-N-Cut"}) == nullptr);
}

TEST_CASE("check_derivation basics") {
  CHECK(check_derivation(leaf("p-Id", "p |- p")).ok);
  Derivation d{{"otimes_R"}, S("p .* q |- p * q"), {leaf("p-Id", "p |- p"), leaf("p-Id", "q |- q")}};
  CHECK(check_derivation(d).ok);
  Derivation bad{{"otimes_R"}, S("p .* q |- p * q"), {leaf("p-Id", "p |- p")}};
  auto r = check_derivation(bad);
  CHECK_FALSE(r.ok);
  CHECK(r.reason.find("arity") != std::string::npos);
  Derivation wrong{{"otimes_R"}, S("p .* q |- p * q"), {leaf("p-Id", "p |- p"), leaf("p-Id", "p |- p")}};
  auto w = check_derivation(wrong);
  CHECK_FALSE(w.ok);
  Derivation unk{{"magic"}, S("p |- p"), {}};
  CHECK(check_derivation(unk).reason.find("unknown rule") != std::string::npos);
  Derivation nested{{"otimes_R"}, S("p .* q |- p * q"), {leaf("p-Id", "p |- p"), leaf("p-Id", "q |- p")}};
  auto n = check_derivation(nested);
  CHECK_FALSE(n.ok);
}

TEST_CASE("failing node path is reported") {
  Derivation inner{{"otimes_R"}, S("p .* q |- p * q"), {leaf("p-Id", "p |- p"), leaf("n-Id", "q |- q")}};
  Derivation d{{"otimes_L"}, S("p * q |- .up (p * q)"), {}};
  (void)d;
  auto r = check_derivation(inner);
  CHECK_FALSE(r.ok);
  CHECK(r.path == "premises[1]");
}

TEST_CASE("apply_rule_forward") {
  CHECK(apply_rule_forward({"down_L"}, {S("n |- n")}) == S("dn n |- .dn n"));
  CHECK(turnstile(apply_rule_forward({"down_L"}, {S("n |- n")})) == Turnstile{Family3::Positive, true, true});
  CHECK(apply_rule_forward({"s-up", Dir::Fwd}, {S("p |- n")}) == S(".up p |- n"));
  CHECK_THROWS_AS(apply_rule_forward({"s-up", Dir::Fwd}, {S("p |- .dn n")}), RuleError);
  CHECK(apply_rule_forward({"dp_otimes_under", Dir::Inv}, {S("p .* q |- d")}) == S("q |- p .\\ d"));
  CHECK(apply_rule_forward({"dp_otimes_under", Dir::Fwd}, {S("q |- p .\\ d")}) == S("p .* q |- d"));
  CHECK_THROWS_AS(apply_rule_forward({"p-Id"}, {}), RuleError);
  Bindings h{{"p", atom("p", Pol::Pos)}};
  CHECK(apply_rule_forward({"p-Id"}, {}, h) == S("p |- p"));
}

TEST_CASE("backward expansions") {
  auto has = [](const std::vector<Expansion>& es, const std::string& name) {
    return std::any_of(es.begin(), es.end(), [&](const Expansion& e) { return e.rule.name == name; });
  };
  auto e1 = backward_expansions(S("p |- p"));
  REQUIRE(!e1.empty());
  CHECK(e1.front().rule.name == "p-Id");
  auto e2 = backward_expansions(S("p .* q |- p * q"));
  bool found = false;
  for (const auto& e : e2)
    if (e.rule.name == "otimes_R") {
      found = true;
      CHECK(e.premises[0] == S("p |- p"));
      CHECK(e.premises[1] == S("q |- q"));
    }
  CHECK(found);
  auto e3 = backward_expansions(S("p |- n"));
  REQUIRE(e3.size() == 2);
  CHECK(e3[0].rule == RuleId{"s-down", Dir::Inv});
  CHECK(e3[1].rule == RuleId{"s-up", Dir::Inv});
  CHECK_FALSE(has(e3, "p-Id"));
  auto e4 = backward_expansions(S("p |- n"), {false, true});
  CHECK(has(e4, "Pn-Cut"));
  CHECK(has(e4, "nN-Cut"));
}

TEST_CASE("forward/backward coherence") {
  const char* goals[] = {"p .* q |- p * q", "p .* q |- n", "dn n |- .dn n", "up p |- n", ".up p |- up p",
                         "p |- n .(+) m", "q |- p .\\ n", "p * q |- d", "dn ((up p) / q) |- .dn n"};
  for (const char* g : goals) {
    for (bool cuts : {false, true})
      for (bool vars : {false, true}) {
        for (const auto& e : backward_expansions(S(g), {vars, cuts})) {
          if (e.premises.empty()) continue;
          CHECK(apply_rule_forward(e.rule, e.premises) == S(g));
          CHECK(valid_step(e.rule, e.premises, S(g)));
        }
      }
  }
}

TEST_CASE("occurrence tracing") {
  auto t = trace_up({"otimes_L"}, {1, {}});
  REQUIRE(t);
  CHECK(t->first == 0);
  CHECK(t->second == SeqPath{1, {}});
  CHECK_FALSE(trace_up({"otimes_L"}, {0, {}}));
  auto u = trace_up({"otimes_L"}, {0, {1, 0}});
  REQUIRE(u);
  CHECK(u->second == SeqPath{0, {1, 0}});
  auto v = trace_up({"dp_otimes_under", Dir::Fwd}, {0, {1}});
  REQUIRE(v);
  CHECK(v->second == SeqPath{0, {}});
  auto w = trace_down({"dp_otimes_under", Dir::Fwd}, 0, {1, {0}});
  REQUIRE(w);
  CHECK(*w == SeqPath{0, {0}});
  CHECK_FALSE(trace_down({"P-Cut"}, 0, {1, {}}));
}

TEST_CASE("json round trip") {
  Derivation d{{"otimes_R"}, S("p .* q |- p * q"), {leaf("p-Id", "p |- p"), leaf("p-Id", "q |- q")}};
  Derivation e{{"s-up", Dir::Fwd}, S(".up (p .* q) |- n"), {}};
  (void)e;
  std::string j = to_json(d, kNeg);
  AtomSet neg;
  Derivation back = from_json(j, &neg);
  CHECK(back == d);
  CHECK(neg == kNeg);
  CHECK(to_json(back, neg) == j);
  CHECK_THROWS_AS(from_json("{oops"), ParseError);
}
