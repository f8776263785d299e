#include <algorithm>
#include <chrono>

#include "doctest.h"
#include "figures.hpp"
#include "lg/focus.hpp"
#include "lg/search.hpp"

using namespace lg;

namespace {
const AtomSet kNeg = {"n", "m", "s"};
Sequent S(const std::string& t) { return parse_sequent(t, kNeg); }

std::vector<Derivation> scope_readings() {
  auto lex = parse_lexicon(R"(
# test lexicon
%neg s
everyone := dn((up np)/n) * n
likes := dn((np\s)/np)
some := dn((up np)/n)
teacher := n
)");
  return parse_sentence({"everyone", "likes", "some", "teacher"}, lex, parse_formula("dn s", lex.negAtoms));
}
}  // namespace

TEST_CASE("small goals") {
  CHECK(prove(S("p |- p")).size() == 1);
  CHECK(prove(S("n |- n")).size() == 1);
  CHECK(prove(S("p .* q |- p * q")).size() == 1);
  CHECK(prove(S("p * q |- p * q")).empty());
  CHECK(prove(S("p |- n")).empty());
  auto d = prove(S("p .* dn(p\\n) |- dn n"));
  REQUIRE(d.size() == 1);
  CHECK(check_derivation(d[0]).ok);
  CHECK(d[0].conclusion == S("p .* dn(p\\n) |- dn n"));
}

TEST_CASE("focused and generic search agree on small goals") {
  const char* goals[] = {"p |- p", "p .* q |- p * q", "p * q |- p * q", "dn n |- dn n", "p .* dn(p\\n) |- dn n",
                         "up p |- up p", "q |- p .\\ up (p * q)"};
  for (const char* g : goals) {
    SearchConfig generic;
    generic.maxDepth = 14;
    generic.allowVariants = true;
    bool focusedFound = !prove(S(g)).empty();
    bool genericFound = !prove(S(g), generic).empty();
    CAPTURE(g);
    CHECK(focusedFound == genericFound);
  }
}

TEST_CASE("every search result checks and is focalized") {
  const char* goals[] = {"p .* q |- p * q", "dn (n / p) .* p |- dn n", "q |- p .\\ up (p * q)", "up p |- up p",
                         "(p .* q) .* dn((p*q)\\n) |- dn n"};
  for (const char* g : goals) {
    for (const auto& d : prove(S(g))) {
      CAPTURE(g);
      CHECK(check_derivation(d).ok);
      CHECK(check_strong_focalization(d).ok);
      CHECK(d.conclusion == S(g));
    }
  }
}

TEST_CASE("maxSolutions and maxDepth bound the result") {
  SearchConfig c;
  c.maxSolutions = 1;
  CHECK(scope_readings().size() == 2);
  auto lex = parse_lexicon("%neg s\neveryone := dn((up np)/n) * n\nlikes := dn((np\\s)/np)\n"
                           "some := dn((up np)/n)\nteacher := n\n");
  auto goal = parse_formula("dn s", lex.negAtoms);
  CHECK(parse_sentence({"everyone", "likes", "some", "teacher"}, lex, goal, c).size() == 1);
  c.maxSolutions = 64;
  c.maxDepth = 5;
  CHECK(parse_sentence({"everyone", "likes", "some", "teacher"}, lex, goal, c).empty());
}

TEST_CASE("two readings of the quantified sentence") {
  auto t0 = std::chrono::steady_clock::now();
  auto rs = scope_readings();
  CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(10));
  REQUIRE(rs.size() == 2);
  auto ae = lgtest::scope_forall_exists();
  auto ea = lgtest::scope_exists_forall();
  CHECK_FALSE(check_derivation(ae).ok);
  bool hasAe = false, hasEa = false;
  for (const auto& r : rs) {
    CHECK(check_derivation(r).ok);
    CHECK(check_strong_focalization(r).ok);
    auto c = collapse_display(r);
    hasAe = hasAe || c == ae;
    hasEa = hasEa || c == ea;
  }
  CHECK(hasAe);
  CHECK(hasEa);
}

TEST_CASE("entry points follow scope") {
  auto word_of = [](const SeqPath& p) {
    if (p.side != 0 || p.path.empty()) return std::string("?");
    if (p.path[0] == 0) return std::string("everyone");
    if (p.path.size() >= 2 && p.path[1] == 0) return std::string("likes");
    if (p.path.size() >= 3 && p.path[2] == 0) return std::string("some");
    return std::string("teacher");
  };
  std::vector<std::vector<std::string>> orders;
  for (const auto& r : scope_readings()) {
    std::vector<std::string> order;
    for (const auto& pt : entry_exit_points(r))
      if (pt.kind == PointKind::PositiveEntry) {
        REQUIRE(pt.origin);
        order.push_back(word_of(*pt.origin));
      }
    orders.push_back(order);
  }
  std::sort(orders.begin(), orders.end());
  using V = std::vector<std::string>;
  REQUIRE(orders.size() == 2);
  CHECK(orders[0] == V{"everyone", "some", "likes"});
  CHECK(orders[1] == V{"some", "everyone", "likes"});
}

TEST_CASE("collapse_display folds maximal chains") {
  auto d = prove(S("p .* dn(p\\n) |- dn n")).front();
  auto c = collapse_display(d);
  CHECK(proof_size(c) <= proof_size(d));
  std::function<void(const Derivation&, bool)> walk = [&](const Derivation& n, bool parentDisplay) {
    if (n.rule.name == "Display") CHECK_FALSE(parentDisplay);
    for (const auto& p : n.premises) walk(p, n.rule.name == "Display");
  };
  walk(c, false);
  Derivation ax{{"p-Id"}, S("p |- p"), {}};
  CHECK(collapse_display(ax) == ax);
}

TEST_CASE("lexicon parsing") {
  auto lex = parse_lexicon("# c\n%neg s\n\nw := dn s\nv := np\n");
  CHECK(lex.entries.size() == 2);
  CHECK(lex.negAtoms.count("s") == 1);
  CHECK(render(lex.entries.at("w")) == "dn s");
  CHECK_THROWS_AS(parse_lexicon("w = np\n"), LexiconError);
  CHECK_THROWS_AS(parse_lexicon("w := (np\n"), LexiconError);
  CHECK_THROWS_AS(parse_lexicon("w := dn np\n"), LexiconError);
  CHECK_THROWS_AS(load_lexicon("/nonexistent/file.lex"), LexiconError);
  CHECK_THROWS_AS(sentence_structure({"w", "zzz"}, lex), LexiconError);
}

TEST_CASE("bracketing") {
  auto lex = parse_lexicon("a := p\nb := q\nc := p\n");
  CHECK(render(sentence_structure({"a", "b", "c"}, lex)) == "p .* (q .* p)");
  CHECK(render(sentence_structure({"a", "b", "c"}, lex, "(a b) c")) == "(p .* q) .* p");
  CHECK_THROWS_AS(sentence_structure({"a", "b", "c"}, lex, "(a c) b"), LexiconError);
  CHECK_THROWS_AS(sentence_structure({"a", "b", "c"}, lex, "(a b c"), LexiconError);
}
