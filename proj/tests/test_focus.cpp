#include <functional>
#include <set>

#include "doctest.h"
#include "figures.hpp"
#include "lg/focus.hpp"
#include "lg/search.hpp"
#include "support.hpp"

using namespace lg;

namespace {
const AtomSet kNeg = {"n", "m", "s"};
Sequent S(const std::string& t) { return parse_sequent(t, kNeg); }
Derivation step(const char* name, Dir dir, Derivation d) { return apply_forward({name, dir}, {std::move(d)}); }

std::vector<Derivation> scope_readings() {
  auto lex = load_lexicon(LG_DATA_DIR "/scope.lex");
  return parse_sentence({"everyone", "likes", "some", "teacher"}, lex, parse_formula("dn s", lex.negAtoms));
}

// π2 of the cut example with its redundant shift detour on top
Derivation pi2_with_detour() {
  Derivation x = apply_forward({"down_L"}, {{{"n-Id"}, S("n |- n"), {}}});
  x = apply_forward({"down_R"}, {x});
  x = apply_forward({"otimes_R"}, {x, {{"p-Id"}, S("p |- p"), {}}});
  x = apply_forward({"up_R"}, {x});
  x = step("s-up", Dir::Inv, x);
  x = step("dp_otimes_over", Dir::Fwd, x);
  x = step("s-down", Dir::Fwd, x);
  x = step("dp_upl_dn", Dir::Fwd, x);
  x = step("dp_upl_dn", Dir::Inv, x);
  return step("s-down", Dir::Inv, x);
}

bool adjacent_inverse_pair(const Derivation& d) {
  for (const auto& p : d.premises) {
    if (p.premises.size() == 1 && d.rule.dir != Dir::None && p.rule == inverse(d.rule)) return true;
    if (adjacent_inverse_pair(p)) return true;
  }
  return false;
}

bool any_rule(const Derivation& d, const std::function<bool(const RuleId&)>& f) {
  if (f(d.rule)) return true;
  for (const auto& p : d.premises)
    if (any_rule(p, f)) return true;
  return false;
}
}  // namespace

TEST_CASE("signed tree of an atom sequent") {
  auto [pre, suc] = signed_tree(S("p |- p"));
  REQUIRE(pre.nodes.size() == 1);
  CHECK(pre.nodes[0].sign == Sign::Plus);
  CHECK(pre.nodes[0].kind == NodeKind::Pia);
  CHECK(suc.nodes[0].sign == Sign::Minus);
  CHECK(suc.nodes[0].kind == NodeKind::Pia);
  CHECK_FALSE(pre.nodes[0].transition);
}

TEST_CASE("sign flips on antitone arguments") {
  auto t = signed_tree(parse_formula("p \\ n", kNeg), Sign::Plus);
  REQUIRE(t.nodes.size() == 3);
  CHECK(t.nodes[0].kind == NodeKind::Pia);
  CHECK(t.nodes[1].sign == Sign::Minus);
  CHECK(t.nodes[2].sign == Sign::Plus);
  auto u = signed_tree(parse_formula("p \\ n", kNeg), Sign::Minus);
  CHECK(u.nodes[0].kind == NodeKind::Skeleton);
  CHECK(u.nodes[1].sign == Sign::Plus);
}

TEST_CASE("signed tree of the quantified end-sequent") {
  auto rs = scope_readings();
  REQUIRE(!rs.empty());
  auto [pre, suc] = signed_tree(rs[0].conclusion);
  // boxed = skeleton region, preorder
  std::vector<bool> boxedPre = {true, true, false, false, true, true, false, true, true, false, false,
                                false, false, false, false, true, false, false, true, true, false, true};
  REQUIRE(pre.nodes.size() == boxedPre.size());
  for (std::size_t i = 0; i < boxedPre.size(); ++i) {
    CAPTURE(render(pre.nodes[i].term));
    CHECK((pre.nodes[i].region == NodeKind::Skeleton) == boxedPre[i]);
  }
  REQUIRE(suc.nodes.size() == 2);
  CHECK(suc.nodes[0].region == NodeKind::Skeleton);
  CHECK(suc.nodes[1].region == NodeKind::Skeleton);
  std::size_t transitions = 0;
  for (const auto& n : pre.nodes) transitions += n.transition;
  CHECK(transitions == 5);
}

TEST_CASE("phases") {
  CHECK(classify_phase(S("p |- p")) == Phase::FocusedPositive);
  CHECK(classify_phase(S("n |- n")) == Phase::FocusedNegative);
  CHECK(classify_phase(S("dn n |- .dn n")) == Phase::NonFocused);
  CHECK(classify_phase(S("p |- n")) == Phase::NonFocused);
  CHECK(classify_phase(S("p .* q |- p * q")) == Phase::FocusedPositive);
}

TEST_CASE("strong focalization") {
  for (const auto& r : scope_readings()) CHECK(check_strong_focalization(r).ok);

  Derivation ul = apply_forward({"under_L"}, {{{"p-Id"}, S("np |- np"), {}}, {{"n-Id"}, S("s |- s"), {}}});
  Derivation plain = apply_forward({"over_L"}, {ul, {{"p-Id"}, S("np |- np"), {}}});
  CHECK(check_strong_focalization(plain).ok);
  Derivation detour = step("dp_otimes_r_under", Dir::Inv, step("dp_otimes_r_under", Dir::Fwd, ul));
  CHECK(check_derivation(detour).ok);
  Derivation split = apply_forward({"over_L"}, {detour, {{"p-Id"}, S("np |- np"), {}}});
  REQUIRE(check_derivation(split).ok);
  auto rep = check_strong_focalization(split);
  CHECK_FALSE(rep.ok);
  CHECK(rep.pia.find("\\") != std::string::npos);
  CHECK_FALSE(rep.path.empty());

  Derivation cut{{"P-Cut"}, S("p |- p"), {{{"p-Id"}, S("p |- p"), {}}, {{"p-Id"}, S("p |- p"), {}}}};
  auto c = check_strong_focalization(cut);
  CHECK_FALSE(c.ok);
  CHECK(c.reason.find("cut") != std::string::npos);
}

TEST_CASE("entry and exit points") {
  Derivation dl = apply_forward({"down_L"}, {{{"n-Id"}, S("n |- n"), {}}});
  auto pts = entry_exit_points(dl);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].kind == PointKind::PositiveEntry);
  CHECK(render(pts[0].formula) == "dn n");
  Derivation ot = apply_forward({"otimes_R"}, {{{"p-Id"}, S("p |- p"), {}}, {{"p-Id"}, S("q |- q"), {}}});
  CHECK(entry_exit_points(ot).empty());
  for (const auto& r : scope_readings()) {
    std::size_t positiveExits = 0;
    for (const auto& pt : entry_exit_points(r))
      if (pt.kind == PointKind::PositiveExit) {
        ++positiveExits;
        CHECK(pt.node.empty());
        CHECK(render(pt.formula) == "dn s");
      }
    CHECK(positiveExits == 1);
  }
}

TEST_CASE("connective introduction") {
  std::vector<Derivation> corpus = scope_readings();
  for (const char* g : {"p .* q |- p * q", "dn (n / p) .* p |- dn n", "(p .* q) .* dn((p*q)\\n) |- dn n",
                        "q |- p .\\ up (p * q)", "up p |- up p"})
    for (auto& d : prove(S(g))) corpus.push_back(d);
  for (const auto& d : corpus) {
    auto [pre, suc] = signed_tree(d.conclusion);
    auto kind_at = [&](const SeqPath& p) {
      const auto& tree = p.side == 0 ? pre : suc;
      for (const auto& n : tree.nodes)
        if (n.path == p.path) return n.kind;
      FAIL("missing node");
      return NodeKind::Pia;
    };
    for (const auto& in : introductions(d)) {
      CAPTURE(render(at(d.conclusion, in.occurrence)));
      if (kind_at(in.occurrence) == NodeKind::Skeleton) CHECK(is_translation(in.rule));
      else CHECK(is_tonicity(in.rule));
    }
  }
}

TEST_CASE("shift nodes are transitions or roots and PIA regions are never empty") {
  lgtest::Gen g(11);
  for (int i = 0; i < 400; ++i) {
    Term a = g.formula(g.any_sort(), 1 + g.pick(5));
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      auto t = signed_tree(a, s);
      std::map<Path, std::size_t> index;
      for (std::size_t k = 0; k < t.nodes.size(); ++k) index[t.nodes[k].path] = k;
      for (const auto& n : t.nodes) {
        if (is_shift(n.term->op)) CHECK((n.transition || n.path.empty()));
        if (n.region != NodeKind::Pia || !(n.transition || n.path.empty())) continue;
        // walk the region rooted here
        bool content = false;
        std::vector<Path> todo{n.path};
        while (!todo.empty()) {
          Path p = todo.back();
          todo.pop_back();
          const auto& m = t.nodes[index.at(p)];
          if (m.region != NodeKind::Pia || (p != n.path && m.transition)) continue;
          if (!is_shift(m.term->op)) content = true;
          for (int k = 0; k < static_cast<int>(m.term->kids.size()); ++k) {
            Path q = p;
            q.push_back(k);
            todo.push_back(q);
          }
        }
        CAPTURE(render(a));
        CHECK(content);
      }
    }
  }
}

TEST_CASE("topology of phase crossings") {
  std::vector<Derivation> corpus = scope_readings();
  for (const char* g : {"p .* q |- p * q", "dn (n / p) .* p |- dn n", "q |- p .\\ up (p * q)", "up p |- up p"})
    for (auto& d : prove(S(g))) corpus.push_back(d);
  std::function<void(const Derivation&)> walk = [&](const Derivation& d) {
    Phase c = classify_phase(d.conclusion);
    for (const auto& p : d.premises) {
      Phase q = classify_phase(p.conclusion);
      bool crosses = (c == Phase::NonFocused) != (q == Phase::NonFocused);
      const RuleInfo* info = find_rule(d.rule);
      REQUIRE(info);
      if (crosses) CHECK(info->group == Group::ShiftLogical);
      if (info->group == Group::StructuralShift) {
        CHECK(c == Phase::NonFocused);
        CHECK(q == Phase::NonFocused);
      }
      walk(p);
    }
  };
  for (const auto& d : corpus) walk(d);
}

TEST_CASE("minimize removes the shift detour") {
  Derivation d = pi2_with_detour();
  REQUIRE(check_derivation(d).ok);
  Derivation m = minimize_proof(d);
  CHECK(check_derivation(m).ok);
  CHECK(m.conclusion == d.conclusion);
  CHECK(proof_size(m) < proof_size(d));
  CHECK_FALSE(adjacent_inverse_pair(m));
  CHECK_FALSE(any_rule(m, [](const RuleId& r) {
    const auto* i = find_rule(r);
    return i && (i->shiftDp || i->variantDp);
  }));
  CHECK(check_strong_focalization(m).ok);
}

TEST_CASE("minimize is a fixpoint on minimal proofs") {
  for (const auto& r : scope_readings()) CHECK(minimize_proof(r) == r);
  Derivation ax{{"p-Id"}, S("p |- p"), {}};
  CHECK(minimize_proof(ax) == ax);
}

TEST_CASE("minimize removes an adjacent dp pair") {
  Derivation d = prove(S("p .* dn(p\\n) |- dn n")).front();
  std::function<Derivation(const Derivation&)> insert = [&](const Derivation& n) -> Derivation {
    Derivation out{n.rule, n.conclusion, {}};
    for (const auto& p : n.premises) out.premises.push_back(insert(p));
    if (n.rule.name == "dp_otimes_under") {
      Derivation there = step("dp_otimes_under", Dir::Inv, out);
      return step("dp_otimes_under", Dir::Fwd, there);
    }
    return out;
  };
  Derivation padded = insert(d);
  REQUIRE(check_derivation(padded).ok);
  REQUIRE(proof_size(padded) == proof_size(d) + 2);
  CHECK(minimize_proof(padded) == d);
}
