#pragma once

#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "lg/cutelim.hpp"
#include "lg/kernel.hpp"
#include "lg/search.hpp"

namespace lgtest {

using namespace lg;

// Indented outline, one node per line: `rule [intro|elim|inv] | sequent`.
// Two spaces per level; {NAME} expands through macros before parsing.
inline Derivation outline(const std::string& text, const AtomSet& neg,
                          const std::map<std::string, std::string>& macros = {}) {
  struct Line {
    std::size_t depth;
    RuleId rule;
    Sequent seq;
  };
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    auto first = raw.find_first_not_of(' ');
    if (first == std::string::npos) continue;
    for (const auto& [k, v] : macros)
      for (std::size_t at; (at = raw.find("{" + k + "}")) != std::string::npos;)
        raw.replace(at, k.size() + 2, "(" + v + ")");
    auto bar = raw.find('|', first);
    std::istringstream head(raw.substr(first, bar - first));
    Line l{first / 2, {}, parse_sequent(raw.substr(bar + 1), neg)};
    std::string dir;
    head >> l.rule.name >> dir;
    if (dir == "intro" || dir == "fwd") l.rule.dir = Dir::Fwd;
    else if (dir == "elim" || dir == "inv") l.rule.dir = Dir::Inv;
    else if (const auto* r = find_rule({l.rule.name, Dir::Fwd}); r && l.rule.name != "Display") l.rule.dir = Dir::Fwd;
    lines.push_back(std::move(l));
  }
  std::size_t pos = 0;
  std::function<Derivation()> node = [&]() {
    const Line& l = lines[pos++];
    Derivation d{l.rule, l.seq, {}};
    while (pos < lines.size() && lines[pos].depth == l.depth + 1) d.premises.push_back(node());
    return d;
  };
  return node();
}

inline const AtomSet kScopeNeg = {"s"};

inline const std::map<std::string, std::string> kScopeMacros = {
    {"Q", "(up np) / n"},
    {"E1", "dn ((up np) / n)"},
    {"EV", "dn ((up np) / n) * n"},
    {"L", "dn ((np \\ s) / np)"},
    {"V", "(np \\ s) / np"},
    {"R", "dn ((np \\ s) / np) .* (dn ((up np) / n) .* n)"},
};

inline const char* kLikesTail = R"(
                s-down elim | {L} |- (np .\ s) ./ np
                  down_L | {L} |- .dn ((np .\ s) ./ np)
                    over_L | {V} |- (np .\ s) ./ np
                      under_L | np \ s |- np .\ s
                        p-Id | np |- np
                        n-Id | s |- s
                      p-Id | np |- np
)";

// everyone outscopes some
inline Derivation scope_forall_exists() {
  std::string t = R"(
down_R | {EV} .* {R} |- dn s
  s-down intro | {EV} .* {R} |- .dn s
    Display | {EV} .* {R} |- s
      otimes_L | {EV} |- s ./ {R}
        Display | {E1} .* n |- s ./ {R}
          s-down elim | {E1} |- (s ./ {R}) ./ n
            down_L | {E1} |- .dn ((s ./ {R}) ./ n)
              over_L | {Q} |- (s ./ {R}) ./ n
                up_L | up np |- s ./ {R}
                  s-up intro | .up np |- s ./ {R}
                    Display | np |- s ./ {R}
                      s-down elim | {E1} |- ({L} .\ (np .\ s)) ./ n
                        down_L | {E1} |- .dn (({L} .\ (np .\ s)) ./ n)
                          over_L | {Q} |- ({L} .\ (np .\ s)) ./ n
                            up_L | up np |- {L} .\ (np .\ s)
                              s-up intro | .up np |- {L} .\ (np .\ s)
                                Display | np |- {L} .\ (np .\ s)
TAIL
                            p-Id | n |- n
                p-Id | n |- n
)";
  std::string tail;
  std::istringstream in(kLikesTail);
  for (std::string l; std::getline(in, l);)
    if (!l.empty()) tail += std::string(18, ' ') + l + "\n";
  t.replace(t.find("TAIL\n"), 5, tail);
  return outline(t, kScopeNeg, kScopeMacros);
}

// some outscopes everyone
inline Derivation scope_exists_forall() {
  std::string t = R"(
down_R | {EV} .* {R} |- dn s
  s-down intro | {EV} .* {R} |- .dn s
    Display | {EV} .* {R} |- s
      otimes_L | {EV} |- s ./ {R}
        Display | {E1} .* n |- s ./ {R}
          s-down elim | {E1} |- ({L} .\ (({E1} .* n) .\ s)) ./ n
            down_L | {E1} |- .dn (({L} .\ (({E1} .* n) .\ s)) ./ n)
              over_L | {Q} |- ({L} .\ (({E1} .* n) .\ s)) ./ n
                up_L | up np |- {L} .\ (({E1} .* n) .\ s)
                  s-up intro | .up np |- {L} .\ (({E1} .* n) .\ s)
                    Display | np |- {L} .\ (({E1} .* n) .\ s)
                      s-down elim | {E1} |- (s ./ ({L} .* np)) ./ n
                        down_L | {E1} |- .dn ((s ./ ({L} .* np)) ./ n)
                          over_L | {Q} |- (s ./ ({L} .* np)) ./ n
                            up_L | up np |- s ./ ({L} .* np)
                              s-up intro | .up np |- s ./ ({L} .* np)
                                Display | np |- s ./ ({L} .* np)
TAIL
                            p-Id | n |- n
                p-Id | n |- n
)";
  std::string tail;
  std::istringstream in(kLikesTail);
  for (std::string l; std::getline(in, l);)
    if (!l.empty()) tail += std::string(18, ' ') + l + "\n";
  t.replace(t.find("TAIL\n"), 5, tail);
  return outline(t, kScopeNeg, kScopeMacros);
}


// Worked cut-elimination example: a Pn-Cut on dn n.
inline const AtomSet kCutNeg = {"n", "m", "d"};

inline Derivation cut_example_left() {
  return prove(parse_sequent("p .* dn(p\\n) |- dn n", kCutNeg)).front();
}

inline Derivation cut_example_right() {
  auto S = [](const std::string& t) { return parse_sequent(t, kCutNeg); };
  auto step = [](const char* name, Dir dir, Derivation d) { return apply_forward({name, dir}, {std::move(d)}); };
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

inline Derivation cut_example() {
  Derivation l = cut_example_left(), r = cut_example_right();
  auto rule = cut_rule_for(l.conclusion, r.conclusion);
  return {*rule, {l.conclusion.pre, r.conclusion.suc}, {l, r}};
}

inline const std::map<std::string, std::string> kCutMacros = {
    {"A", "p .* dn (p \\ n)"},
    {"X", "up (dn n * p) ./ p"},
};

// the parametric move's expected outcome, with π written out
inline const char* kCutResult = R"(
s-down elim | {A} |- {X}
  dp_up_dn fwd | {A} |- .dn {X}
    dp_up_dn inv | .up {A} |- {X}
      s-down intro | {A} |- .dn {X}
        dp_otimes_over fwd | {A} |- {X}
          s-up elim | {A} .* p |- up (dn n * p)
            up_R | .up ({A} .* p) |- up (dn n * p)
              otimes_R | {A} .* p |- dn n * p
                down_R | {A} |- dn n
                  P-Cut | {A} |- .dn n
                    down_R | {A} |- dn n
                      s-down intro | {A} |- .dn n
                        dp_otimes_under fwd | {A} |- n
                          s-down elim | dn (p \ n) |- p .\ n
                            down_L | dn (p \ n) |- .dn (p .\ n)
                              under_L | p \ n |- p .\ n
                                p-Id | p |- p
                                n-Id | n |- n
                    down_L | dn n |- .dn n
                      n-Id | n |- n
                p-Id | p |- p
)";

}  // namespace lgtest
