#pragma once

#include <optional>
#include <random>

#include "lg/syntax.hpp"

namespace lgtest {

using namespace lg;

struct Gen {
  std::mt19937 rng;
  std::vector<std::string> pos = {"p", "q"};
  std::vector<std::string> neg = {"n", "m"};
  bool variants = false;
  explicit Gen(unsigned seed) : rng(seed) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
  bool coin() { return pick(2) == 0; }
  Sort general(Pol p) { return {p, coin() ? Pur::Pure : Pur::Shifted}; }

  Term formula(Sort s, int depth) {
    if (s == PurePos && (depth <= 1 || pick(4) == 0)) return atom(pos[pick(static_cast<int>(pos.size()))], Pol::Pos);
    if (s == PureNeg && (depth <= 1 || pick(4) == 0)) return atom(neg[pick(static_cast<int>(neg.size()))], Pol::Neg);
    int d = depth - 1;
    if (s == ShiftedPos) return fml(Op::Down, {formula(PureNeg, d)});
    if (s == ShiftedNeg) return fml(Op::Up, {formula(PurePos, d)});
    Pol P = Pol::Pos, N = Pol::Neg;
    if (s == PurePos) {
      switch (pick(3)) {
        case 0: return fml(Op::Otimes, {formula(general(P), d), formula(general(P), d)});
        case 1: return fml(Op::Oslash, {formula(general(P), d), formula(general(N), d)});
        default: return fml(Op::Obslash, {formula(general(N), d), formula(general(P), d)});
      }
    }
    switch (pick(3)) {
      case 0: return fml(Op::Oplus, {formula(general(N), d), formula(general(N), d)});
      case 1: return fml(Op::Under, {formula(general(P), d), formula(general(N), d)});
      default: return fml(Op::Over, {formula(general(N), d), formula(general(P), d)});
    }
  }

  Term structure(Sort s, int depth) {
    if (depth <= 1 || pick(5) == 0) return formula(s, std::max(2, depth - 1));
    int d = depth - 1;
    Pol P = Pol::Pos, N = Pol::Neg;
    if (s == ShiftedPos) {
      if (variants && coin()) {
        switch (pick(6)) {
          case 0: return str(Op::Oplus, {structure(general(P), d), structure(general(N), d)}, Var::L);
          case 1: return str(Op::Oplus, {structure(general(N), d), structure(general(P), d)}, Var::R);
          case 2: return str(Op::Under, {structure(general(N), d), structure(general(N), d)}, Var::L);
          case 3: return str(Op::Under, {structure(general(P), d), structure(general(P), d)}, Var::R);
          case 4: return str(Op::Over, {structure(general(P), d), structure(general(P), d)}, Var::L);
          default: return str(Op::Over, {structure(general(N), d), structure(general(N), d)}, Var::R);
        }
      }
      return coin() ? str(Op::Down, {structure(PureNeg, d)}) : formula(s, depth);
    }
    if (s == ShiftedNeg) {
      if (variants && coin()) {
        switch (pick(6)) {
          case 0: return str(Op::Otimes, {structure(general(N), d), structure(general(P), d)}, Var::L);
          case 1: return str(Op::Otimes, {structure(general(P), d), structure(general(N), d)}, Var::R);
          case 2: return str(Op::Oslash, {structure(general(N), d), structure(general(N), d)}, Var::L);
          case 3: return str(Op::Oslash, {structure(general(P), d), structure(general(P), d)}, Var::R);
          case 4: return str(Op::Obslash, {structure(general(P), d), structure(general(P), d)}, Var::L);
          default: return str(Op::Obslash, {structure(general(N), d), structure(general(N), d)}, Var::R);
        }
      }
      return coin() ? str(Op::Up, {structure(PurePos, d)}) : formula(s, depth);
    }
    if (variants && pick(6) == 0)
      return s == PurePos ? str(Op::DownR, {structure(ShiftedNeg, d)}) : str(Op::UpL, {structure(ShiftedPos, d)});
    if (s == PurePos) {
      switch (pick(3)) {
        case 0: return str(Op::Otimes, {structure(general(P), d), structure(general(P), d)});
        case 1: return str(Op::Oslash, {structure(general(P), d), structure(general(N), d)});
        default: return str(Op::Obslash, {structure(general(N), d), structure(general(P), d)});
      }
    }
    switch (pick(3)) {
      case 0: return str(Op::Oplus, {structure(general(N), d), structure(general(N), d)});
      case 1: return str(Op::Under, {structure(general(P), d), structure(general(N), d)});
      default: return str(Op::Over, {structure(general(N), d), structure(general(P), d)});
    }
  }

  Sort any_sort() {
    switch (pick(4)) {
      case 0: return PurePos;
      case 1: return ShiftedPos;
      case 2: return PureNeg;
      default: return ShiftedNeg;
    }
  }
};

}  // namespace lgtest

#include "lg/cutelim.hpp"
#include "lg/kernel.hpp"
#include "lg/search.hpp"
#include "lg/standardize.hpp"
#include "lg/translate.hpp"

namespace lgtest {

// A cut on a random formula A between `ftom(A) |- A` and a proof with A alone
// in precedent: either the identity expansion or a search result for A |- ftoM(A).
inline std::optional<Derivation> random_cut_proof(Gen& g, std::size_t maxHeight) {
  Term a = g.formula(g.any_sort(), 2 + g.pick(2));
  try {
    Derivation id = identity_expansion(a);
    Derivation left = saturate_translations(id, 1);
    Derivation right;
    if (g.coin()) {
      right = saturate_translations(id, 0);
    } else {
      SearchConfig c;
      c.maxSolutions = 4;
      auto found = prove({a, *ftoM(a)}, c);
      if (found.empty()) return std::nullopt;
      right = found[static_cast<std::size_t>(g.pick(static_cast<int>(found.size())))];
    }
    if (!equal(left.conclusion.suc, right.conclusion.pre)) return std::nullopt;
    auto rule = cut_rule_for(left.conclusion, right.conclusion);
    if (!rule) return std::nullopt;
    Derivation d{*rule, {left.conclusion.pre, right.conclusion.suc}, {left, right}};
    if (proof_height(d) > maxHeight || !check_derivation(d).ok) return std::nullopt;
    return d;
  } catch (const RuleError&) {
    return std::nullopt;
  }
}

// Forward closure from axioms under random f.LG rules, capped in height.
inline std::vector<FlgDerivation> random_flg_proofs(Gen& g, std::size_t count, std::size_t maxHeight) {
  static const std::vector<RuleId> kRules = {
      {"otimes_R"}, {"oslash_R"}, {"obslash_R"}, {"oplus_L"}, {"under_L"}, {"over_L"},
      {"otimes_L"}, {"oslash_L"}, {"obslash_L"}, {"oplus_R"}, {"under_R"}, {"over_R"},
      {"dp_otimes_under", Dir::Fwd}, {"dp_otimes_under", Dir::Inv}, {"dp_otimes_over", Dir::Fwd},
      {"dp_otimes_over", Dir::Inv}, {"dp_oslash_oplus", Dir::Fwd}, {"dp_oslash_oplus", Dir::Inv},
      {"dp_obslash_oplus", Dir::Fwd}, {"dp_obslash_oplus", Dir::Inv},
      {"mu*"}, {"mu~"}, {"mu"}, {"mu~*"}};
  std::vector<FlgDerivation> pool;
  for (const auto& a : g.pos) pool.push_back({{"Ax"}, {atom(a, Pol::Pos), atom(a, Pol::Pos), FlgFocus::Right}, {}});
  for (const auto& a : g.neg) pool.push_back({{"Ax"}, {atom(a, Pol::Neg), atom(a, Pol::Neg), FlgFocus::Left}, {}});
  std::vector<FlgDerivation> out;
  for (int tries = 0; out.size() < count && tries < 200000; ++tries) {
    const RuleId& r = kRules[static_cast<std::size_t>(g.pick(static_cast<int>(kRules.size())))];
    bool binary = r.name.find("_R") != std::string::npos && r.name[0] == 'o' && r.name != "oplus_R";
    binary = binary || r.name == "oplus_L" || r.name == "under_L" || r.name == "over_L";
    std::vector<FlgDerivation> ps;
    for (int i = 0; i < (binary ? 2 : 1); ++i) ps.push_back(pool[static_cast<std::size_t>(g.pick(static_cast<int>(pool.size())))]);
    std::vector<FlgSequent> cs;
    for (const auto& p : ps) cs.push_back(p.conclusion);
    try {
      FlgDerivation d{r, flg_apply_forward(r, cs), ps};
      if (flg_height(d) > maxHeight) continue;
      pool.push_back(d);
      if (flg_height(d) >= 3) out.push_back(d);
    } catch (const FlgError&) {
    }
  }
  return out;
}

}  // namespace lgtest
