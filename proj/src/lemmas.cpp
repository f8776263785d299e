#include <map>

#include "lg/cutelim.hpp"
#include "lg/kernel.hpp"
#include "lg/standardize.hpp"

namespace lg {

namespace {

Derivation fwd(const char* name, Dir dir, Derivation d) { return apply_forward({name, dir}, {std::move(d)}); }

struct Chain {
  std::vector<RuleId> steps;
  int side = 0;
};

Chain display_chain(const Sequent& s, const SeqPath& p, bool allowVariants) {
  struct State {
    Sequent s;
    SeqPath occ;
    int parent;
    RuleId rule;
  };
  std::vector<State> v{{s, p, -1, {}}};
  std::map<std::pair<std::size_t, SeqPath>, std::vector<std::size_t>> seen;
  auto known = [&](const Sequent& q, const SeqPath& o) {
    auto& b = seen[{SequentHash{}(q), o}];
    for (auto i : b)
      if (v[i].s == q) return true;
    return false;
  };
  seen[{SequentHash{}(s), p}].push_back(0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].occ.path.empty()) {
      Chain c;
      c.side = v[i].occ.side;
      for (int j = static_cast<int>(i); v[static_cast<std::size_t>(j)].parent >= 0; j = v[static_cast<std::size_t>(j)].parent)
        c.steps.insert(c.steps.begin(), v[static_cast<std::size_t>(j)].rule);
      return c;
    }
    for (const auto& r : rules()) {
      if (r.group != Group::Display || (!allowVariants && r.variantDp)) continue;
      Sequent next;
      try {
        next = apply_rule_forward(r.id, {v[i].s});
      } catch (const RuleError&) {
        continue;
      }
      auto occ = trace_down(r.id, 0, v[i].occ);
      if (!occ || known(next, *occ)) continue;
      seen[{SequentHash{}(next), *occ}].push_back(v.size());
      v.push_back({next, *occ, static_cast<int>(i), r.id});
    }
  }
  throw RuleError("cannot display " + render(at(s, p)) + " in " + render(s));
}

Derivation run_chain(Derivation d, const std::vector<RuleId>& steps) {
  for (const auto& r : steps) d = apply_forward(r, {std::move(d)});
  return d;
}

Derivation undo_chain(Derivation d, const std::vector<RuleId>& steps) {
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) d = apply_forward(inverse(*it), {std::move(d)});
  return d;
}

Derivation translate_root(Derivation d, int side) {
  for (const auto& r : rules()) {
    bool trans = r.group == Group::Translation || r.id.name == "down_R" || r.id.name == "up_L";
    if (!trans) continue;
    try {
      Derivation out = apply_forward(r.id, {d});
      const Term& t = side == 0 ? out.conclusion.pre : out.conclusion.suc;
      if (is_formula(t)) return out;
    } catch (const RuleError&) {
    }
  }
  const Term& t = side == 0 ? d.conclusion.pre : d.conclusion.suc;
  throw RuleError("no translation rule turns " + render(t) + " into a formula");
}

Derivation saturate(Derivation d, int side) {
  Term t = side == 0 ? d.conclusion.pre : d.conclusion.suc;
  if (is_formula(t)) return d;
  if (t->var != Var::None || t->op == Op::UpL || t->op == Op::DownR)
    throw RuleError("Form is undefined on " + render(t));
  if (side == 1 && t->op == Op::Down) {
    d = saturate(fwd("s-down", Dir::Inv, std::move(d)), 1);
    return translate_root(fwd("s-down", Dir::Fwd, std::move(d)), 1);
  }
  if (side == 0 && t->op == Op::Up) {
    d = saturate(fwd("s-up", Dir::Inv, std::move(d)), 0);
    return translate_root(fwd("s-up", Dir::Fwd, std::move(d)), 0);
  }
  for (int i = 0; i < static_cast<int>(t->kids.size()); ++i) {
    Term cur = side == 0 ? d.conclusion.pre : d.conclusion.suc;
    if (is_formula(cur->kids[static_cast<std::size_t>(i)])) continue;
    Chain c = display_chain(d.conclusion, {side, {i}}, false);
    d = undo_chain(saturate(run_chain(std::move(d), c.steps), c.side), c.steps);
  }
  return translate_root(std::move(d), side);
}

}  // namespace

Derivation display(const Derivation& d, const SeqPath& p, int* sideOut, bool allowVariants) {
  Chain c = display_chain(d.conclusion, p, allowVariants);
  if (sideOut) *sideOut = c.side;
  return run_chain(d, c.steps);
}

Derivation saturate_translations(const Derivation& d, int side) { return saturate(d, side); }

Derivation identity_expansion(const Term& psi) {
  if (!well_sorted(psi)) throw RuleError("ill-sorted structure " + render(psi));
  if (psi->op == Op::Atom) return {{psi->atomPol == Pol::Pos ? "p-Id" : "n-Id"}, {psi, psi}, {}};
  if (psi->var != Var::None || psi->op == Op::UpL || psi->op == Op::DownR)
    throw RuleError("identity expansion is undefined on " + render(psi));
  bool f = family(psi->op) == Family::F;
  std::vector<Derivation> prems;
  for (int i = 0; i < static_cast<int>(psi->kids.size()); ++i) {
    Derivation ih = identity_expansion(psi->kids[static_cast<std::size_t>(i)]);
    bool prePos = f == monotone_arg(psi->op, i);
    prems.push_back(saturate(std::move(ih), prePos ? 1 : 0));
  }
  static const std::map<Op, std::pair<const char*, const char*>> tonicity = {
      {Op::Otimes, {"otimes_R", ""}}, {Op::Oslash, {"oslash_R", ""}}, {Op::Obslash, {"obslash_R", ""}},
      {Op::Up, {"up_R", ""}},         {Op::Oplus, {"", "oplus_L"}},   {Op::Under, {"", "under_L"}},
      {Op::Over, {"", "over_L"}},     {Op::Down, {"", "down_L"}},
  };
  const auto& names = tonicity.at(psi->op);
  Derivation out = apply_forward({f ? names.first : names.second}, std::move(prems));
  auto lo = ftom(psi), hi = ftoM(psi);
  if (!lo || !hi || !(out.conclusion == Sequent{*lo, *hi}))
    throw RuleError("identity expansion of " + render(psi) + " ended in " + render(out.conclusion));
  return out;
}

Derivation structural_cut(const Derivation& d1, const Derivation& d2) {
  Derivation l = saturate(d1, 1);
  Derivation r = saturate(d2, 0);
  if (!(l.conclusion.suc == r.conclusion.pre) && !equal(l.conclusion.suc, r.conclusion.pre))
    throw RuleError("cut structures differ: " + render(l.conclusion.suc) + " vs " + render(r.conclusion.pre));
  auto rule = cut_rule_for(l.conclusion, r.conclusion);
  if (!rule) throw RuleError("no cut rule for " + render(l.conclusion) + " and " + render(r.conclusion));
  return {*rule, {l.conclusion.pre, r.conclusion.suc}, {l, r}};
}

}  // namespace lg
