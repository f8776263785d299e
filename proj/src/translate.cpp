#include "lg/translate.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "json.hpp"

#include "lg/focus.hpp"

namespace lg {

namespace {

bool is_f(Op op) { return family(op) == Family::F; }

// argument i of op sits in an input (precedent-like) position
bool input_arg(Op op, int i) { return is_f(op) == monotone_arg(op, i); }

const std::map<std::string, Op>& connective_names() {
  static const std::map<std::string, Op> m = {{"otimes", Op::Otimes}, {"oslash", Op::Oslash},
                                              {"obslash", Op::Obslash}, {"oplus", Op::Oplus},
                                              {"under", Op::Under},   {"over", Op::Over}};
  return m;
}

std::optional<std::pair<Op, bool>> logical_rule(const std::string& name) {
  auto us = name.rfind('_');
  if (us == std::string::npos) return std::nullopt;
  auto it = connective_names().find(name.substr(0, us));
  std::string side = name.substr(us + 1);
  if (it == connective_names().end() || (side != "L" && side != "R")) return std::nullopt;
  bool right = side == "R";
  bool tonicity = is_f(it->second) == right;
  return std::make_pair(it->second, tonicity);
}

std::vector<Term> kids_of(const Term& t) { return t->kids; }

[[noreturn]] void fail(const std::string& msg) { throw FlgError(msg); }

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\n");
  auto b = s.find_last_not_of(" \t\n");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

bool bracketed(const std::string& s) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') return false;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '[') ++depth;
    if (s[i] == ']' && --depth == 0 && i + 1 != s.size()) return false;
  }
  return true;
}

}  // namespace

bool operator==(const FlgSequent& a, const FlgSequent& b) {
  return a.focus == b.focus && equal(a.pre, b.pre) && equal(a.suc, b.suc);
}

bool operator==(const FlgDerivation& a, const FlgDerivation& b) {
  return a.rule == b.rule && a.conclusion == b.conclusion && a.premises == b.premises;
}

std::string render(const FlgSequent& s) {
  std::string l = render(s.pre), r = render(s.suc);
  if (s.focus == FlgFocus::Left) l = "[" + l + "]";
  if (s.focus == FlgFocus::Right) r = "[" + r + "]";
  return l + " |- " + r;
}

FlgSequent parse_flg_sequent(const std::string& text, const AtomSet& negAtoms) {
  auto at = text.find("|-");
  if (at == std::string::npos || text.find("|-", at + 2) != std::string::npos)
    throw ParseError("expected exactly one '|-' in '" + text + "'");
  std::string l = trim(text.substr(0, at)), r = trim(text.substr(at + 2));
  FlgSequent s;
  if (bracketed(l)) {
    s.focus = FlgFocus::Left;
    l = l.substr(1, l.size() - 2);
  }
  if (bracketed(r)) {
    if (s.focus != FlgFocus::None) throw ParseError("two focused formulas in '" + text + "'");
    s.focus = FlgFocus::Right;
    r = r.substr(1, r.size() - 2);
  }
  Sequent raw = parse_raw_sequent(l + " |- " + r, negAtoms);
  s.pre = raw.pre;
  s.suc = raw.suc;
  if (!flg_well_formed(s)) throw ParseError("not an f.LG sequent: '" + text + "'");
  return s;
}

bool is_flg_formula(const Term& t) {
  if (t->layer != Layer::Formula || t->op == Op::Meta) return false;
  if (t->op == Op::Atom) return true;
  if (is_shift(t->op) || t->var != Var::None) return false;
  for (const auto& k : t->kids)
    if (!is_flg_formula(k)) return false;
  return true;
}

namespace {
bool structure_of(const Term& t, bool input) {
  if (t->layer == Layer::Formula) return is_flg_formula(t);
  if (t->op == Op::Meta || is_shift(t->op) || t->var != Var::None) return false;
  if (is_f(t->op) != input) return false;
  for (int i = 0; i < static_cast<int>(t->kids.size()); ++i)
    if (!structure_of(t->kids[static_cast<std::size_t>(i)], input_arg(t->op, i))) return false;
  return true;
}
}  // namespace

bool is_input_structure(const Term& t) { return structure_of(t, true); }
bool is_output_structure(const Term& t) { return structure_of(t, false); }

bool flg_positive(const Term& a) {
  if (a->op == Op::Atom) return a->atomPol == Pol::Pos;
  return is_f(a->op);
}

bool flg_well_formed(const FlgSequent& s) {
  if (!is_input_structure(s.pre) || !is_output_structure(s.suc)) return false;
  if (s.focus == FlgFocus::Left) return is_flg_formula(s.pre);
  if (s.focus == FlgFocus::Right) return is_flg_formula(s.suc);
  return true;
}

// ---------------------------------------------------------------- kernel

FlgSequent flg_apply_forward(const RuleId& rule, const std::vector<FlgSequent>& ps) {
  const std::string& n = rule.name;
  auto need = [&](std::size_t k) {
    if (ps.size() != k) fail(n + " takes " + std::to_string(k) + " premise(s)");
  };
  auto neutral = [&](const FlgSequent& s) {
    if (s.focus != FlgFocus::None) fail(n + " needs an unfocused premise, got " + render(s));
  };
  if (n == "Ax") fail("Ax has no premises");
  if (auto lr = logical_rule(n)) {
    auto [op, tonicity] = *lr;
    int arity = 2;
    if (tonicity) {
      need(static_cast<std::size_t>(arity));
      std::vector<Term> ctx, fs;
      for (int i = 0; i < arity; ++i) {
        const FlgSequent& p = ps[static_cast<std::size_t>(i)];
        bool right = input_arg(op, i);
        if (p.focus != (right ? FlgFocus::Right : FlgFocus::Left))
          fail(n + ": premise " + std::to_string(i) + " must be " + (right ? "right" : "left") + "-focused");
        ctx.push_back(right ? p.pre : p.suc);
        fs.push_back(right ? p.suc : p.pre);
      }
      Term s = str(op, ctx), f = fml(op, fs);
      return is_f(op) ? FlgSequent{s, f, FlgFocus::Right} : FlgSequent{f, s, FlgFocus::Left};
    }
    need(1);
    const FlgSequent& p = ps[0];
    neutral(p);
    const Term& side = is_f(op) ? p.pre : p.suc;
    if (side->layer != Layer::Structure || side->op != op || side->var != Var::None)
      fail(n + ": no " + render(side) + " to translate");
    for (const auto& k : side->kids)
      if (!is_flg_formula(k)) fail(n + ": arguments of " + render(side) + " must be formulas");
    Term f = fml(op, kids_of(side));
    return is_f(op) ? FlgSequent{f, p.suc, FlgFocus::None} : FlgSequent{p.pre, f, FlgFocus::None};
  }
  if (n == "mu*" || n == "mu~" || n == "mu" || n == "mu~*") {
    need(1);
    const FlgSequent& p = ps[0];
    bool pos = n == "mu*" || n == "mu~";
    auto polarity_ok = [&](const Term& a) {
      if (!is_flg_formula(a) || flg_positive(a) != pos)
        fail(n + " needs a " + std::string(pos ? "positive" : "negative") + " formula, got " + render(a));
    };
    if (n == "mu*") {
      if (p.focus != FlgFocus::Right) fail("mu* needs a right-focused premise");
      polarity_ok(p.suc);
      return {p.pre, p.suc, FlgFocus::None};
    }
    if (n == "mu") {
      if (p.focus != FlgFocus::Left) fail("mu needs a left-focused premise");
      polarity_ok(p.pre);
      return {p.pre, p.suc, FlgFocus::None};
    }
    neutral(p);
    if (n == "mu~") {
      polarity_ok(p.pre);
      return {p.pre, p.suc, FlgFocus::Left};
    }
    polarity_ok(p.suc);
    return {p.pre, p.suc, FlgFocus::Right};
  }
  // display postulates, written as premise => conclusion for Fwd
  need(1);
  FlgSequent p = ps[0];
  neutral(p);
  bool fwd = rule.dir == Dir::Fwd;
  if (rule.dir == Dir::None) fail("display postulate " + n + " needs a direction");
  auto is = [](const Term& t, Op op) { return t->layer == Layer::Structure && t->op == op && t->var == Var::None; };
  auto out = [](Term l, Term r) { return FlgSequent{std::move(l), std::move(r), FlgFocus::None}; };
  if (n == "dp_otimes_under") {
    // Y |- X .\ D  <=>  X .* Y |- D
    if (fwd && is(p.suc, Op::Under)) return out(str(Op::Otimes, {p.suc->kids[0], p.pre}), p.suc->kids[1]);
    if (!fwd && is(p.pre, Op::Otimes)) return out(p.pre->kids[1], str(Op::Under, {p.pre->kids[0], p.suc}));
  } else if (n == "dp_otimes_over") {
    // X .* Y |- D  <=>  X |- D ./ Y
    if (fwd && is(p.pre, Op::Otimes)) return out(p.pre->kids[0], str(Op::Over, {p.suc, p.pre->kids[1]}));
    if (!fwd && is(p.suc, Op::Over)) return out(str(Op::Otimes, {p.pre, p.suc->kids[1]}), p.suc->kids[0]);
  } else if (n == "dp_oslash_oplus") {
    // X .(/) D |- G  <=>  X |- G .(+) D
    if (fwd && is(p.pre, Op::Oslash)) return out(p.pre->kids[0], str(Op::Oplus, {p.suc, p.pre->kids[1]}));
    if (!fwd && is(p.suc, Op::Oplus)) return out(str(Op::Oslash, {p.pre, p.suc->kids[1]}), p.suc->kids[0]);
  } else if (n == "dp_obslash_oplus") {
    // X |- G .(+) D  <=>  G .(\) X |- D
    if (fwd && is(p.suc, Op::Oplus)) return out(str(Op::Obslash, {p.suc->kids[0], p.pre}), p.suc->kids[1]);
    if (!fwd && is(p.pre, Op::Obslash)) return out(p.pre->kids[1], str(Op::Oplus, {p.pre->kids[0], p.suc}));
  } else {
    fail("unknown f.LG rule '" + to_string(rule) + "'");
  }
  fail(to_string(rule) + " does not apply to " + render(p));
}

CheckReport check_flg(const FlgDerivation& d) {
  std::function<CheckReport(const FlgDerivation&, const std::vector<int>&)> go =
      [&](const FlgDerivation& n, const std::vector<int>& path) -> CheckReport {
    auto bad = [&](const std::string& why) { return CheckReport{false, path_string(path), why}; };
    if (!flg_well_formed(n.conclusion)) return bad("not an f.LG sequent: " + render(n.conclusion));
    if (n.rule.name == "Ax") {
      const auto& c = n.conclusion;
      bool pos = c.focus == FlgFocus::Right && c.pre->op == Op::Atom && equal(c.pre, c.suc) && c.pre->atomPol == Pol::Pos;
      bool neg = c.focus == FlgFocus::Left && c.pre->op == Op::Atom && equal(c.pre, c.suc) && c.pre->atomPol == Pol::Neg;
      if (!n.premises.empty()) return bad("Ax has no premises");
      if (!pos && !neg) return bad("Ax needs p |- [p] or [n] |- n, got " + render(c));
      return {};
    }
    std::vector<FlgSequent> ps;
    for (const auto& p : n.premises) ps.push_back(p.conclusion);
    try {
      FlgSequent c = flg_apply_forward(n.rule, ps);
      if (!(c == n.conclusion)) return bad(to_string(n.rule) + " yields " + render(c) + ", not " + render(n.conclusion));
    } catch (const FlgError& e) {
      return bad(e.what());
    }
    for (int i = 0; i < static_cast<int>(n.premises.size()); ++i) {
      auto p = path;
      p.push_back(i);
      auto r = go(n.premises[static_cast<std::size_t>(i)], p);
      if (!r.ok) return r;
    }
    return {};
  };
  return go(d, {});
}

std::size_t flg_height(const FlgDerivation& d) {
  std::size_t h = 0;
  for (const auto& p : d.premises) h = std::max(h, flg_height(p));
  return h + 1;
}

std::size_t flg_logical_count(const FlgDerivation& d) {
  std::size_t n = logical_rule(d.rule.name) ? 1 : 0;
  for (const auto& p : d.premises) n += flg_logical_count(p);
  return n;
}

std::string dump(const FlgDerivation& d, int indent) {
  std::string s(static_cast<std::size_t>(indent) * 2, ' ');
  s += "[" + to_string(d.rule) + "] " + render(d.conclusion) + "\n";
  for (const auto& p : d.premises) s += dump(p, indent + 1);
  return s;
}

// ---------------------------------------------------------------- JSON

using nlohmann::ordered_json;

namespace {
ordered_json flg_node(const FlgDerivation& d) {
  ordered_json j;
  j["rule"] = d.rule.name;
  if (d.rule.dir != Dir::None) j["dir"] = d.rule.dir == Dir::Fwd ? "fwd" : "inv";
  j["conclusion"] = render(d.conclusion);
  j["premises"] = ordered_json::array();
  for (const auto& p : d.premises) j["premises"].push_back(flg_node(p));
  return j;
}

FlgDerivation flg_node_from(const ordered_json& j, const AtomSet& neg) {
  if (!j.is_object() || !j.contains("rule") || !j.contains("conclusion"))
    throw ParseError("derivation node needs 'rule' and 'conclusion'");
  FlgDerivation d;
  d.rule.name = j.at("rule").get<std::string>();
  if (j.contains("dir")) {
    std::string dir = j.at("dir").get<std::string>();
    if (dir == "fwd") d.rule.dir = Dir::Fwd;
    else if (dir == "inv") d.rule.dir = Dir::Inv;
    else throw ParseError("bad dir '" + dir + "'");
  }
  d.conclusion = parse_flg_sequent(j.at("conclusion").get<std::string>(), neg);
  if (j.contains("premises"))
    for (const auto& p : j.at("premises")) d.premises.push_back(flg_node_from(p, neg));
  return d;
}
}  // namespace

std::string to_json(const FlgDerivation& d, const AtomSet& negAtoms, int indent) {
  ordered_json j;
  j["calculus"] = "flg";
  j["negAtoms"] = ordered_json::array();
  for (const auto& a : negAtoms) j["negAtoms"].push_back(a);
  ordered_json body = flg_node(d);
  for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
  return j.dump(indent);
}

FlgDerivation flg_from_json(const std::string& text, AtomSet* negAtomsOut) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (j.value("calculus", "") != "flg") throw ParseError("missing \"calculus\": \"flg\" header");
  AtomSet neg;
  if (j.contains("negAtoms"))
    for (const auto& a : j.at("negAtoms")) neg.insert(a.get<std::string>());
  if (negAtomsOut) *negAtomsOut = neg;
  return flg_node_from(j, neg);
}

// ---------------------------------------------------------------- ⌈·⌉

Term polarize_formula(const Term& a, Sign s) {
  bool plus = s == Sign::Plus;
  if (a->op == Op::Atom) {
    bool pos = a->atomPol == Pol::Pos;
    if (pos == plus) return a;
    return plus ? fml(Op::Down, {a}) : fml(Op::Up, {a});
  }
  if (!is_flg_formula(a)) fail("not an f.LG formula: " + render(a));
  std::vector<Term> kids;
  for (int i = 0; i < static_cast<int>(a->kids.size()); ++i)
    kids.push_back(polarize_formula(a->kids[static_cast<std::size_t>(i)],
                                    input_arg(a->op, i) ? Sign::Plus : Sign::Minus));
  Term core = fml(a->op, kids);
  if (is_f(a->op) == plus) return core;
  return plus ? fml(Op::Down, {core}) : fml(Op::Up, {core});
}

Term polarize_structure(const Term& x, Sign s) {
  if (x->layer == Layer::Formula) return polarize_formula(x, s);
  std::vector<Term> kids;
  for (int i = 0; i < static_cast<int>(x->kids.size()); ++i)
    kids.push_back(polarize_structure(x->kids[static_cast<std::size_t>(i)],
                                      input_arg(x->op, i) ? Sign::Plus : Sign::Minus));
  return str(x->op, kids);
}

Sequent polarize_sequent(const FlgSequent& s) {
  if (!flg_well_formed(s)) fail("not an f.LG sequent: " + render(s));
  if (s.focus == FlgFocus::Right) return {polarize_structure(s.pre, Sign::Plus), polarize_formula(s.suc, Sign::Plus)};
  if (s.focus == FlgFocus::Left) return {polarize_formula(s.pre, Sign::Minus), polarize_structure(s.suc, Sign::Minus)};
  return {polarize_structure(s.pre, Sign::Plus), polarize_structure(s.suc, Sign::Minus)};
}

Derivation translate_to_fdlg(const FlgDerivation& d) {
  Sequent target = polarize_sequent(d.conclusion);
  const std::string& n = d.rule.name;
  if (n == "Ax") return {{d.conclusion.pre->atomPol == Pol::Pos ? "p-Id" : "n-Id"}, target, {}};
  std::vector<Derivation> ps;
  for (const auto& p : d.premises) ps.push_back(translate_to_fdlg(p));
  Derivation out;
  if (n == "mu*") {
    out = apply_forward({"s-up", Dir::Inv}, {apply_forward({"up_R"}, ps)});
  } else if (n == "mu~") {
    out = apply_forward({"up_L"}, {apply_forward({"s-up", Dir::Fwd}, ps)});
  } else if (n == "mu") {
    out = apply_forward({"s-down", Dir::Inv}, {apply_forward({"down_L"}, ps)});
  } else if (n == "mu~*") {
    out = apply_forward({"down_R"}, {apply_forward({"s-down", Dir::Fwd}, ps)});
  } else {
    out = apply_forward(d.rule, ps);
  }
  if (!(out.conclusion == target))
    fail("translation of " + to_string(d.rule) + " ends in " + render(out.conclusion) + ", expected " + render(target));
  return out;
}

// ---------------------------------------------------------------- ⌊·⌋

Term depolarize(const Term& t) {
  if (t->op == Op::Atom) return t;
  if (t->op == Op::Meta) fail("metavariable in depolarize");
  if (t->var != Var::None || (t->layer == Layer::Structure && is_shift(t->op)) || t->op == Op::UpL ||
      t->op == Op::DownR)
    fail("structural shift or variant in " + render(t));
  if (t->layer == Layer::Formula && is_shift(t->op)) return depolarize(t->kids[0]);
  std::vector<Term> kids;
  for (const auto& k : t->kids) kids.push_back(depolarize(k));
  return make(t->op, t->layer, Var::None, kids);
}

namespace {
std::optional<FlgSequent> try_depolarize(const Sequent& s) {
  if (!well_formed(s)) return std::nullopt;
  FlgSequent out;
  try {
    out.pre = depolarize(s.pre);
    out.suc = depolarize(s.suc);
  } catch (const FlgError&) {
    return std::nullopt;
  }
  switch (turnstile(s).family) {
    case Family3::Positive: out.focus = FlgFocus::Right; break;
    case Family3::Negative: out.focus = FlgFocus::Left; break;
    default: out.focus = FlgFocus::None;
  }
  if (!flg_well_formed(out)) return std::nullopt;
  return out;
}
}  // namespace

bool is_normal(const Sequent& s) {
  auto f = try_depolarize(s);
  return f && polarize_sequent(*f) == s;
}

FlgSequent depolarize_sequent(const Sequent& s) {
  auto f = try_depolarize(s);
  if (!f || !(polarize_sequent(*f) == s)) fail("not a normal sequent: " + render(s));
  return *f;
}

std::string to_string(Pattern p) {
  switch (p) {
    case Pattern::DownFocus: return "down-focus";
    case Pattern::UpUnfocus: return "up-unfocus";
    case Pattern::DownExit: return "down-exit";
    case Pattern::DownExitDot: return "down-exit-dot";
    case Pattern::UpExit: return "up-exit";
    case Pattern::UpExitDot: return "up-exit-dot";
    case Pattern::NegativeAtom: return "negative-atom";
    default: return "positive-atom";
  }
}

namespace {
// d has a normal conclusion and a non-normal premise
Pattern match_section(const Derivation& d) {
  if (d.premises.size() != 1 || d.premises[0].premises.size() != 1)
    fail("processing section at " + render(d.conclusion) + " is not a two-rule chain");
  const Derivation& mid = d.premises[0];
  const Derivation& top = mid.premises[0];
  if (!is_normal(top.conclusion)) fail("processing section above " + render(d.conclusion) + " is longer than two rules");
  const RuleId& lo = d.rule;
  const RuleId& hi = mid.rule;
  if (lo == RuleId{"s-down", Dir::Inv} && hi.name == "down_L") return Pattern::DownFocus;
  if (lo == RuleId{"s-up", Dir::Inv} && hi.name == "up_R") return Pattern::UpUnfocus;
  if (lo.name == "down_R" && hi == RuleId{"s-down", Dir::Fwd})
    return sort_of(top.conclusion.pre).pur == Pur::Shifted ? Pattern::DownExitDot : Pattern::DownExit;
  if (lo.name == "up_L" && hi == RuleId{"s-up", Dir::Fwd})
    return sort_of(top.conclusion.suc).pur == Pur::Shifted ? Pattern::UpExitDot : Pattern::UpExit;
  if (lo.name == "down_R" && hi.name == "down_L" && top.rule.name == "n-Id") return Pattern::NegativeAtom;
  if (lo.name == "up_L" && hi.name == "up_R" && top.rule.name == "p-Id") return Pattern::PositiveAtom;
  fail("no processing pattern for " + to_string(hi) + " ; " + to_string(lo) + " at " + render(d.conclusion));
}
}  // namespace

std::vector<ProcessingSection> classify_processing_sections(const Derivation& d) {
  std::vector<ProcessingSection> out;
  std::vector<int> path;
  std::function<void(const Derivation&)> go = [&](const Derivation& n) {
    if (!is_normal(n.conclusion)) fail("non-normal sequent outside any section: " + render(n.conclusion));
    bool section = false;
    for (const auto& p : n.premises)
      if (!is_normal(p.conclusion)) section = true;
    if (section) {
      out.push_back({path, match_section(n)});
      path.push_back(0);
      path.push_back(0);
      go(n.premises[0].premises[0]);
      path.resize(path.size() - 2);
      return;
    }
    for (int i = 0; i < static_cast<int>(n.premises.size()); ++i) {
      path.push_back(i);
      go(n.premises[static_cast<std::size_t>(i)]);
      path.pop_back();
    }
  };
  go(d);
  return out;
}

bool is_minimal(const Derivation& d) {
  std::function<bool(const Derivation&)> go = [&](const Derivation& n) {
    const RuleInfo* info = find_rule(n.rule);
    if (!info || info->group == Group::Cut || info->shiftDp || info->variantDp) return false;
    if (has_variant(n.conclusion.pre) || has_variant(n.conclusion.suc)) return false;
    for (const auto& p : n.premises) {
      if (n.rule.dir != Dir::None && p.rule == inverse(n.rule)) return false;
      if (!go(p)) return false;
    }
    return true;
  };
  return go(d);
}

namespace {
FlgDerivation back(const Derivation& d) {
  FlgSequent c = depolarize_sequent(d.conclusion);
  auto step = [&](const char* rule, FlgDerivation p) {
    FlgSequent s = flg_apply_forward({rule}, {p.conclusion});
    return FlgDerivation{{rule}, s, {std::move(p)}};
  };
  FlgDerivation out;
  if (d.rule.name == "p-Id" || d.rule.name == "n-Id") {
    out = {{"Ax"}, c, {}};
  } else if (std::all_of(d.premises.begin(), d.premises.end(),
                         [](const Derivation& p) { return is_normal(p.conclusion); })) {
    std::vector<FlgSequent> ps;
    for (const auto& p : d.premises) out.premises.push_back(back(p));
    for (const auto& p : out.premises) ps.push_back(p.conclusion);
    out.rule = d.rule;
    out.conclusion = flg_apply_forward(d.rule, ps);
  } else {
    const Derivation& top = d.premises[0].premises[0];
    switch (match_section(d)) {
      case Pattern::DownFocus: out = step("mu", back(top)); break;
      case Pattern::UpUnfocus: out = step("mu*", back(top)); break;
      case Pattern::DownExit:
      case Pattern::DownExitDot: out = step("mu~*", back(top)); break;
      case Pattern::UpExit:
      case Pattern::UpExitDot: out = step("mu~", back(top)); break;
      case Pattern::NegativeAtom: out = step("mu~*", step("mu", back(top))); break;
      case Pattern::PositiveAtom: out = step("mu~", step("mu*", back(top))); break;
    }
  }
  if (!(out.conclusion == c)) fail("back-translation ends in " + render(out.conclusion) + ", expected " + render(c));
  return out;
}
}  // namespace

FlgDerivation translate_to_flg(const Derivation& d) {
  if (!is_normal(d.conclusion)) fail("end-sequent is not normal: " + render(d.conclusion));
  return back(is_minimal(d) ? d : minimize_proof(d));
}

}  // namespace lg
