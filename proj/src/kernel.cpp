#include "lg/kernel.hpp"

#include <algorithm>
#include <functional>
#include "json.hpp"
#include <sstream>
#include <unordered_set>

namespace lg {

std::string to_string(const RuleId& r) {
  if (r.dir == Dir::None) return r.name;
  bool shift = r.name == "s-down" || r.name == "s-up";
  if (shift) return r.name + (r.dir == Dir::Fwd ? " intro" : " elim");
  return r.name + (r.dir == Dir::Fwd ? "" : " inv");
}

RuleId inverse(const RuleId& r) {
  if (r.dir == Dir::None) return r;
  return {r.name, r.dir == Dir::Fwd ? Dir::Inv : Dir::Fwd};
}

namespace {

struct RawRule {
  const char* name;
  Group group;
  std::vector<const char*> premises;
  const char* conclusion;
  bool doubleLine;
};

const std::vector<RawRule>& raw_rules() {
  static const std::vector<RawRule> r = {
      {"p-Id", Group::Axiom, {}, "$p |- $p", false},
      {"n-Id", Group::Axiom, {}, "$n |- $n", false},

      {"otimes_L", Group::Translation, {"$Po .* $Qo |- $Do"}, "$Po * $Qo |- $Do", false},
      {"oslash_L", Group::Translation, {"$Po .(/) $No |- $Do"}, "$Po (/) $No |- $Do", false},
      {"obslash_L", Group::Translation, {"$No .(\\) $Po |- $Do"}, "$No (\\) $Po |- $Do", false},
      {"oplus_R", Group::Translation, {"$Xo |- $No .(+) $Mo"}, "$Xo |- $No (+) $Mo", false},
      {"under_R", Group::Translation, {"$Xo |- $Po .\\ $No"}, "$Xo |- $Po \\ $No", false},
      {"over_R", Group::Translation, {"$Xo |- $No ./ $Po"}, "$Xo |- $No / $Po", false},

      {"otimes_R", Group::Tonicity, {"$Xo |- $Po", "$Yo |- $Qo"}, "$Xo .* $Yo |- $Po * $Qo", false},
      {"oslash_R", Group::Tonicity, {"$Xo |- $Po", "$No |- $Do"}, "$Xo .(/) $Do |- $Po (/) $No", false},
      {"obslash_R", Group::Tonicity, {"$No |- $Do", "$Xo |- $Po"}, "$Do .(\\) $Xo |- $No (\\) $Po", false},
      {"oplus_L", Group::Tonicity, {"$No |- $Go", "$Mo |- $Do"}, "$No (+) $Mo |- $Go .(+) $Do", false},
      {"under_L", Group::Tonicity, {"$Xo |- $Po", "$No |- $Do"}, "$Po \\ $No |- $Xo .\\ $Do", false},
      {"over_L", Group::Tonicity, {"$No |- $Do", "$Xo |- $Po"}, "$No / $Po |- $Do ./ $Xo", false},

      {"down_L", Group::ShiftLogical, {"$N |- $D"}, "dn $N |- .dn $D", false},
      {"down_R", Group::ShiftLogical, {"$Xo |- .dn $N"}, "$Xo |- dn $N", false},
      {"up_L", Group::ShiftLogical, {".up $P |- $Do"}, "up $P |- $Do", false},
      {"up_R", Group::ShiftLogical, {"$X |- $P"}, ".up $X |- up $P", false},

      {"s-down", Group::StructuralShift, {"$Xo |- $D"}, "$Xo |- .dn $D", true},
      {"s-up", Group::StructuralShift, {"$X |- $Do"}, ".up $X |- $Do", true},

      {"dp_otimes_under", Group::Display, {"$Yo |- $Xo .\\ $Do"}, "$Xo .* $Yo |- $Do", true},
      {"dp_otimes_over", Group::Display, {"$Xo .* $Yo |- $Do"}, "$Xo |- $Do ./ $Yo", true},
      {"dp_otimes_under_r", Group::Display, {"$Yo |- $Xo .\\r $Zo"}, "$Xo .* $Yo |- $Zo", true},
      {"dp_otimes_over_l", Group::Display, {"$Xo .* $Yo |- $Zo"}, "$Xo |- $Zo ./l $Yo", true},
      {"dp_oslash_l_oplus", Group::Display, {"$So .(/)l $Do |- $Go"}, "$So |- $Go .(+) $Do", true},
      {"dp_obslash_r_oplus", Group::Display, {"$So |- $Go .(+) $Do"}, "$Go .(\\)r $So |- $Do", true},
      {"dp_oslash_oplus", Group::Display, {"$Xo .(/) $Do |- $Go"}, "$Xo |- $Go .(+) $Do", true},
      {"dp_obslash_oplus", Group::Display, {"$Xo |- $Go .(+) $Do"}, "$Go .(\\) $Xo |- $Do", true},
      {"dp_obslash_oplus_r", Group::Display, {"$Go .(\\) $Xo |- $Yo"}, "$Xo |- $Go .(+)r $Yo", true},
      {"dp_oslash_r_oplus_r", Group::Display, {"$Xo |- $Go .(+)r $Yo"}, "$Xo .(/)r $Yo |- $Go", true},
      {"dp_oslash_oplus_l", Group::Display, {"$Xo .(/) $Do |- $Yo"}, "$Xo |- $Yo .(+)l $Do", true},
      {"dp_obslash_l_oplus_l", Group::Display, {"$Xo |- $Yo .(+)l $Do"}, "$Yo .(\\)l $Xo |- $Do", true},
      {"dp_otimes_r_under", Group::Display, {"$Go |- $Xo .\\ $Do"}, "$Xo .*r $Go |- $Do", true},
      {"dp_otimes_r_over_r", Group::Display, {"$Xo .*r $Go |- $Do"}, "$Xo |- $Do ./r $Go", true},
      {"dp_otimes_l_under_l", Group::Display, {"$Yo |- $Go .\\l $Do"}, "$Go .*l $Yo |- $Do", true},
      {"dp_otimes_l_over", Group::Display, {"$Go .*l $Yo |- $Do"}, "$Go |- $Do ./ $Yo", true},
      {"dp_up_dnr", Group::Display, {".up $X |- $Dd"}, "$X |- .dnr $Dd", true},
      {"dp_up_dn", Group::Display, {".up $X |- $D"}, "$X |- .dn $D", true},
      {"dp_upl_dn", Group::Display, {"$Xd |- .dn $D"}, ".upl $Xd |- $D", true},

      {"P-Cut", Group::Cut, {"$Xo |- $Po", "$Po |- $Yo"}, "$Xo |- $Yo", false},
      {"N-Cut", Group::Cut, {"$Go |- $No", "$No |- $Do"}, "$Go |- $Do", false},
      {"Pn-Cut", Group::Cut, {"$Xo |- $Po", "$Po |- $Do"}, "$Xo |- $Do", false},
      {"nN-Cut", Group::Cut, {"$Xo |- $No", "$No |- $Do"}, "$Xo |- $Do", false},
  };
  return r;
}

struct MetaLoc {
  int premise;  // -1 for the conclusion
  SeqPath path;
};

struct Compiled {
  std::vector<RuleInfo> list;
  std::map<RuleId, std::size_t> index;
  std::vector<std::map<std::string, std::vector<MetaLoc>>> metas;
};

void collect_metas(const Term& t, int premise, int side, Path& p,
                   std::map<std::string, std::vector<MetaLoc>>& out) {
  if (t->op == Op::Meta) {
    out[t->name].push_back({premise, {side, p}});
    return;
  }
  for (std::size_t i = 0; i < t->kids.size(); ++i) {
    p.push_back(static_cast<int>(i));
    collect_metas(t->kids[i], premise, side, p, out);
    p.pop_back();
  }
}

const Compiled& compiled() {
  static const Compiled c = [] {
    Compiled c;
    for (const auto& rr : raw_rules()) {
      std::vector<Sequent> prem;
      for (const char* p : rr.premises) prem.push_back(parse_raw_sequent(p, {}, true));
      Sequent concl = parse_raw_sequent(rr.conclusion, {}, true);
      std::string n = rr.name;
      bool shiftDp = n == "dp_up_dnr" || n == "dp_up_dn" || n == "dp_upl_dn";
      bool variantDp = false;
      auto scan = [&](const Sequent& s) {
        if (has_variant(s.pre) || has_variant(s.suc)) variantDp = true;
      };
      for (const auto& s : prem) scan(s);
      scan(concl);
      bool ton = rr.group == Group::Tonicity || n == "down_L" || n == "up_R";
      auto add = [&](RuleId id, std::vector<Sequent> ps, Sequent cs) {
        c.index[id] = c.list.size();
        c.list.push_back({id, rr.group, ton, shiftDp, variantDp, std::move(ps), std::move(cs)});
        std::map<std::string, std::vector<MetaLoc>> m;
        Path p;
        const auto& info = c.list.back();
        for (int i = 0; i < static_cast<int>(info.premises.size()); ++i) {
          collect_metas(info.premises[i].pre, i, 0, p, m);
          collect_metas(info.premises[i].suc, i, 1, p, m);
        }
        collect_metas(info.conclusion.pre, -1, 0, p, m);
        collect_metas(info.conclusion.suc, -1, 1, p, m);
        c.metas.push_back(std::move(m));
      };
      if (rr.doubleLine) {
        add({n, Dir::Fwd}, prem, concl);
        add({n, Dir::Inv}, {concl}, prem.at(0));
      } else {
        add({n, Dir::None}, prem, concl);
      }
    }
    return c;
  }();
  return c;
}

bool meta_accepts(const std::string& name, const Term& t) {
  if (!t->sort) return false;
  char k = name[0];
  std::string mod = name.substr(1);
  Sort s = *t->sort;
  bool structure = k == 'X' || k == 'Y' || k == 'Z' || k == 'D' || k == 'G' || k == 'S';
  bool formula = k == 'P' || k == 'Q' || k == 'N' || k == 'M';
  bool pos = k == 'X' || k == 'Y' || k == 'Z' || k == 'P' || k == 'Q' || k == 'p';
  if (s.pol != (pos ? Pol::Pos : Pol::Neg)) return false;
  if (k == 'p' || k == 'n') return t->op == Op::Atom;
  if (formula && !is_formula(t)) return false;
  if (!structure && !formula) return false;
  if (mod == "o") return true;
  if (mod == "d") return s.pur == Pur::Shifted;
  return s.pur == Pur::Pure;
}

}  // namespace

const std::vector<RuleInfo>& rules() { return compiled().list; }

const RuleInfo* find_rule(const RuleId& id) {
  const auto& c = compiled();
  auto it = c.index.find(id);
  return it == c.index.end() ? nullptr : &c.list[it->second];
}

bool is_cut(const RuleId& id) {
  return id.name == "P-Cut" || id.name == "N-Cut" || id.name == "Pn-Cut" || id.name == "nN-Cut";
}
bool is_axiom(const RuleId& id) { return id.name == "p-Id" || id.name == "n-Id"; }

bool match(const Term& pat, const Term& t, Bindings& b) {
  if (pat->op == Op::Meta) {
    if (!meta_accepts(pat->name, t)) return false;
    auto it = b.find(pat->name);
    if (it != b.end()) return equal(it->second, t);
    b.emplace(pat->name, t);
    return true;
  }
  if (pat->op != t->op || pat->layer != t->layer || pat->var != t->var ||
      pat->kids.size() != t->kids.size())
    return false;
  if (pat->op == Op::Atom) return pat->name == t->name && pat->atomPol == t->atomPol;
  for (std::size_t i = 0; i < pat->kids.size(); ++i)
    if (!match(pat->kids[i], t->kids[i], b)) return false;
  return true;
}

bool match(const Sequent& pat, const Sequent& s, Bindings& b) {
  return match(pat.pre, s.pre, b) && match(pat.suc, s.suc, b);
}

Term instantiate(const Term& pat, const Bindings& b) {
  if (pat->op == Op::Meta) {
    auto it = b.find(pat->name);
    return it == b.end() ? nullptr : it->second;
  }
  if (pat->kids.empty()) return pat;
  std::vector<Term> kids;
  for (const auto& k : pat->kids) {
    Term x = instantiate(k, b);
    if (!x) return nullptr;
    kids.push_back(x);
  }
  return make(pat->op, pat->layer, pat->var, std::move(kids));
}

namespace {
std::optional<Sequent> instantiate(const Sequent& pat, const Bindings& b) {
  Term a = instantiate(pat.pre, b), c = instantiate(pat.suc, b);
  if (!a || !c) return std::nullopt;
  return Sequent{a, c};
}
}  // namespace

bool operator==(const Derivation& a, const Derivation& b) {
  if (!(a.rule == b.rule) || !(a.conclusion == b.conclusion) || a.premises.size() != b.premises.size())
    return false;
  for (std::size_t i = 0; i < a.premises.size(); ++i)
    if (!(a.premises[i] == b.premises[i])) return false;
  return true;
}

bool valid_step(const RuleId& r, const std::vector<Sequent>& premises, const Sequent& concl) {
  const RuleInfo* info = find_rule(r);
  if (!info || info->premises.size() != premises.size()) return false;
  if (!well_formed(concl)) return false;
  Bindings b;
  if (!match(info->conclusion, concl, b)) return false;
  for (std::size_t i = 0; i < premises.size(); ++i) {
    if (!well_formed(premises[i])) return false;
    if (!match(info->premises[i], premises[i], b)) return false;
  }
  return true;
}

namespace {
CheckReport check_rec(const Derivation& d, const std::string& path) {
  auto fail = [&](const std::string& why) { return CheckReport{false, path.empty() ? "root" : path, why}; };
  if (!well_formed(d.conclusion)) return fail("ill-formed sequent " + render(d.conclusion));
  const RuleInfo* info = find_rule(d.rule);
  if (!info) return fail("unknown rule " + to_string(d.rule));
  if (info->premises.size() != d.premises.size())
    return fail("arity mismatch: " + to_string(d.rule) + " expects " +
                std::to_string(info->premises.size()) + " premises, got " +
                std::to_string(d.premises.size()));
  std::vector<Sequent> ps;
  for (const auto& p : d.premises) ps.push_back(p.conclusion);
  if (!valid_step(d.rule, ps, d.conclusion))
    return fail("schema mismatch for " + to_string(d.rule) + " at " + render(d.conclusion));
  for (std::size_t i = 0; i < d.premises.size(); ++i) {
    std::string sub = (path.empty() ? "" : path + ".") + "premises[" + std::to_string(i) + "]";
    CheckReport r = check_rec(d.premises[i], sub);
    if (!r.ok) return r;
  }
  return {};
}
}  // namespace

CheckReport check_derivation(const Derivation& d) { return check_rec(d, ""); }

Sequent apply_rule_forward(const RuleId& rule, const std::vector<Sequent>& premises, const Bindings& hints) {
  const RuleInfo* info = find_rule(rule);
  if (!info) throw RuleError("unknown rule " + to_string(rule));
  if (info->premises.size() != premises.size())
    throw RuleError("arity mismatch for " + to_string(rule));
  Bindings b = hints;
  for (std::size_t i = 0; i < premises.size(); ++i)
    if (!match(info->premises[i], premises[i], b))
      throw RuleError("schema mismatch: " + to_string(rule) + " does not apply to " + render(premises[i]));
  auto c = instantiate(info->conclusion, b);
  if (!c) throw RuleError("conclusion of " + to_string(rule) + " is not determined by the premises");
  if (!well_formed(*c)) throw RuleError("ill-sorted conclusion for " + to_string(rule));
  return *c;
}

Derivation apply_forward(const RuleId& rule, std::vector<Derivation> premises, const Bindings& hints) {
  std::vector<Sequent> ps;
  for (const auto& p : premises) ps.push_back(p.conclusion);
  Sequent c = apply_rule_forward(rule, ps, hints);
  return {rule, c, std::move(premises)};
}

namespace {
void subformulas(const Term& t, std::vector<Term>& out) {
  if (is_formula(t)) {
    for (const auto& o : out)
      if (equal(o, t)) goto kids;
    out.push_back(t);
  }
kids:
  for (const auto& k : t->kids) subformulas(k, out);
}

int group_rank(Group g) {
  switch (g) {
    case Group::Axiom: return 0;
    case Group::Translation: return 1;
    case Group::Tonicity: return 2;
    case Group::ShiftLogical: return 3;
    case Group::StructuralShift: return 4;
    case Group::Display: return 5;
    case Group::Cut: return 6;
  }
  return 7;
}
}  // namespace

std::vector<Expansion> backward_expansions(const Sequent& goal, ExpandOptions opts) {
  static const std::vector<const RuleInfo*> ordered = [] {
    std::vector<const RuleInfo*> v;
    for (const auto& r : rules()) v.push_back(&r);
    std::stable_sort(v.begin(), v.end(), [](const RuleInfo* a, const RuleInfo* b) {
      return group_rank(a->group) < group_rank(b->group);
    });
    return v;
  }();
  std::vector<Expansion> out;
  std::vector<Term> cands;
  bool candsReady = false;
  for (const RuleInfo* r : ordered) {
    if (r->group == Group::Cut && !opts.allowCuts) continue;
    Bindings b;
    if (!match(r->conclusion, goal, b)) continue;
    auto emit = [&](const Bindings& bb) {
      Expansion e{r->id, {}};
      for (const auto& p : r->premises) {
        auto s = instantiate(p, bb);
        if (!s || !well_formed(*s)) return;
        if (!opts.allowVariants && (has_variant(s->pre) || has_variant(s->suc))) return;
        e.premises.push_back(*s);
      }
      out.push_back(std::move(e));
    };
    if (r->group != Group::Cut) {
      emit(b);
      continue;
    }
    if (!candsReady) {
      subformulas(goal.pre, cands);
      subformulas(goal.suc, cands);
      candsReady = true;
    }
    for (const auto& c : cands) {
      Bindings bb = b;
      Term cutMeta = r->premises[0].suc;
      if (match(cutMeta, c, bb)) emit(bb);
    }
  }
  return out;
}

std::optional<std::pair<int, SeqPath>> trace_up(const RuleId& r, const SeqPath& p) {
  const auto& c = compiled();
  auto it = c.index.find(r);
  if (it == c.index.end()) return std::nullopt;
  const RuleInfo& info = c.list[it->second];
  Term cur = p.side == 0 ? info.conclusion.pre : info.conclusion.suc;
  std::size_t i = 0;
  for (; i < p.path.size() && cur->op != Op::Meta; ++i) {
    if (p.path[i] >= static_cast<int>(cur->kids.size())) return std::nullopt;
    cur = cur->kids[p.path[i]];
  }
  if (cur->op != Op::Meta) return std::nullopt;
  const auto& locs = c.metas[it->second];
  auto m = locs.find(cur->name);
  if (m == locs.end()) return std::nullopt;
  for (const auto& loc : m->second) {
    if (loc.premise < 0) continue;
    SeqPath out = loc.path;
    out.path.insert(out.path.end(), p.path.begin() + static_cast<long>(i), p.path.end());
    return std::make_pair(loc.premise, out);
  }
  return std::nullopt;
}

std::optional<SeqPath> trace_down(const RuleId& r, int premise, const SeqPath& p) {
  const auto& c = compiled();
  auto it = c.index.find(r);
  if (it == c.index.end()) return std::nullopt;
  const RuleInfo& info = c.list[it->second];
  if (premise < 0 || premise >= static_cast<int>(info.premises.size())) return std::nullopt;
  const Sequent& ps = info.premises[premise];
  Term cur = p.side == 0 ? ps.pre : ps.suc;
  std::size_t i = 0;
  for (; i < p.path.size() && cur->op != Op::Meta; ++i) {
    if (p.path[i] >= static_cast<int>(cur->kids.size())) return std::nullopt;
    cur = cur->kids[p.path[i]];
  }
  if (cur->op != Op::Meta) return std::nullopt;
  const auto& locs = c.metas[it->second];
  auto m = locs.find(cur->name);
  if (m == locs.end()) return std::nullopt;
  for (const auto& loc : m->second) {
    if (loc.premise != -1) continue;
    SeqPath out = loc.path;
    out.path.insert(out.path.end(), p.path.begin() + static_cast<long>(i), p.path.end());
    return out;
  }
  return std::nullopt;
}

std::size_t proof_size(const Derivation& d) {
  std::size_t n = 1;
  for (const auto& p : d.premises) n += proof_size(p);
  return n;
}

std::size_t proof_height(const Derivation& d) {
  std::size_t h = 0;
  for (const auto& p : d.premises) h = std::max(h, proof_height(p));
  return h + 1;
}

std::size_t count_rules(const Derivation& d, bool (*pred)(const RuleId&)) {
  std::size_t n = pred(d.rule) ? 1 : 0;
  for (const auto& p : d.premises) n += count_rules(p, pred);
  return n;
}

bool is_cut_free(const Derivation& d) { return count_rules(d, is_cut) == 0; }

bool is_lg_logical(const RuleId& r) {
  const RuleInfo* i = find_rule(r);
  return i && (i->group == Group::Translation || i->group == Group::Tonicity);
}

bool is_logical(const RuleId& r) {
  const RuleInfo* i = find_rule(r);
  return i && (i->group == Group::Translation || i->group == Group::Tonicity ||
               i->group == Group::ShiftLogical);
}

bool is_translation(const RuleId& r) {
  const RuleInfo* i = find_rule(r);
  return i && (i->group == Group::Translation || r.name == "down_R" || r.name == "up_L");
}

bool is_tonicity(const RuleId& r) {
  const RuleInfo* i = find_rule(r);
  return i && i->tonicity;
}

std::string dump(const Derivation& d, int indent) {
  std::string s(static_cast<std::size_t>(indent) * 2, ' ');
  s += "[" + to_string(d.rule) + "] " + render(d.conclusion) + "\n";
  for (const auto& p : d.premises) s += dump(p, indent + 1);
  return s;
}

const Derivation& node_at(const Derivation& d, const std::vector<int>& path) {
  const Derivation* cur = &d;
  for (int i : path) cur = &cur->premises.at(static_cast<std::size_t>(i));
  return *cur;
}

std::string path_string(const std::vector<int>& path) {
  if (path.empty()) return "root";
  std::string s;
  for (int i : path) s += (s.empty() ? "" : ".") + std::string("premises[") + std::to_string(i) + "]";
  return s;
}

// ---------------------------------------------------------------- JSON

using nlohmann::ordered_json;

namespace {
ordered_json node_json(const Derivation& d) {
  ordered_json j;
  j["rule"] = d.rule.name;
  if (d.rule.dir != Dir::None) {
    bool shift = d.rule.name == "s-down" || d.rule.name == "s-up";
    j["dir"] = shift ? (d.rule.dir == Dir::Fwd ? "intro" : "elim") : (d.rule.dir == Dir::Fwd ? "fwd" : "inv");
  }
  j["conclusion"] = render(d.conclusion);
  j["premises"] = ordered_json::array();
  for (const auto& p : d.premises) j["premises"].push_back(node_json(p));
  return j;
}

Derivation node_from(const ordered_json& j, const AtomSet& neg) {
  Derivation d;
  if (!j.is_object() || !j.contains("rule") || !j.contains("conclusion"))
    throw ParseError("derivation node needs 'rule' and 'conclusion'");
  d.rule.name = j.at("rule").get<std::string>();
  if (j.contains("dir")) {
    std::string dir = j.at("dir").get<std::string>();
    if (dir == "fwd" || dir == "intro") d.rule.dir = Dir::Fwd;
    else if (dir == "inv" || dir == "elim") d.rule.dir = Dir::Inv;
    else throw ParseError("bad dir '" + dir + "'");
  }
  d.conclusion = parse_sequent(j.at("conclusion").get<std::string>(), neg);
  if (j.contains("premises"))
    for (const auto& p : j.at("premises")) d.premises.push_back(node_from(p, neg));
  return d;
}
}  // namespace

AtomSet neg_atoms_of(const Derivation& d) {
  AtomSet a = neg_atoms_of(d.conclusion);
  for (const auto& p : d.premises) {
    AtomSet b = neg_atoms_of(p);
    a.insert(b.begin(), b.end());
  }
  return a;
}

std::string to_json(const Derivation& d, const AtomSet& negAtoms, int indent) {
  ordered_json j;
  j["negAtoms"] = ordered_json::array();
  for (const auto& a : negAtoms) j["negAtoms"].push_back(a);
  ordered_json body = node_json(d);
  for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
  return j.dump(indent);
}

Derivation from_json(const std::string& text, AtomSet* negAtomsOut) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  AtomSet neg;
  if (j.contains("negAtoms"))
    for (const auto& a : j.at("negAtoms")) neg.insert(a.get<std::string>());
  if (negAtomsOut) *negAtomsOut = neg;
  return node_from(j, neg);
}

}  // namespace lg
