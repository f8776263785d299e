#include "lg/cutelim.hpp"

namespace lg {

std::string to_string(SortPst s) { return to_string(s.sort) + (s.pst == Pst::Pre ? "@pre" : "@suc"); }

SortPst Mutation::operator()(SortPst x) const {
  for (const auto& [a, b] : patterns)
    if (a == x) return b;
  return x;
}

const std::vector<Mutation>& mutation_table() {
  static const std::vector<Mutation> t = [] {
    auto pre = [](Sort s) { return SortPst{s, Pst::Pre}; };
    auto suc = [](Sort s) { return SortPst{s, Pst::Suc}; };
    return std::vector<Mutation>{
        {"id", {}},
        {"dot",
         {{pre(ShiftedPos), pre(PurePos)},
          {suc(PurePos), suc(ShiftedPos)},
          {pre(PureNeg), pre(ShiftedNeg)},
          {suc(ShiftedNeg), suc(PureNeg)}}},
        {"neutral",
         {{suc(PurePos), suc(ShiftedNeg)},
          {suc(ShiftedPos), suc(PureNeg)},
          {pre(PureNeg), pre(ShiftedPos)},
          {pre(ShiftedNeg), pre(PurePos)}}},
        {"vdash", {{suc(PurePos), suc(PureNeg)}, {pre(PureNeg), pre(PurePos)}}},
    };
  }();
  return t;
}

const Mutation* find_mutation(SortPst from, Sort to) {
  for (const auto& m : mutation_table())
    if (m.contains(from, {to, from.pst})) return &m;
  return nullptr;
}

namespace {

Pst kid_pst(Op op, int i) {
  bool pre = (family(op) == Family::F) == monotone_arg(op, i);
  return pre ? Pst::Pre : Pst::Suc;
}

bool below(const Path& prefix, const Path& p) {
  return p.size() >= prefix.size() && std::equal(prefix.begin(), prefix.end(), p.begin());
}

struct Rebuilt {
  Term t;
  bool star;
};

Rebuilt rebuild(const Term& t, Path& at, Pst pst, const std::vector<Path>& targets,
                const std::vector<Term>& repl, const Mutation& mu) {
  for (std::size_t j = 0; j < targets.size(); ++j) {
    if (targets[j] != at) continue;
    SortPst from{sort_of(t), pst};
    SortPst want = mu(from);
    if (!well_sorted(repl[j]) || sort_of(repl[j]) != want.sort)
      throw MutationError("sort mismatch at target: " + render(t) + " is " + to_string(from) + ", " + mu.name +
                          " wants " + to_string(want) + ", got " + render(repl[j]));
    return {repl[j], !(want == from)};
  }
  bool any = false;
  for (const auto& p : targets) any = any || below(at, p);
  if (!any) return {t, false};

  std::vector<Term> kids;
  bool starred = false;
  for (int i = 0; i < static_cast<int>(t->kids.size()); ++i) {
    at.push_back(i);
    Rebuilt r = rebuild(t->kids[i], at, kid_pst(t->op, i), targets, repl, mu);
    at.pop_back();
    kids.push_back(r.t);
    starred = starred || r.star;
  }
  if (!starred) return {make(t->op, t->layer, t->var, kids), false};
  if (is_formula(t)) throw MutationError("cannot mutate inside formula " + render(t));

  SortPst old{sort_of(t), pst};
  std::vector<std::pair<Op, Var>> cands = {{t->op, t->var}};
  if (t->var != Var::None) cands.emplace_back(t->op, Var::None);
  if (t->op == Op::UpL) cands.emplace_back(Op::Up, Var::None);
  if (t->op == Op::DownR) cands.emplace_back(Op::Down, Var::None);
  for (auto [op, var] : cands) {
    Term n = make(op, Layer::Structure, var, kids);
    if (!well_sorted(n)) continue;
    SortPst now{sort_of(n), pst};
    if (now == old) return {n, false};
    if (now == mu(old)) return {n, true};
  }
  throw MutationError(mu.name + " has no image for connective " + render(t));
}

}  // namespace

Pst position_of(const Sequent& s, const SeqPath& p) {
  Pst pst = p.side == 0 ? Pst::Pre : Pst::Suc;
  Term cur = p.side == 0 ? s.pre : s.suc;
  for (int i : p.path) {
    if (!is_formula(cur)) pst = kid_pst(cur->op, i) == Pst::Pre ? pst : (pst == Pst::Pre ? Pst::Suc : Pst::Pre);
    cur = cur->kids.at(static_cast<std::size_t>(i));
  }
  return pst;
}

Sequent mutate_sequent(const Sequent& s, const std::vector<SeqPath>& targets, const std::vector<Term>& repl,
                       const Mutation& mu) {
  if (targets.size() != repl.size()) throw MutationError("targets and replacements differ in number");
  Sequent out = s;
  for (int side = 0; side < 2; ++side) {
    std::vector<Path> ts;
    std::vector<Term> rs;
    for (std::size_t j = 0; j < targets.size(); ++j)
      if (targets[j].side == side) {
        ts.push_back(targets[j].path);
        rs.push_back(repl[j]);
      }
    if (ts.empty()) continue;
    Path at;
    Term& t = side == 0 ? out.pre : out.suc;
    t = rebuild(t, at, side == 0 ? Pst::Pre : Pst::Suc, ts, rs, mu).t;
  }
  if (!well_formed(out)) throw MutationError("mutated sequent is not well-formed: " + render(out));
  return out;
}

std::optional<RuleId> cut_rule_for(const Sequent& left, const Sequent& right) {
  if (!equal(left.suc, right.pre) || !is_formula(left.suc)) return std::nullopt;
  Sequent concl{left.pre, right.suc};
  if (!well_formed(concl)) return std::nullopt;
  for (const char* n : {"P-Cut", "N-Cut", "Pn-Cut", "nN-Cut"})
    if (valid_step({n}, {left, right}, concl)) return RuleId{n};
  return std::nullopt;
}

namespace {

using Top = std::function<Derivation(const Derivation&)>;

RuleId reidentify(const RuleId& old, const std::vector<Sequent>& prems, const Sequent& concl) {
  if (valid_step(old, prems, concl)) return old;
  for (const auto& r : rules())
    if (r.premises.size() == prems.size() && valid_step(r.id, prems, concl)) return r.id;
  std::string msg = "mutated instance of " + to_string(old) + " is not a rule instance: ";
  for (const auto& p : prems) msg += render(p) + " ; ";
  throw CutError(msg + "=> " + render(concl));
}

// Follows the occurrence at occ upwards, replaces it by psi along the way and
// lets `top` rebuild the subproof where it is introduced.
Derivation substitute(const Derivation& d, const SeqPath& occ, const Term& psi, const Mutation& mu,
                      const Top& top) {
  auto up = trace_up(d.rule, occ);
  if (!up) {
    if (!occ.path.empty()) throw CutError("occurrence introduced while not displayed in " + render(d.conclusion));
    return top(d);
  }
  Derivation out{d.rule, mutate_sequent(d.conclusion, {occ}, {psi}, mu), {}};
  std::vector<Sequent> prems;
  for (int i = 0; i < static_cast<int>(d.premises.size()); ++i) {
    const Derivation& p = d.premises[static_cast<std::size_t>(i)];
    out.premises.push_back(i == up->first ? substitute(p, up->second, psi, mu, top) : p);
    prems.push_back(out.premises.back().conclusion);
  }
  if (prems.size() == 1 && prems[0] == out.conclusion) return out.premises[0];
  out.rule = reidentify(d.rule, prems, out.conclusion);
  return out;
}

const Mutation& mutation_for(const Sequent& s, const SeqPath& occ, const Term& psi) {
  SortPst from{sort_of(at(s, occ)), position_of(s, occ)};
  if (!well_sorted(psi)) throw CutError("ill-sorted substitute " + render(psi));
  const Mutation* m = find_mutation(from, sort_of(psi));
  if (!m)
    throw CutError("no mutation with pattern " + to_string(from) + " -> " + to_string(sort_of(psi)));
  return *m;
}

bool principal(const Derivation& d, const SeqPath& p) { return !trace_up(d.rule, p).has_value(); }

class Eliminator {
 public:
  explicit Eliminator(std::vector<std::string>* trace) : trace_(trace) {}

  Derivation run(const Derivation& d) {
    Derivation out{d.rule, d.conclusion, {}};
    for (const auto& p : d.premises) out.premises.push_back(run(p));
    if (!is_cut(d.rule)) return out;
    return cut(out.premises[0], out.premises[1]);
  }

  // l: Psi |- A, r: A |- Phi, both cut-free.
  Derivation cut(const Derivation& l, const Derivation& r) {
    const Term& a = l.conclusion.suc;
    if (is_axiom(l.rule)) return r;
    if (is_axiom(r.rule)) return l;
    if (!principal(r, {0, {}})) {
      const Mutation& mu = mutation_for(r.conclusion, {0, {}}, l.conclusion.pre);
      log("parametric " + render(a) + " " + mu.name);
      return substitute(r, {0, {}}, l.conclusion.pre, mu, [&](const Derivation& u) { return cut(l, u); });
    }
    if (!principal(l, {1, {}})) {
      const Mutation& mu = mutation_for(l.conclusion, {1, {}}, r.conclusion.suc);
      log("parametric " + render(a) + " " + mu.name);
      return substitute(l, {1, {}}, r.conclusion.suc, mu, [&](const Derivation& u) { return cut(u, r); });
    }
    log("principal " + render(a));
    return principal_reduction(l, r);
  }

 private:
  std::vector<std::string>* trace_;

  void log(const std::string& s) {
    if (trace_) trace_->push_back(s);
  }

  Derivation principal_reduction(const Derivation& l, const Derivation& r) {
    bool leftTrans = is_translation(l.rule);
    const Derivation& trans = leftTrans ? l : r;
    const Derivation& ton = leftTrans ? r : l;
    if (!is_translation(trans.rule) || !is_tonicity(ton.rule) || trans.premises.size() != 1)
      throw CutError("no principal reduction for " + to_string(l.rule) + " against " + to_string(r.rule));
    int sA = leftTrans ? 1 : 0;
    int other = leftTrans ? 1 : 0;
    Derivation cur = trans.premises[0];
    Term twin = at(cur.conclusion, {sA, {}});
    for (int i = 0; i < static_cast<int>(twin->kids.size()); ++i) {
      auto src = trace_up(ton.rule, {other, {i}});
      if (!src || !src->second.path.empty()) throw CutError("tonicity rule does not display its context");
      const Derivation& prem = ton.premises[static_cast<std::size_t>(src->first)];
      Term ctx = at(prem.conclusion, src->second);
      bool subformulaRight = src->second.side == 0;  // prem: ctx |- B
      SeqPath occ{sA, {i}};
      const Mutation& mu = mutation_for(cur.conclusion, occ, ctx);
      cur = substitute(cur, occ, ctx, mu, [&](const Derivation& u) {
        return subformulaRight ? cut(prem, u) : cut(u, prem);
      });
    }
    return cur;
  }
};

}  // namespace

Derivation parametric_move(const Derivation& d, std::string* mutationName) {
  if (!is_cut(d.rule) || d.premises.size() != 2) throw CutError("not a cut");
  const Derivation& l = d.premises[0];
  const Derivation& r = d.premises[1];
  auto mk = [](const Derivation& a, const Derivation& b) {
    auto rule = cut_rule_for(a.conclusion, b.conclusion);
    if (!rule) throw CutError("no cut joins " + render(a.conclusion) + " and " + render(b.conclusion));
    return Derivation{*rule, {a.conclusion.pre, b.conclusion.suc}, {a, b}};
  };
  if (!is_axiom(r.rule) && !principal(r, {0, {}})) {
    const Mutation& mu = mutation_for(r.conclusion, {0, {}}, l.conclusion.pre);
    if (mutationName) *mutationName = mu.name;
    return substitute(r, {0, {}}, l.conclusion.pre, mu, [&](const Derivation& u) { return mk(l, u); });
  }
  if (!is_axiom(l.rule) && !principal(l, {1, {}})) {
    const Mutation& mu = mutation_for(l.conclusion, {1, {}}, r.conclusion.suc);
    if (mutationName) *mutationName = mu.name;
    return substitute(l, {1, {}}, r.conclusion.suc, mu, [&](const Derivation& u) { return mk(u, r); });
  }
  return d;
}

Derivation eliminate_cuts(const Derivation& d, std::vector<std::string>* trace) {
  return Eliminator(trace).run(d);
}

}  // namespace lg
