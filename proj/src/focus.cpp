#include "lg/focus.hpp"

#include <functional>
#include <map>

#include "lg/cutelim.hpp"
#include "lg/search.hpp"

namespace lg {

namespace {
void build(const Term& t, Sign s, const SignedNode* parent, Path& p, SignedTree& out) {
  NodeKind k = node_kind(t, s);
  NodeKind region = k;
  if (t->op == Op::Atom && parent) region = parent->region;
  bool transition = parent && parent->region != region;
  out.nodes.push_back({p, t, s, k, region, transition});
  std::size_t self = out.nodes.size() - 1;
  for (int i = 0; i < static_cast<int>(t->kids.size()); ++i) {
    p.push_back(i);
    SignedNode copy = out.nodes[self];
    build(t->kids[i], kid_sign(t, i, s), &copy, p, out);
    p.pop_back();
  }
}
}  // namespace

SignedTree signed_tree(const Term& t, Sign s) {
  SignedTree r{s, {}};
  Path p;
  build(t, s, nullptr, p, r);
  return r;
}

std::pair<SignedTree, SignedTree> signed_tree(const Sequent& s) {
  return {signed_tree(s.pre, Sign::Plus), signed_tree(s.suc, Sign::Minus)};
}

Phase classify_phase(const Sequent& s) {
  Family3 f = turnstile(s).family;
  if (f == Family3::Neutral || has_structural_shift(s.pre) || has_structural_shift(s.suc))
    return Phase::NonFocused;
  return f == Family3::Positive ? Phase::FocusedPositive : Phase::FocusedNegative;
}

std::string to_string(Phase p) {
  switch (p) {
    case Phase::FocusedPositive: return "focused-positive";
    case Phase::FocusedNegative: return "focused-negative";
    default: return "non-focused";
  }
}

std::string to_string(PointKind k) {
  switch (k) {
    case PointKind::PositiveEntry: return "positive-entry";
    case PointKind::NegativeEntry: return "negative-entry";
    case PointKind::PositiveExit: return "positive-exit";
    default: return "negative-exit";
  }
}

namespace {
void connective_occurrences(const Term& t, SeqPath& sp, std::vector<SeqPath>& out) {
  if (is_formula(t) && t->op != Op::Atom) out.push_back(sp);
  for (int i = 0; i < static_cast<int>(t->kids.size()); ++i) {
    sp.path.push_back(i);
    connective_occurrences(t->kids[i], sp, out);
    sp.path.pop_back();
  }
}

std::optional<Introduction> introduce(const Derivation& root, const SeqPath& start) {
  const Derivation* cur = &root;
  std::vector<int> node;
  SeqPath sp = start;
  for (;;) {
    auto up = trace_up(cur->rule, sp);
    if (!up) return Introduction{start, node, cur->rule};
    if (up->first >= static_cast<int>(cur->premises.size())) return std::nullopt;
    node.push_back(up->first);
    cur = &cur->premises[static_cast<std::size_t>(up->first)];
    sp = up->second;
  }
}

std::optional<std::vector<int>> first_cut(const Derivation& d, std::vector<int>& p) {
  if (is_cut(d.rule)) return p;
  for (int i = 0; i < static_cast<int>(d.premises.size()); ++i) {
    p.push_back(i);
    auto r = first_cut(d.premises[static_cast<std::size_t>(i)], p);
    p.pop_back();
    if (r) return r;
  }
  return std::nullopt;
}
}  // namespace

std::vector<Introduction> introductions(const Derivation& d) {
  std::vector<SeqPath> occ;
  SeqPath sp{0, {}};
  connective_occurrences(d.conclusion.pre, sp, occ);
  sp = {1, {}};
  connective_occurrences(d.conclusion.suc, sp, occ);
  std::vector<Introduction> out;
  for (const auto& o : occ)
    if (auto i = introduce(d, o)) out.push_back(*i);
  return out;
}

FocusReport check_strong_focalization(const Derivation& d) {
  std::vector<int> p;
  if (auto c = first_cut(d, p)) return {false, path_string(*c), "", "", "not cut-free"};
  std::map<SeqPath, Introduction> intro;
  for (auto& i : introductions(d)) intro.emplace(i.occurrence, i);

  for (int side = 0; side < 2; ++side) {
    Term root = side == 0 ? d.conclusion.pre : d.conclusion.suc;
    SignedTree st = signed_tree(root, side == 0 ? Sign::Plus : Sign::Minus);
    std::map<Path, const SignedNode*> byPath;
    for (const auto& n : st.nodes) byPath[n.path] = &n;
    for (const auto& n : st.nodes) {
      if (!is_formula(n.term) || n.term->op == Op::Atom || n.kind != NodeKind::Pia) continue;
      // only start from the top of a PIA component
      if (!n.path.empty()) {
        Path up(n.path.begin(), n.path.end() - 1);
        const SignedNode* par = byPath[up];
        if (is_formula(par->term) && par->kind == NodeKind::Pia) continue;
      }
      // walk the component
      std::vector<const SignedNode*> comp;
      std::function<void(const SignedNode&)> walk = [&](const SignedNode& u) {
        comp.push_back(&u);
        for (int i = 0; i < static_cast<int>(u.term->kids.size()); ++i) {
          Path kp = u.path;
          kp.push_back(i);
          const SignedNode* v = byPath[kp];
          if (v->term->op != Op::Atom && v->kind == NodeKind::Pia) walk(*v);
        }
      };
      walk(n);
      Term formula = at(root, n.path);
      auto fail = [&](const std::string& where, const std::string& why) {
        return FocusReport{false, where, render(formula), render(n.term), why};
      };
      for (const SignedNode* u : comp) {
        auto it = intro.find({side, u->path});
        if (it == intro.end()) return fail("root", "connective " + render(u->term) + " is never introduced");
        if (!is_tonicity(it->second.rule))
          return fail(path_string(it->second.node),
                      "PIA connective of " + render(u->term) + " introduced by " + to_string(it->second.rule));
        for (int i = 0; i < static_cast<int>(u->term->kids.size()); ++i) {
          Path kp = u->path;
          kp.push_back(i);
          auto kt = intro.find({side, kp});
          if (kt == intro.end()) continue;
          const SignedNode* v = byPath[kp];
          if (v->kind != NodeKind::Pia) continue;
          const auto& a = it->second.node;
          const auto& b = kt->second.node;
          bool adjacent = b.size() == a.size() + 1 && std::equal(a.begin(), a.end(), b.begin());
          if (!adjacent)
            return fail(path_string(b), "PIA subtree split: " + render(v->term) + " is not built right above " +
                                            render(u->term));
        }
      }
    }
  }
  return {};
}

std::optional<SeqPath> trace_to_root(const Derivation& d, const std::vector<int>& node, SeqPath occ) {
  for (std::size_t k = node.size(); k-- > 0;) {
    std::vector<int> below(node.begin(), node.begin() + static_cast<std::ptrdiff_t>(k));
    auto next = trace_down(node_at(d, below).rule, node[k], occ);
    if (!next) return std::nullopt;
    occ = *next;
  }
  return occ;
}

std::vector<Point> entry_exit_points(const Derivation& d) {
  std::vector<Point> out;
  std::vector<int> p;
  std::function<void(const Derivation&)> go = [&](const Derivation& n) {
    const std::string& r = n.rule.name;
    if (r == "down_L") out.push_back({p, n.conclusion.pre, PointKind::PositiveEntry, std::nullopt});
    if (r == "up_R") out.push_back({p, n.conclusion.suc, PointKind::NegativeEntry, std::nullopt});
    if (r == "down_R") out.push_back({p, n.conclusion.suc, PointKind::PositiveExit, std::nullopt});
    if (r == "up_L") out.push_back({p, n.conclusion.pre, PointKind::NegativeExit, std::nullopt});
    for (int i = 0; i < static_cast<int>(n.premises.size()); ++i) {
      p.push_back(i);
      go(n.premises[static_cast<std::size_t>(i)]);
      p.pop_back();
    }
  };
  go(d);
  for (auto& pt : out) {
    bool pre = pt.kind == PointKind::PositiveEntry || pt.kind == PointKind::NegativeExit;
    pt.origin = trace_to_root(d, pt.node, {pre ? 0 : 1, {}});
  }
  return out;
}

namespace {

// Shift display postulates become a pair of structural shift steps.
Derivation expand_shift_dps(const Derivation& d) {
  Derivation out{d.rule, d.conclusion, {}};
  for (const auto& p : d.premises) out.premises.push_back(expand_shift_dps(p));
  if (d.rule.name != "dp_up_dn") return out;
  const Derivation& prem = out.premises[0];
  if (d.rule.dir == Dir::Fwd) {
    // .up X |- D  ==>  X |- D  ==>  X |- .dn D
    Sequent mid{prem.conclusion.pre->kids[0], prem.conclusion.suc};
    Derivation elim{{"s-up", Dir::Inv}, mid, {prem}};
    return {{"s-down", Dir::Fwd}, d.conclusion, {elim}};
  }
  // X |- .dn D  ==>  X |- D  ==>  .up X |- D
  Sequent mid{prem.conclusion.pre, prem.conclusion.suc->kids[0]};
  Derivation elim{{"s-down", Dir::Inv}, mid, {prem}};
  return {{"s-up", Dir::Fwd}, d.conclusion, {elim}};
}

const Derivation* same_conclusion_below(const Derivation& d) {
  std::vector<const Derivation*> queue;
  for (const auto& p : d.premises) queue.push_back(&p);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    if (queue[i]->conclusion == d.conclusion) return queue[i];
    for (const auto& p : queue[i]->premises) queue.push_back(&p);
  }
  return nullptr;
}

Derivation remove_loops(const Derivation& d) {
  const Derivation* cur = &d;
  while (const Derivation* below = same_conclusion_below(*cur)) cur = below;
  Derivation out{cur->rule, cur->conclusion, {}};
  for (const auto& p : cur->premises) out.premises.push_back(remove_loops(p));
  return out;
}

bool has_variant_anywhere(const Derivation& d) {
  if (has_variant(d.conclusion.pre) || has_variant(d.conclusion.suc)) return true;
  for (const auto& p : d.premises)
    if (has_variant_anywhere(p)) return true;
  return false;
}

bool has_shift_dp(const Derivation& d) {
  const RuleInfo* i = find_rule(d.rule);
  if (i && i->shiftDp) return true;
  for (const auto& p : d.premises)
    if (has_shift_dp(p)) return true;
  return false;
}

}  // namespace

Derivation minimize_proof(const Derivation& in) {
  Derivation d = is_cut_free(in) ? in : eliminate_cuts(in);
  d = remove_loops(expand_shift_dps(d));
  if (!has_variant_anywhere(d) && !has_shift_dp(d) && check_strong_focalization(d).ok) return d;
  auto found = prove(d.conclusion, SearchConfig{});
  if (!found.empty()) return found.front();
  return d;
}

}  // namespace lg
