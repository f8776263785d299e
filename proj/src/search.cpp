#include "lg/search.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace lg {

namespace {

enum class Arrival : std::uint8_t { None, DownElim, UpElim, DownIntro, UpIntro };

struct Key {
  Sequent s;
  Arrival a;
  bool operator==(const Key& o) const { return a == o.a && s == o.s; }
};
struct KeyHash {
  std::size_t operator()(const Key& k) const { return SequentHash{}(k.s) * 31u + static_cast<std::size_t>(k.a); }
};

bool orbit_rule(const RuleId& r) {
  return r.name == "dp_otimes_under" || r.name == "dp_otimes_over" || r.name == "dp_oslash_oplus" ||
         r.name == "dp_obslash_oplus";
}

void push_unique(std::vector<Derivation>& out, Derivation d, std::size_t cap) {
  if (out.size() >= cap) return;
  for (const auto& o : out)
    if (o == d) return;
  out.push_back(std::move(d));
}

class Focused {
 public:
  explicit Focused(const SearchConfig& cfg) : cfg_(cfg) {}

  std::vector<Derivation> solve(const Sequent& s, Arrival a) {
    Key k{s, a};
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    if (!active_.insert(k).second) return {};
    std::vector<Derivation> r =
        turnstile(s).family == Family3::Neutral ? neutral(s, a) : focused(s, a);
    active_.erase(k);
    memo_.emplace(k, r);
    return r;
  }

 private:
  const SearchConfig& cfg_;
  std::unordered_map<Key, std::vector<Derivation>, KeyHash> memo_;
  std::unordered_set<Key, KeyHash> active_;

  std::vector<Derivation> combine(const RuleId& rule, const Sequent& concl,
                                  const std::vector<Sequent>& prems, const std::vector<Arrival>& arr) {
    std::vector<Derivation> acc{{rule, concl, {}}};
    for (std::size_t i = 0; i < prems.size(); ++i) {
      auto sub = solve(prems[i], arr[i]);
      if (sub.empty()) return {};
      std::vector<Derivation> next;
      for (const auto& a : acc)
        for (const auto& b : sub) {
          if (next.size() >= cfg_.maxSolutions) break;
          Derivation d = a;
          d.premises.push_back(b);
          next.push_back(std::move(d));
        }
      acc = std::move(next);
    }
    return acc;
  }

  std::vector<Derivation> focused(const Sequent& s, Arrival a) {
    std::vector<Derivation> out;
    for (const auto& e : backward_expansions(s)) {
      const RuleInfo* info = find_rule(e.rule);
      bool ok = info->group == Group::Axiom || info->group == Group::Tonicity ||
                info->group == Group::ShiftLogical ||
                (info->group == Group::StructuralShift && e.rule.dir == Dir::Fwd);
      if (a == Arrival::DownElim) ok = e.rule.name == "down_L";
      if (a == Arrival::UpElim) ok = e.rule.name == "up_R";
      if (!ok) continue;
      std::vector<Arrival> arr(e.premises.size(), Arrival::None);
      if (e.rule == RuleId{"s-down", Dir::Fwd}) arr[0] = Arrival::DownIntro;
      if (e.rule == RuleId{"s-up", Dir::Fwd}) arr[0] = Arrival::UpIntro;
      for (auto& d : combine(e.rule, s, e.premises, arr)) push_unique(out, std::move(d), cfg_.maxSolutions);
    }
    return out;
  }

  struct Member {
    Sequent s;
    int parent;
    RuleId rule;
  };

  static std::vector<Member> orbit(const Sequent& root) {
    std::vector<Member> v{{root, -1, {}}};
    std::unordered_set<Sequent, SequentHash> seen{root};
    for (std::size_t i = 0; i < v.size(); ++i) {
      Sequent cur = v[i].s;
      for (const auto& e : backward_expansions(cur)) {
        if (!orbit_rule(e.rule)) continue;
        if (seen.insert(e.premises[0]).second) v.push_back({e.premises[0], static_cast<int>(i), e.rule});
      }
    }
    return v;
  }

  static Derivation chain(const std::vector<Member>& orb, int i, Derivation top) {
    while (orb[static_cast<std::size_t>(i)].parent >= 0) {
      const Member& m = orb[static_cast<std::size_t>(i)];
      top = Derivation{m.rule, orb[static_cast<std::size_t>(m.parent)].s, {std::move(top)}};
      i = m.parent;
    }
    return top;
  }

  std::vector<Derivation> neutral(const Sequent& s, Arrival a) {
    std::vector<Member> orb = orbit(s);
    for (std::size_t i = 0; i < orb.size(); ++i)
      for (const auto& e : backward_expansions(orb[i].s)) {
        if (find_rule(e.rule)->group != Group::Translation) continue;
        std::vector<Derivation> out;
        for (auto& d : combine(e.rule, orb[i].s, e.premises, {Arrival::None}))
          out.push_back(chain(orb, static_cast<int>(i), std::move(d)));
        return out;
      }

    std::vector<Derivation> out;
    for (std::size_t i = 0; i < orb.size(); ++i) {
      const Sequent& m = orb[i].s;
      bool root = i == 0;
      if (is_formula(m.pre) && m.pre->op == Op::Down && !(root && a == Arrival::DownIntro)) {
        Sequent mid{m.pre, str(Op::Down, {m.suc})};
        if (well_formed(mid))
          for (auto& d : combine({"s-down", Dir::Inv}, m, {mid}, {Arrival::DownElim}))
            push_unique(out, chain(orb, static_cast<int>(i), std::move(d)), cfg_.maxSolutions);
      }
      if (is_formula(m.suc) && m.suc->op == Op::Up && !(root && a == Arrival::UpIntro)) {
        Sequent mid{str(Op::Up, {m.pre}), m.suc};
        if (well_formed(mid))
          for (auto& d : combine({"s-up", Dir::Inv}, m, {mid}, {Arrival::UpElim}))
            push_unique(out, chain(orb, static_cast<int>(i), std::move(d)), cfg_.maxSolutions);
      }
    }
    return out;
  }
};

class Generic {
 public:
  Generic(const SearchConfig& cfg) : cfg_(cfg), opts_{cfg.allowVariants, cfg.allowCuts} {}

  std::vector<Derivation> run(const Sequent& g) {
    for (std::size_t depth = 1; depth <= cfg_.maxDepth && budget_ > 0; ++depth) {
      memo_.clear();
      auto r = dfs(g, depth);
      if (!r.empty()) return r;
    }
    return {};
  }

 private:
  const SearchConfig& cfg_;
  ExpandOptions opts_;
  long budget_ = 200000;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<Sequent, std::vector<Derivation>>>> memo_;

  std::vector<Derivation> dfs(const Sequent& g, std::size_t depth) {
    if (depth == 0 || budget_ <= 0) return {};
    auto& bucket = memo_[{SequentHash{}(g), depth}];
    for (const auto& [s, r] : bucket)
      if (s == g) return r;
    std::vector<Derivation> out;
    for (const auto& e : backward_expansions(g, opts_)) {
      if (--budget_ <= 0) break;
      std::vector<Derivation> acc{{e.rule, g, {}}};
      for (const auto& p : e.premises) {
        auto sub = dfs(p, depth - 1);
        std::vector<Derivation> next;
        for (const auto& a : acc)
          for (const auto& b : sub) {
            if (next.size() >= cfg_.maxSolutions) break;
            Derivation d = a;
            d.premises.push_back(b);
            next.push_back(std::move(d));
          }
        acc = std::move(next);
        if (acc.empty()) break;
      }
      for (auto& d : acc) push_unique(out, std::move(d), cfg_.maxSolutions);
      if (out.size() >= cfg_.maxSolutions) break;
    }
    memo_[{SequentHash{}(g), depth}].emplace_back(g, out);
    return out;
  }
};

}  // namespace

std::vector<Derivation> prove(const Sequent& goal, const SearchConfig& cfg) {
  if (!well_formed(goal)) return {};
  std::vector<Derivation> found;
  if (cfg.allowVariants || cfg.allowCuts) {
    found = Generic(cfg).run(goal);
  } else {
    Focused f(cfg);
    found = f.solve(goal, Arrival::None);
  }
  std::vector<Derivation> out;
  for (auto& d : found)
    if (proof_height(d) <= cfg.maxDepth && check_derivation(d).ok) push_unique(out, std::move(d), cfg.maxSolutions);
  return out;
}

Derivation collapse_display(const Derivation& d) {
  const RuleInfo* info = find_rule(d.rule);
  if (info && info->group == Group::Display) {
    const Derivation* top = &d;
    for (;;) {
      const RuleInfo* i = find_rule(top->rule);
      if (!i || i->group != Group::Display) break;
      top = &top->premises[0];
    }
    return {{"Display"}, d.conclusion, {collapse_display(*top)}};
  }
  Derivation out{d.rule, d.conclusion, {}};
  for (const auto& p : d.premises) out.premises.push_back(collapse_display(p));
  return out;
}

Lexicon parse_lexicon(const std::string& text) {
  Lexicon lex;
  std::vector<std::pair<std::string, std::string>> raw;
  std::istringstream in(text);
  std::string line;
  int no = 0;
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++no;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    if (line.rfind("%neg", 0) == 0) {
      std::istringstream ws(line.substr(4));
      std::string a;
      while (ws >> a) lex.negAtoms.insert(a);
      continue;
    }
    auto d = line.find(":=");
    if (d == std::string::npos) throw LexiconError("line " + std::to_string(no) + ": expected `word := formula`");
    std::string w = trim(line.substr(0, d));
    if (w.empty() || w.find_first_of(" \t()") != std::string::npos)
      throw LexiconError("line " + std::to_string(no) + ": bad word '" + w + "'");
    raw.emplace_back(w, trim(line.substr(d + 2)));
  }
  for (const auto& [w, f] : raw) {
    try {
      lex.entries[w] = parse_formula(f, lex.negAtoms);
    } catch (const ParseError& e) {
      throw LexiconError("entry '" + w + "': " + e.what());
    }
  }
  return lex;
}

Lexicon load_lexicon(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw LexiconError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_lexicon(ss.str());
}

namespace {

struct Bracket {
  std::vector<std::string> toks;
  std::size_t pos = 0;
  const std::vector<std::string>& words;
  const Lexicon& lex;
  std::size_t next = 0;

  Term word(const std::string& w) {
    if (next >= words.size() || words[next] != w)
      throw LexiconError("bracketing does not match the sentence at '" + w + "'");
    ++next;
    auto it = lex.entries.find(w);
    if (it == lex.entries.end()) throw LexiconError("unknown word '" + w + "'");
    return it->second;
  }

  Term fold(std::vector<Term> items) {
    if (items.empty()) throw LexiconError("empty bracket group");
    Term t = items.back();
    for (std::size_t i = items.size() - 1; i-- > 0;) t = str(Op::Otimes, {items[i], t});
    return t;
  }

  Term group(bool top) {
    std::vector<Term> items;
    while (pos < toks.size() && toks[pos] != ")") {
      if (toks[pos] == "(") {
        ++pos;
        items.push_back(group(false));
        if (pos >= toks.size()) throw LexiconError("unbalanced bracketing");
        ++pos;
      } else {
        items.push_back(word(toks[pos++]));
      }
    }
    if (top && pos < toks.size()) throw LexiconError("unbalanced bracketing");
    return fold(std::move(items));
  }
};

}  // namespace

Term sentence_structure(const std::vector<std::string>& words, const Lexicon& lex, const std::string& bracketing) {
  if (words.empty()) throw LexiconError("empty sentence");
  std::string br = bracketing;
  if (br.find_first_not_of(" \t") == std::string::npos) {
    br.clear();
    for (const auto& w : words) br += w + " ";
  }
  std::vector<std::string> toks;
  std::string cur;
  for (char c : br) {
    if (c == '(' || c == ')' || c == ' ' || c == '\t') {
      if (!cur.empty()) toks.push_back(cur);
      cur.clear();
      if (c == '(' || c == ')') toks.emplace_back(1, c);
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) toks.push_back(cur);
  Bracket b{toks, 0, words, lex};
  Term t = b.group(true);
  if (b.next != words.size()) throw LexiconError("bracketing leaves words out");
  if (!well_sorted(t)) throw LexiconError("ill-sorted sentence structure");
  return t;
}

Sequent sentence_goal(const std::vector<std::string>& words, const Lexicon& lex, const Term& goal,
                      const std::string& bracketing) {
  Sequent s{sentence_structure(words, lex, bracketing), goal};
  if (!well_sorted(goal) || !well_formed(s)) throw LexiconError("ill-sorted goal sequent " + render(s));
  return s;
}

std::vector<Derivation> parse_sentence(const std::vector<std::string>& words, const Lexicon& lex,
                                       const Term& goal, const SearchConfig& cfg, const std::string& bracketing) {
  return prove(sentence_goal(words, lex, goal, bracketing), cfg);
}

std::vector<Derivation> enumerate_derivations(const EnumerationConfig& cfg) {
  auto seq_size = [](const Sequent& s) { return size(s.pre) + size(s.suc); };
  std::vector<Derivation> all;
  std::unordered_map<Sequent, std::size_t, SequentHash> index;
  std::size_t frontierStart = 0;
  auto add = [&](Derivation d) {
    if (seq_size(d.conclusion) > cfg.maxSize || index.count(d.conclusion)) return;
    index.emplace(d.conclusion, all.size());
    all.push_back(std::move(d));
  };
  for (const auto& a : cfg.posAtoms) add(apply_forward({"p-Id"}, {}, {{"p", atom(a, Pol::Pos)}}));
  for (const auto& a : cfg.negAtoms) add(apply_forward({"n-Id"}, {}, {{"n", atom(a, Pol::Neg)}}));
  auto fire = [&](const RuleInfo& r, std::vector<std::size_t> ps, Bindings& b) {
    auto pre = instantiate(r.conclusion.pre, b), suc = instantiate(r.conclusion.suc, b);
    if (!pre || !suc) return;
    Sequent c{pre, suc};
    if (!well_formed(c) || seq_size(c) > cfg.maxSize || index.count(c)) return;
    std::vector<Derivation> prem;
    for (auto i : ps) prem.push_back(all[i]);
    add(Derivation{r.id, c, std::move(prem)});
  };
  for (std::size_t h = 2; h <= cfg.maxHeight; ++h) {
    std::size_t end = all.size();
    for (const auto& r : rules()) {
      if (is_cut(r.id) || r.premises.empty() || (!cfg.allowVariants && r.variantDp)) continue;
      if (r.premises.size() == 1) {
        for (std::size_t i = frontierStart; i < end; ++i) {
          Bindings b;
          if (match(r.premises[0], all[i].conclusion, b)) fire(r, {i}, b);
        }
        continue;
      }
      std::vector<std::size_t> left, right;
      for (std::size_t i = 0; i < end; ++i) {
        Bindings b;
        if (match(r.premises[0], all[i].conclusion, b)) left.push_back(i);
        Bindings c;
        if (match(r.premises[1], all[i].conclusion, c)) right.push_back(i);
      }
      for (auto i : left)
        for (auto j : right) {
          if (i < frontierStart && j < frontierStart) continue;
          if (seq_size(all[i].conclusion) + seq_size(all[j].conclusion) + 1 > cfg.maxSize) continue;
          Bindings b;
          if (match(r.premises[0], all[i].conclusion, b) && match(r.premises[1], all[j].conclusion, b)) fire(r, {i, j}, b);
        }
    }
    frontierStart = end;
  }
  return all;
}

}  // namespace lg
