#include "lg/syntax.hpp"

#include <cctype>
#include <functional>
#include <sstream>

namespace lg {

std::string to_string(Sort s) {
  std::string r = s.pur == Pur::Shifted ? "shifted-" : "pure-";
  return r + (s.pol == Pol::Pos ? "pos" : "neg");
}

bool is_binary(Op op) {
  switch (op) {
    case Op::Otimes: case Op::Oplus: case Op::Under: case Op::Over:
    case Op::Oslash: case Op::Obslash:
      return true;
    default:
      return false;
  }
}

bool is_shift(Op op) {
  return op == Op::Up || op == Op::Down || op == Op::UpL || op == Op::DownR;
}

Family family(Op op) {
  switch (op) {
    case Op::Otimes: case Op::Oslash: case Op::Obslash: case Op::Up: case Op::UpL:
      return Family::F;
    default:
      return Family::G;
  }
}

bool monotone_arg(Op op, int i) {
  switch (op) {
    case Op::Under: case Op::Obslash: return i != 0;
    case Op::Over: case Op::Oslash: return i != 1;
    default: return true;
  }
}

namespace {

struct BinSig {
  Pol a0, a1, res;
};

BinSig base_sig(Op op) {
  switch (op) {
    case Op::Otimes: return {Pol::Pos, Pol::Pos, Pol::Pos};
    case Op::Oslash: return {Pol::Pos, Pol::Neg, Pol::Pos};
    case Op::Obslash: return {Pol::Neg, Pol::Pos, Pol::Pos};
    case Op::Oplus: return {Pol::Neg, Pol::Neg, Pol::Neg};
    case Op::Under: return {Pol::Pos, Pol::Neg, Pol::Neg};
    case Op::Over: return {Pol::Neg, Pol::Pos, Pol::Neg};
    default: return {Pol::Pos, Pol::Pos, Pol::Pos};
  }
}

std::optional<Sort> compute_sort(Op op, Layer layer, Var var, const std::vector<Term>& kids) {
  for (const auto& k : kids)
    if (!k->sort) return std::nullopt;
  if (layer == Layer::Formula)
    for (const auto& k : kids)
      if (k->layer != Layer::Formula) return std::nullopt;
  if (is_binary(op)) {
    if (kids.size() != 2) return std::nullopt;
    if (layer == Layer::Formula && var != Var::None) return std::nullopt;
    BinSig s = base_sig(op);
    Pol want0 = s.a0, want1 = s.a1;
    if (var == Var::L) want0 = flip(want0);
    if (var == Var::R) want1 = flip(want1);
    if (kids[0]->sort->pol != want0 || kids[1]->sort->pol != want1) return std::nullopt;
    if (var == Var::None) return Sort{s.res, Pur::Pure};
    return Sort{flip(s.res), Pur::Shifted};
  }
  if (is_shift(op)) {
    if (kids.size() != 1 || var != Var::None) return std::nullopt;
    Sort a = *kids[0]->sort;
    switch (op) {
      case Op::Up:
        if (a == PurePos) return ShiftedNeg;
        return std::nullopt;
      case Op::Down:
        if (a == PureNeg) return ShiftedPos;
        return std::nullopt;
      case Op::UpL:
        if (layer == Layer::Structure && a == ShiftedPos) return PureNeg;
        return std::nullopt;
      case Op::DownR:
        if (layer == Layer::Structure && a == ShiftedNeg) return PurePos;
        return std::nullopt;
      default:
        return std::nullopt;
    }
  }
  return std::nullopt;
}

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Term make(Op op, Layer layer, Var var, std::vector<Term> kids) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->layer = layer;
  n->var = var;
  n->atomPol = Pol::Pos;
  n->sort = compute_sort(op, layer, var, kids);
  std::size_t h = mix(static_cast<std::size_t>(op) * 31 + static_cast<std::size_t>(layer) * 7,
                      static_cast<std::size_t>(var));
  for (const auto& k : kids) h = mix(h, k->hash);
  n->hash = h;
  n->kids = std::move(kids);
  return n;
}

Term atom(const std::string& name, Pol pol) {
  auto n = std::make_shared<Node>();
  n->op = Op::Atom;
  n->layer = Layer::Formula;
  n->var = Var::None;
  n->atomPol = pol;
  n->name = name;
  n->sort = Sort{pol, Pur::Pure};
  n->hash = mix(std::hash<std::string>{}(name), pol == Pol::Pos ? 1 : 2);
  return n;
}

Term meta(const std::string& name) {
  auto n = std::make_shared<Node>();
  n->op = Op::Meta;
  n->layer = Layer::Structure;
  n->var = Var::None;
  n->atomPol = Pol::Pos;
  n->name = name;
  n->hash = mix(std::hash<std::string>{}(name), 99);
  return n;
}

Term fml(Op op, std::vector<Term> kids) { return make(op, Layer::Formula, Var::None, std::move(kids)); }
Term str(Op op, std::vector<Term> kids, Var var) {
  return make(op, Layer::Structure, var, std::move(kids));
}

bool equal(const Term& a, const Term& b) {
  if (a.get() == b.get()) return true;
  if (a->hash != b->hash || a->op != b->op || a->layer != b->layer || a->var != b->var ||
      a->kids.size() != b->kids.size())
    return false;
  if (a->op == Op::Atom || a->op == Op::Meta)
    return a->name == b->name && a->atomPol == b->atomPol;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!equal(a->kids[i], b->kids[i])) return false;
  return true;
}

Sort sort_of(const Term& t) {
  if (!t->sort) throw std::logic_error("sort_of: ill-sorted term " + render(t));
  return *t->sort;
}

bool has_variant(const Term& t) {
  if (t->var != Var::None || t->op == Op::UpL || t->op == Op::DownR) return true;
  for (const auto& k : t->kids)
    if (has_variant(k)) return true;
  return false;
}

bool has_structural_shift(const Term& t) {
  if (t->layer == Layer::Structure && is_shift(t->op)) return true;
  for (const auto& k : t->kids)
    if (has_structural_shift(k)) return true;
  return false;
}

std::size_t size(const Term& t) {
  std::size_t n = 1;
  for (const auto& k : t->kids) n += size(k);
  return n;
}

std::size_t depth(const Term& t) {
  std::size_t d = 0;
  for (const auto& k : t->kids) d = std::max(d, depth(k));
  return d + 1;
}

void atoms_of(const Term& t, std::set<std::pair<std::string, Pol>>& out) {
  if (t->op == Op::Atom) out.insert({t->name, t->atomPol});
  for (const auto& k : t->kids) atoms_of(k, out);
}

Term at(const Term& t, const Path& p) {
  Term cur = t;
  for (int i : p) {
    if (i < 0 || i >= static_cast<int>(cur->kids.size())) throw std::out_of_range("bad path");
    cur = cur->kids[i];
  }
  return cur;
}

namespace {
Term replace_rec(const Term& t, const Path& p, std::size_t i, const Term& r) {
  if (i == p.size()) return r;
  auto kids = t->kids;
  kids.at(p[i]) = replace_rec(kids.at(p[i]), p, i + 1, r);
  if (t->op == Op::Atom || t->op == Op::Meta) throw std::out_of_range("bad path");
  return make(t->op, t->layer, t->var, std::move(kids));
}
}  // namespace

Term replace_at(const Term& t, const Path& p, const Term& r) { return replace_rec(t, p, 0, r); }

bool operator==(const Sequent& a, const Sequent& b) {
  return equal(a.pre, b.pre) && equal(a.suc, b.suc);
}

std::optional<Turnstile> turnstile_of(Sort pre, Sort suc) {
  Family3 f;
  if (pre.pol == Pol::Pos && suc.pol == Pol::Pos) f = Family3::Positive;
  else if (pre.pol == Pol::Neg && suc.pol == Pol::Neg) f = Family3::Negative;
  else if (pre.pol == Pol::Pos && suc.pol == Pol::Neg) f = Family3::Neutral;
  else return std::nullopt;
  return Turnstile{f, pre.pur == Pur::Shifted, suc.pur == Pur::Shifted};
}

bool well_formed(const Sequent& s) {
  return s.pre->sort && s.suc->sort && turnstile_of(*s.pre->sort, *s.suc->sort).has_value();
}

Turnstile turnstile(const Sequent& s) {
  auto t = turnstile_of(sort_of(s.pre), sort_of(s.suc));
  if (!t) throw std::logic_error("ill-formed sequent " + render(s));
  return *t;
}

std::string turnstile_ascii(Turnstile t) {
  std::string base;
  if (!t.preShifted && !t.sucShifted) base = "|-";
  else if (t.preShifted && !t.sucShifted) base = "||-.";
  else if (!t.preShifted && t.sucShifted) base = "||-'";
  else base = "|||-";
  if (t.family == Family3::Positive) return base + "r";
  if (t.family == Family3::Negative) return base + "b";
  return base;
}

std::string turnstile_latex(Turnstile t, bool color) {
  std::string g;
  if (!t.preShifted && !t.sucShifted) g = "\\vdash";
  else if (t.preShifted && !t.sucShifted) g = "\\underset{\\cdot}{\\Vdash}";
  else if (!t.preShifted && t.sucShifted) g = "\\dot{\\Vdash}";
  else g = "\\Vvdash";
  if (!color || t.family == Family3::Neutral) return g;
  return std::string("\\textcolor{") + (t.family == Family3::Positive ? "red" : "blue") + "}{" + g +
         "}";
}

bool forbidden_shape(Turnstile t) {
  return (t.family == Family3::Positive && t.preShifted && !t.sucShifted) ||
         (t.family == Family3::Negative && !t.preShifted && t.sucShifted) ||
         (t.family == Family3::Neutral && t.preShifted && t.sucShifted);
}

Term at(const Sequent& s, const SeqPath& p) { return at(p.side == 0 ? s.pre : s.suc, p.path); }

Sequent replace_at(const Sequent& s, const SeqPath& p, const Term& r) {
  if (p.side == 0) return {replace_at(s.pre, p.path, r), s.suc};
  return {s.pre, replace_at(s.suc, p.path, r)};
}

// ---------------------------------------------------------------- parsing

namespace {

enum class Tok { Atom, Meta, Bin, Un, LParen, RParen, Turn, End };

struct Token {
  Tok kind;
  std::string text;
  Op op = Op::Atom;
  Layer layer = Layer::Formula;
  Var var = Var::None;
  std::size_t pos = 0;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '-';
}

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip();
      if (i_ >= s_.size()) {
        out.push_back({Tok::End, "", Op::Atom, Layer::Formula, Var::None, i_});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool starts(const char* lit) const { return s_.compare(i_, std::char_traits<char>::length(lit), lit) == 0; }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("lexical error at offset " + std::to_string(i_) + ": " + what);
  }

  // operator body after an optional '.', returns true if found
  bool binop(Op& op, std::size_t& len) const {
    static const std::pair<const char*, Op> table[] = {
        {"(+)", Op::Oplus}, {"(/)", Op::Oslash}, {"(\\)", Op::Obslash},
        {"*", Op::Otimes},  {"\\", Op::Under},   {"/", Op::Over}};
    for (const auto& [lit, o] : table) {
      std::size_t n = std::char_traits<char>::length(lit);
      if (s_.compare(i_, n, lit) == 0) {
        op = o;
        len = n;
        return true;
      }
    }
    return false;
  }

  std::string word_at(std::size_t j) const {
    std::size_t k = j;
    while (k < s_.size() && ident_char(s_[k])) ++k;
    return s_.substr(j, k - j);
  }

  Token next() {
    Token t;
    t.pos = i_;
    if (starts("|-")) {
      i_ += 2;
      t.kind = Tok::Turn;
      t.text = "|-";
      return t;
    }
    Op op;
    std::size_t len;
    if (s_[i_] == '.') {
      ++i_;
      t.layer = Layer::Structure;
      if (binop(op, len)) {
        i_ += len;
        t.kind = Tok::Bin;
        t.op = op;
        if (i_ < s_.size() && (s_[i_] == 'l' || s_[i_] == 'r') &&
            (i_ + 1 >= s_.size() || !ident_char(s_[i_ + 1]))) {
          t.var = s_[i_] == 'l' ? Var::L : Var::R;
          ++i_;
        }
        return t;
      }
      std::string w = word_at(i_);
      if (w == "up" || w == "upl" || w == "dn" || w == "dnr") {
        i_ += w.size();
        t.kind = Tok::Un;
        t.op = w == "up" ? Op::Up : w == "upl" ? Op::UpL : w == "dn" ? Op::Down : Op::DownR;
        return t;
      }
      fail("unknown structural connective");
    }
    if (binop(op, len)) {
      i_ += len;
      t.kind = Tok::Bin;
      t.op = op;
      return t;
    }
    if (s_[i_] == '(') {
      ++i_;
      t.kind = Tok::LParen;
      return t;
    }
    if (s_[i_] == ')') {
      ++i_;
      t.kind = Tok::RParen;
      return t;
    }
    if (s_[i_] == '$') {
      ++i_;
      std::string w = word_at(i_);
      if (w.empty()) fail("empty metavariable");
      i_ += w.size();
      t.kind = Tok::Meta;
      t.text = w;
      return t;
    }
    if (ident_start(s_[i_])) {
      std::string w = word_at(i_);
      i_ += w.size();
      if (w == "up" || w == "dn") {
        t.kind = Tok::Un;
        t.op = w == "up" ? Op::Up : Op::Down;
        return t;
      }
      t.kind = Tok::Atom;
      t.text = w;
      return t;
    }
    fail(std::string("unexpected character '") + s_[i_] + "'");
  }
};

class Parser {
 public:
  Parser(std::vector<Token> toks, const AtomSet& neg, bool allowMeta)
      : t_(std::move(toks)), neg_(neg), meta_(allowMeta) {}

  Term expr() {
    Term a = unary();
    if (peek().kind == Tok::Bin) {
      Token op = t_[k_++];
      Term b = unary();
      if (peek().kind == Tok::Bin)
        throw ParseError("unparenthesized binary nesting at offset " + std::to_string(peek().pos));
      return build(op, {a, b});
    }
    return a;
  }

  const Token& peek() const { return t_[k_]; }
  void expect(Tok k, const char* what) {
    if (peek().kind != k) throw ParseError(std::string("expected ") + what + " at offset " + std::to_string(peek().pos));
    ++k_;
  }

 private:
  std::vector<Token> t_;
  std::size_t k_ = 0;
  const AtomSet& neg_;
  bool meta_;

  Term build(const Token& op, std::vector<Term> kids) {
    if (op.layer == Layer::Formula)
      for (const auto& k : kids)
        if (k->layer != Layer::Formula && k->op != Op::Meta)
          throw ParseError("operational connective applied to a structure at offset " +
                           std::to_string(op.pos));
    return make(op.op, op.layer, op.var, std::move(kids));
  }

  Term unary() {
    const Token& tk = peek();
    switch (tk.kind) {
      case Tok::Un: {
        Token op = t_[k_++];
        Term a = unary();
        return build(op, {a});
      }
      case Tok::Atom:
        ++k_;
        return atom(tk.text, neg_.count(tk.text) ? Pol::Neg : Pol::Pos);
      case Tok::Meta:
        if (!meta_) throw ParseError("metavariable not allowed here");
        ++k_;
        return meta(tk.text);
      case Tok::LParen: {
        ++k_;
        Term e = expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      default:
        throw ParseError("unexpected token at offset " + std::to_string(tk.pos));
    }
  }
};

void require_sorted(const Term& t, const std::string& text) {
  if (t->sort) return;
  // find the innermost offending node for the message
  std::function<Term(const Term&)> worst = [&](const Term& x) -> Term {
    for (const auto& k : x->kids)
      if (!k->sort) return worst(k);
    return x;
  };
  Term w = worst(t);
  std::string why;
  switch (w->op) {
    case Op::Down: why = "dn requires a pure negative argument"; break;
    case Op::Up: why = "up requires a pure positive argument"; break;
    case Op::UpL: why = ".upl requires a shifted positive argument"; break;
    case Op::DownR: why = ".dnr requires a shifted negative argument"; break;
    default: why = "argument polarity mismatch"; break;
  }
  throw ParseError("sort clash in '" + text + "': " + why + " (at " + render(w) + ")");
}

}  // namespace

Term parse_term(const std::string& text, const AtomSet& negAtoms, bool allowMeta) {
  Parser p(Lexer(text).run(), negAtoms, allowMeta);
  Term t = p.expr();
  p.expect(Tok::End, "end of input");
  return t;
}

Sequent parse_raw_sequent(const std::string& text, const AtomSet& negAtoms, bool allowMeta) {
  Parser p(Lexer(text).run(), negAtoms, allowMeta);
  Term a = p.expr();
  p.expect(Tok::Turn, "'|-'");
  Term b = p.expr();
  p.expect(Tok::End, "end of input");
  return {a, b};
}

Term parse_formula(const std::string& text, const AtomSet& negAtoms) {
  Term t = parse_term(text, negAtoms);
  if (!is_formula(t)) throw ParseError("expected a formula, got a structure: " + text);
  require_sorted(t, text);
  return t;
}

Term parse_structure(const std::string& text, const AtomSet& negAtoms) {
  Term t = parse_term(text, negAtoms);
  require_sorted(t, text);
  return t;
}

Sequent parse_sequent(const std::string& text, const AtomSet& negAtoms) {
  Sequent s = parse_raw_sequent(text, negAtoms);
  require_sorted(s.pre, text);
  require_sorted(s.suc, text);
  if (!turnstile_of(*s.pre->sort, *s.suc->sort))
    throw ParseError("inadmissible sequent: negative precedent with positive succedent: " + text);
  return s;
}

// ---------------------------------------------------------------- printing

namespace {

std::string op_ascii(Op op) {
  switch (op) {
    case Op::Otimes: return "*";
    case Op::Oplus: return "(+)";
    case Op::Under: return "\\";
    case Op::Over: return "/";
    case Op::Oslash: return "(/)";
    case Op::Obslash: return "(\\)";
    case Op::Up: return "up";
    case Op::Down: return "dn";
    case Op::UpL: return "upl";
    case Op::DownR: return "dnr";
    default: return "?";
  }
}

std::string op_latex(Op op) {
  switch (op) {
    case Op::Otimes: return "\\otimes";
    case Op::Oplus: return "\\oplus";
    case Op::Under: return "\\backslash";
    case Op::Over: return "/";
    case Op::Oslash: return "\\oslash";
    case Op::Obslash: return "\\obslash";
    case Op::Up: return "\\uparrow";
    case Op::Down: return "\\downarrow";
    case Op::UpL: return "\\upharpoonleft";
    case Op::DownR: return "\\downharpoonright";
    default: return "?";
  }
}

bool hat(Op op) { return family(op) == Family::F; }

void emit(const Term& t, Style st, std::string& out) {
  auto child = [&](const Term& k) {
    bool paren = is_binary(k->op);
    if (paren) out += st == Style::Latex ? "(" : "(";
    emit(k, st, out);
    if (paren) out += ")";
  };
  if (t->op == Op::Atom) {
    out += t->name;
    return;
  }
  if (t->op == Op::Meta) {
    out += "$" + t->name;
    return;
  }
  std::string sym;
  if (st == Style::Ascii) {
    sym = (t->layer == Layer::Structure ? "." : "") + op_ascii(t->op);
    if (t->var == Var::L) sym += "l";
    if (t->var == Var::R) sym += "r";
  } else {
    sym = op_latex(t->op);
    if (t->layer == Layer::Structure) sym = std::string(hat(t->op) ? "\\hat{" : "\\check{") + sym + "}";
    if (t->var == Var::L) sym += "_{\\ell}";
    if (t->var == Var::R) sym += "_{r}";
  }
  if (t->kids.size() == 1) {
    out += sym + " ";
    child(t->kids[0]);
    return;
  }
  child(t->kids[0]);
  out += " " + sym + " ";
  child(t->kids[1]);
}

}  // namespace

std::string render(const Term& t, Style style) {
  std::string out;
  emit(t, style, out);
  return out;
}

std::string render(const Sequent& s, Style style, bool color) {
  std::string ts = "|-";
  if (style == Style::Latex) {
    if (auto k = (s.pre->sort && s.suc->sort) ? turnstile_of(*s.pre->sort, *s.suc->sort) : std::nullopt)
      ts = turnstile_latex(*k, color);
    else
      ts = "\\vdash";
  }
  return render(s.pre, style) + " " + ts + " " + render(s.suc, style);
}

// ---------------------------------------------------------------- symmetries

namespace {
Var swap_var(Var v) { return v == Var::L ? Var::R : v == Var::R ? Var::L : Var::None; }

Op mirror(Op op) {
  switch (op) {
    case Op::Under: return Op::Over;
    case Op::Over: return Op::Under;
    case Op::Oslash: return Op::Obslash;
    case Op::Obslash: return Op::Oslash;
    default: return op;
  }
}

Op dual(Op op) {
  switch (op) {
    case Op::Otimes: return Op::Oplus;
    case Op::Oplus: return Op::Otimes;
    case Op::Under: return Op::Oslash;
    case Op::Oslash: return Op::Under;
    case Op::Over: return Op::Obslash;
    case Op::Obslash: return Op::Over;
    case Op::Up: return Op::Down;
    case Op::Down: return Op::Up;
    case Op::UpL: return Op::DownR;
    case Op::DownR: return Op::UpL;
    default: return op;
  }
}
}  // namespace

Term bowtie(const Term& t) {
  if (t->op == Op::Atom || t->op == Op::Meta) return t;
  if (t->kids.size() == 1) return make(t->op, t->layer, t->var, {bowtie(t->kids[0])});
  return make(mirror(t->op), t->layer, swap_var(t->var), {bowtie(t->kids[1]), bowtie(t->kids[0])});
}

Sequent bowtie(const Sequent& s) { return {bowtie(s.pre), bowtie(s.suc)}; }

Term infty(const Term& t) {
  if (t->op == Op::Atom) return atom(t->name, flip(t->atomPol));
  if (t->op == Op::Meta) return t;
  if (t->kids.size() == 1) return make(dual(t->op), t->layer, t->var, {infty(t->kids[0])});
  return make(dual(t->op), t->layer, swap_var(t->var), {infty(t->kids[1]), infty(t->kids[0])});
}

Sequent infty(const Sequent& s) { return {infty(s.suc), infty(s.pre)}; }

AtomSet neg_atoms_of(const Term& t) {
  std::set<std::pair<std::string, Pol>> a;
  atoms_of(t, a);
  AtomSet out;
  for (const auto& [n, p] : a)
    if (p == Pol::Neg) out.insert(n);
  return out;
}

AtomSet neg_atoms_of(const Sequent& s) {
  AtomSet a = neg_atoms_of(s.pre), b = neg_atoms_of(s.suc);
  a.insert(b.begin(), b.end());
  return a;
}

}  // namespace lg
