#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace lg {

enum class Pol : std::uint8_t { Pos, Neg };
enum class Pur : std::uint8_t { Pure, Shifted };

struct Sort {
  Pol pol;
  Pur pur;
  bool operator==(const Sort&) const = default;
};

inline constexpr Sort PurePos{Pol::Pos, Pur::Pure};
inline constexpr Sort ShiftedPos{Pol::Pos, Pur::Shifted};
inline constexpr Sort PureNeg{Pol::Neg, Pur::Pure};
inline constexpr Sort ShiftedNeg{Pol::Neg, Pur::Shifted};

inline Pol flip(Pol p) { return p == Pol::Pos ? Pol::Neg : Pol::Pos; }
std::string to_string(Sort s);

// Connective heads. Up/Down double as the structural shifts; UpL/DownR exist only structurally.
enum class Op : std::uint8_t {
  Atom, Meta, Otimes, Oplus, Under, Over, Oslash, Obslash, Up, Down, UpL, DownR
};
enum class Layer : std::uint8_t { Formula, Structure };
enum class Var : std::uint8_t { None, L, R };
enum class Family : std::uint8_t { F, G };

bool is_binary(Op op);
bool is_shift(Op op);
Family family(Op op);
// true when the i-th argument has order type 1, false for order type dual
bool monotone_arg(Op op, int i);

struct Node;
using Term = std::shared_ptr<const Node>;

struct Node {
  Op op;
  Layer layer;
  Var var;
  Pol atomPol;
  std::string name;
  std::vector<Term> kids;
  std::optional<Sort> sort;
  std::size_t hash;
};

Term atom(const std::string& name, Pol pol);
Term meta(const std::string& name);
Term fml(Op op, std::vector<Term> kids);
Term str(Op op, std::vector<Term> kids, Var var = Var::None);
Term make(Op op, Layer layer, Var var, std::vector<Term> kids);

bool equal(const Term& a, const Term& b);
struct TermEq {
  bool operator()(const Term& a, const Term& b) const { return equal(a, b); }
};
struct TermHash {
  std::size_t operator()(const Term& t) const { return t->hash; }
};

inline bool is_formula(const Term& t) { return t->layer == Layer::Formula; }
inline bool is_atom(const Term& t) { return t->op == Op::Atom; }
inline bool well_sorted(const Term& t) { return t->sort.has_value(); }
Sort sort_of(const Term& t);

bool has_variant(const Term& t);           // l/r variants or the shift adjoints upl/dnr
bool has_structural_shift(const Term& t);  // any structural unary connective
std::size_t size(const Term& t);
std::size_t depth(const Term& t);
void atoms_of(const Term& t, std::set<std::pair<std::string, Pol>>& out);

using Path = std::vector<int>;
Term at(const Term& t, const Path& p);
Term replace_at(const Term& t, const Path& p, const Term& r);

enum class Family3 : std::uint8_t { Positive, Negative, Neutral };

struct Turnstile {
  Family3 family;
  bool preShifted;
  bool sucShifted;
  bool operator==(const Turnstile&) const = default;
};

struct Sequent {
  Term pre;
  Term suc;
};
bool operator==(const Sequent& a, const Sequent& b);
struct SequentHash {
  std::size_t operator()(const Sequent& s) const { return s.pre->hash * 1000003u ^ s.suc->hash; }
};

std::optional<Turnstile> turnstile_of(Sort pre, Sort suc);
bool well_formed(const Sequent& s);
Turnstile turnstile(const Sequent& s);
std::string turnstile_ascii(Turnstile t);
std::string turnstile_latex(Turnstile t, bool color = false);
// The three shapes no cut-free derivation can reach.
bool forbidden_shape(Turnstile t);

struct SeqPath {
  int side;  // 0 precedent, 1 succedent
  Path path;
  bool operator==(const SeqPath&) const = default;
  bool operator<(const SeqPath& o) const {
    return side != o.side ? side < o.side : path < o.path;
  }
};
Term at(const Sequent& s, const SeqPath& p);
Sequent replace_at(const Sequent& s, const SeqPath& p, const Term& r);

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using AtomSet = std::set<std::string>;

// Raw parse: no sort checking, '$name' metavariables allowed when allowMeta.
Term parse_term(const std::string& text, const AtomSet& negAtoms, bool allowMeta = false);
Sequent parse_raw_sequent(const std::string& text, const AtomSet& negAtoms, bool allowMeta = false);

Term parse_formula(const std::string& text, const AtomSet& negAtoms);
Term parse_structure(const std::string& text, const AtomSet& negAtoms);
Sequent parse_sequent(const std::string& text, const AtomSet& negAtoms);

enum class Style { Ascii, Latex };
std::string render(const Term& t, Style style = Style::Ascii);
std::string render(const Sequent& s, Style style = Style::Ascii, bool color = false);

Term bowtie(const Term& t);
Sequent bowtie(const Sequent& s);
Term infty(const Term& t);
Sequent infty(const Sequent& s);

AtomSet neg_atoms_of(const Sequent& s);
AtomSet neg_atoms_of(const Term& t);

}  // namespace lg
