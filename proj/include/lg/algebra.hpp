#pragma once

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lg/kernel.hpp"

namespace lg {

struct FinitePoset {
  int size = 0;
  std::vector<char> leq;  // row-major size x size
  bool le(int a, int b) const { return leq[static_cast<std::size_t>(a * size + b)] != 0; }
  static FinitePoset discrete(int n);
  static FinitePoset chain(int n);
};

struct WeakRel {
  int rows = 0;
  int cols = 0;
  std::vector<char> rel;
  bool operator()(int a, int b) const { return rel[static_cast<std::size_t>(a * cols + b)] != 0; }
  void set(int a, int b, bool v) { rel[static_cast<std::size_t>(a * cols + b)] = v ? 1 : 0; }
  static WeakRel empty(int r, int c) { return {r, c, std::vector<char>(static_cast<std::size_t>(r * c), 0)}; }
};

std::vector<std::string> poset_violations(const FinitePoset& p, const std::string& name);
std::vector<std::string> weakening_violations(const FinitePoset& src, const FinitePoset& tgt, const WeakRel& w,
                                              const std::string& name);
// Order on the disjoint union, src first.
FinitePoset collage(const FinitePoset& src, const FinitePoset& tgt, const WeakRel& w);

// Binary operations and their variants, keyed by connective and variant tag.
struct OpKey {
  Op op;
  Var var;
  bool operator<(const OpKey& o) const { return op != o.op ? op < o.op : var < o.var; }
  bool operator==(const OpKey&) const = default;
};
std::string op_name(OpKey k);  // otimes, otimes_l, ...
std::optional<OpKey> op_key(const std::string& name);
const std::vector<OpKey>& all_op_keys();

// Collage indices: the positive collage lists P then Ṗ, the negative one N then Ṅ.
struct Val {
  Pol pol;
  int idx;
  bool operator==(const Val&) const = default;
};

struct FiniteFPLG {
  std::string name;
  FinitePoset P, Pd, N, Nd;
  std::vector<int> up, dnr, upl, dn;  // ↑ P→Ṅ, ⇂ Ṅ→P, ↿ Ṗ→N, ↓ N→Ṗ
  WeakRel dotr;  // P × Ṗ
  WeakRel w;     // P × N
  WeakRel dotb;  // Ṅ × N
  std::map<OpKey, std::vector<int>> ops;  // result collage index, row = first argument

  // filled by complete()
  WeakRel dot;    // P × Ṅ, represented by ↑ ⊣ ⇂
  WeakRel dotw;   // Ṗ × N, represented by ↿ ⊣ ↓
  FinitePoset pos, neg;
  WeakRel cw;     // collage weakening relation, positive collage × negative collage

  void complete();
  int size(Pol p) const { return p == Pol::Pos ? pos.size : neg.size; }
  bool shifted(Val v) const { return v.idx >= (v.pol == Pol::Pos ? P.size : N.size); }
  Val apply(OpKey k, Val a, Val b) const;
  // pos/pos: positive collage order; neg/neg: negative collage order; pos/neg: cw
  bool related(Val a, Val b) const;
};

struct AlgebraReport {
  bool ok = true;
  std::vector<std::string> violations;
};
AlgebraReport check_fplg_axioms(const FiniteFPLG& a);

// Basic LG-algebra on one poset. Argument order follows the formula syntax:
// under(a, c) = a \ c, over(c, b) = c / b, oslash(c, b), obslash(a, c).
struct FiniteLG {
  FinitePoset order;
  std::map<Op, std::vector<int>> ops;
  int op(Op o, int a, int b) const { return ops.at(o)[static_cast<std::size_t>(a * order.size + b)]; }
};
AlgebraReport check_lg(const FiniteLG& g);
// Residuals computed from ⊗ and ⊕; nullopt when they do not exist.
std::optional<FiniteLG> lg_from_products(const FinitePoset& order, const std::vector<int>& otimes,
                                         const std::vector<int>& oplus);
FiniteLG chain_lg(int n);  // meet, join, Heyting and co-Heyting residuals
FiniteLG boolean_lg(int atoms);
bool isomorphic(const FiniteLG& a, const FiniteLG& b);

struct AlgebraError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

FiniteFPLG from_lg(const FiniteLG& g, const std::string& name = "");
// Quotient of the pre-order A ≤ B iff A⁺ cw B⁻ on P ⊔ N; throws AlgebraError if the
// operations do not respect the quotient.
FiniteLG to_lg(const FiniteFPLG& a);

// Rejection sampling: posets of size ≤ maxSize, then shifts, relations and the
// two product tables; the other sixteen operations are solved from the adjunctions.
std::optional<FiniteFPLG> random_fplg(std::mt19937& rng, int maxSize = 3, int attempts = 2000);

std::string serialize(const FiniteFPLG& a);
FiniteFPLG parse_algebra(const std::string& text);
// "builtin:chain2", "builtin:chain3", "builtin:bool4", "builtin:trivial" or a file path.
FiniteFPLG load_algebra(const std::string& spec);

using Valuation = std::map<std::string, int>;  // atom name → index in P or N
Val eval(const Term& t, const FiniteFPLG& a, const Valuation& v);
bool interpret(const Sequent& s, const FiniteFPLG& a, const Valuation& v);
// Calls f on every valuation of the atoms; stops early when f returns false.
void for_each_valuation(const Sequent& s, const FiniteFPLG& a, const std::function<bool(const Valuation&)>& f);
bool valid(const Sequent& s, const FiniteFPLG& a);

struct Countermodel {
  std::size_t algebra;
  Valuation valuation;
};
std::optional<Countermodel> find_countermodel(const Sequent& s, const std::vector<FiniteFPLG>& algebras);

struct SoundnessReport {
  std::size_t checks = 0;
  std::vector<std::string> violations;
};
// Metavariables range over the values of structures of depth ≤ depth built on all valuations.
SoundnessReport check_schema_soundness(const std::string& label, const std::vector<Sequent>& premises,
                                       const Sequent& conclusion, const FiniteFPLG& a, int depth);
SoundnessReport check_rule_soundness(const RuleId& rule, const FiniteFPLG& a, int depth = 2);

}  // namespace lg
