#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lg/syntax.hpp"

namespace lg {

// Fwd/Inv for display postulates (top-to-bottom as displayed, or reversed);
// Fwd = intro, Inv = elim for the structural shift rules s-down and s-up.
enum class Dir : std::uint8_t { None, Fwd, Inv };

struct RuleId {
  std::string name;
  Dir dir = Dir::None;
  bool operator==(const RuleId&) const = default;
  bool operator<(const RuleId& o) const { return name != o.name ? name < o.name : dir < o.dir; }
};

std::string to_string(const RuleId& r);
RuleId inverse(const RuleId& r);

enum class Group : std::uint8_t {
  Axiom, Translation, Tonicity, ShiftLogical, StructuralShift, Display, Cut
};

struct RuleInfo {
  RuleId id;
  Group group;
  bool tonicity;    // ⊗_R … /_L and ↓_L, ↑_R
  bool shiftDp;     // the three display postulates between shifts
  bool variantDp;   // display postulates mentioning a variant or a shift adjoint
  std::vector<Sequent> premises;
  Sequent conclusion;
};

const std::vector<RuleInfo>& rules();
const RuleInfo* find_rule(const RuleId& id);
bool is_cut(const RuleId& id);
bool is_axiom(const RuleId& id);

using Bindings = std::map<std::string, Term>;
bool match(const Term& pat, const Term& t, Bindings& b);
bool match(const Sequent& pat, const Sequent& s, Bindings& b);
Term instantiate(const Term& pat, const Bindings& b);  // nullptr when a metavariable is unbound

struct Derivation {
  RuleId rule;
  Sequent conclusion;
  std::vector<Derivation> premises;
};

bool operator==(const Derivation& a, const Derivation& b);

struct CheckReport {
  bool ok = true;
  std::string path;
  std::string reason;
};

CheckReport check_derivation(const Derivation& d);
// Checks one inference: do premises/conclusion instantiate the rule?
bool valid_step(const RuleId& r, const std::vector<Sequent>& premises, const Sequent& concl);

struct RuleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Sequent apply_rule_forward(const RuleId& rule, const std::vector<Sequent>& premises,
                           const Bindings& hints = {});
Derivation apply_forward(const RuleId& rule, std::vector<Derivation> premises, const Bindings& hints = {});

struct ExpandOptions {
  bool allowVariants = false;
  bool allowCuts = false;
};

struct Expansion {
  RuleId rule;
  std::vector<Sequent> premises;
};

std::vector<Expansion> backward_expansions(const Sequent& goal, ExpandOptions opts = {});

// Occurrence tracking through a single rule instance.
// Returns the premise index and path an occurrence in the conclusion comes from,
// or nullopt when the rule builds that node itself.
std::optional<std::pair<int, SeqPath>> trace_up(const RuleId& r, const SeqPath& p);
std::optional<SeqPath> trace_down(const RuleId& r, int premise, const SeqPath& p);

// Derivation helpers
std::size_t proof_size(const Derivation& d);
std::size_t proof_height(const Derivation& d);
std::size_t count_rules(const Derivation& d, bool (*pred)(const RuleId&));
bool is_cut_free(const Derivation& d);
bool is_logical(const RuleId& r);      // LG connective rules, no shifts
bool is_lg_logical(const RuleId& r);
// Logical rules turning a structural connective into its operational twin
// (LG translation rules plus down_R and up_L); every other logical rule is a tonicity rule.
bool is_translation(const RuleId& r);
bool is_tonicity(const RuleId& r);
std::string dump(const Derivation& d, int indent = 0);
const Derivation& node_at(const Derivation& d, const std::vector<int>& path);
std::string path_string(const std::vector<int>& path);

// Exchange format
// Images of a derivation under the two symmetries: every sequent is mapped and
// each step is relabelled with the rule, and premise order, licensing the image.
// Throws RuleError when no rule fits. `used` collects the rule pairs applied.
enum class Symmetry : std::uint8_t { Bowtie, Infty };
Sequent apply_symmetry(const Sequent& s, Symmetry sym);
Derivation apply_symmetry(const Derivation& d, Symmetry sym,
                          std::set<std::pair<RuleId, RuleId>>* used = nullptr);

// bussproofs source for a proof tree; invertible steps get a double line.
std::string to_latex(const Derivation& d, bool color = false);

std::string to_json(const Derivation& d, const AtomSet& negAtoms, int indent = 2);
Derivation from_json(const std::string& text, AtomSet* negAtomsOut = nullptr);
AtomSet neg_atoms_of(const Derivation& d);

// Lemmas as derivation builders
Derivation identity_expansion(const Term& psi);
Derivation saturate_translations(const Derivation& d, int side);
Derivation structural_cut(const Derivation& d1, const Derivation& d2);
// Rearranges by display postulates until the subterm at p is a whole side.
// Returns the DP chain applied below d (possibly empty) and the final side.
Derivation display(const Derivation& d, const SeqPath& p, int* sideOut = nullptr, bool allowVariants = true);

}  // namespace lg
