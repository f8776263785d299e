#pragma once

#include <string>
#include <vector>

#include "lg/kernel.hpp"
#include "lg/standardize.hpp"

namespace lg {

// f.LG: unpolarized LG with focus brackets. Terms reuse the fD.LG node type
// without sorts; formulas carry no shifts.
enum class FlgFocus : std::uint8_t { None, Left, Right };

struct FlgSequent {
  Term pre;
  Term suc;
  FlgFocus focus = FlgFocus::None;
};
bool operator==(const FlgSequent& a, const FlgSequent& b);

std::string render(const FlgSequent& s);
// "X |- [A]", "[A] |- D" or "X |- D"
FlgSequent parse_flg_sequent(const std::string& text, const AtomSet& negAtoms);

bool is_flg_formula(const Term& t);
bool is_input_structure(const Term& t);
bool is_output_structure(const Term& t);
bool flg_positive(const Term& formula);  // ⊗, ⊘, ⦸ or a positive atom
bool flg_well_formed(const FlgSequent& s);

struct FlgError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rules: Ax; otimes_R oslash_R obslash_R oplus_L under_L over_L (focused, premises in
// argument order); otimes_L oslash_L obslash_L oplus_R under_R over_R; the four
// LG display postulates (fwd/inv); mu* (X |- [A] => X |- A) and mu~ (A |- D => [A] |- D)
// for positive A; mu ([A] |- D => A |- D) and mu~* (X |- A => X |- [A]) for negative A.
struct FlgDerivation {
  RuleId rule;
  FlgSequent conclusion;
  std::vector<FlgDerivation> premises;
};
bool operator==(const FlgDerivation& a, const FlgDerivation& b);

FlgSequent flg_apply_forward(const RuleId& rule, const std::vector<FlgSequent>& premises);
CheckReport check_flg(const FlgDerivation& d);
std::size_t flg_height(const FlgDerivation& d);
std::size_t flg_logical_count(const FlgDerivation& d);
std::string dump(const FlgDerivation& d, int indent = 0);

std::string to_json(const FlgDerivation& d, const AtomSet& negAtoms, int indent = 2);
FlgDerivation flg_from_json(const std::string& text, AtomSet* negAtomsOut = nullptr);

// ⌈·⌉
Term polarize_formula(const Term& a, Sign s);
Term polarize_structure(const Term& x, Sign s);
Sequent polarize_sequent(const FlgSequent& s);
Derivation translate_to_fdlg(const FlgDerivation& d);

// ⌊·⌋
Term depolarize(const Term& t);
bool is_normal(const Sequent& s);
FlgSequent depolarize_sequent(const Sequent& s);

enum class Pattern : std::uint8_t {
  DownFocus,       // ↼  down_L ; s-down elim
  UpUnfocus,       // ⇀  up_R ; s-up elim
  DownExit,        // ⇁  s-down intro ; down_R
  DownExitDot,     // ⇁̇  same, shifted precedent
  UpExit,          // ↽  s-up intro ; up_L
  UpExitDot,       // ↽̇  same, shifted succedent
  NegativeAtom,    // ⇋  n-Id ; down_L ; down_R
  PositiveAtom,    // ⇌  p-Id ; up_R ; up_L
};
std::string to_string(Pattern p);

struct ProcessingSection {
  std::vector<int> node;  // lowest node of the section
  Pattern pattern;
};

// Expects a minimal proof; throws FlgError on a section matching no pattern.
std::vector<ProcessingSection> classify_processing_sections(const Derivation& d);
bool is_minimal(const Derivation& d);
FlgDerivation translate_to_flg(const Derivation& d);

}  // namespace lg
