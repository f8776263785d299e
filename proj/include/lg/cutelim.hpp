#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lg/kernel.hpp"

namespace lg {

enum class Pst : std::uint8_t { Pre, Suc };

struct SortPst {
  Sort sort;
  Pst pst;
  bool operator==(const SortPst&) const = default;
};

std::string to_string(SortPst s);

// A mutation is given by its non-identity (sort, position) patterns; connective and
// turnstile maps follow from it because turnstiles are unique per sort pair and
// the connective candidates are fixed (same name, upl -> up, dnr -> dn, variant -> plain).
struct Mutation {
  std::string name;
  std::vector<std::pair<SortPst, SortPst>> patterns;
  SortPst operator()(SortPst x) const;
  bool contains(SortPst from, SortPst to) const { return (*this)(from) == to; }
};

// id, dot (the shifted-positive / shifted-negative one), neutral, vdash.
const std::vector<Mutation>& mutation_table();
const Mutation* find_mutation(SortPst from, Sort to);

struct MutationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Position of the occurrence at p (precedent root is Pre).
Pst position_of(const Sequent& s, const SeqPath& p);

Sequent mutate_sequent(const Sequent& s, const std::vector<SeqPath>& targets,
                       const std::vector<Term>& replacements, const Mutation& mu);

struct CutError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The cut rule joining the two premises, if any of the four applies.
std::optional<RuleId> cut_rule_for(const Sequent& left, const Sequent& right);

// One parametric move on the cut at the root of d (premises cut-free): the cut
// formula is substituted along its congruent occurrences in the non-principal
// premise and the cut reappears above, next to the uppermost occurrence.
// Returns d unchanged when both sides are principal.
Derivation parametric_move(const Derivation& d, std::string* mutationName = nullptr);

// Uppermost-leftmost first. Trace lines: "parametric <formula> <mutation>" and
// "principal <formula>".
Derivation eliminate_cuts(const Derivation& d, std::vector<std::string>* trace = nullptr);

}  // namespace lg
