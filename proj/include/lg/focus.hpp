#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lg/kernel.hpp"
#include "lg/standardize.hpp"

namespace lg {

struct SignedNode {
  Path path;
  Term term;
  Sign sign;
  NodeKind kind;    // by the definition: +F or -G is skeleton, atoms are PIA
  NodeKind region;  // partition into maximal subtrees; atoms join their parent's region
  bool transition;
};

struct SignedTree {
  Sign sign;
  std::vector<SignedNode> nodes;  // preorder, root first
};

SignedTree signed_tree(const Term& t, Sign s);
std::pair<SignedTree, SignedTree> signed_tree(const Sequent& s);

enum class Phase : std::uint8_t { FocusedPositive, FocusedNegative, NonFocused };
Phase classify_phase(const Sequent& s);
std::string to_string(Phase p);

struct FocusReport {
  bool ok = true;
  std::string path;     // derivation node where the violation shows
  std::string formula;  // offending formula occurrence
  std::string pia;      // the PIA subtree, rendered
  std::string reason;
};

FocusReport check_strong_focalization(const Derivation& d);

// For every operational connective of the end-sequent, the derivation node
// introducing its uppermost occurrence (empty optional when it is never introduced).
struct Introduction {
  SeqPath occurrence;
  std::vector<int> node;
  RuleId rule;
};
std::vector<Introduction> introductions(const Derivation& d);

enum class PointKind : std::uint8_t { PositiveEntry, NegativeEntry, PositiveExit, NegativeExit };
std::string to_string(PointKind k);

struct Point {
  std::vector<int> node;
  Term formula;
  PointKind kind;
  std::optional<SeqPath> origin;  // the occurrence in the end-sequent it descends to
};

// Follows an occurrence in the conclusion of node down to the end-sequent.
std::optional<SeqPath> trace_to_root(const Derivation& d, const std::vector<int>& node, SeqPath occ);

// Preorder: conclusion first, premises left to right.
std::vector<Point> entry_exit_points(const Derivation& d);

Derivation minimize_proof(const Derivation& d);

}  // namespace lg
