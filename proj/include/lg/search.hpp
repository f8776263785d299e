#pragma once

#include <map>
#include <string>
#include <vector>

#include "lg/kernel.hpp"

namespace lg {

struct SearchConfig {
  std::size_t maxDepth = 256;
  std::size_t maxSolutions = 64;
  bool allowVariants = false;
  bool allowCuts = false;
};

// With the default config the focused engine runs: translations are applied
// eagerly, display postulates are explored as orbits inside neutral phases and
// focusing happens through s-down/s-up elimination. Any other config falls back
// to bounded iterative deepening over all backward expansions.
std::vector<Derivation> prove(const Sequent& goal, const SearchConfig& cfg = {});

// Forward closure from the identity axioms: one derivation for every cut-free
// derivable sequent reachable with height ≤ maxHeight through sequents of at most
// maxSize nodes. Every sequent inside a derivation of that class is itself listed.
struct EnumerationConfig {
  std::size_t maxHeight = 6;
  std::size_t maxSize = 14;
  bool allowVariants = true;
  std::vector<std::string> posAtoms = {"p"};
  std::vector<std::string> negAtoms = {"n"};
};
std::vector<Derivation> enumerate_derivations(const EnumerationConfig& cfg = {});

// Maximal chains of display postulates folded into one node named "Display".
Derivation collapse_display(const Derivation& d);

struct Lexicon {
  std::map<std::string, Term> entries;
  AtomSet negAtoms;
};

struct LexiconError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// `word := formula` lines, `%neg atom` directives, `#` comments.
Lexicon parse_lexicon(const std::string& text);
Lexicon load_lexicon(const std::string& path);

// Bracketing is a parenthesised expression over the words in order, e.g.
// "everyone (likes (some teacher))"; groups of more than two items and the
// empty string mean right-branching.
Term sentence_structure(const std::vector<std::string>& words, const Lexicon& lex,
                        const std::string& bracketing = "");
Sequent sentence_goal(const std::vector<std::string>& words, const Lexicon& lex, const Term& goal,
                      const std::string& bracketing = "");
std::vector<Derivation> parse_sentence(const std::vector<std::string>& words, const Lexicon& lex,
                                       const Term& goal, const SearchConfig& cfg = {},
                                       const std::string& bracketing = "");

}  // namespace lg
