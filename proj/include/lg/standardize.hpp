#pragma once

#include <optional>
#include <vector>

#include "lg/syntax.hpp"

namespace lg {

enum class Sign : std::uint8_t { Plus, Minus };
enum class NodeKind : std::uint8_t { Skeleton, Pia };

inline Sign opposite(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
Sign kid_sign(const Term& t, int i, Sign s);
NodeKind node_kind(const Term& t, Sign s);  // atoms are PIA

struct PrincipalSubtree {
  Term root;
  Sign sign;
  NodeKind kind;
  std::vector<Path> nodes;  // paths from root, root first
};

PrincipalSubtree principal_subtree(const Term& psi, Sign s);

Term Str(const Term& a);
std::optional<Term> Form(const Term& psi);

std::optional<Term> ftom(const Term& psi);  // lower standardization, precedent side
std::optional<Term> ftoM(const Term& psi);  // upper standardization, succedent side
std::optional<Sequent> standard_sequent(const Sequent& s);

}  // namespace lg
