#include "lg/standardize.hpp"

namespace lg {

Sign kid_sign(const Term& t, int i, Sign s) { return monotone_arg(t->op, i) ? s : opposite(s); }

NodeKind node_kind(const Term& t, Sign s) {
  if (t->op == Op::Atom) return NodeKind::Pia;
  bool f = family(t->op) == Family::F;
  return (s == Sign::Plus) == f ? NodeKind::Skeleton : NodeKind::Pia;
}

namespace {
void grow(const Term& t, Sign s, NodeKind k, Path& p, std::vector<Path>& out) {
  out.push_back(p);
  for (int i = 0; i < static_cast<int>(t->kids.size()); ++i) {
    Sign ks = kid_sign(t, i, s);
    if (node_kind(t->kids[i], ks) != k) continue;
    p.push_back(i);
    grow(t->kids[i], ks, k, p, out);
    p.pop_back();
  }
}

std::optional<Term> standardize(const Term& psi, Sign s) {
  if (psi->op == Op::Atom) return psi;
  if (node_kind(psi, s) == NodeKind::Pia) return Form(psi);
  std::vector<Term> kids;
  for (int i = 0; i < static_cast<int>(psi->kids.size()); ++i) {
    auto k = standardize(psi->kids[i], kid_sign(psi, i, s));
    if (!k) return std::nullopt;
    kids.push_back(*k);
  }
  Term r = str(psi->op, std::move(kids), psi->var);
  if (!r->sort) return std::nullopt;
  return r;
}
}  // namespace

PrincipalSubtree principal_subtree(const Term& psi, Sign s) {
  PrincipalSubtree r{psi, s, node_kind(psi, s), {}};
  Path p;
  grow(psi, s, r.kind, p, r.nodes);
  return r;
}

Term Str(const Term& a) {
  if (a->op == Op::Atom) return a;
  std::vector<Term> kids;
  for (const auto& k : a->kids) kids.push_back(Str(k));
  return str(a->op, std::move(kids), a->var);
}

std::optional<Term> Form(const Term& psi) {
  if (psi->op == Op::Atom || is_formula(psi)) return psi;
  if (psi->var != Var::None || psi->op == Op::UpL || psi->op == Op::DownR) return std::nullopt;
  std::vector<Term> kids;
  for (const auto& k : psi->kids) {
    auto f = Form(k);
    if (!f) return std::nullopt;
    kids.push_back(*f);
  }
  Term r = fml(psi->op, std::move(kids));
  if (!r->sort) return std::nullopt;
  return r;
}

std::optional<Term> ftom(const Term& psi) { return standardize(psi, Sign::Plus); }
std::optional<Term> ftoM(const Term& psi) { return standardize(psi, Sign::Minus); }

std::optional<Sequent> standard_sequent(const Sequent& s) {
  auto a = ftom(s.pre), b = ftoM(s.suc);
  if (!a || !b) return std::nullopt;
  Sequent r{*a, *b};
  if (!well_formed(r)) return std::nullopt;
  return r;
}

}  // namespace lg
