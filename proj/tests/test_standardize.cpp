#include <set>

#include "doctest.h"
#include "lg/standardize.hpp"
#include "support.hpp"

using namespace lg;

namespace {

const AtomSet kNeg = {"n", "m", "d", "s"};
Term T(const std::string& s) { return parse_term(s, kNeg); }

// Direct reading of the definition: collect the principal subtree by sign
// propagation, then rebuild every connective as structural (principal
// skeleton) or operational (everything else).
bool is_f(Op o) { return o == Op::Otimes || o == Op::Oslash || o == Op::Obslash || o == Op::Up || o == Op::UpL; }
bool flips(Op o, int i) {
  return (i == 0 && (o == Op::Under || o == Op::Obslash)) || (i == 1 && (o == Op::Over || o == Op::Oslash));
}
bool skeleton(const Term& t, bool plus) { return t->op != Op::Atom && is_f(t->op) == plus; }

void collect(const Term& t, bool plus, bool kind, Path& p, std::set<Path>& out) {
  out.insert(p);
  for (int i = 0; i < static_cast<int>(t->kids.size()); ++i) {
    bool kp = flips(t->op, i) ? !plus : plus;
    if (skeleton(t->kids[i], kp) != kind) continue;
    p.push_back(i);
    collect(t->kids[i], kp, kind, p, out);
    p.pop_back();
  }
}

Term rebuild(const Term& t, const std::set<Path>& structural, Path& p, bool& ok) {
  if (t->op == Op::Atom) return t;
  std::vector<Term> kids;
  for (int i = 0; i < static_cast<int>(t->kids.size()); ++i) {
    p.push_back(i);
    kids.push_back(rebuild(t->kids[i], structural, p, ok));
    p.pop_back();
  }
  Term r;
  if (structural.count(p)) {
    r = str(t->op, kids, t->var);
  } else {
    if (t->var != Var::None || t->op == Op::UpL || t->op == Op::DownR) {
      ok = false;
      return t;
    }
    for (const auto& k : kids)
      if (!is_formula(k)) ok = false;
    if (!ok) return t;
    r = fml(t->op, kids);
  }
  if (!r->sort) ok = false;
  return r;
}

std::optional<Term> direct(const Term& psi, bool plus) {
  std::set<Path> principal;
  Path p;
  bool kind = skeleton(psi, plus);
  collect(psi, plus, kind, p, principal);
  std::set<Path> structural = kind ? principal : std::set<Path>{};
  bool ok = true;
  Path q;
  Term r = rebuild(psi, structural, q, ok);
  if (!ok) return std::nullopt;
  return r;
}

}  // namespace

TEST_CASE("ftom and ftoM examples") {
  CHECK(equal(*ftom(T("p * q")), T("p .* q")));
  CHECK(equal(*ftom(T("p")), T("p")));
  CHECK(equal(*ftom(T(".up (p * q)")), T(".up (p .* q)")));
  CHECK(equal(*ftoM(T("n (+) m")), T("n .(+) m")));
  CHECK(equal(*ftoM(T("n")), T("n")));
  CHECK(equal(*ftoM(T(".dn (n (+) m)")), T(".dn (n .(+) m)")));
  CHECK(equal(*ftom(T("n (+) m")), T("n (+) m")));
  CHECK(equal(*ftom(T("p .* .dn (n .(+) m)")), T("p .* dn (n (+) m)")));
  CHECK(equal(*ftom(T("(p * q) .(/) (n (+) m)")), T("(p .* q) .(/) (n .(+) m)")));
  CHECK(equal(*ftom(T("p .* (.dn n)")), T("p .* dn n")));
  CHECK_FALSE(ftoM(T("n .(+)l p")).has_value());
  CHECK(ftom(T("n .*l p")).has_value());
  CHECK_FALSE(ftom(T("p .* (p .\\l n)")).has_value());
}

TEST_CASE("standard sequents") {
  auto s = standard_sequent(parse_sequent("p * q |- p * q", kNeg));
  REQUIRE(s);
  CHECK(*s == parse_sequent("p .* q |- p * q", kNeg));
  CHECK(*standard_sequent(parse_sequent("p |- p", kNeg)) == parse_sequent("p |- p", kNeg));
}

TEST_CASE("Str and Form") {
  CHECK(equal(Str(T("(p * q) \\ n")), T("(p .* q) .\\ n")));
  CHECK(equal(*Form(T("(p .* q) .\\ n")), T("(p * q) \\ n")));
  CHECK_FALSE(Form(T(".upl dn n")).has_value());
  CHECK_FALSE(Form(T(".dn (n .(+) (n .*l p))")).has_value());
}

TEST_CASE("principal subtree") {
  auto ps = principal_subtree(T("(dn n .* p) .(/) (m (+) n)"), Sign::Plus);
  CHECK(ps.kind == NodeKind::Skeleton);
  // root, its left kid, and the succedent-signed co-tensor
  CHECK(ps.nodes.size() == 3);
  auto pia = principal_subtree(T("(p \\ n) / q"), Sign::Plus);
  CHECK(pia.kind == NodeKind::Pia);
  CHECK(pia.nodes.size() == 5);
}

TEST_CASE("recursive and direct definitions agree") {
  lgtest::Gen g(7);
  for (bool variants : {false, true}) {
    g.variants = variants;
    for (int i = 0; i < 3000; ++i) {
      Sort s = g.any_sort();
      Term psi = g.structure(s, 1 + g.pick(5));
      REQUIRE(well_sorted(psi));
      for (bool plus : {true, false}) {
        auto a = plus ? ftom(psi) : ftoM(psi);
        auto b = direct(psi, plus);
        REQUIRE(a.has_value() == b.has_value());
        if (a) {
          CHECK(equal(*a, *b));
          CHECK(*(*a)->sort == *psi->sort);
          auto again = plus ? ftom(*a) : ftoM(*a);
          REQUIRE(again);
          CHECK(equal(*again, *a));
        }
      }
    }
  }
}
