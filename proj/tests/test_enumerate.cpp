#include <map>
#include <unordered_set>

#include "doctest.h"
#include "lg/focus.hpp"
#include "lg/search.hpp"

using namespace lg;

namespace {
std::vector<Derivation> small() {
  EnumerationConfig cfg;
  cfg.maxSize = 12;
  return enumerate_derivations(cfg);
}

// ∞ sends p to a negative atom named p; the signature is closed up to swapping names.
Term swap_names(const Term& t) {
  if (t->op == Op::Atom) return atom(t->name == "p" ? "n" : "p", t->atomPol);
  std::vector<Term> kids;
  for (const auto& k : t->kids) kids.push_back(swap_names(k));
  return make(t->op, t->layer, t->var, kids);
}
Sequent normalize(const Sequent& s, Symmetry sym) {
  return sym == Symmetry::Bowtie ? s : Sequent{swap_names(s.pre), swap_names(s.suc)};
}
}  // namespace

TEST_CASE("enumeration yields checked cut-free derivations") {
  auto all = small();
  CHECK(all.size() > 100);
  std::unordered_set<Sequent, SequentHash> seen;
  for (const auto& d : all) {
    CHECK(check_derivation(d).ok);
    CHECK(is_cut_free(d));
    CHECK(proof_height(d) <= 6);
    CHECK(seen.insert(d.conclusion).second);
    CHECK_FALSE(forbidden_shape(turnstile(d.conclusion)));
  }
  CHECK(seen.count(parse_sequent("p .* dn (p \\ n) |- n", {"n"})) == 1);
}

TEST_CASE("enumeration without variants is a subset") {
  EnumerationConfig cfg;
  cfg.maxSize = 12;
  cfg.allowVariants = false;
  auto plain = enumerate_derivations(cfg);
  auto full = small();
  std::unordered_set<Sequent, SequentHash> f;
  for (const auto& d : full) f.insert(d.conclusion);
  CHECK(plain.size() < full.size());
  for (const auto& d : plain) {
    CHECK(f.count(d.conclusion) == 1);
    CHECK_FALSE(has_variant(d.conclusion.pre));
    CHECK_FALSE(has_variant(d.conclusion.suc));
  }
}

TEST_CASE("symmetric images of enumerated derivations") {
  auto all = small();
  std::unordered_set<Sequent, SequentHash> set;
  for (const auto& d : all) set.insert(d.conclusion);
  for (Symmetry sym : {Symmetry::Bowtie, Symmetry::Infty}) {
    std::set<std::pair<RuleId, RuleId>> used;
    for (const auto& d : all) {
      auto img = apply_symmetry(d, sym, &used);
      CHECK(img.conclusion == apply_symmetry(d.conclusion, sym));
      CHECK(check_derivation(img).ok);
      CHECK(proof_height(img) == proof_height(d));
      CHECK(set.count(normalize(img.conclusion, sym)) == 1);
      CHECK(apply_symmetry(img, sym) == d);
    }
    std::map<RuleId, RuleId> f;
    for (const auto& [a, b] : used) {
      auto [it, fresh] = f.emplace(a, b);
      CHECK(it->second == b);  // the relabelling is a function on rule names
    }
  }
  auto d = prove(parse_sequent("p .* dn (p \\ n) |- n", {"n"})).front();
  auto b = apply_symmetry(d, Symmetry::Bowtie);
  CHECK(render(b.conclusion) == "dn (n / p) .* p |- n");
  auto i = apply_symmetry(d, Symmetry::Infty);
  CHECK(check_derivation(i).ok);
}

TEST_CASE("proofs found for enumerated sequents are strongly focalized") {
  std::size_t plain = 0, found = 0;
  for (const auto& d : small()) {
    auto ps = prove(d.conclusion);
    for (const auto& p : ps) {
      CHECK(check_derivation(p).ok);
      auto r = check_strong_focalization(p);
      CHECK_MESSAGE(r.ok, render(d.conclusion) << ": " << r.reason);
    }
    if (has_variant(d.conclusion.pre) || has_variant(d.conclusion.suc)) continue;
    ++plain;
    found += ps.empty() ? 0 : 1;
  }
  CHECK(found == plain);
}
