#include <algorithm>
#include <set>

#include "lg/kernel.hpp"

namespace lg {

Sequent apply_symmetry(const Sequent& s, Symmetry sym) { return sym == Symmetry::Bowtie ? bowtie(s) : infty(s); }

namespace {

std::optional<std::pair<RuleId, bool>> relabel(const std::vector<Sequent>& premises, const Sequent& concl,
                                               const RuleId& hint) {
  auto fits = [&](const RuleId& r) -> std::optional<bool> {
    if (valid_step(r, premises, concl)) return false;
    if (premises.size() == 2 && valid_step(r, {premises[1], premises[0]}, concl)) return true;
    return std::nullopt;
  };
  if (auto f = fits(hint)) return std::make_pair(hint, *f);
  for (const auto& info : rules()) {
    if (info.premises.size() != premises.size()) continue;
    if (auto f = fits(info.id)) return std::make_pair(info.id, *f);
  }
  return std::nullopt;
}

}  // namespace

Derivation apply_symmetry(const Derivation& d, Symmetry sym, std::set<std::pair<RuleId, RuleId>>* used) {
  std::vector<Derivation> ps;
  std::vector<Sequent> cs;
  for (const auto& p : d.premises) {
    ps.push_back(apply_symmetry(p, sym, used));
    cs.push_back(ps.back().conclusion);
  }
  Sequent c = apply_symmetry(d.conclusion, sym);
  auto r = relabel(cs, c, d.rule);
  if (!r) throw RuleError("no rule licenses the image of " + to_string(d.rule) + " at " + render(c));
  if (r->second) std::swap(ps[0], ps[1]);
  if (used) used->emplace(d.rule, r->first);
  return {r->first, c, std::move(ps)};
}

}  // namespace lg
