#include <map>
#include <sstream>

#include "lg/kernel.hpp"

namespace lg {

namespace {

std::string label(const RuleId& r) {
  static const std::map<std::string, std::string> conn = {
      {"otimes", "\\otimes"}, {"oplus", "\\oplus"},     {"under", "\\backslash"}, {"over", "/"},
      {"oslash", "\\oslash"}, {"obslash", "\\obslash"}, {"down", "\\downarrow"},  {"up", "\\uparrow"}};
  const std::string& n = r.name;
  if (n == "p-Id" || n == "n-Id") return "$\\mathit{Id}$";
  if (n == "s-down") return "$\\check{\\downarrow}$";
  if (n == "s-up") return "$\\hat{\\uparrow}$";
  if (n == "Display") return "$\\mathit{dp}^*$";
  if (n.size() > 4 && n.substr(n.size() - 4) == "-Cut") return "$\\mathit{Cut}_{" + n.substr(0, n.size() - 4) + "}$";
  if (n.rfind("dp_", 0) == 0) return "$\\mathit{dp}$";
  auto u = n.rfind('_');
  if (u != std::string::npos)
    if (auto it = conn.find(n.substr(0, u)); it != conn.end()) return "$" + it->second + "_{" + n.substr(u + 1) + "}$";
  std::string out;
  for (char c : n) out += c == '_' ? std::string("\\_") : std::string(1, c);
  return out;
}

bool invertible(const RuleId& r) {
  const RuleInfo* info = find_rule(r);
  if (!info) return r.name == "Display";
  return info->group == Group::Display || info->group == Group::StructuralShift;
}

void emit(const Derivation& d, bool color, std::ostringstream& os) {
  for (const auto& p : d.premises) emit(p, color, os);
  if (d.premises.empty()) os << "\\AxiomC{}\n";
  os << "\\RightLabel{\\scriptsize " << label(d.rule) << "}\n";
  if (invertible(d.rule)) os << "\\doubleLine\n";
  static const char* infer[] = {"\\UnaryInfC", "\\UnaryInfC", "\\BinaryInfC", "\\TrinaryInfC"};
  os << infer[d.premises.size()] << "{$" << render(d.conclusion, Style::Latex, color) << "$}\n";
}

}  // namespace

std::string to_latex(const Derivation& d, bool color) {
  std::ostringstream os;
  os << "\\begin{prooftree}\n";
  emit(d, color, os);
  os << "\\end{prooftree}\n";
  return os.str();
}

}  // namespace lg
