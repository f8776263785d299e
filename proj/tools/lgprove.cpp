#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lg/algebra.hpp"
#include "lg/cutelim.hpp"
#include "lg/focus.hpp"
#include "lg/search.hpp"
#include "lg/standardize.hpp"
#include "lg/translate.hpp"

using namespace lg;
using json = nlohmann::ordered_json;

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::vector<std::string> neg;
  std::size_t maxDepth = 256;
  std::size_t maxSolutions = 64;
  bool json = false;
  bool trace = false;
  bool variants = false;
  bool cuts = false;

  AtomSet atoms() const { return {neg.begin(), neg.end()}; }
  SearchConfig search() const {
    SearchConfig c;
    c.maxDepth = maxDepth;
    c.maxSolutions = maxSolutions;
    c.allowVariants = variants;
    c.allowCuts = cuts;
    return c;
  }
};

std::string read_input(const std::string& path) {
  std::stringstream ss;
  if (path.empty() || path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) throw Usage("cannot open " + path);
    ss << f.rdbuf();
  }
  return ss.str();
}

// A file may hold one derivation object or an array of them.
std::vector<std::string> json_items(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  std::vector<std::string> out;
  if (j.is_array())
    for (const auto& x : j) out.push_back(x.dump());
  else
    out.push_back(j.dump());
  return out;
}

bool is_flg(const std::string& item) { return json::parse(item).value("calculus", "") == "flg"; }

void emit_proofs(const std::vector<Derivation>& ds, const Common& c) {
  if (c.json) {
    json arr = json::array();
    for (const auto& d : ds) arr.push_back(json::parse(to_json(d, neg_atoms_of(d), 0)));
    std::cout << (ds.size() == 1 ? arr[0] : arr).dump(2) << "\n";
    return;
  }
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (ds.size() > 1) std::cout << "# proof " << i + 1 << " of " << ds.size() << "\n";
    std::cout << dump(ds[i]);
  }
}

void emit_flg(const FlgDerivation& d, const AtomSet& neg, const Common& c) {
  if (c.json)
    std::cout << to_json(d, neg) << "\n";
  else
    std::cout << dump(d);
}

int cmd_prove(const std::string& goal, const Common& c) {
  auto proofs = prove(parse_sequent(goal, c.atoms()), c.search());
  if (proofs.empty()) {
    std::cerr << "no proof of " << goal << "\n";
    return 1;
  }
  emit_proofs(proofs, c);
  return 0;
}

int cmd_check(const std::string& path, const Common& c) {
  int status = 0;
  for (const auto& item : json_items(read_input(path))) {
    if (is_flg(item)) {
      auto d = flg_from_json(item);
      auto r = check_flg(d);
      std::cout << (r.ok ? "ok " : "FAIL ") << render(d.conclusion);
      if (!r.ok) std::cout << " at " << r.path << ": " << r.reason;
      std::cout << "\n";
      status = r.ok ? status : 1;
      continue;
    }
    auto d = from_json(item);
    auto r = check_derivation(d);
    std::cout << (r.ok ? "ok " : "FAIL ") << render(d.conclusion);
    if (!r.ok) std::cout << " at " << r.path << ": " << r.reason;
    std::cout << "\n";
    if (c.trace) std::cout << dump(d);
    status = r.ok ? status : 1;
  }
  return status;
}

int cmd_focalization(const std::string& path, const Common& c) {
  int status = 0;
  for (const auto& item : json_items(read_input(path))) {
    auto d = from_json(item);
    if (auto r = check_derivation(d); !r.ok) {
      std::cout << "FAIL " << render(d.conclusion) << " does not check at " << r.path << ": " << r.reason << "\n";
      status = 1;
      continue;
    }
    auto r = check_strong_focalization(d);
    if (c.json) {
      json j = {{"sequent", render(d.conclusion)}, {"ok", r.ok}};
      if (!r.ok) j.update({{"path", r.path}, {"formula", r.formula}, {"pia", r.pia}, {"reason", r.reason}});
      j["points"] = json::array();
      for (const auto& p : entry_exit_points(d))
        j["points"].push_back({{"node", path_string(p.node)}, {"kind", to_string(p.kind)}, {"formula", render(p.formula)}});
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << (r.ok ? "strongly focalized " : "NOT strongly focalized ") << render(d.conclusion) << "\n";
      if (!r.ok) std::cout << "  at " << r.path << ": " << r.formula << " in " << r.pia << " (" << r.reason << ")\n";
      if (c.trace)
        for (const auto& p : entry_exit_points(d))
          std::cout << "  " << to_string(p.kind) << " " << render(p.formula) << " at " << path_string(p.node) << "\n";
    }
    status = r.ok ? status : 1;
  }
  return status;
}

int cmd_standardize(const std::string& text, const Common& c) {
  Sequent s = parse_sequent(text, c.atoms());
  auto st = standard_sequent(s);
  if (!st) {
    std::cerr << "no standard form for " << text << "\n";
    return 1;
  }
  if (c.json)
    std::cout << json({{"input", render(s)}, {"standard", render(*st)}}).dump(2) << "\n";
  else
    std::cout << render(*st) << "\n";
  return 0;
}

int cmd_translate(const std::string& to, const std::string& input, const Common& c) {
  bool sequent = input.find("|-") != std::string::npos;
  if (to == "fdlg") {
    if (sequent) {
      std::cout << render(polarize_sequent(parse_flg_sequent(input, c.atoms()))) << "\n";
      return 0;
    }
    int status = 0;
    for (const auto& item : json_items(read_input(input))) {
      AtomSet neg;
      auto d = flg_from_json(item, &neg);
      if (auto r = check_flg(d); !r.ok) {
        std::cerr << "input does not check at " << r.path << ": " << r.reason << "\n";
        status = 1;
        continue;
      }
      emit_proofs({translate_to_fdlg(d)}, c);
    }
    return status;
  }
  if (sequent) {
    Sequent s = parse_sequent(input, c.atoms());
    if (!is_normal(s)) {
      std::cerr << render(s) << " is not the image of an f.LG sequent\n";
      return 1;
    }
    std::cout << render(depolarize_sequent(s)) << "\n";
    return 0;
  }
  int status = 0;
  for (const auto& item : json_items(read_input(input))) {
    AtomSet neg;
    auto d = from_json(item, &neg);
    if (auto r = check_derivation(d); !r.ok) {
      std::cerr << "input does not check at " << r.path << ": " << r.reason << "\n";
      status = 1;
      continue;
    }
    if (c.trace) {
      Derivation m = is_minimal(d) ? d : minimize_proof(d);
      for (const auto& s : classify_processing_sections(m))
        std::cerr << "section " << path_string(s.node) << " " << to_string(s.pattern) << "\n";
    }
    emit_flg(translate_to_flg(d), neg, c);
  }
  return status;
}

int cmd_cutelim(const std::string& path, const Common& c) {
  std::vector<Derivation> out;
  for (const auto& item : json_items(read_input(path))) {
    auto d = from_json(item);
    if (auto r = check_derivation(d); !r.ok) {
      std::cerr << "input does not check at " << r.path << ": " << r.reason << "\n";
      return 1;
    }
    std::vector<std::string> trace;
    out.push_back(eliminate_cuts(d, c.trace ? &trace : nullptr));
    for (const auto& t : trace) std::cerr << t << "\n";
  }
  emit_proofs(out, c);
  return 0;
}

int cmd_parse(const std::string& lexicon, const std::string& goal, const std::string& bracketing,
              const std::vector<std::string>& sentence, const Common& c) {
  Lexicon lex = load_lexicon(lexicon);
  for (const auto& a : c.neg) lex.negAtoms.insert(a);
  std::vector<std::string> words;
  for (const auto& chunk : sentence) {
    std::istringstream in(chunk);
    for (std::string w; in >> w;) words.push_back(w);
  }
  if (words.empty()) throw Usage("parse needs a sentence");
  Term g = parse_formula(goal, lex.negAtoms);
  auto readings = parse_sentence(words, lex, g, c.search(), bracketing);
  if (readings.empty()) {
    std::cerr << "no reading\n";
    return 1;
  }
  if (!c.json) std::cout << "# " << readings.size() << " reading(s) of " << render(sentence_goal(words, lex, g, bracketing)) << "\n";
  emit_proofs(readings, c);
  return 0;
}

int cmd_soundness(const std::string& spec, int depth, const std::string& only, const Common& c) {
  FiniteFPLG a = load_algebra(spec);
  auto axioms = check_fplg_axioms(a);
  if (!axioms.ok) {
    std::cout << "algebra " << a.name << " violates the axioms:\n";
    for (const auto& v : axioms.violations) std::cout << "  " << v << "\n";
    return 1;
  }
  std::size_t checks = 0, bad = 0;
  json report = json::array();
  for (const auto& r : rules()) {
    if (!only.empty() && to_string(r.id) != only && r.id.name != only) continue;
    auto rep = check_rule_soundness(r.id, a, depth);
    checks += rep.checks;
    bad += rep.violations.size();
    if (c.json) {
      report.push_back({{"rule", to_string(r.id)}, {"checks", rep.checks}, {"violations", rep.violations}});
    } else if (c.trace || !rep.violations.empty()) {
      std::cout << to_string(r.id) << ": " << rep.checks << " checks, " << rep.violations.size() << " violations\n";
      for (const auto& v : rep.violations) std::cout << "  " << v << "\n";
    }
  }
  if (checks == 0 && !only.empty()) throw Usage("unknown rule " + only);
  if (c.json)
    std::cout << json({{"algebra", a.name}, {"depth", depth}, {"checks", checks}, {"rules", report}}).dump(2) << "\n";
  else
    std::cout << a.name << ": " << checks << " checks, " << bad << " violations\n";
  return bad == 0 ? 0 : 1;
}

int cmd_latex(const std::string& input, const Common& c) {
  std::vector<Derivation> ds;
  if (input.find("|-") != std::string::npos) {
    auto ps = prove(parse_sequent(input, c.atoms()), c.search());
    if (ps.empty()) {
      std::cerr << "no proof of " << input << "\n";
      return 1;
    }
    ds.push_back(ps.front());
  } else {
    for (const auto& item : json_items(read_input(input))) ds.push_back(from_json(item));
  }
  for (const auto& d : ds) std::cout << to_latex(d);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prover and toolkit for the focused display Lambek-Grishin calculus"};
  app.require_subcommand(1);
  Common c;
  auto common = [&](CLI::App* s) {
    s->add_option("--neg", c.neg, "atoms of negative polarity, comma separated or repeated")->delimiter(',')->allow_extra_args(false);
    s->add_option("--max-depth", c.maxDepth, "search depth bound");
    s->add_option("--max-solutions", c.maxSolutions, "stop after this many proofs");
    s->add_flag("--json", c.json, "exchange format on stdout");
    s->add_flag("--trace", c.trace, "extra diagnostics");
  };

  std::string goal, input = "-", to, lexicon, parseGoal, bracketing, algebra = "builtin:chain2", rule;
  std::vector<std::string> sentence;
  int depth = 2;

  auto* prove_cmd = app.add_subcommand("prove", "search for cut-free proofs of a sequent");
  prove_cmd->add_option("sequent", goal, "sequent, e.g. \"p .* q |- p * q\"")->required();
  prove_cmd->add_flag("--variants", c.variants, "allow variant and adjoint connectives");
  prove_cmd->add_flag("--cuts", c.cuts, "allow cuts");
  common(prove_cmd);

  auto* check_cmd = app.add_subcommand("check", "check derivations in JSON");
  check_cmd->add_option("file", input, "JSON file, '-' for stdin");
  common(check_cmd);

  auto* focal_cmd = app.add_subcommand("focalization", "check strong focalization of derivations in JSON");
  focal_cmd->add_option("file", input, "JSON file, '-' for stdin");
  common(focal_cmd);

  auto* std_cmd = app.add_subcommand("standardize", "standard form of a sequent");
  std_cmd->add_option("sequent", goal)->required();
  common(std_cmd);

  auto* tr_cmd = app.add_subcommand("translate", "translate between f.LG and fD.LG");
  tr_cmd->add_option("--to", to, "target calculus")->required()->check(CLI::IsMember({"fdlg", "flg"}));
  tr_cmd->add_option("input", input, "JSON file, '-' for stdin, or a sequent");
  common(tr_cmd);

  auto* cut_cmd = app.add_subcommand("cutelim", "eliminate cuts from a derivation in JSON");
  cut_cmd->add_option("file", input, "JSON file, '-' for stdin");
  common(cut_cmd);

  auto* parse_cmd = app.add_subcommand("parse", "parse a sentence with a lexicon");
  parse_cmd->add_option("--lexicon", lexicon, "lexicon file")->required();
  parse_cmd->add_option("--goal", parseGoal, "goal formula")->required();
  parse_cmd->add_option("--bracketing", bracketing, "bracketing of the words");
  parse_cmd->add_option("sentence", sentence, "the words")->required();
  common(parse_cmd);

  auto* snd_cmd = app.add_subcommand("soundness", "check every rule against a finite algebra");
  snd_cmd->add_option("--algebra", algebra, "file or builtin:chain2|chain3|bool4|trivial");
  snd_cmd->add_option("--depth", depth, "template depth")->check(CLI::Range(0, 4));
  snd_cmd->add_option("--rule", rule, "only this rule");
  common(snd_cmd);

  auto* tex_cmd = app.add_subcommand("latex", "bussproofs source for derivations in JSON or a proved sequent");
  tex_cmd->add_option("input", input, "JSON file, '-' for stdin, or a sequent");
  common(tex_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*prove_cmd) return cmd_prove(goal, c);
    if (*check_cmd) return cmd_check(input, c);
    if (*focal_cmd) return cmd_focalization(input, c);
    if (*std_cmd) return cmd_standardize(goal, c);
    if (*tr_cmd) return cmd_translate(to, input, c);
    if (*cut_cmd) return cmd_cutelim(input, c);
    if (*parse_cmd) return cmd_parse(lexicon, parseGoal, bracketing, sentence, c);
    if (*snd_cmd) return cmd_soundness(algebra, depth, rule, c);
    if (*tex_cmd) return cmd_latex(input, c);
  } catch (const Usage& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const LexiconError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const AlgebraError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed derivation: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
