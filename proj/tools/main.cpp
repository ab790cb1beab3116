// hflab: a laboratory for hereditarily finite sets — first-order evaluation,
// the definable hierarchy, forcing experiments, evental-site scans, and a
// consolidated claims report.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hflab/constructible.hpp"
#include "hflab/definability.hpp"
#include "hflab/errors.hpp"
#include "hflab/forcing.hpp"
#include "hflab/json_io.hpp"
#include "hflab/report.hpp"

namespace {

using namespace hflab;

struct GlobalOpts {
  bool json = false;
  std::uint64_t seed = 0;
  unsigned max_rank = 4;
  unsigned max_depth = 6;
  Limits limits = Limits::from_env();
};

FiniteModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SemanticError("cannot open model file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("model file is not valid JSON: ") + e.what(),
                     e.byte);
  }
  if (j.is_object() && j.contains("domain")) j = j["domain"];
  if (!j.is_array()) {
    throw ParseError("model JSON must be an array of sets", 0);
  }
  std::vector<HfSet> dom;
  for (const Json& e : j) {
    if (e.is_string()) {
      dom.push_back(HfSet::parse(e.get<std::string>()));
    } else {
      dom.push_back(set_from_json(e));
    }
  }
  return FiniteModel(std::move(dom));
}

void require_depth(const Formula& f, unsigned bound) {
  if (f.depth() > bound) {
    throw SemanticError("formula depth " + std::to_string(f.depth()) +
                        " exceeds the bound " + std::to_string(bound));
  }
}

void emit(const GlobalOpts& g, const Json& j, const std::string& text) {
  if (g.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

// --- eval -------------------------------------------------------------------

int cmd_eval(const GlobalOpts& g, const std::string& model_path,
             const std::string& formula_text,
             const std::vector<std::string>& assigns, bool want_trace) {
  FiniteModel m = load_model(model_path);
  Formula f = parse_formula(formula_text);
  require_depth(f, g.max_depth);

  Assignment assignment;
  for (const std::string& a : assigns) {
    std::size_t eq = a.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw SemanticError("assignment must look like var={...}: '" + a + "'");
    }
    assignment[a.substr(0, eq)] = HfSet::parse(a.substr(eq + 1));
  }

  EvalTrace trace;
  bool value = eval(m, f, assignment, want_trace ? &trace : nullptr);

  Json ja = Json::object();
  for (const auto& [v, x] : assignment) ja[v] = x.to_text();
  Json j{{"formula", f.to_text()}, {"assignment", ja}, {"value", value}};
  std::ostringstream text;
  text << (value ? "true" : "false") << "\n";
  if (want_trace) {
    j["trace"] = trace.lines;
    for (const std::string& line : trace.lines) text << line << "\n";
  }
  emit(g, j, text.str());
  return 0;
}

// --- lhier ------------------------------------------------------------------

int cmd_lhier(const GlobalOpts& g, unsigned levels, bool witnesses) {
  Limits limits = g.limits;
  limits.max_level = g.max_rank;

  Json jlevels = Json::array();
  Json vsizes = Json::array();
  std::ostringstream text;
  bool collapse = true;
  for (unsigned n = 0; n <= levels; ++n) {
    Level l = l_level(n, limits);
    Level v = v_level(n, limits);
    collapse = collapse && l.contents == v.contents;
    Json sets = Json::array();
    for (const HfSet& x : l.contents.domain()) sets.push_back(x.to_text());
    Json entry{{"index", n}, {"size", l.contents.size()}, {"sets", sets}};
    if (witnesses && n > 0) {
      Json w = Json::array();
      FiniteModel src = l_level(n - 1, limits).contents;
      for (const DefinedSubset& d : def_operator_full(src, limits)) {
        w.push_back(Json{{"set", d.set.to_text()}, {"formula", d.witness.to_text()}});
      }
      entry["witnesses"] = w;
    }
    jlevels.push_back(std::move(entry));
    vsizes.push_back(v.contents.size());
    text << "L_" << n << ": " << l.contents.size() << " element"
         << (l.contents.size() == 1 ? "" : "s") << "\n";
  }
  text << "L_n = V_n for all n <= " << levels << ": "
       << (collapse ? "yes" : "NO") << "\n";
  Json j{{"levels", jlevels}, {"vLevelSizes", vsizes}, {"collapse", collapse}};
  emit(g, j, text.str());
  return collapse ? 0 : 1;
}

// --- force ------------------------------------------------------------------

int cmd_force(const GlobalOpts& g, unsigned bits, const std::string& sentence,
              const std::string& condition, unsigned ground_level) {
  Formula s = parse_formula(sentence);
  require_depth(s, g.max_depth);

  ForcingNotion p = ForcingNotion::cohen(bits, g.limits);
  GroundModel ground = GroundModel::standard(ground_level, g.limits);
  NameFamily family = NameFamily::standard(p, ground);
  ForcingSetup setup(std::move(ground), std::move(p), std::move(family));
  const ForcingNotion& notion = setup.notion();
  Formula neg = Formula::negation(s);

  if (!condition.empty()) {
    std::size_t c = notion.index_of(condition);
    bool fs = setup.forces(c, s);
    bool fn = setup.forces(c, neg);
    Json j{{"sentence", s.to_text()},
           {"condition", condition},
           {"forces", fs},
           {"forcesNegation", fn},
           {"undecided", !fs && !fn}};
    std::ostringstream text;
    text << condition << (fs               ? " forces the sentence"
                          : fn             ? " forces the negation"
                                           : " leaves the sentence undecided")
         << "\n";
    emit(g, j, text.str());
    return 0;
  }

  Json conditions = Json::array();
  std::ostringstream text;
  text << "condition  forces  forces-negation\n";
  for (std::size_t c = 0; c < notion.size(); ++c) {
    bool fs = setup.forces(c, s);
    bool fn = setup.forces(c, neg);
    conditions.push_back(
        Json{{"id", notion.id(c)}, {"forces", fs}, {"forcesNegation", fn}});
    text << notion.id(c) << std::string(11 - notion.id(c).size(), ' ')
         << (fs ? "yes" : "no ") << "     " << (fn ? "yes" : "no") << "\n";
  }

  Json generics = Json::array();
  const std::vector<bool>& truth = setup.truth_vector(s);
  bool lemma = true;
  for (std::size_t i = 0; i < setup.minimals().size(); ++i) {
    std::size_t m = setup.minimals()[i];
    GenericFilter filter = principal_generic(notion, m);
    bool some_forcer = false;
    for (std::size_t q : filter.members) some_forcer = some_forcer || setup.forces(q, s);
    lemma = lemma && (truth[i] == some_forcer);
    generics.push_back(Json{{"generator", notion.id(m)}, {"true", truth[i]}});
    text << "generic " << notion.id(m) << ": " << (truth[i] ? "true" : "false")
         << "\n";
  }
  text << "truth-lemma cross-check: " << (lemma ? "pass" : "FAIL") << "\n";

  Json j{{"bits", bits},
         {"groundLevel", ground_level},
         {"sentence", s.to_text()},
         {"conditions", conditions},
         {"generics", generics},
         {"truthLemma", lemma ? "pass" : "fail"}};
  emit(g, j, text.str());
  return lemma ? 0 : 1;
}

// --- sites ------------------------------------------------------------------

int cmd_sites(const GlobalOpts& g, const std::string& model_path) {
  FiniteModel m = load_model(model_path);
  SiteScan scan = site_trichotomy(m);
  Json sites = Json::array();
  std::ostringstream text;
  for (const HfSet& s : scan.sites) {
    sites.push_back(s.to_text());
    text << "site: " << s.to_text() << " (no member lies in the domain)\n";
  }
  if (scan.sites.empty()) text << "no evental sites\n";
  text << scan.empty_count << " empty, " << scan.sharing_count
       << " sharing a member with the domain, " << scan.sites.size()
       << " site" << (scan.sites.size() == 1 ? "" : "s") << "\n";
  Json j{{"domainSize", m.size()},
         {"sites", sites},
         {"emptyCount", scan.empty_count},
         {"sharingCount", scan.sharing_count}};
  emit(g, j, text.str());
  return 0;
}

// --- report -----------------------------------------------------------------

int cmd_report(const GlobalOpts& g, const std::string& scale_text, bool timings) {
  Scale scale = parse_scale(scale_text);
  ClaimReport report = run_claim_report(g.seed, scale, timings, g.limits);
  std::ostringstream text;
  for (const ClaimResult& c : report.claims) {
    text << c.claim_id << ": " << c.verdict << "\n";
  }
  text << (report.all_verified_pass() ? "all verified claims pass"
                                      : "SOME CLAIMS FAILED")
       << "\n";
  emit(g, report.to_json(), text.str());
  return report.all_verified_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  GlobalOpts g;
  CLI::App app{"hereditarily finite set laboratory"};
  app.require_subcommand(1);
  app.fallthrough(true);
  app.add_flag("--json", g.json, "emit JSON instead of text");
  app.add_option("--seed", g.seed, "seed for randomized runs");
  app.add_option("--max-rank", g.max_rank, "bound on hierarchy levels");
  app.add_option("--max-depth", g.max_depth, "bound on accepted formula depth");

  std::string model_path, formula_text, sentence, condition;
  std::vector<std::string> assigns;
  bool want_trace = false, witnesses = false, timings = false;
  unsigned levels = 0, bits = 0, ground_level = 3;
  std::string scale_text = "small";

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a formula over a model");
  eval_cmd->add_option("--model", model_path, "model JSON file")->required();
  eval_cmd->add_option("--formula", formula_text, "formula text")->required();
  eval_cmd->add_option("--assign", assigns, "free-variable assignment var={...}");
  eval_cmd->add_flag("--trace", want_trace, "log quantifier witnesses");

  CLI::App* lhier_cmd = app.add_subcommand("lhier", "build hierarchy levels");
  lhier_cmd->add_option("--levels", levels, "highest level to build")->required();
  lhier_cmd->add_flag("--witnesses", witnesses, "emit defining formulas");

  CLI::App* force_cmd = app.add_subcommand("force", "run a forcing experiment");
  force_cmd->add_option("--bits", bits, "bits of the Cohen-style notion")->required();
  force_cmd->add_option("--sentence", sentence, "closed sentence")->required();
  force_cmd->add_option("--condition", condition, "focus on one condition id");
  force_cmd->add_option("--ground", ground_level, "ground model level");

  CLI::App* sites_cmd = app.add_subcommand("sites", "scan a model for evental sites");
  sites_cmd->add_option("--model", model_path, "model JSON file")->required();

  CLI::App* report_cmd = app.add_subcommand("report", "run the claims registry");
  report_cmd->add_option("--scale", scale_text, "small, medium, or large");
  report_cmd->add_flag("--timings", timings, "include wall-clock fields");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*eval_cmd) return cmd_eval(g, model_path, formula_text, assigns, want_trace);
    if (*lhier_cmd) return cmd_lhier(g, levels, witnesses);
    if (*force_cmd) return cmd_force(g, bits, sentence, condition, ground_level);
    if (*sites_cmd) return cmd_sites(g, model_path);
    if (*report_cmd) return cmd_report(g, scale_text, timings);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource bound: " << e.what() << "\n";
    return 4;
  } catch (const SemanticError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
