#include "hflab/report.hpp"

#include <chrono>
#include <functional>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "hflab/constructible.hpp"
#include "hflab/definability.hpp"
#include "hflab/errors.hpp"
#include "hflab/forcing.hpp"
#include "hflab/rng.hpp"

namespace hflab {

namespace {

// --- deterministic input generators ---------------------------------------
// The report draws its own randomized inputs so that a (seed, scale) pair
// pins down every byte of the output.

HfSet rnd_set(Rng& rng, unsigned depth, std::size_t width) {
  if (depth == 0) return HfSet::empty();
  std::size_t k = rng.below(width + 1);
  std::vector<HfSet> elems;
  for (std::size_t i = 0; i < k; ++i) elems.push_back(rnd_set(rng, depth - 1, width));
  return HfSet::from_elements(std::move(elems));
}

FiniteModel rnd_model(Rng& rng, std::size_t max_size, unsigned depth) {
  std::size_t k = rng.below(max_size + 1);
  std::vector<HfSet> dom;
  for (std::size_t i = 0; i < k; ++i) dom.push_back(rnd_set(rng, depth, 3));
  return FiniteModel(std::move(dom));
}

ForcingNotion rnd_poset(Rng& rng, std::size_t max_conditions) {
  std::size_t n = 2 + rng.below(max_conditions - 1);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("p" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 1; i < n; ++i) {
    edges.emplace_back(ids[i], ids[0]);
    for (std::size_t j = 1; j < i; ++j) {
      if (rng.below(10) < 3) edges.emplace_back(ids[i], ids[j]);
    }
  }
  return ForcingNotion::make(std::move(ids), std::move(edges));
}

PName rnd_pname(Rng& rng, const ForcingNotion& p, unsigned max_rank,
                std::size_t max_width) {
  std::vector<std::pair<PName, std::size_t>> entries;
  if (max_rank > 0) {
    std::size_t k = rng.below(max_width + 1);
    for (std::size_t i = 0; i < k; ++i) {
      entries.emplace_back(rnd_pname(rng, p, max_rank - 1, max_width),
                           rng.below(p.size()));
    }
  }
  return PName::from_entries(std::move(entries));
}

Formula rnd_formula(Rng& rng, unsigned depth, std::vector<Var> scope,
                    const std::vector<Parameter>& vocab) {
  auto term = [&]() -> Term {
    std::size_t pool = scope.size() + vocab.size();
    std::size_t pick = rng.below(pool);
    if (pick < scope.size()) return Term::var(scope[pick]);
    return Term::param(vocab[pick - scope.size()]);
  };
  std::size_t top = depth == 1 ? 2 : 8;
  switch (rng.below(top)) {
    case 0: return Formula::membership(term(), term());
    case 1: return Formula::equality(term(), term());
    case 2: return Formula::negation(rnd_formula(rng, depth - 1, scope, vocab));
    case 3:
      return Formula::conjunction(rnd_formula(rng, depth - 1, scope, vocab),
                                  rnd_formula(rng, depth - 1, scope, vocab));
    case 4:
      return Formula::disjunction(rnd_formula(rng, depth - 1, scope, vocab),
                                  rnd_formula(rng, depth - 1, scope, vocab));
    case 5:
      return Formula::implication(rnd_formula(rng, depth - 1, scope, vocab),
                                  rnd_formula(rng, depth - 1, scope, vocab));
    default: {
      Var v = "z" + std::to_string(scope.size());
      scope.push_back(v);
      Formula body = rnd_formula(rng, depth - 1, scope, vocab);
      return rng.coin() ? Formula::exists(v, std::move(body))
                        : Formula::forall(v, std::move(body));
    }
  }
}

// Backtracking search for an injection; Cantor says there is none from the
// power set back into the set.
bool injection_from_into(std::span<const HfSet> xs, std::span<const HfSet> ys) {
  std::vector<bool> used(ys.size(), false);
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == xs.size()) return true;
    for (std::size_t j = 0; j < ys.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      if (go(i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  return go(0);
}

// --- claim runners ---------------------------------------------------------

struct Outcome {
  bool pass = false;
  Json witnesses;
};

Outcome run_cantor(Rng& rng, unsigned factor, const Limits& limits) {
  // Wide sets are drawn from the 16 sets of rank <= 3, which the recursive
  // generator cannot reach (its member diversity is capped by depth).
  const FiniteModel pool_model = v_level(4, limits).contents;
  std::span<const HfSet> pool = pool_model.domain();
  std::size_t corpus = 10000;
  std::size_t refuted = 0;
  std::size_t max_card = 0;
  (void)factor;  // the corpus is already exhaustive enough at every scale
  for (std::size_t i = 0; i < corpus; ++i) {
    HfSet x;
    if (i % 3 == 0) {
      std::vector<std::size_t> idx(pool.size());
      std::iota(idx.begin(), idx.end(), 0);
      std::size_t k = rng.below(11);
      std::vector<HfSet> elems;
      for (std::size_t t = 0; t < k; ++t) {
        std::swap(idx[t], idx[t + rng.below(idx.size() - t)]);
        elems.push_back(pool[idx[t]]);
      }
      x = HfSet::from_elements(std::move(elems));
    } else {
      x = rnd_set(rng, 3, 3);
    }
    Nat n = cardinality(x);
    std::size_t card = static_cast<std::size_t>(n);
    max_card = std::max(max_card, card);
    HfSet p = power_set(x, limits);
    Nat expected = Nat(1) << card;
    if (cardinality(p) != expected || expected <= n) {
      return {false, Json{{"counterexample", x.to_text()}}};
    }
    if (card <= 4) {
      std::vector<HfSet> subsets(p.elements().begin(), p.elements().end());
      std::vector<HfSet> members(x.elements().begin(), x.elements().end());
      if (injection_from_into(subsets, members)) {
        return {false, Json{{"unexpectedInjection", x.to_text()}}};
      }
      ++refuted;
    }
  }
  return {true, Json{{"corpusSize", corpus},
                     {"maxCardinality", max_card},
                     {"sizeIdentityChecked", corpus},
                     {"injectionsRefuted", refuted}}};
}

Outcome run_hierarchy(const Limits& limits) {
  Json sizes = Json::array();
  for (unsigned n = 0; n <= 4; ++n) {
    Level l = l_level(n, limits);
    Level v = v_level(n, limits);
    if (!(l.contents == v.contents)) {
      return {false, Json{{"divergesAtLevel", n}}};
    }
    sizes.push_back(l.contents.size());
  }
  std::size_t verified = 0;
  for (unsigned n = 0; n <= 3; ++n) {
    FiniteModel src = l_level(n, limits).contents;
    for (const DefinedSubset& d : def_operator_full(src, limits)) {
      if (!defines(src, d.witness, "y", d.set)) {
        return {false, Json{{"badWitness", d.witness.to_text()}}};
      }
      ++verified;
    }
  }
  return {true, Json{{"levelSizes", sizes}, {"witnessesVerified", verified}}};
}

Outcome run_discernibility(Rng& rng, unsigned factor) {
  std::size_t trials = 200 * factor;
  for (std::size_t i = 0; i < trials; ++i) {
    FiniteModel m = rnd_model(rng, 8, 3);
    HfSet target = rng.coin() && m.size() > 0
                       ? m.domain()[rng.below(m.size())]
                       : rnd_set(rng, 3, 3);
    Formula f = trivial_param_definition(target);
    if (!defines(m, f, "y", target)) {
      return {false, Json{{"target", target.to_text()}}};
    }
  }
  return {true, Json{{"trials", trials}, {"failures", 0}}};
}

// Shared scaffolding for the two lemma claims.
struct LemmaInputs {
  ForcingSetup setup;
  Formula sentence;
};

LemmaInputs rnd_lemma_inputs(Rng& rng, const GroundModel& ground, unsigned depth) {
  ForcingNotion p = rnd_poset(rng, 8);
  std::vector<std::pair<std::string, PName>> extra{
      {"r0", rnd_pname(rng, p, 3, 2)}, {"r1", rnd_pname(rng, p, 3, 2)}};
  NameFamily fam = NameFamily::standard(p, ground, std::move(extra));
  std::vector<Parameter> vocab{Parameter::name_ref("r0"), Parameter::name_ref("r1"),
                               Parameter::name_ref("c1"),
                               Parameter::ground(singleton(HfSet::empty()))};
  Formula s = rnd_formula(rng, 1 + rng.below(depth), {}, vocab);
  return {ForcingSetup(ground, std::move(p), std::move(fam)), std::move(s)};
}

Outcome run_negation_lemma(Rng& rng, unsigned factor) {
  std::size_t exhaustive = 0;
  for (unsigned bits = 1; bits <= 2; ++bits) {
    ForcingNotion p = ForcingNotion::cohen(bits);
    GroundModel ground = GroundModel::standard(2);
    ForcingSetup setup(ground, p, NameFamily::standard(p, ground));
    for (const Formula& s :
         enumerate_formulas({}, {Parameter::name_ref("G")}, 2)) {
      Verdict v = check_negation_lemma(setup, s);
      if (!v.pass) return {false, v.to_json()};
      ++exhaustive;
    }
  }
  GroundModel ground = GroundModel::standard(2);
  std::size_t trials = 1000 * factor;
  for (std::size_t i = 0; i < trials; ++i) {
    LemmaInputs in = rnd_lemma_inputs(rng, ground, 3);
    Verdict v = check_negation_lemma(in.setup, in.sentence);
    if (!v.pass) return {false, v.to_json()};
  }
  return {true, Json{{"exhaustiveSentences", exhaustive},
                     {"randomizedTrials", trials},
                     {"counterexamples", 0}}};
}

Outcome run_truth_lemma(Rng& rng, unsigned factor) {
  std::size_t exhaustive = 0;
  for (unsigned bits = 1; bits <= 2; ++bits) {
    ForcingNotion p = ForcingNotion::cohen(bits);
    GroundModel ground = GroundModel::standard(2);
    ForcingSetup setup(ground, p, NameFamily::standard(p, ground));
    for (std::size_t m : setup.minimals()) {
      GenericFilter g = principal_generic(setup.notion(), m);
      for (const Formula& s :
           enumerate_formulas({}, {Parameter::name_ref("G")}, 2)) {
        Verdict v = check_truth_lemma(setup, s, g);
        if (!v.pass) return {false, v.to_json()};
        ++exhaustive;
      }
    }
  }
  GroundModel ground = GroundModel::standard(2);
  std::size_t trials = 300 * factor;
  for (std::size_t i = 0; i < trials; ++i) {
    LemmaInputs in = rnd_lemma_inputs(rng, ground, 3);
    const std::vector<std::size_t>& mins = in.setup.minimals();
    GenericFilter g =
        principal_generic(in.setup.notion(), mins[rng.below(mins.size())]);
    Verdict v = check_truth_lemma(in.setup, in.sentence, g);
    if (!v.pass) return {false, v.to_json()};
  }
  return {true, Json{{"exhaustiveChecks", exhaustive},
                     {"randomizedTrials", trials},
                     {"counterexamples", 0}}};
}

Outcome run_generic_model(const Limits& limits) {
  GroundModel ground = GroundModel::standard(3, limits);
  Json cutoffs = Json::object();
  std::size_t checked = 0;

  ForcingNotion t = ForcingNotion::trivial();
  NameFamily tfam = NameFamily::standard(t, ground);
  Verdict tv = check_generic_model(
      ground, generic_extension(ground, t, tfam, principal_generic(t, 0)));
  if (!tv.pass) return {false, tv.to_json()};
  cutoffs["trivial"] = tv.details["closureCutoff"];
  ++checked;

  for (unsigned bits = 1; bits <= 2; ++bits) {
    ForcingNotion p = ForcingNotion::cohen(bits, limits);
    NameFamily fam = NameFamily::standard(p, ground);
    Json per_bits = Json::array();
    for (std::size_t m : p.minimal_conditions()) {
      Extension ext = generic_extension(ground, p, fam, principal_generic(p, m));
      Verdict v = check_generic_model(ground, ext);
      if (!v.pass) return {false, v.to_json()};
      per_bits.push_back(v.details["closureCutoff"]);
      ++checked;
    }
    cutoffs["cohen" + std::to_string(bits)] = per_bits;
  }
  return {true, Json{{"extensionsChecked", checked}, {"closureCutoffs", cutoffs}}};
}

Outcome run_unnameable(const Limits& limits) {
  ForcingNotion p = ForcingNotion::cohen(2, limits);
  GroundModel ground = GroundModel::standard(3, limits);
  NameFamily fam = NameFamily::standard(p, ground);
  ForcingSetup setup(std::move(ground), std::move(p), std::move(fam));
  Verdict v = unnameable_search(setup, 2, limits);
  if (!v.pass || v.details["fallbackCount"].get<int>() < 1 ||
      v.details["contingentCount"].get<int>() < 1) {
    return {false, v.to_json()};
  }
  return {true, v.details};
}

Outcome run_evental_sites(Rng& rng, unsigned factor) {
  std::size_t transitive_trials = 1000 * factor;
  for (std::size_t i = 0; i < transitive_trials; ++i) {
    HfSet closed = transitive_closure(rnd_set(rng, 4, 3));
    FiniteModel m(
        std::vector<HfSet>(closed.elements().begin(), closed.elements().end()));
    if (!find_evental_sites(m).empty()) {
      return {false, Json{{"transitiveModelWithSite", m.as_set().to_text()}}};
    }
  }
  std::size_t planted_trials = 100 * factor;
  for (std::size_t i = 0; i < planted_trials; ++i) {
    HfSet closed = transitive_closure(rnd_set(rng, 3, 3));
    std::vector<HfSet> dom(closed.elements().begin(), closed.elements().end());
    HfSet site = singleton(von_neumann(5 + static_cast<unsigned>(rng.below(4))));
    dom.push_back(site);
    std::vector<HfSet> found = find_evental_sites(FiniteModel(std::move(dom)));
    if (found.size() != 1 || !(found[0] == site)) {
      return {false, Json{{"plantedSiteMissed", site.to_text()}}};
    }
  }
  return {true, Json{{"transitiveModelsScanned", transitive_trials},
                     {"sitesInTransitiveModels", 0},
                     {"plantedSites", planted_trials},
                     {"plantedSitesDetected", planted_trials}}};
}

}  // namespace

Scale parse_scale(const std::string& text) {
  if (text == "small") return Scale::Small;
  if (text == "medium") return Scale::Medium;
  if (text == "large") return Scale::Large;
  throw SemanticError("unknown scale '" + text + "' (small, medium, large)");
}

const char* scale_name(Scale s) {
  switch (s) {
    case Scale::Small: return "small";
    case Scale::Medium: return "medium";
    default: return "large";
  }
}

unsigned scale_factor(Scale s) {
  switch (s) {
    case Scale::Small: return 1;
    case Scale::Medium: return 5;
    default: return 25;
  }
}

Json ClaimResult::to_json() const {
  Json j{{"claimId", claim_id},
         {"anchor", anchor},
         {"verdict", verdict},
         {"witnesses", witnesses}};
  if (runtime_ms.has_value()) j["runtimeMs"] = *runtime_ms;
  return j;
}

bool ClaimReport::all_verified_pass() const {
  for (const ClaimResult& c : claims) {
    if (c.verdict == "fail") return false;
  }
  return true;
}

Json ClaimReport::to_json() const {
  Json arr = Json::array();
  std::size_t pass = 0, fail = 0, skipped = 0;
  for (const ClaimResult& c : claims) {
    arr.push_back(c.to_json());
    if (c.verdict == "pass") ++pass;
    else if (c.verdict == "fail") ++fail;
    else ++skipped;
  }
  return Json{{"seed", seed},
              {"scale", scale_name(scale)},
              {"claims", arr},
              {"summary",
               Json{{"pass", pass}, {"fail", fail}, {"outOfScope", skipped}}}};
}

ClaimReport run_claim_report(std::uint64_t seed, Scale scale, bool timings,
                             const Limits& limits) {
  ClaimReport report;
  report.seed = seed;
  report.scale = scale;
  Rng rng(seed);
  unsigned factor = scale_factor(scale);

  struct Entry {
    const char* id;
    const char* anchor;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> registry{
      {"cantor-excess",
       "the power set strictly outruns its base: |p(x)| = 2^|x| > |x|, and no "
       "injection maps p(x) back into x",
       [&] { return run_cantor(rng, factor, limits); }},
      {"hierarchy-collapse",
       "at finite levels the definable hierarchy coincides with the full "
       "cumulative one: L_n = V_n for n <= 4, every witness formula re-checked",
       [&] { return run_hierarchy(limits); }},
      {"parameter-discernibility",
       "with arbitrary parameters every subset is definable: 'y in t' carves "
       "any target t out of any finite model",
       [&] { return run_discernibility(rng, factor); }},
      {"negation-lemma",
       "a condition forces the negation of a sentence exactly when none of "
       "its refinements forces the sentence",
       [&] { return run_negation_lemma(rng, factor); }},
      {"truth-lemma",
       "a sentence holds in a generic extension exactly when some condition "
       "in the generic filter forces it",
       [&] { return run_truth_lemma(rng, factor); }},
      {"generic-model-axioms",
       "generic extensions keep the checkable axiom fragments: "
       "extensionality, regularity, bounded pairing and union, and the whole "
       "ground model",
       [&] { return run_generic_model(limits); }},
      {"unnameable-impossibility",
       "no name escapes the forcing language: for every name some condition "
       "forces some sentence mentioning it",
       [&] { return run_unnameable(limits); }},
      {"evental-site-impossibility",
       "a transitive model has no evental site: every nonempty element "
       "shares a member with the domain",
       [&] { return run_evental_sites(rng, factor); }},
  };

  for (const Entry& e : registry) {
    auto started = std::chrono::steady_clock::now();
    Outcome out = e.run();
    auto elapsed = std::chrono::steady_clock::now() - started;
    ClaimResult r;
    r.claim_id = e.id;
    r.anchor = e.anchor;
    r.verdict = out.pass ? "pass" : "fail";
    r.witnesses = std::move(out.witnesses);
    if (timings) {
      r.runtime_ms =
          std::chrono::duration<double, std::milli>(elapsed).count();
    }
    report.claims.push_back(std::move(r));
  }

  const std::vector<std::pair<const char*, const char*>> out_of_scope{
      {"continuum-cardinality",
       "the cardinality of the power set of the naturals is not settled by "
       "the standard axioms"},
      {"countable-transitive-models",
       "countable transitive models of the full axiom system exist"},
      {"pointwise-definability",
       "in suitable models of the full axiom system every element is "
       "definable without parameters"},
  };
  for (const auto& [id, anchor] : out_of_scope) {
    ClaimResult r;
    r.claim_id = id;
    r.anchor = anchor;
    r.verdict = "out-of-scope";
    r.witnesses = Json{
        {"reason",
         "a statement about infinite models with no finite-scale counterpart; "
         "nothing executable here"}};
    report.claims.push_back(std::move(r));
  }

  return report;
}

}  // namespace hflab
