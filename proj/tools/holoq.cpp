// holoq - command-line front end: parse and inspect sentences, evaluate
// holistic models from model files, check claims, and run the scenario
// suite.
//
// Exit codes: 0 success/holds, 1 usage or parse error, 2 constraint
// violation, 3 counterexample found, 4 sampler exhaustion, 5 preset error.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "holoq/scenarios.hpp"

namespace fs = std::filesystem;
using namespace holoq;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConstraint = 2;
constexpr int kExitCounterexample = 3;
constexpr int kExitExhausted = 4;
constexpr int kExitPreset = 5;

std::string fmt12(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Json sentence_ast_json(const Sentence& s) {
  Json j;
  j["kind"] = node_kind_name(s.kind());
  if (s.kind() == NodeKind::Atom) j["name"] = s.name();
  if (s.is_epistemic()) {
    j["agent"] = s.agent();
    j["time"] = s.time();
  }
  if (s.child_count() > 0) {
    Json children = Json::array();
    for (std::size_t i = 0; i < s.child_count(); ++i)
      children.push_back(sentence_ast_json(s.child(i)));
    j["children"] = std::move(children);
  }
  return j;
}

std::string level_row_text(const SyntacticalTree& tree, int level) {
  std::string out = "(";
  for (int pos = 1; pos <= tree.width(level); ++pos) {
    if (pos > 1) out += ", ";
    out += print_sentence(tree.at(level, pos).sentence);
  }
  return out + ")";
}

Json state_digest_json(const Qumix& rho, const TruthPerspective& t) {
  Json j;
  j["qubits"] = rho.qubits();
  j["probability"] = probability(t, rho);
  return j;
}

std::string state_text(const Qumix& rho) {
  // Nonzero entries, row-major, capped.
  std::ostringstream os;
  int shown = 0;
  for (Eigen::Index r = 0; r < rho.dim() && shown <= 32; ++r)
    for (Eigen::Index c = 0; c < rho.dim() && shown <= 32; ++c) {
      const Complex z = rho.entry(r, c);
      if (std::abs(z) <= 1e-12) continue;
      if (++shown > 32) {
        os << " ...";
        break;
      }
      char buf[96];
      if (std::abs(z.imag()) <= 1e-12)
        std::snprintf(buf, sizeof buf, " (%lld,%lld)=%.6g", static_cast<long long>(r),
                      static_cast<long long>(c), z.real());
      else
        std::snprintf(buf, sizeof buf, " (%lld,%lld)=%.6g%+.6gi",
                      static_cast<long long>(r), static_cast<long long>(c), z.real(),
                      z.imag());
      os << buf;
    }
  return os.str();
}

TruthPerspective perspective_from_spec(const std::string& spec) {
  if (auto named = TruthPerspective::from_name(spec)) return *named;
  return perspective_from_json(Json::parse(spec));
}

int exit_for_verdict(const Verdict& v) {
  switch (v.outcome) {
    case Verdict::Outcome::CounterexampleFound: return kExitCounterexample;
    case Verdict::Outcome::SamplerExhausted:    return kExitExhausted;
    default:                                    return kExitOk;
  }
}

struct EvalRender {
  Json json;
  std::string text;
};

EvalRender render_evaluation(const HolisticEvaluation& ev) {
  EvalRender out;
  const auto& tree = ev.tree();
  const TruthPerspective& t = ev.perspective();
  std::ostringstream text;

  Json levels = Json::array();
  for (int level = tree.height(); level >= 1; --level) {
    const Qumix& rho = ev.level_meaning(level);
    Json lj;
    lj["level"] = level;
    lj["sentences"] = level_row_text(tree, level);
    if (rho.qubits() <= 6)
      lj["state"] = state_to_json(rho);
    else
      lj["state"] = state_digest_json(rho, t);
    levels.push_back(std::move(lj));

    text << "Level " << level << " " << level_row_text(tree, level) << ":";
    if (rho.qubits() <= 6)
      text << state_text(rho) << "\n";
    else
      text << " [" << rho.qubits() << " qubits, elided] p="
           << fmt12(probability(t, rho)) << "\n";
  }
  out.json["levels"] = std::move(levels);

  const double p = ev.probability();
  out.json["probability"] = p;
  text << "p = " << fmt12(p) << "\n";

  out.json["constraint"] = Json{{"pass", true},
                                {"max_defect", ev.constraint_report().max_defect}};
  text << "constraint: pass (max defect "
       << fmt12(ev.constraint_report().max_defect) << ")\n";

  const NormalityReport norm = check_normal(ev);
  Json nj;
  nj["normal"] = norm.normal;
  nj["groups"] = norm.groups;
  if (!norm.violations.empty()) {
    Json vj = Json::array();
    for (const auto& v : norm.violations)
      vj.push_back(Json{{"subformula", print_sentence(v.subformula)},
                        {"first", {v.first.level, v.first.pos}},
                        {"other", {v.other.level, v.other.pos}},
                        {"distance", v.distance}});
    nj["violations"] = std::move(vj);
  }
  out.json["normality"] = std::move(nj);
  text << "normality: " << (norm.normal ? "normal" : "NOT normal");
  if (!norm.violations.empty()) {
    text << " (" << norm.violations.size() << " violating pair"
         << (norm.violations.size() == 1 ? "" : "s") << ", e.g. "
         << print_sentence(norm.violations[0].subformula) << " at ("
         << norm.violations[0].first.level << "," << norm.violations[0].first.pos
         << ") vs (" << norm.violations[0].other.level << ","
         << norm.violations[0].other.pos << "))";
  }
  text << "\n";

  if (norm.normal) {
    const CommutationReport comm = check_commutation(ev);
    out.json["commutation"] =
        Json{{"pass", comm.pass},
             {"max_defect", comm.max_defect},
             {"checked", comm.entries.size()}};
    text << "commutation: " << (comm.pass ? "pass" : "FAIL") << " ("
         << comm.entries.size() << " occurrences, max defect "
         << fmt12(comm.max_defect) << ")\n";
  }

  out.text = text.str();
  return out;
}

int cmd_parse(const std::string& text, bool as_json) {
  const Sentence s = parse_sentence(text);
  if (as_json) {
    Json j;
    j["canonical"] = print_sentence(s);
    j["atomic_complexity"] = atomic_complexity(s);
    j["ast"] = sentence_ast_json(s);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << print_sentence(s) << "\n";
  }
  return kExitOk;
}

int cmd_tree(const std::string& text, const std::string& model_path,
             const std::string& perspective_spec, bool as_json) {
  const Sentence s = parse_sentence(text);
  const SyntacticalTree tree = build_syntactical_tree(s);

  std::optional<std::vector<PseudoGate>> gates;
  if (!perspective_spec.empty()) {
    QuasiModel qm;
    if (!model_path.empty())
      qm = model_file_from_json(load_json_file(model_path)).quasi_model;
    else if (s.contains_epistemic())
      throw EpistemicError("sentence has epistemic connectives; pass --model");
    gates = pseudo_gate_tree(tree, perspective_from_spec(perspective_spec), qm);
  }

  if (as_json) {
    Json j;
    j["sentence"] = print_sentence(s);
    j["height"] = tree.height();
    j["atomic_complexity"] = tree.qubit_count();
    Json levels = Json::array();
    for (int level = tree.height(); level >= 1; --level) {
      Json row = Json::array();
      for (int pos = 1; pos <= tree.width(level); ++pos)
        row.push_back(print_sentence(tree.at(level, pos).sentence));
      levels.push_back(Json{{"level", level}, {"sentences", std::move(row)}});
    }
    j["levels"] = std::move(levels);
    if (gates) {
      Json gj = Json::array();
      for (const auto& g : *gates) gj.push_back(g.describe());
      j["pseudo_gates"] = std::move(gj);
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << print_sentence(s) << "  (height " << tree.height() << ", "
              << tree.qubit_count() << " qubits)\n";
    for (int level = tree.height(); level >= 1; --level)
      std::cout << "Level " << level << ": " << level_row_text(tree, level) << "\n";
    if (gates) {
      std::cout << "pseudo-gate tree:\n";
      for (const auto& g : *gates) std::cout << "  " << g.describe() << "\n";
    }
  }
  return kExitOk;
}

int cmd_eval(const std::string& text, const std::string& model_path,
             const std::string& perspective_spec, bool as_json) {
  const Sentence s = parse_sentence(text);
  const ModelFile mf = model_file_from_json(load_json_file(model_path));
  const TruthPerspective t = perspective_from_spec(perspective_spec);
  const Qumix* top = mf.assignment.find(s, t);
  if (!top)
    throw ModelIoError("model file has no assignment for '" + print_sentence(s) +
                       "' at perspective " + t.key());

  try {
    const HolisticEvaluation ev = evaluate(mf.quasi_model, t, s, *top);
    EvalRender render = render_evaluation(ev);
    if (as_json) {
      render.json["sentence"] = print_sentence(s);
      render.json["perspective"] = perspective_to_json(t);
      std::cout << render.json.dump(2) << "\n";
    } else {
      std::cout << render.text;
    }
    return kExitOk;
  } catch (const ConstraintViolation& e) {
    if (as_json) {
      Json j;
      j["error"] = "constraint-violation";
      j["occurrence"] = {e.path.level, e.path.pos};
      j["wants"] = e.wants_truth ? "t" : "f";
      j["defect"] = e.defect;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return kExitConstraint;
  }
}

Json verdict_json(const Verdict& v) {
  Json j;
  j["outcome"] = v.outcome_name();
  j["samples"] = v.samples;
  j["antecedent_hits"] = v.antecedent_hits;
  j["skipped_nonnormal"] = v.skipped_nonnormal;
  j["skipped_unrealizable"] = v.skipped_unrealizable;
  j["max_probability"] = v.max_probability;
  j["sample_digest"] = v.sample_digest;
  if (!v.note.empty()) j["note"] = v.note;
  if (v.counterexample) {
    j["p_alpha"] = v.counterexample->p_alpha;
    if (!std::isnan(v.counterexample->p_beta)) j["p_beta"] = v.counterexample->p_beta;
    j["sample_index"] = v.counterexample->sample_index;
  }
  return j;
}

int run_check(const std::string& claim_path, const std::string& model_path,
              std::int64_t seed_override, int samples_override, bool as_json,
              std::string out_path) {
  const Json cj = load_json_file(claim_path);
  ClaimFile cf = claim_from_json(cj);
  if (seed_override >= 0) cf.sampler.seed = static_cast<std::uint64_t>(seed_override);
  if (samples_override > 0) cf.sampler.count = samples_override;

  std::string qm_path = model_path;
  if (qm_path.empty() && cf.quasi_model_path) {
    // Relative to the claim file.
    qm_path = (fs::path(claim_path).parent_path() / *cf.quasi_model_path).string();
  }
  if (qm_path.empty())
    throw ModelIoError("no quasi-model: pass --model or set \"quasi_model\"");
  const ModelFile mf = model_file_from_json(load_json_file(qm_path));

  const Verdict v = check_consequence(mf.quasi_model, cf.claim, cf.sampler);

  if (v.counterexample) {
    if (out_path.empty())
      out_path = fs::path(claim_path).stem().string() + ".counterexample.json";
    save_json_file(
        counterexample_file(mf.quasi_model, cf.claim, cf.sampler, *v.counterexample),
        out_path);
  }

  if (as_json) {
    Json j = verdict_json(v);
    j["claim"] = cf.claim.describe();
    if (v.counterexample) j["replay_file"] = out_path;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << cf.claim.describe() << "\n" << v.outcome_name() << " (" << v.samples
              << " samples, " << v.antecedent_hits << " with true antecedent)\n";
    if (v.counterexample) {
      std::cout << "p_alpha = " << fmt12(v.counterexample->p_alpha);
      if (!std::isnan(v.counterexample->p_beta))
        std::cout << ", p_beta = " << fmt12(v.counterexample->p_beta);
      std::cout << "\nreplay file written to " << out_path << "\n";
    }
    if (!v.note.empty()) std::cout << v.note << "\n";
  }
  return exit_for_verdict(v);
}

int cmd_scenario(int number, bool all, std::uint64_t seed, int samples,
                 bool as_json, const std::string& out_dir) {
  std::vector<int> ks;
  if (all)
    for (int k = 1; k <= 9; ++k) ks.push_back(k);
  else
    ks.push_back(number);

  ScenarioOptions opts;
  opts.seed = seed;
  if (samples > 0) {
    opts.samples = samples;
    opts.contradiction_samples = std::max(samples, 500);
  }

  bool all_pass = true;
  Json jreports = Json::array();
  for (int k : ks) {
    const ScenarioReport rep = run_situation(k, opts);
    all_pass = all_pass && rep.pass;

    int file_index = 0;
    Json jchecks = Json::array();
    for (const auto& check : rep.checks) {
      Json jc;
      jc["name"] = check.name;
      jc["pass"] = check.pass;
      jc["details"] = check.details;
      if (check.countermodel) {
        const std::string path =
            (fs::path(out_dir) /
             ("scenario" + std::to_string(k) + "_countermodel_" +
              std::to_string(++file_index) + ".json"))
                .string();
        save_json_file(*check.countermodel, path);
        jc["countermodel_file"] = path;
      }
      jchecks.push_back(std::move(jc));
    }

    if (as_json) {
      jreports.push_back(Json{{"situation", rep.number},
                              {"title", rep.title},
                              {"pass", rep.pass},
                              {"checks", std::move(jchecks)}});
    } else {
      std::cout << "situation " << rep.number << " [" << (rep.pass ? "PASS" : "FAIL")
                << "] " << rep.title << "\n";
      for (const auto& check : rep.checks)
        std::cout << "  - [" << (check.pass ? "ok" : "FAIL") << "] " << check.name
                  << ": " << check.details << "\n";
    }
  }
  if (as_json) std::cout << jreports.dump(2) << "\n";
  return all_pass ? kExitOk : kExitCounterexample;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"holistic semantics engine for an epistemic quantum computational "
               "language"};
  app.require_subcommand(1);

  std::string sentence_text, model_path, perspective_spec = "I", claim_path;
  std::string out_path, out_dir = ".";
  bool as_json = false, all_scenarios = false;
  int scenario_number = 0, samples = 0;
  std::int64_t seed = -1;

  auto* parse_cmd = app.add_subcommand("parse", "parse a sentence and print it");
  parse_cmd->add_option("sentence", sentence_text)->required();
  parse_cmd->add_flag("--json", as_json);

  auto* tree_cmd =
      app.add_subcommand("tree", "print the syntactical tree and pseudo-gate tree");
  tree_cmd->add_option("sentence", sentence_text)->required();
  tree_cmd->add_option("--model", model_path);
  std::string tree_perspective;
  tree_cmd->add_option("--perspective", tree_perspective);
  tree_cmd->add_flag("--json", as_json);

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a sentence from a model file");
  eval_cmd->add_option("sentence", sentence_text)->required();
  eval_cmd->add_option("--model", model_path)->required();
  eval_cmd->add_option("--perspective", perspective_spec);
  eval_cmd->add_flag("--json", as_json);

  auto* check_cmd = app.add_subcommand("check", "check a claim file");
  check_cmd->add_option("claim", claim_path)->required();
  check_cmd->add_option("--model", model_path);
  check_cmd->add_option("--seed", seed);
  check_cmd->add_option("--samples", samples);
  check_cmd->add_option("--out", out_path);
  check_cmd->add_flag("--json", as_json);

  auto* search_cmd =
      app.add_subcommand("search", "extended countermodel search over a claim");
  search_cmd->add_option("claim", claim_path)->required();
  search_cmd->add_option("--model", model_path);
  search_cmd->add_option("--seed", seed);
  search_cmd->add_option("--samples", samples);
  search_cmd->add_option("--out", out_path);
  search_cmd->add_flag("--json", as_json);

  auto* scenario_cmd = app.add_subcommand("scenario", "run epistemic situations 1..9");
  scenario_cmd->add_option("number", scenario_number);
  scenario_cmd->add_flag("--all", all_scenarios);
  std::int64_t scen_seed = 2026;
  scenario_cmd->add_option("--seed", scen_seed);
  scenario_cmd->add_option("--samples", samples);
  scenario_cmd->add_option("--out-dir", out_dir);
  scenario_cmd->add_flag("--json", as_json);

  CLI11_PARSE(app, argc, argv);

  try {
    if (parse_cmd->parsed()) return cmd_parse(sentence_text, as_json);
    if (tree_cmd->parsed())
      return cmd_tree(sentence_text, model_path, tree_perspective, as_json);
    if (eval_cmd->parsed())
      return cmd_eval(sentence_text, model_path, perspective_spec, as_json);
    if (check_cmd->parsed())
      return run_check(claim_path, model_path, seed, samples, as_json, out_path);
    if (search_cmd->parsed()) {
      if (samples <= 0) samples = 1000;
      return run_check(claim_path, model_path, seed, samples, as_json, out_path);
    }
    if (scenario_cmd->parsed()) {
      if (!all_scenarios && (scenario_number < 1 || scenario_number > 9)) {
        std::cerr << "error: pass a situation number 1..9 or --all\n";
        return kExitUsage;
      }
      return cmd_scenario(scenario_number, all_scenarios,
                          static_cast<std::uint64_t>(scen_seed), samples, as_json,
                          out_dir);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPreset;
  } catch (const ConstraintViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConstraint;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
