// Copyright 2026 The comply Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// comply: command-line front end for the compliance checker.
//
// Exit codes: 0 compliant / correct / holds, 1 violation or counterexample,
// 2 input or configuration error, 3 state budget exceeded.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "comply/choreography_io.hpp"
#include "comply/compose.hpp"
#include "comply/decomposition.hpp"
#include "comply/errors.hpp"
#include "comply/generator.hpp"
#include "comply/negotiation.hpp"
#include "comply/process.hpp"
#include "comply/reports.hpp"
#include "comply/rule_automaton.hpp"
#include "comply/rule_io.hpp"
#include "comply/templates.hpp"
#include "comply/theorem.hpp"
#include "comply/verification.hpp"

namespace {

using namespace comply;
using nlohmann::json;

enum Exit { kOk = 0, kViolation = 1, kInputError = 2, kResourceError = 3 };

struct RunConfig {
  std::string format = "text";
  bool no_timestamp = false;
  std::string mode = "atomic";
  int channel_bound = 1;
  int max_unroll = 0;  // 0 keeps the bounds declared in the models
  std::size_t state_budget = 0;
  std::uint64_t seed = 7;
};

void add_common(CLI::App* cmd, RunConfig& cfg, bool with_dot = false) {
  std::vector<std::string> formats{"text", "json"};
  if (with_dot) formats.push_back("dot");
  cmd->add_option("--format", cfg.format, "Report format")->check(CLI::IsMember(formats));
  cmd->add_flag("--no-timestamp", cfg.no_timestamp, "Omit timestamps and wall-clock fields");
  cmd->add_option("--state-budget", cfg.state_budget,
                  "Maximum automaton states (overrides COMPLY_STATE_BUDGET)")
      ->check(CLI::PositiveNumber)
      ->each([](const std::string& v) { set_state_budget(std::stoull(v)); });
}

void add_model_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--mode", cfg.mode, "Interaction semantics")
      ->check(CLI::IsMember({"atomic", "async"}));
  cmd->add_option("--channel-bound", cfg.channel_bound, "Async channel capacity")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-unroll", cfg.max_unroll, "Loop unrolling bound for every loop")
      ->check(CLI::PositiveNumber);
}

void set_unroll(ProcessGraph& g, int bound) {
  if (g.kind == BlockKind::loop) g.max_unroll = bound;
  for (auto& c : g.children) set_unroll(c, bound);
}

Choreography load_models(const std::string& path, const RunConfig& cfg) {
  Choreography chor = load_choreography(path);
  if (cfg.max_unroll > 0) {
    set_unroll(chor.choreography, cfg.max_unroll);
    for (auto& [_, m] : chor.private_models) set_unroll(m, cfg.max_unroll);
    for (auto& [_, m] : chor.public_models) set_unroll(m, cfg.max_unroll);
  }
  return chor;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void emit(const RunConfig& cfg, json report, const std::string& text) {
  if (cfg.format == "json") {
    if (!cfg.no_timestamp) report["generatedAt"] = utc_now();
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

int verdict_exit(const Verdict& v) {
  return v.outcome == Outcome::violated ? kViolation : kOk;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << content;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<Assertion> load_assertions(const std::string& path) {
  const json doc = read_json_file(path);
  if (!doc.contains("assertions") || !doc.at("assertions").is_array())
    throw InputError("'" + path + "' has no assertions array");
  std::vector<Assertion> out;
  try {
    for (const auto& a : doc.at("assertions")) out.push_back(assertion_from_json(a));
  } catch (const json::exception& e) {
    throw InputError("malformed assertion in '" + path + "': " + e.what());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subcommands. Each stores its exit code in `code`.

json verdict_report(const Verdict& v, const RunConfig& cfg) {
  return verdict_to_json(v, !cfg.no_timestamp);
}

void setup_check_local(CLI::App& app, RunConfig& cfg, int& code) {
  auto* cmd = app.add_subcommand("check-local", "Check one partner's private model against a rule");
  auto chor = std::make_shared<std::string>();
  auto partner = std::make_shared<std::string>();
  auto rule = std::make_shared<std::string>();
  cmd->add_option("--chor", *chor, "Choreography JSON")->required()->check(CLI::ExistingFile);
  cmd->add_option("--partner", *partner, "Partner id")->required();
  cmd->add_option("--rule", *rule, "Rule JSON")->required()->check(CLI::ExistingFile);
  add_common(cmd, cfg, true);
  add_model_flags(cmd, cfg);
  cmd->callback([&cfg, &code, chor, partner, rule] {
    const auto c = load_models(*chor, cfg);
    const auto r = load_rule(*rule);
    const auto mode = interaction_mode_from_string(cfg.mode);
    if (cfg.format == "dot") {
      std::cout << to_dot(model_to_automaton(c.private_model(*partner), *partner, mode), *partner);
      return;
    }
    const auto v = check_local_compliance(c.private_model(*partner), *partner, r, mode);
    emit(cfg, verdict_report(v, cfg), verdict_text(v));
    code = verdict_exit(v);
  });
}

void setup_check_global(CLI::App& app, RunConfig& cfg, int& code) {
  auto* cmd = app.add_subcommand("check-global", "Check the composed models against a global rule");
  auto chor = std::make_shared<std::string>();
  auto rule = std::make_shared<std::string>();
  auto view = std::make_shared<std::string>("public");
  cmd->add_option("--chor", *chor, "Choreography JSON")->required()->check(CLI::ExistingFile);
  cmd->add_option("--rule", *rule, "Rule JSON")->required()->check(CLI::ExistingFile);
  cmd->add_option("--view", *view, "Which models to compose")
      ->check(CLI::IsMember({"choreography", "public", "full-private"}));
  add_common(cmd, cfg, true);
  add_model_flags(cmd, cfg);
  cmd->callback([&cfg, &code, chor, rule, view] {
    const auto c = load_models(*chor, cfg);
    const auto mode = interaction_mode_from_string(cfg.mode);
    const auto gmode = global_mode_from_string(*view);
    if (cfg.format == "dot") {
      const auto models = gmode == GlobalMode::full_private ? ModelView::private_models
                                                             : ModelView::public_models;
      std::cout << to_dot(compose_global(c, mode, cfg.channel_bound, models), "global");
      return;
    }
    const auto v = check_global_compliance(c, load_rule(*rule), gmode, mode, cfg.channel_bound);
    emit(cfg, verdict_report(v, cfg), verdict_text(v));
    code = verdict_exit(v);
  });
}

void setup_decompose(CLI::App& app, RunConfig& cfg, int& code) {
  auto* cmd = app.add_subcommand("decompose", "Split a global rule into partner assertions");
  auto chor = std::make_shared<std::string>();
  auto rule = std::make_shared<std::string>();
  auto method = std::make_shared<std::string>("auto");
  auto no_sync = std::make_shared<bool>(false);
  auto updated = std::make_shared<std::string>();
  cmd->add_option("--chor", *chor, "Choreography JSON")->required()->check(CLI::ExistingFile);
  cmd->add_option("--rule", *rule, "Global rule JSON")->required()->check(CLI::ExistingFile);
  cmd->add_option("--method", *method, "auto, alg1 or a template id such as T3 or T4(3,2)");
  cmd->add_flag("--no-sync", *no_sync, "Fail instead of adding sync messages");
  cmd->add_option("--updated-chor", *updated, "Write the choreography with sync messages here");
  add_common(cmd, cfg);
  add_model_flags(cmd, cfg);
  cmd->callback([&cfg, &code, chor, rule, method, no_sync, updated] {
    const auto c = load_models(*chor, cfg);
    DecomposeOptions options;
    options.allow_sync = !*no_sync;
    const auto d = decompose_with(load_rule(*rule), c, *method, options);
    if (!updated->empty()) {
      write_file(*updated, choreography_to_json(d.choreography.value_or(c)).dump(2) + "\n");
    }
    emit(cfg, decomposition_to_json(d), decomposition_text(d));
    code = d.status == DecompositionStatus::failed ? kViolation : kOk;
  });
}

void setup_verify(CLI::App& app, RunConfig& cfg, int& code) {
  auto* cmd = app.add_subcommand("verify", "Check that assertions imply a global rule");
  auto assertions = std::make_shared<std::string>();
  auto rule = std::make_shared<std::string>();
  auto chor = std::make_shared<std::string>();
  auto all = std::make_shared<bool>(false);
  auto* a_opt = cmd->add_option("--assertions", *assertions,
                                "Assertions JSON (an assertions array or a decompose report)")
                    ->check(CLI::ExistingFile);
  cmd->add_option("--rule", *rule, "Global rule JSON, or a rule list with --all")
      ->required()
      ->check(CLI::ExistingFile);
  auto* c_opt = cmd->add_option("--chor", *chor, "Choreography JSON (with --all)")
                    ->check(CLI::ExistingFile);
  auto* all_opt = cmd->add_flag("--all", *all, "Decompose and verify every rule in --rule");
  all_opt->excludes(a_opt);
  all_opt->needs(c_opt);
  add_common(cmd, cfg);
  add_model_flags(cmd, cfg);
  cmd->callback([&cfg, &code, assertions, rule, chor, all] {
    if (!*all) {
      if (assertions->empty()) throw InputError("verify needs --assertions or --all");
      std::vector<ComplianceRule> rules;
      for (const auto& a : load_assertions(*assertions)) rules.push_back(a.rule);
      const auto v = verify_decomposition(rules, load_rule(*rule));
      emit(cfg, verdict_report(v, cfg), verdict_text(v));
      code = verdict_exit(v);
      return;
    }
    const auto c = load_models(*chor, cfg);
    const auto gcrs = load_rules(*rule);
    std::vector<Decomposition> decs(gcrs.size());
    std::vector<Verdict> verdicts(gcrs.size());
    std::vector<std::exception_ptr> errors(gcrs.size());
    // Rules are independent; results land in their own slots.
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < gcrs.size(); ++i) {
      try {
        decs[i] = decompose_with(gcrs[i], c);
        if (decs[i].status != DecompositionStatus::failed) {
          verdicts[i] = verify_decomposition(decs[i].rules(), gcrs[i]);
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
    json report = json::array();
    std::string text;
    for (std::size_t i = 0; i < gcrs.size(); ++i) {
      if (errors[i]) std::rethrow_exception(errors[i]);
      json entry = {{"decomposition", decomposition_to_json(decs[i])}};
      text += decomposition_text(decs[i]);
      if (decs[i].status == DecompositionStatus::failed) {
        code = kViolation;
      } else {
        entry["verdict"] = verdict_report(verdicts[i], cfg);
        text += "  verify: " + verdict_text(verdicts[i]);
        if (verdicts[i].outcome == Outcome::violated) code = kViolation;
      }
      report.push_back(std::move(entry));
    }
    emit(cfg, {{"results", std::move(report)}}, text);
  });
}

void setup_negotiate(CLI::App& app, RunConfig& cfg, int& code) {
  auto* cmd = app.add_subcommand("negotiate", "Simulate the partners' setup phase for a rule");
  auto chor = std::make_shared<std::string>();
  auto rule = std::make_shared<std::string>();
  auto strategy = std::make_shared<std::string>("leader");
  auto transcript = std::make_shared<std::string>();
  cmd->add_option("--chor", *chor, "Choreography JSON")->required()->check(CLI::ExistingFile);
  cmd->add_option("--rule", *rule, "Global rule JSON")->required()->check(CLI::ExistingFile);
  cmd->add_option("--strategy", *strategy)->check(CLI::IsMember({"leader", "leaderless"}));
  cmd->add_option("--seed", cfg.seed, "Recorded in the announcement");
  cmd->add_option("--transcript", *transcript, "Write the message log as JSON lines");
  add_common(cmd, cfg);
  add_model_flags(cmd, cfg);
  cmd->callback([&cfg, &code, chor, rule, strategy, transcript] {
    const auto out = run_negotiation(load_models(*chor, cfg), load_rule(*rule), cfg.seed,
                                     strategy_from_string(*strategy));
    if (!transcript->empty()) write_file(*transcript, transcript_to_jsonl(out.transcript));
    json report = {{"strategy", *strategy},
                   {"leader", out.leader},
                   {"seed", cfg.seed},
                   {"rounds", out.rounds},
                   {"decomposition", decomposition_to_json(out.decomposition)}};
    std::string text = "strategy " + *strategy +
                       (out.leader.empty() ? "" : ", leader " + out.leader) + ", " +
                       std::to_string(out.rounds) + " messages\n" +
                       decomposition_text(out.decomposition);
    emit(cfg, std::move(report), text);
    code = out.decomposition.status == DecompositionStatus::failed ? kViolation : kOk;
  });
}

void setup_theorems(CLI::App& app, RunConfig& cfg, int& code) {
  auto* cmd = app.add_subcommand("theorems", "Brute-force the decomposition theorems");
  auto ids = std::make_shared<std::vector<std::string>>();
  auto alphabet = std::make_shared<std::string>();
  auto max_len = std::make_shared<std::size_t>(7);
  auto converse = std::make_shared<bool>(false);
  auto serial = std::make_shared<bool>(false);
  cmd->add_option("--id", *ids, "Template ids, for example T1a or T4(3,2); default all");
  cmd->add_option("--alphabet", *alphabet, "Comma-separated letters; default the template's own");
  cmd->add_option("--max-len", *max_len, "Longest trace")->check(CLI::Range(1, 10));
  cmd->add_flag("--converse", *converse, "Check the converse direction");
  cmd->add_flag("--serial", *serial, "Use the serial enumeration kernel");
  add_common(cmd, cfg);
  cmd->callback([&cfg, &code, ids, alphabet, max_len, converse, serial] {
    const auto chosen = ids->empty() ? template_ids() : *ids;
    json report = json::array();
    std::string text;
    for (const auto& id : chosen) {
      TheoremOptions options;
      options.alphabet = split_list(*alphabet);
      options.max_len = *max_len;
      options.converse = *converse;
      options.parallel = !*serial;
      const auto r = validate_theorem(id, options);
      report.push_back(theorem_result_to_json(r, !cfg.no_timestamp));
      text += r.id + ": " +
              (r.holds ? "Holds" : "Counterexample") + " over " + std::to_string(r.words) +
              " traces up to length " + std::to_string(r.max_len);
      if (r.counterexample) {
        text += " [";
        for (std::size_t i = 0; i < r.counterexample->size(); ++i)
          text += (i ? ", " : "") + (*r.counterexample)[i];
        text += "]";
      }
      text += "\n";
      if (!r.holds) code = kViolation;
    }
    emit(cfg, {{"theorems", std::move(report)}}, text);
  });
}

void setup_oracle(CLI::App& app, RunConfig& cfg, int& code) {
  auto* cmd = app.add_subcommand("oracle", "Evaluate a rule on one trace");
  auto rule = std::make_shared<std::string>();
  auto trace = std::make_shared<std::string>();
  cmd->add_option("--rule", *rule, "Rule JSON")->required()->check(CLI::ExistingFile);
  cmd->add_option("--trace", *trace, "Comma-separated event labels")->required();
  add_common(cmd, cfg, true);
  cmd->callback([&cfg, &code, rule, trace] {
    const auto r = load_rule(*rule);
    const Trace t = split_list(*trace);
    auto alphabet = r.labels();
    alphabet.insert(alphabet.end(), t.begin(), t.end());
    alphabet = normalize_alphabet(std::move(alphabet));
    const auto aut = rule_to_automaton(r, alphabet);
    if (cfg.format == "dot") {
      std::cout << to_dot(aut, r.id);
      return;
    }
    const bool holds = evaluate_rule(t, r);
    const bool accepted = aut.accepts(t);
    json report = {{"rule", r.id}, {"trace", t}, {"satisfied", holds}, {"automatonAccepts", accepted}};
    json acts = json::array();
    for (const auto& a : activations(t, r)) {
      acts.push_back({{"nodes", a.node_ids}, {"positions", a.positions}, {"satisfied", a.satisfied}});
    }
    report["activations"] = std::move(acts);
    std::string text = std::string(holds ? "satisfied" : "violated") + " (automaton " +
                       (accepted ? "accepts" : "rejects") + ")\n";
    emit(cfg, std::move(report), text);
    code = holds ? kOk : kViolation;
  });
}

void setup_gen(CLI::App& app, RunConfig& cfg, int& code) {
  auto* cmd = app.add_subcommand("gen", "Generate a random choreography and rule");
  auto params = std::make_shared<GeneratorParams>();
  auto tree = std::make_shared<int>(0);
  auto out_chor = std::make_shared<std::string>();
  auto out_rule = std::make_shared<std::string>();
  cmd->add_option("--seed", cfg.seed);
  cmd->add_option("--partners", params->partners)->check(CLI::PositiveNumber);
  cmd->add_option("--activities", params->activities)->check(CLI::NonNegativeNumber);
  cmd->add_option("--messages", params->messages)->check(CLI::NonNegativeNumber);
  cmd->add_option("--loop-depth", params->loop_depth)->check(CLI::NonNegativeNumber);
  cmd->add_option("--tree-nodes", *tree, "Emit a random tree rule with this many nodes")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out-chor", *out_chor, "Choreography output path")->required();
  cmd->add_option("--out-rule", *out_rule, "Rule output path");
  add_common(cmd, cfg);
  cmd->callback([&cfg, &code, params, tree, out_chor, out_rule] {
    params->plant_rule = *tree == 0;
    const auto gen = generate_case(*params, cfg.seed);
    write_file(*out_chor, choreography_to_json(gen.chor).dump(2) + "\n");
    std::optional<ComplianceRule> rule = gen.planted;
    if (*tree > 0) rule = random_tree_rule(gen.chor, *tree, cfg.seed);
    if (!out_rule->empty() && rule) write_file(*out_rule, rule_to_json(*rule).dump(2) + "\n");
    json report = {{"seed", cfg.seed}, {"chor", *out_chor}};
    if (rule) report["rule"] = rule->id;
    emit(cfg, std::move(report), "wrote " + *out_chor + (rule && !out_rule->empty() ? " and " + *out_rule : "") + "\n");
    code = kOk;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"comply: compliance checking and rule decomposition for choreographies"};
  app.require_subcommand(1);
  RunConfig cfg;
  int code = kOk;
  setup_check_local(app, cfg, code);
  setup_check_global(app, cfg, code);
  setup_decompose(app, cfg, code);
  setup_verify(app, cfg, code);
  setup_negotiate(app, cfg, code);
  setup_theorems(app, cfg, code);
  setup_oracle(app, cfg, code);
  setup_gen(app, cfg, code);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  } catch (const ResourceError& e) {
    std::cerr << "comply: " << e.what() << "\n";
    return kResourceError;
  } catch (const InputError& e) {
    std::cerr << "comply: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "comply: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "comply: " << e.what() << "\n";
    return kInputError;
  }
  return code;
}
