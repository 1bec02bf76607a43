// Copyright 2026 The qmotion Authors
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

#include "qmotion/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <map>
#include <set>
#include <thread>

#include <CLI11.hpp>

#include "qmotion/errors.hpp"
#include "qmotion/oracle.hpp"
#include "qmotion/report.hpp"
#include "qmotion/scene_io.hpp"

namespace qmotion::cli {

using nlohmann::json;

namespace {

struct Options {
  std::string scene;
  std::string second;
  std::string heuristics = "h1h2";
  std::size_t cap = kDefaultSubsetCap;
  std::optional<std::size_t> max_solutions;
  std::string format = "text";
  double epsilon = 1e-6;

  std::size_t stack = 0;
  std::string impulse = "random";
  std::optional<std::uint64_t> seed;
  std::size_t horizon = 5;
  bool lift = false;
  std::string out_path = "scene.json";
  std::string truth_path;
  std::size_t max_objects = 3;
};

unsigned worker_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("AIP_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<unsigned long>(n, cap);
  }
  return n;
}

SolverConfig solver_config(const Options& o) {
  SolverConfig cfg;
  cfg.heuristics = HeuristicSet::parse(o.heuristics);
  cfg.subset_cap = o.cap;
  cfg.max_solutions = o.max_solutions;
  cfg.threads = worker_threads();
  return cfg;
}

ConfigEcho echo(const Options& o) { return {o.heuristics, o.cap, o.max_solutions, o.epsilon}; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void emit(const RunReport& r, const Options& o, std::ostream& out) {
  if (o.format == "json") {
    out << report_to_json(r).dump(2) << "\n";
  } else {
    out << render_text(r);
  }
}

int cmd_validate(const Options& o, std::ostream& out) {
  const Scene scene = load_scene(o.scene, {o.epsilon});
  const auto statics = std::count_if(scene.objects.begin(), scene.objects.end(),
                                     [](const SceneObject& x) { return x.is_static; });
  out << "valid scene " << scene_digest(scene) << ": " << scene.objects.size() << " objects ("
      << statics << " static), " << scene.contacts.size() << " contacts, "
      << count_candidate_actions(scene.objects) << " candidate actions\n";
  return kOk;
}

int cmd_infer(const Options& o, std::ostream& out, std::ostream& err) {
  const Scene scene = load_scene(o.scene, {o.epsilon});
  RunReport r;
  r.command = "infer";
  r.scene_digest = scene_digest(scene);
  r.config = echo(o);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r.solutions = solve(scene, solver_config(o));
  } catch (const NoMovedObject& e) {
    r.error = e.what();
  }
  r.wall_time_s = seconds_since(t0);
  emit(r, o, out);
  if (r.error) err << "error: " << *r.error << "\n";
  return r.solutions.empty() ? kNoSolution : kOk;
}

int cmd_predict(const Options& o, std::ostream& out) {
  const Scene scene = load_scene(o.scene, {o.epsilon});
  const std::vector<QualitativeForce> forces = load_forces(o.second);
  std::map<ObjectId, std::vector<QualitativeForce>> by_object;
  for (const auto& f : forces) {
    const SceneObject* obj = scene.find(f.object);
    if (!obj) {
      throw InvalidScene(InvalidScene::Kind::UnknownObject, "forces",
                         "unknown object '" + f.object.value + "'");
    }
    by_object[f.object].push_back(f);
  }
  RunReport r;
  r.command = "predict";
  r.scene_digest = scene_digest(scene);
  r.config = echo(o);
  const auto t0 = std::chrono::steady_clock::now();
  for (const SceneObject& obj : scene.objects) {
    if (obj.is_static) continue;
    const auto& list = by_object[obj.id];
    r.envelopes.push_back({obj.id, list.size(), delta_envelope(list, o.cap).elements()});
  }
  r.wall_time_s = seconds_since(t0);
  emit(r, o, out);
  return kOk;
}

int cmd_generate(const Options& o, std::ostream& out) {
  if (o.stack == 0) throw std::invalid_argument("--stack must be at least 1");
  oracle::Rng rng(o.seed.value_or(0));
  const oracle::StackSpec stack =
      o.seed ? oracle::random_stack(o.stack, rng) : oracle::StackSpec::uniform(o.stack);
  const oracle::ImpulseSpec impulse = o.impulse == "random"
                                          ? oracle::random_impulse(stack, rng, o.lift)
                                          : oracle::parse_impulse(o.impulse, o.stack);
  oracle::GenerateConfig cfg;
  cfg.horizon = o.horizon;
  cfg.min_epsilon = o.epsilon;
  const oracle::GeneratedScene g = oracle::generate_scene(stack, impulse, cfg);

  std::string truth_path = o.truth_path;
  if (truth_path.empty()) {
    truth_path = o.out_path.ends_with(".json") ? o.out_path.substr(0, o.out_path.size() - 5) : o.out_path;
    truth_path += ".truth.json";
  }
  write_text_file(o.out_path, serialize_scene(g.scene));
  write_text_file(truth_path, sidecar_to_json(g.truth).dump(2) + "\n");
  out << "wrote " << o.out_path << " (" << scene_digest(g.scene) << ")\n";
  out << "wrote " << truth_path << "\n";
  out << "truth " << (g.truth ? describe(*g.truth) : std::string("none (zero impulse)")) << "\n";
  out << "epsilon " << g.epsilon << " jitter " << g.jitter << "\n";
  return kOk;
}

json action_list(const std::vector<QualitativeAction>& v) {
  json out = json::array();
  for (const auto& a : v) out.push_back(action_to_json(a));
  return out;
}

int cmd_check(const Options& o, std::ostream& out) {
  const Scene scene = load_scene(o.scene, {o.epsilon});
  const std::optional<QualitativeAction> truth = load_sidecar(o.second);
  const SolverConfig cfg = solver_config(o);

  std::vector<Solution> solutions;
  std::optional<std::string> note;
  try {
    solutions = solve(scene, cfg);
  } catch (const NoMovedObject& e) {
    note = e.what();
  }
  const std::vector<QualitativeAction> actions = distinct_actions(solutions);
  const std::size_t invalid = static_cast<std::size_t>(std::count_if(
      solutions.begin(), solutions.end(), [&](const Solution& s) { return !validate_solution(scene, s); }));
  const bool truth_found =
      !truth || std::find(actions.begin(), actions.end(), *truth) != actions.end();

  json report = {{"scene_digest", scene_digest(scene)},
                 {"heuristics", o.heuristics},
                 {"truth", truth ? action_to_json(*truth) : json(nullptr)},
                 {"truth_found", truth_found},
                 {"solver_actions", actions.size()},
                 {"invalid_solutions", invalid}};
  if (note) report["note"] = *note;

  bool oracle_equal = true;
  if (scene.objects.size() <= o.max_objects) {
    const std::set<QualitativeAction> oracle = oracle::enumerate_actions(scene, cfg);
    std::vector<QualitativeAction> only_solver, only_oracle;
    std::set_difference(actions.begin(), actions.end(), oracle.begin(), oracle.end(),
                        std::back_inserter(only_solver));
    std::set_difference(oracle.begin(), oracle.end(), actions.begin(), actions.end(),
                        std::back_inserter(only_oracle));
    oracle_equal = only_solver.empty() && only_oracle.empty();
    report["oracle_actions"] = oracle.size();
    report["only_solver"] = action_list(only_solver);
    report["only_oracle"] = action_list(only_oracle);
  } else {
    report["oracle_actions"] = nullptr;
  }
  const bool pass = truth_found && oracle_equal && invalid == 0;
  report["pass"] = pass;

  if (o.format == "json") {
    out << report.dump(2) << "\n";
  } else {
    out << (pass ? "check passed" : "check FAILED") << "\n";
    out << "  truth          " << (truth ? describe(*truth) : std::string("none")) << "\n";
    out << "  truth found    " << (truth_found ? "yes" : "no") << "\n";
    out << "  solver actions " << actions.size() << " (" << invalid << " invalid)\n";
    if (report["oracle_actions"].is_null()) {
      out << "  oracle         skipped (more than " << o.max_objects << " objects)\n";
    } else {
      out << "  oracle actions " << report["oracle_actions"].get<std::size_t>() << "\n";
      for (const auto& a : report["only_solver"]) out << "  only in solver " << a.dump() << "\n";
      for (const auto& a : report["only_oracle"]) out << "  only in oracle " << a.dump() << "\n";
    }
    if (note) out << "  note           " << *note << "\n";
  }
  return pass ? kOk : kCheckFailed;
}

void add_solver_flags(CLI::App* app, Options& o) {
  app->add_option("--heuristics", o.heuristics, "none, h1, h2 or h1h2")
      ->check(CLI::IsMember({"none", "h1", "h2", "h1h2"}));
  app->add_option("--cap", o.cap, "power-set cap per object")->check(CLI::Range(1, 16));
  app->add_option("--epsilon", o.epsilon, "quantization dead-band")->check(CLI::NonNegativeNumber);
}

void add_format_flag(CLI::App* app, Options& o) {
  app->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Qualitative action inference for rigid-body scenes", "qmotion"};
  app.require_subcommand(1);

  auto* validate = app.add_subcommand("validate", "parse and check a scene file");
  validate->add_option("scene", o.scene)->required();
  validate->add_option("--epsilon", o.epsilon)->check(CLI::NonNegativeNumber);

  auto* infer = app.add_subcommand("infer", "infer the actions that explain a scene");
  infer->add_option("scene", o.scene)->required();
  add_solver_flags(infer, o);
  add_format_flag(infer, o);
  infer->add_option("--max-solutions", o.max_solutions)->check(CLI::PositiveNumber);

  auto* predict = app.add_subcommand("predict", "state changes a force set can produce");
  predict->add_option("scene", o.scene)->required();
  predict->add_option("forces", o.second)->required();
  predict->add_option("--cap", o.cap)->check(CLI::Range(1, 16));
  predict->add_option("--epsilon", o.epsilon)->check(CLI::NonNegativeNumber);
  add_format_flag(predict, o);

  auto* generate = app.add_subcommand("generate", "simulate a pushed tower and write a scene");
  generate->add_option("--stack", o.stack, "number of boxes")->required()->check(CLI::Range(1, 15));
  generate->add_option("--impulse", o.impulse, "x,y,z@target, zero or random");
  generate->add_option("--seed", o.seed, "random tower and impulse seed");
  generate->add_option("--horizon", o.horizon, "simulation steps after the impulse")
      ->check(CLI::Range(1, 100000));
  generate->add_flag("--lift", o.lift, "random impulses may point upward");
  generate->add_option("--epsilon", o.epsilon, "smallest quantization dead-band")
      ->check(CLI::NonNegativeNumber);
  generate->add_option("--out", o.out_path, "scene file");
  generate->add_option("--truth", o.truth_path, "ground-truth sidecar file");

  auto* check = app.add_subcommand("check", "solve and compare against ground truth and the oracle");
  check->add_option("scene", o.scene)->required();
  check->add_option("sidecar", o.second)->required();
  add_solver_flags(check, o);
  add_format_flag(check, o);
  check->add_option("--max-objects", o.max_objects, "largest scene sent to the oracle");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out);
    if (infer->parsed()) return cmd_infer(o, out, err);
    if (predict->parsed()) return cmd_predict(o, out);
    if (generate->parsed()) return cmd_generate(o, out);
    if (check->parsed()) return cmd_check(o, out);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const UnstableInitialStack& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace qmotion::cli
