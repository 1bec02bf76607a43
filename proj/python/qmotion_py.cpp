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

// Python bridge. Scenes, forces and reports cross as JSON text.

#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qmotion/cli.hpp"
#include "qmotion/dynamics.hpp"
#include "qmotion/errors.hpp"
#include "qmotion/oracle.hpp"
#include "qmotion/report.hpp"
#include "qmotion/scene_io.hpp"
#include "qmotion/solver.hpp"

namespace py = pybind11;
using namespace qmotion;

namespace {

SolverConfig config(const std::string& heuristics, std::optional<std::size_t> max_solutions = std::nullopt) {
  SolverConfig cfg;
  cfg.heuristics = HeuristicSet::parse(heuristics);
  cfg.max_solutions = max_solutions;
  return cfg;
}

std::string action_text(const QualitativeAction& a) { return action_to_json(a).dump(); }

}  // namespace

PYBIND11_MODULE(_qmotion, m) {
  m.doc() = "Qualitative action inference for rigid bodies";

  auto base = py::register_exception<Error>(m, "QMotionError");
  py::register_exception<InvalidScene>(m, "InvalidScene", base.ptr());
  py::register_exception<CapExceeded>(m, "CapExceeded", base.ptr());
  py::register_exception<NoMovedObject>(m, "NoMovedObject", base.ptr());
  py::register_exception<UnstableInitialStack>(m, "UnstableInitialStack", base.ptr());

  m.def("sign_add", [](const std::string& a, const std::string& b) {
    return to_string(sign_add(parse_sign_set(a), parse_sign_set(b)));
  });
  m.def("sign_sub", [](const std::string& a, const std::string& b) {
    return to_string(sign_sub(parse_sign_set(a), parse_sign_set(b)));
  });
  m.def("sign_mul", [](const std::string& a, const std::string& b) {
    return to_string(sign_mul(parse_sign_set(a), parse_sign_set(b)));
  });

  m.def("canonical_scene", [](const std::string& text) { return serialize_scene(parse_scene(std::string_view(text))); },
        "Parse a scene and return its canonical JSON text.");
  m.def("scene_digest", [](const std::string& text) { return scene_digest(parse_scene(std::string_view(text))); });

  m.def(
      "envelope",
      [](const std::string& forces_json, std::size_t cap) {
        const auto forces = parse_forces(nlohmann::json::parse(forces_json));
        std::vector<std::string> out;
        for (const StateChange& c : delta_envelope(forces, cap).elements()) out.push_back(to_string(c));
        return out;
      },
      py::arg("forces_json"), py::arg("cap") = kDefaultSubsetCap);

  m.def(
      "infer",
      [](const std::string& scene_json, const std::string& heuristics, std::optional<std::size_t> max_solutions) {
        const Scene scene = parse_scene(std::string_view(scene_json));
        std::vector<std::string> out;
        std::vector<Solution> sols;
        {
          py::gil_scoped_release release;
          sols = solve(scene, config(heuristics, max_solutions));
        }
        for (const auto& a : distinct_actions(sols)) out.push_back(action_text(a));
        return out;
      },
      py::arg("scene_json"), py::arg("heuristics") = "h1h2", py::arg("max_solutions") = std::nullopt,
      "Distinct actions that explain the scene, each as JSON text.");

  m.def(
      "enumerate_actions",
      [](const std::string& scene_json, const std::string& heuristics) {
        const Scene scene = parse_scene(std::string_view(scene_json));
        std::vector<std::string> out;
        for (const auto& a : oracle::enumerate_actions(scene, config(heuristics))) out.push_back(action_text(a));
        return out;
      },
      py::arg("scene_json"), py::arg("heuristics") = "h1h2");

  m.def(
      "generate",
      [](std::size_t stack, const std::string& impulse, std::optional<std::uint64_t> seed) {
        oracle::Rng rng(seed.value_or(0));
        const oracle::StackSpec spec = seed ? oracle::random_stack(stack, rng) : oracle::StackSpec::uniform(stack);
        const oracle::ImpulseSpec push =
            impulse == "random" ? oracle::random_impulse(spec, rng) : oracle::parse_impulse(impulse, stack);
        const auto g = oracle::generate_scene(spec, push);
        return py::make_tuple(serialize_scene(g.scene), sidecar_to_json(g.truth).dump());
      },
      py::arg("stack"), py::arg("impulse") = "random", py::arg("seed") = std::nullopt,
      "Simulate a pushed tower. Returns (scene JSON, truth sidecar JSON).");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      "Run the command line tool in-process. Returns (exit code, stdout, stderr).");
}
