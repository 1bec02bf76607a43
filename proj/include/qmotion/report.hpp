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

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmotion/solver.hpp"

namespace qmotion {

struct ConfigEcho {
  std::string heuristics = "h1h2";
  std::size_t cap = kDefaultSubsetCap;
  std::optional<std::size_t> max_solutions;
  double epsilon = 1e-6;

  friend bool operator==(const ConfigEcho&, const ConfigEcho&) = default;
};

struct ObjectEnvelope {
  ObjectId object;
  std::size_t forces = 0;
  std::vector<StateChange> changes;

  friend bool operator==(const ObjectEnvelope&, const ObjectEnvelope&) = default;
};

struct RunReport {
  std::string command;
  std::string scene_digest;
  ConfigEcho config;
  std::vector<Solution> solutions;
  std::vector<ObjectEnvelope> envelopes;
  std::optional<std::string> error;
  double wall_time_s = 0.0;

  std::vector<QualitativeAction> actions() const { return distinct_actions(solutions); }
  friend bool operator==(const RunReport&, const RunReport&) = default;
};

nlohmann::json solution_to_json(const Solution& s);
Solution solution_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const RunReport& r);
RunReport report_from_json(const nlohmann::json& j);

/// "push object <id> in direction <qd> at locus <qr>".
std::string describe(const QualitativeAction& a);

/// The per-object chain: forces used -> combined signs -> entailed change.
std::string explain(const Solution& s);

/// Aligned plain text carrying the same solution set as the JSON form.
std::string render_text(const RunReport& r);

}  // namespace qmotion
