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

// JSON file formats:
//
//   scene      {"format":"aip-scene/1","gravity":bool,"objects":[...],"contacts":[...]}
//   sidecar    {"action":{"object":id,"qd":[s,s,s],"qr":[s,s,s]}} or {"action":null}
//   forces     {"format":"aip-forces/1","forces":[{"object":id,"qd":[...],"qr":[...]}]}
//
// Signs are encoded as "+", "-", "0" or a bracketed set such as "[+0]".
// Unknown fields are rejected everywhere.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qmotion/scene.hpp"

namespace qmotion {

inline constexpr std::string_view kSceneFormat = "aip-scene/1";
inline constexpr std::string_view kForcesFormat = "aip-forces/1";

nlohmann::json to_json(const SignVec& v);
SignVec sign_vec_from_json(const nlohmann::json& j, const std::string& field);

/// Parses and canonicalizes a scene. Throws InvalidScene naming the field.
Scene parse_scene(const nlohmann::json& doc, const QuantizationConfig& cfg = {});
Scene parse_scene(std::string_view text, const QuantizationConfig& cfg = {});
Scene load_scene(const std::filesystem::path& path, const QuantizationConfig& cfg = {});

nlohmann::json scene_to_json(const Scene& scene);
/// Canonical text of a scene; parse_scene(serialize_scene(s)) == s.
std::string serialize_scene(const Scene& scene);
/// FNV-1a 64 of the canonical text, as 16 hex digits.
std::string scene_digest(const Scene& scene);

nlohmann::json action_to_json(const QualitativeAction& action);
QualitativeAction action_from_json(const nlohmann::json& j, const std::string& field);

/// A null action marks a scene generated without an impulse.
nlohmann::json sidecar_to_json(const std::optional<QualitativeAction>& truth);
std::optional<QualitativeAction> parse_sidecar(const nlohmann::json& doc);
std::optional<QualitativeAction> load_sidecar(const std::filesystem::path& path);

nlohmann::json forces_to_json(const std::vector<QualitativeForce>& forces);
std::vector<QualitativeForce> parse_forces(const nlohmann::json& doc);
std::vector<QualitativeForce> load_forces(const std::filesystem::path& path);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace qmotion
