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

#include "qmotion/scene_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "qmotion/errors.hpp"

namespace qmotion {

using nlohmann::json;

namespace {

[[noreturn]] void malformed(const std::string& field, const std::string& what) {
  throw InvalidScene(InvalidScene::Kind::Malformed, field, what);
}

void require_object(const json& j, const std::string& field) {
  if (!j.is_object()) malformed(field, "expected a JSON object");
}

void check_keys(const json& j, std::initializer_list<std::string_view> allowed,
                const std::string& field) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (std::string_view a : allowed) known = known || key == a;
    if (!known) malformed(field + "." + key, "unknown field");
  }
}

const json& required(const json& j, const std::string& key, const std::string& field) {
  auto it = j.find(key);
  if (it == j.end()) malformed(field + "." + key, "missing required field");
  return *it;
}

std::string string_field(const json& j, const std::string& key, const std::string& field) {
  const json& v = required(j, key, field);
  if (!v.is_string()) malformed(field + "." + key, "expected a string");
  return v.get<std::string>();
}

bool bool_field(const json& j, const std::string& key, const std::string& field) {
  const json& v = required(j, key, field);
  if (!v.is_boolean()) malformed(field + "." + key, "expected a boolean");
  return v.get<bool>();
}

Vec3 vec3_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 3) malformed(field, "expected an array of 3 numbers");
  Vec3 out;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!j[i].is_number()) malformed(field, "expected an array of 3 numbers");
    out[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    if (!std::isfinite(out[static_cast<Eigen::Index>(i)])) malformed(field, "non-finite number");
  }
  return out;
}

json vec3_to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

ObjectState state_from_json(const json& j, const std::string& field) {
  require_object(j, field);
  check_keys(j, {"qv", "qw"}, field);
  return {sign_vec_from_json(required(j, "qv", field), field + ".qv"),
          sign_vec_from_json(required(j, "qw", field), field + ".qw")};
}

json state_to_json(const ObjectState& s) {
  return {{"qv", to_json(s.qv)}, {"qw", to_json(s.qw)}};
}

QualitativeForce force_from_json(const json& j, const std::string& field) {
  require_object(j, field);
  check_keys(j, {"object", "qd", "qr"}, field);
  QualitativeForce f;
  f.object = ObjectId{string_field(j, "object", field)};
  f.qd = sign_vec_from_json(required(j, "qd", field), field + ".qd");
  f.qr = sign_vec_from_json(required(j, "qr", field), field + ".qr");
  return f;
}

json force_to_json(const QualitativeForce& f) {
  return {{"object", f.object.value}, {"qd", to_json(f.qd)}, {"qr", to_json(f.qr)}};
}

}  // namespace

json to_json(const SignVec& v) {
  return json::array({to_string(v[0]), to_string(v[1]), to_string(v[2])});
}

SignVec sign_vec_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 3) malformed(field, "expected an array of 3 sign strings");
  SignVec out;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!j[i].is_string()) malformed(field, "expected an array of 3 sign strings");
    try {
      out.c[i] = parse_sign_set(j[i].get<std::string>());
    } catch (const std::invalid_argument& e) {
      malformed(field, e.what());
    }
  }
  return out;
}

Scene parse_scene(const json& doc, const QuantizationConfig& cfg) {
  require_object(doc, "scene");
  check_keys(doc, {"format", "objects", "contacts", "gravity"}, "scene");
  const std::string format = string_field(doc, "format", "scene");
  if (format != kSceneFormat) malformed("scene.format", "unsupported format '" + format + "'");

  Scene scene;
  scene.gravity = bool_field(doc, "gravity", "scene");

  const json& objects = required(doc, "objects", "scene");
  if (!objects.is_array()) malformed("objects", "expected an array");
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const std::string field = "objects[" + std::to_string(i) + "]";
    const json& o = objects[i];
    require_object(o, field);
    check_keys(o, {"id", "static", "state_before", "state_after", "mass_center"}, field);
    SceneObject obj;
    obj.id = ObjectId{string_field(o, "id", field)};
    obj.is_static = bool_field(o, "static", field);
    obj.before = state_from_json(required(o, "state_before", field), field + ".state_before");
    obj.after = state_from_json(required(o, "state_after", field), field + ".state_after");
    if (auto it = o.find("mass_center"); it != o.end()) {
      obj.mass_center = vec3_from_json(*it, field + ".mass_center");
    }
    scene.objects.push_back(std::move(obj));
  }

  const json& contacts = required(doc, "contacts", "scene");
  if (!contacts.is_array()) malformed("contacts", "expected an array");
  for (std::size_t k = 0; k < contacts.size(); ++k) {
    const std::string field = "contacts[" + std::to_string(k) + "]";
    const json& c = contacts[k];
    require_object(c, field);
    check_keys(c, {"a", "b", "normal", "normal_q", "qr_a", "qr_b", "point"}, field);
    Contact contact;
    contact.a = ObjectId{string_field(c, "a", field)};
    contact.b = ObjectId{string_field(c, "b", field)};

    const bool has_numeric = c.contains("normal");
    const bool has_q = c.contains("normal_q");
    if (!has_numeric && !has_q) malformed(field + ".normal", "one of normal or normal_q is required");
    if (has_q) contact.geometry.normal_q = sign_vec_from_json(c["normal_q"], field + ".normal_q");
    if (has_numeric) {
      const Vec3 n = vec3_from_json(c["normal"], field + ".normal");
      const SignVec q = quantize(n, cfg);
      if (has_q && q != contact.geometry.normal_q) {
        malformed(field + ".normal_q", "does not match the quantized numeric normal");
      }
      contact.geometry.numeric_normal = n;
      contact.geometry.normal_q = q;
    }
    if (c.contains("point")) contact.point = vec3_from_json(c["point"], field + ".point");

    // qr from the file wins; otherwise derive it from the point and the
    // object's mass centre. When both are present they must agree.
    auto locus = [&](const char* key, const ObjectId& id) -> SignVec {
      const std::string lfield = field + "." + key;
      std::optional<SignVec> derived;
      if (contact.point) {
        auto it = std::find_if(scene.objects.begin(), scene.objects.end(),
                               [&](const SceneObject& o) { return o.id == id; });
        if (it != scene.objects.end() && it->mass_center) {
          derived = quantize(Vec3(*contact.point - *it->mass_center), cfg);
        }
      }
      if (c.contains(key)) {
        const SignVec given = sign_vec_from_json(c[key], lfield);
        if (derived && *derived != given) {
          malformed(lfield, "does not match point - mass_center");
        }
        return given;
      }
      if (!derived) malformed(lfield, "missing; give it directly or via point and mass_center");
      return *derived;
    };
    contact.geometry.qr_on_a = locus("qr_a", contact.a);
    contact.geometry.qr_on_b = locus("qr_b", contact.b);
    scene.contacts.push_back(std::move(contact));
  }
  return canonicalize(std::move(scene));
}

Scene parse_scene(std::string_view text, const QuantizationConfig& cfg) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    malformed("scene", std::string("invalid JSON: ") + e.what());
  }
  return parse_scene(doc, cfg);
}

Scene load_scene(const std::filesystem::path& path, const QuantizationConfig& cfg) {
  return parse_scene(read_json_file(path), cfg);
}

json scene_to_json(const Scene& scene) {
  json objects = json::array();
  for (const SceneObject& o : scene.objects) {
    json j = {{"id", o.id.value},
              {"static", o.is_static},
              {"state_before", state_to_json(o.before)},
              {"state_after", state_to_json(o.after)}};
    if (o.mass_center) j["mass_center"] = vec3_to_json(*o.mass_center);
    objects.push_back(std::move(j));
  }
  json contacts = json::array();
  for (const Contact& c : scene.contacts) {
    json j = {{"a", c.a.value},
              {"b", c.b.value},
              {"qr_a", to_json(c.geometry.qr_on_a)},
              {"qr_b", to_json(c.geometry.qr_on_b)}};
    if (c.geometry.numeric_normal) {
      j["normal"] = vec3_to_json(*c.geometry.numeric_normal);
    } else {
      j["normal_q"] = to_json(c.geometry.normal_q);
    }
    if (c.point) j["point"] = vec3_to_json(*c.point);
    contacts.push_back(std::move(j));
  }
  return {{"format", kSceneFormat},
          {"gravity", scene.gravity},
          {"objects", std::move(objects)},
          {"contacts", std::move(contacts)}};
}

std::string serialize_scene(const Scene& scene) { return scene_to_json(scene).dump(2) + "\n"; }

std::string scene_digest(const Scene& scene) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : serialize_scene(scene)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json action_to_json(const QualitativeAction& action) { return force_to_json(action.force()); }

QualitativeAction action_from_json(const json& j, const std::string& field) {
  QualitativeForce f = force_from_json(j, field);
  if (f.qd.is_zero()) malformed(field + ".qd", "an action needs a nonzero direction");
  return QualitativeAction(std::move(f));
}

json sidecar_to_json(const std::optional<QualitativeAction>& truth) {
  return {{"action", truth ? action_to_json(*truth) : json(nullptr)}};
}

std::optional<QualitativeAction> parse_sidecar(const json& doc) {
  require_object(doc, "sidecar");
  check_keys(doc, {"action"}, "sidecar");
  const json& action = required(doc, "action", "sidecar");
  if (action.is_null()) return std::nullopt;
  return action_from_json(action, "sidecar.action");
}

std::optional<QualitativeAction> load_sidecar(const std::filesystem::path& path) {
  return parse_sidecar(read_json_file(path));
}

json forces_to_json(const std::vector<QualitativeForce>& forces) {
  json list = json::array();
  for (const auto& f : forces) list.push_back(force_to_json(f));
  return {{"format", kForcesFormat}, {"forces", std::move(list)}};
}

std::vector<QualitativeForce> parse_forces(const json& doc) {
  require_object(doc, "forces");
  check_keys(doc, {"format", "forces"}, "forces");
  const std::string format = string_field(doc, "format", "forces");
  if (format != kForcesFormat) malformed("forces.format", "unsupported format '" + format + "'");
  const json& list = required(doc, "forces", "forces");
  if (!list.is_array()) malformed("forces.forces", "expected an array");
  std::vector<QualitativeForce> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    out.push_back(force_from_json(list[i], "forces[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<QualitativeForce> load_forces(const std::filesystem::path& path) {
  return parse_forces(read_json_file(path));
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) malformed(path.string(), "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    malformed(path.string(), std::string("invalid JSON: ") + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace qmotion
