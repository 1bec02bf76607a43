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

#include "qmotion/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "qmotion/scene_io.hpp"

namespace qmotion {

using nlohmann::json;

namespace {

json change_to_json(const StateChange& c) { return {{"dqv", to_json(c.dqv)}, {"dqw", to_json(c.dqw)}}; }

StateChange change_from_json(const json& j, const std::string& field) {
  return {sign_vec_from_json(j.at("dqv"), field + ".dqv"),
          sign_vec_from_json(j.at("dqw"), field + ".dqw")};
}

ForceKind kind_from_string(const std::string& s) {
  for (ForceKind k : {ForceKind::Gravity, ForceKind::Action, ForceKind::Assigned, ForceKind::Reaction}) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown force kind '" + s + "'");
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string term_text(const TraceTerm& t) {
  return t.var_id + " " + to_string(t.qd) + "@" + to_string(t.qr) + (t.resistant ? " [resistant]" : "");
}

}  // namespace

json solution_to_json(const Solution& s) {
  json assignments = json::array();
  for (const auto& a : s.assignments) {
    assignments.push_back({{"var", a.var_id},
                           {"object", a.value.object.value},
                           {"qd", to_json(a.value.qd)},
                           {"qr", to_json(a.value.qr)},
                           {"kind", to_string(a.kind)}});
  }
  json trace = json::array();
  for (const auto& t : s.trace) {
    json terms = json::array();
    for (const auto& term : t.terms) {
      terms.push_back({{"var", term.var_id},
                       {"qd", to_json(term.qd)},
                       {"qr", to_json(term.qr)},
                       {"resistant", term.resistant}});
    }
    trace.push_back({{"object", t.object.value},
                     {"observed", change_to_json(t.observed)},
                     {"terms", std::move(terms)},
                     {"linear", to_json(t.linear)},
                     {"angular", to_json(t.angular)},
                     {"matched", change_to_json(t.matched)}});
  }
  return {{"action", action_to_json(s.action)},
          {"description", describe(s.action)},
          {"resistant_semantics", s.resistant_semantics},
          {"assignments", std::move(assignments)},
          {"trace", std::move(trace)}};
}

Solution solution_from_json(const json& j) {
  Solution s{action_from_json(j.at("action"), "action"), {}, {}, j.at("resistant_semantics").get<bool>()};
  for (const auto& a : j.at("assignments")) {
    const std::string var = a.at("var").get<std::string>();
    s.assignments.push_back({var,
                             {sign_vec_from_json(a.at("qd"), var + ".qd"),
                              sign_vec_from_json(a.at("qr"), var + ".qr"),
                              ObjectId{a.at("object").get<std::string>()}},
                             kind_from_string(a.at("kind").get<std::string>())});
  }
  for (const auto& t : j.at("trace")) {
    ObjectTrace trace;
    trace.object = ObjectId{t.at("object").get<std::string>()};
    trace.observed = change_from_json(t.at("observed"), "observed");
    for (const auto& term : t.at("terms")) {
      trace.terms.push_back({term.at("var").get<std::string>(),
                             sign_vec_from_json(term.at("qd"), "qd"),
                             sign_vec_from_json(term.at("qr"), "qr"),
                             term.at("resistant").get<bool>()});
    }
    trace.linear = sign_vec_from_json(t.at("linear"), "linear");
    trace.angular = sign_vec_from_json(t.at("angular"), "angular");
    trace.matched = change_from_json(t.at("matched"), "matched");
    s.trace.push_back(std::move(trace));
  }
  return s;
}

json report_to_json(const RunReport& r) {
  json config = {{"heuristics", r.config.heuristics},
                 {"cap", r.config.cap},
                 {"max_solutions", r.config.max_solutions ? json(*r.config.max_solutions) : json(nullptr)},
                 {"epsilon", r.config.epsilon}};
  json solutions = json::array();
  for (const auto& s : r.solutions) solutions.push_back(solution_to_json(s));
  json envelopes = json::array();
  for (const auto& e : r.envelopes) {
    json changes = json::array();
    for (const auto& c : e.changes) changes.push_back(change_to_json(c));
    envelopes.push_back({{"object", e.object.value}, {"forces", e.forces}, {"changes", std::move(changes)}});
  }
  json out = {{"command", r.command},
              {"scene_digest", r.scene_digest},
              {"config", std::move(config)},
              {"solution_count", r.solutions.size()},
              {"solutions", std::move(solutions)},
              {"wall_time_s", r.wall_time_s}};
  if (!r.envelopes.empty()) out["envelopes"] = std::move(envelopes);
  if (r.error) out["error"] = *r.error;
  return out;
}

RunReport report_from_json(const json& j) {
  RunReport r;
  r.command = j.at("command").get<std::string>();
  r.scene_digest = j.at("scene_digest").get<std::string>();
  const json& c = j.at("config");
  r.config.heuristics = c.at("heuristics").get<std::string>();
  r.config.cap = c.at("cap").get<std::size_t>();
  if (!c.at("max_solutions").is_null()) r.config.max_solutions = c.at("max_solutions").get<std::size_t>();
  r.config.epsilon = c.at("epsilon").get<double>();
  for (const auto& s : j.at("solutions")) r.solutions.push_back(solution_from_json(s));
  if (j.contains("envelopes")) {
    for (const auto& e : j.at("envelopes")) {
      ObjectEnvelope env{ObjectId{e.at("object").get<std::string>()}, e.at("forces").get<std::size_t>(), {}};
      for (const auto& ch : e.at("changes")) env.changes.push_back(change_from_json(ch, "change"));
      r.envelopes.push_back(std::move(env));
    }
  }
  if (j.contains("error")) r.error = j.at("error").get<std::string>();
  r.wall_time_s = j.at("wall_time_s").get<double>();
  return r;
}

std::string describe(const QualitativeAction& a) {
  return "push object " + a.object().value + " in direction " + to_string(a.qd()) + " at locus " +
         to_string(a.qr());
}

std::string explain(const Solution& s) {
  std::ostringstream out;
  std::size_t width = 0;
  for (const auto& t : s.trace) width = std::max(width, t.object.value.size());
  for (const auto& t : s.trace) {
    out << "  " << pad(t.object.value, width) << "  observed " << to_string(t.observed) << "\n";
    const std::string indent(width + 4, ' ');
    out << indent << "D = {";
    for (std::size_t i = 0; i < t.terms.size(); ++i) out << (i ? ", " : " ") << term_text(t.terms[i]);
    out << (t.terms.empty() ? "}" : " }") << "\n";
    out << indent << "-> net linear " << to_string(t.linear) << " angular " << to_string(t.angular)
        << "\n";
    out << indent << "-> entails " << to_string(t.matched) << "\n";
  }
  return out.str();
}

std::string render_text(const RunReport& r) {
  std::ostringstream out;
  out << "command    " << r.command << "\n";
  out << "scene      " << r.scene_digest << "\n";
  out << "heuristics " << r.config.heuristics << "\n";
  out << "cap        " << r.config.cap << "\n";
  out << "max-sol    " << (r.config.max_solutions ? std::to_string(*r.config.max_solutions) : "none") << "\n";
  out << "epsilon    " << r.config.epsilon << "\n";
  out << "solutions  " << r.solutions.size() << "\n";
  out << "actions    " << r.actions().size() << "\n";
  out << "wall time  " << std::fixed << std::setprecision(3) << r.wall_time_s << " s\n";
  out.unsetf(std::ios::floatfield);
  if (r.error) out << "error      " << *r.error << "\n";

  for (const auto& e : r.envelopes) {
    out << "\nenvelope of " << e.object.value << " (" << e.forces << " forces, " << e.changes.size()
        << " changes)\n";
    for (const auto& c : e.changes) out << "  " << to_string(c) << "\n";
  }

  for (std::size_t i = 0; i < r.solutions.size(); ++i) {
    const Solution& s = r.solutions[i];
    out << "\n[" << i + 1 << "] " << describe(s.action) << "\n";
    out << explain(s);
    std::size_t width = 0;
    for (const auto& a : s.assignments) width = std::max(width, a.var_id.size());
    out << "  assignments\n";
    for (const auto& a : s.assignments) {
      out << "    " << pad(a.var_id, width) << "  " << pad(to_string(a.value.qd), 15) << " at "
          << pad(to_string(a.value.qr), 15) << " " << to_string(a.kind) << "\n";
    }
  }
  return out.str();
}

}  // namespace qmotion
