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

#include <memory>

#include "qmotion/errors.hpp"
#include "qmotion/oracle.hpp"

namespace qmotion::oracle {

namespace {

enum class Side { A, B };

struct LiveContact {
  std::size_t k;
  std::size_t a;
  std::size_t b;
};

// Which side of each live contact is assigned (the other receives the
// reaction), replaying the vertex selection of the search.
std::vector<Side> assigned_sides(const Scene& scene, const std::vector<LiveContact>& live,
                                 std::size_t action_object, VertexOrder order) {
  const std::size_t n = scene.objects.size();
  std::vector<bool> checked(n, false);
  std::vector<bool> pushed(n, false);
  std::vector<std::optional<Side>> side(live.size());
  pushed[action_object] = true;
  while (true) {
    std::optional<std::size_t> v;
    for (std::size_t i = 0; i < n && !v; ++i) {
      if (scene.objects[i].is_static || checked[i]) continue;
      if (order == VertexOrder::Canonical || pushed[i]) v = i;
    }
    for (std::size_t i = 0; i < n && !v; ++i) {
      if (!scene.objects[i].is_static && !checked[i]) v = i;
    }
    if (!v) break;
    for (std::size_t j = 0; j < live.size(); ++j) {
      if (side[j]) continue;
      const LiveContact& c = live[j];
      if (c.a != *v && c.b != *v) continue;
      const std::size_t other = c.a == *v ? c.b : c.a;
      if (checked[other]) continue;
      side[j] = c.a == *v ? Side::A : Side::B;
      pushed[other] = true;
    }
    checked[*v] = true;
  }
  std::vector<Side> out;
  for (const auto& s : side) out.push_back(s.value_or(Side::A));
  return out;
}

bool satisfiable(const Scene& scene, const std::vector<LiveContact>& live,
                 const std::vector<Side>& sides, const std::vector<std::vector<SignVec>>& groups,
                 const QualitativeAction& action, std::size_t action_object,
                 const SolverConfig& cfg, std::size_t max_assignments) {
  const std::size_t n = scene.objects.size();
  const bool h1 = cfg.heuristics.resistant_cancels_only;

  std::size_t total = 1;
  for (const auto& g : groups) {
    total *= g.size();
    if (total > max_assignments) throw CapExceeded("scene", total, max_assignments);
  }

  std::vector<std::size_t> choice(live.size(), 0);
  for (std::size_t combo = 0; combo < total; ++combo) {
    std::vector<std::vector<QualitativeForce>> forces(n);
    std::vector<std::vector<char>> resistant(n);
    auto add = [&](std::size_t obj, const QualitativeForce& f, bool r) {
      if (scene.objects[obj].is_static) return;
      forces[obj].push_back(f);
      resistant[obj].push_back(r);
    };
    for (std::size_t i = 0; i < n; ++i) {
      if (scene.gravity) add(i, QualitativeForce::gravity(scene.objects[i].id), false);
    }
    add(action_object, action.force(), false);
    for (std::size_t j = 0; j < live.size(); ++j) {
      const Contact& c = scene.contacts[live[j].k];
      const SignVec chosen = groups[j][choice[j]];
      const SignVec on_a = sides[j] == Side::A ? chosen : inverse(chosen);
      add(live[j].a, {on_a, c.geometry.qr_on_a, c.a}, sides[j] == Side::A);
      add(live[j].b, {inverse(on_a), c.geometry.qr_on_b, c.b}, sides[j] == Side::B);
    }

    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (scene.objects[i].is_static) continue;
      std::unique_ptr<bool[]> flags(new bool[resistant[i].size()]);
      for (std::size_t f = 0; f < resistant[i].size(); ++f) flags[f] = resistant[i][f] != 0;
      const std::span<const bool> span =
          h1 ? std::span<const bool>(flags.get(), resistant[i].size()) : std::span<const bool>();
      ok = explain_change(scene.objects[i].observed(), forces[i], span, cfg.subset_cap).has_value();
    }
    if (ok) return true;

    for (std::size_t j = live.size(); j-- > 0;) {
      if (++choice[j] < groups[j].size()) break;
      choice[j] = 0;
    }
  }
  return false;
}

}  // namespace

std::set<QualitativeAction> enumerate_actions(const Scene& input, const SolverConfig& cfg,
                                              std::size_t max_assignments) {
  const Scene scene = canonicalize(input);
  auto index = [&](const ObjectId& id) {
    for (std::size_t i = 0; i < scene.objects.size(); ++i) {
      if (scene.objects[i].id == id) return i;
    }
    throw std::logic_error("canonical scene lost an object");
  };

  std::vector<LiveContact> live;
  for (std::size_t k = 0; k < scene.contacts.size(); ++k) {
    const Contact& c = scene.contacts[k];
    const std::size_t a = index(c.a);
    const std::size_t b = index(c.b);
    if (scene.objects[a].is_static && scene.objects[b].is_static) continue;
    if (is_vanishing_point(scene.objects[a].before, scene.objects[b].before, c.geometry)) continue;
    live.push_back({k, a, b});
  }

  std::set<QualitativeAction> out;
  for (std::size_t i = 0; i < scene.objects.size(); ++i) {
    const SceneObject& o = scene.objects[i];
    if (o.is_static) continue;
    if (cfg.heuristics.action_moves_object && o.observed().is_zero()) continue;

    const std::vector<Side> sides = assigned_sides(scene, live, i, cfg.vertex_order);
    std::vector<std::vector<SignVec>> groups;
    for (std::size_t j = 0; j < live.size(); ++j) {
      const SignVec& n = scene.contacts[live[j].k].geometry.normal_q;
      groups.push_back(rule2_direction_groups(sides[j] == Side::A ? n : inverse(n)));
    }

    for (std::size_t r = 0; r < kDefiniteVectors; ++r) {
      for (std::size_t d = 0; d < kDefiniteVectors; ++d) {
        const SignVec qd = SignVec::from_index(d);
        if (qd.is_zero()) continue;
        const QualitativeAction action({qd, SignVec::from_index(r), o.id});
        if (satisfiable(scene, live, sides, groups, action, i, cfg, max_assignments)) {
          out.insert(action);
        }
      }
    }
  }
  return out;
}

}  // namespace qmotion::oracle
