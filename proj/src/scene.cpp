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

#include "qmotion/scene.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "qmotion/errors.hpp"

namespace qmotion {

namespace {

auto point_key(const std::optional<Vec3>& p) {
  return p ? std::make_tuple(1, p->x(), p->y(), p->z()) : std::make_tuple(0, 0.0, 0.0, 0.0);
}

auto contact_key(const Contact& c) {
  return std::make_tuple(c.a, c.b, c.geometry.qr_on_a, c.geometry.qr_on_b, c.geometry.normal_q,
                         point_key(c.point));
}

}  // namespace

bool operator==(const Contact& l, const Contact& r) {
  auto normal_eq = [](const std::optional<Vec3>& x, const std::optional<Vec3>& y) {
    return x.has_value() == y.has_value() && (!x || *x == *y);
  };
  return l.point_id == r.point_id && l.a == r.a && l.b == r.b &&
         l.geometry.normal_q == r.geometry.normal_q &&
         l.geometry.qr_on_a == r.geometry.qr_on_a && l.geometry.qr_on_b == r.geometry.qr_on_b &&
         normal_eq(l.geometry.numeric_normal, r.geometry.numeric_normal) &&
         normal_eq(l.point, r.point);
}

const SceneObject* Scene::find(const ObjectId& id) const {
  auto it = std::find_if(objects.begin(), objects.end(),
                         [&](const SceneObject& o) { return o.id == id; });
  return it == objects.end() ? nullptr : &*it;
}

Scene canonicalize(Scene scene) {
  std::set<ObjectId> ids;
  for (std::size_t i = 0; i < scene.objects.size(); ++i) {
    const SceneObject& o = scene.objects[i];
    const std::string field = "objects[" + std::to_string(i) + "]";
    if (o.id.value.empty()) {
      throw InvalidScene(InvalidScene::Kind::Malformed, field + ".id", "empty object id");
    }
    if (!ids.insert(o.id).second) {
      throw InvalidScene(InvalidScene::Kind::DuplicateId, field + ".id",
                         "duplicate object id '" + o.id.value + "'");
    }
    if (o.is_static && !(o.before.at_rest() && o.after.at_rest())) {
      throw InvalidScene(InvalidScene::Kind::Malformed, field,
                         "static object '" + o.id.value + "' must be at rest");
    }
  }
  for (std::size_t k = 0; k < scene.contacts.size(); ++k) {
    const Contact& c = scene.contacts[k];
    const std::string field = "contacts[" + std::to_string(k) + "]";
    if (!ids.contains(c.a)) {
      throw InvalidScene(InvalidScene::Kind::UnknownObject, field + ".a",
                         "unknown object '" + c.a.value + "'");
    }
    if (!ids.contains(c.b)) {
      throw InvalidScene(InvalidScene::Kind::UnknownObject, field + ".b",
                         "unknown object '" + c.b.value + "'");
    }
    if (c.a == c.b) {
      throw InvalidScene(InvalidScene::Kind::Malformed, field, "contact of an object with itself");
    }
  }

  std::sort(scene.objects.begin(), scene.objects.end(),
            [](const SceneObject& l, const SceneObject& r) { return l.id < r.id; });
  std::stable_sort(scene.contacts.begin(), scene.contacts.end(),
                   [](const Contact& l, const Contact& r) {
                     return contact_key(l) < contact_key(r);
                   });
  for (std::size_t k = 0; k < scene.contacts.size(); ++k) {
    scene.contacts[k].point_id = "c" + std::to_string(k);
  }
  return scene;
}

std::string to_string(ForceKind kind) {
  switch (kind) {
    case ForceKind::Gravity:
      return "gravity";
    case ForceKind::Action:
      return "action";
    case ForceKind::Assigned:
      return "assigned";
    case ForceKind::Reaction:
      return "reaction";
  }
  return "unknown";
}

bool Vertex::has_nongravity_force() const {
  return std::any_of(known.begin(), known.end(),
                     [](const KnownForce& f) { return f.kind != ForceKind::Gravity; });
}

std::optional<std::size_t> StructureGraph::find(const ObjectId& id) const {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].id == id) return i;
  }
  return std::nullopt;
}

SignVec StructureGraph::normal_on_target(std::size_t edge) const {
  const Edge& e = edges[edge];
  const Contact& c = contacts[e.contact];
  return vertices[e.to].id == c.a ? c.geometry.normal_q : inverse(c.geometry.normal_q);
}

SignVec StructureGraph::locus_on_target(std::size_t edge) const {
  const Edge& e = edges[edge];
  const Contact& c = contacts[e.contact];
  return vertices[e.to].id == c.a ? c.geometry.qr_on_a : c.geometry.qr_on_b;
}

ContactGeometry StructureGraph::geometry_on_target(std::size_t edge) const {
  const Edge& e = edges[edge];
  const ContactGeometry& g = contacts[e.contact].geometry;
  if (vertices[e.to].id == contacts[e.contact].a) return g;
  ContactGeometry flipped;
  flipped.normal_q = inverse(g.normal_q);
  if (g.numeric_normal) flipped.numeric_normal = -*g.numeric_normal;
  flipped.qr_on_a = g.qr_on_b;
  flipped.qr_on_b = g.qr_on_a;
  return flipped;
}

std::string StructureGraph::var_id(std::size_t edge) const {
  const Edge& e = edges[edge];
  return contacts[e.contact].point_id + "@" + vertices[e.to].id.value;
}

bool StructureGraph::rule3_consistent() const {
  for (std::size_t e = 0; e + 1 < edges.size(); e += 2) {
    const auto& l = edges[e].label;
    const auto& r = edges[e + 1].label;
    if (l && r && l->qd != third_law_pair(r->qd)) return false;
  }
  return true;
}

StructureGraph build_graph(std::vector<SceneObject> objects, std::vector<Contact> contacts,
                           bool include_gravity) {
  Scene scene{std::move(objects), std::move(contacts), include_gravity};
  return build_graph(scene);
}

StructureGraph build_graph(const Scene& input) {
  const Scene scene = canonicalize(input);
  StructureGraph g;
  for (const SceneObject& o : scene.objects) {
    Vertex v;
    v.id = o.id;
    v.is_static = o.is_static;
    v.label = o.before;
    v.after = o.after;
    v.observed = o.observed();
    if (scene.gravity && !o.is_static) {
      v.known.push_back({"g@" + o.id.value, QualitativeForce::gravity(o.id), ForceKind::Gravity});
    }
    g.vertices.push_back(std::move(v));
  }
  g.contacts = scene.contacts;
  for (std::size_t k = 0; k < g.contacts.size(); ++k) {
    const std::size_t a = *g.find(g.contacts[k].a);
    const std::size_t b = *g.find(g.contacts[k].b);
    g.edges.push_back({a, b, k, std::nullopt, false});
    g.edges.push_back({b, a, k, std::nullopt, false});
  }
  return g;
}

StructureGraph prune_vanishing(StructureGraph graph) {
  for (std::size_t e = 0; e + 1 < graph.edges.size(); e += 2) {
    // Edge e + 1 runs b -> a and carries the force on a.
    const Edge& onto_a = graph.edges[e + 1];
    const Contact& c = graph.contacts[onto_a.contact];
    const bool vanishing =
        is_vanishing_point(graph.vertices[onto_a.to].label, graph.vertices[onto_a.from].label,
                           c.geometry);
    graph.edges[e].vanishing = vanishing;
    graph.edges[e + 1].vanishing = vanishing;
  }
  return graph;
}

std::size_t count_candidate_actions(std::span<const SceneObject> objects) {
  const auto movable = std::count_if(objects.begin(), objects.end(),
                                     [](const SceneObject& o) { return !o.is_static; });
  return 26 * 27 * static_cast<std::size_t>(movable);
}

}  // namespace qmotion
