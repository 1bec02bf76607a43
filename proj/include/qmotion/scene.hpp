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
#include <span>
#include <string>
#include <vector>

#include "qmotion/dynamics.hpp"

namespace qmotion {

struct SceneObject {
  ObjectId id;
  bool is_static = false;
  ObjectState before;
  ObjectState after;
  std::optional<Vec3> mass_center;

  StateChange observed() const { return observed_change(before, after); }
  bool moved() const { return !(before == after); }

  friend bool operator==(const SceneObject&, const SceneObject&) = default;
};

/// A contact point between a and b. The contact normal points from b into a.
struct Contact {
  std::string point_id;
  ObjectId a;
  ObjectId b;
  ContactGeometry geometry;
  std::optional<Vec3> point;

  friend bool operator==(const Contact& l, const Contact& r);
};

struct Scene {
  std::vector<SceneObject> objects;
  std::vector<Contact> contacts;
  bool gravity = true;

  const SceneObject* find(const ObjectId& id) const;
  friend bool operator==(const Scene&, const Scene&) = default;
};

/// Sorts objects by id and contacts by geometry, then numbers contacts
/// c0, c1, ... in that order. Validates ids and the static-object invariant.
Scene canonicalize(Scene scene);

enum class VertexFlag { ToCheck, Checked };

/// How a force entered an object's known set. Forces assigned while checking
/// the object itself are the resistant ones.
enum class ForceKind { Gravity, Action, Assigned, Reaction };

std::string to_string(ForceKind kind);

struct KnownForce {
  std::string var_id;
  QualitativeForce force;
  ForceKind kind;

  bool resistant() const { return kind == ForceKind::Assigned; }
  friend bool operator==(const KnownForce&, const KnownForce&) = default;
};

struct Vertex {
  ObjectId id;
  bool is_static = false;
  ObjectState label;
  VertexFlag flag = VertexFlag::ToCheck;
  std::vector<KnownForce> known;
  StateChange observed;
  ObjectState after;

  /// True if anything besides gravity is known to act on the object.
  bool has_nongravity_force() const;
};

/// A directed edge carrying the force on `to` at one contact point. Edges
/// 2k and 2k+1 belong to contact k; edge e pairs with e ^ 1.
struct Edge {
  std::size_t from;
  std::size_t to;
  std::size_t contact;
  std::optional<QualitativeForce> label;
  bool vanishing = false;
};

class StructureGraph {
 public:
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Contact> contacts;

  std::optional<std::size_t> find(const ObjectId& id) const;
  static constexpr std::size_t paired(std::size_t edge) { return edge ^ 1u; }

  /// Direction signs of the contact normal on the receiving object of `edge`.
  SignVec normal_on_target(std::size_t edge) const;
  /// Locus of `edge` on its receiving object.
  SignVec locus_on_target(std::size_t edge) const;
  /// Geometry of `edge` as seen from its receiving object.
  ContactGeometry geometry_on_target(std::size_t edge) const;
  /// Variable name of the force carried by `edge`.
  std::string var_id(std::size_t edge) const;

  /// Paired labels obey Rule 3 wherever both are set.
  bool rule3_consistent() const;
};

StructureGraph build_graph(std::vector<SceneObject> objects, std::vector<Contact> contacts,
                           bool include_gravity);
StructureGraph build_graph(const Scene& scene);

/// Marks both edges of every vanishing contact.
StructureGraph prune_vanishing(StructureGraph graph);

/// 26 nonzero directions x 27 loci for each movable object.
std::size_t count_candidate_actions(std::span<const SceneObject> objects);

}  // namespace qmotion
