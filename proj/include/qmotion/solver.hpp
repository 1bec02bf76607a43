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
#include <string_view>
#include <vector>

#include "qmotion/scene.hpp"

namespace qmotion {

struct HeuristicSet {
  /// H1: contact forces assigned while checking an object may cancel, but
  /// not overwhelm, the other forces on it.
  bool resistant_cancels_only = false;
  /// H2: the action acts on an object whose state changed.
  bool action_moves_object = false;

  static HeuristicSet none() { return {}; }
  static HeuristicSet h1() { return {true, false}; }
  static HeuristicSet h2() { return {false, true}; }
  static HeuristicSet both() { return {true, true}; }
  /// Accepts "none", "h1", "h2", "h1h2".
  static HeuristicSet parse(std::string_view name);
  std::string name() const;

  friend bool operator==(const HeuristicSet&, const HeuristicSet&) = default;
};

enum class VertexOrder { Canonical, PreferKnown };

struct SolverConfig {
  HeuristicSet heuristics = HeuristicSet::both();
  std::size_t subset_cap = kDefaultSubsetCap;
  /// Stops after this many solutions; completeness holds only without it.
  std::optional<std::size_t> max_solutions;
  VertexOrder vertex_order = VertexOrder::PreferKnown;
  /// Branch on one action per locus with every direction grouped together.
  bool group_action_directions = false;
  unsigned threads = 1;
};

/// A variable's value. Set-valued direction components denote a group of
/// individual assignments; a constraint holds if any member satisfies it.
struct GroupedAssignment {
  std::string var_id;
  QualitativeForce value;
  ForceKind kind;

  friend bool operator==(const GroupedAssignment&, const GroupedAssignment&) = default;
};

struct TraceTerm {
  std::string var_id;
  SignVec qd;
  SignVec qr;
  bool resistant = false;

  friend bool operator==(const TraceTerm&, const TraceTerm&) = default;
};

/// Why an object's observed change is entailed: the subset of its forces
/// (with the member of each group that was used), their combined signs and
/// the matching element of the envelope.
struct ObjectTrace {
  ObjectId object;
  StateChange observed;
  std::vector<TraceTerm> terms;
  SignVec linear;
  SignVec angular;
  StateChange matched;

  friend bool operator==(const ObjectTrace&, const ObjectTrace&) = default;
};

struct Solution {
  QualitativeAction action;
  std::vector<GroupedAssignment> assignments;
  std::vector<ObjectTrace> trace;
  bool resistant_semantics = false;

  const GroupedAssignment* find(std::string_view var_id) const;
  friend bool operator==(const Solution&, const Solution&) = default;
};

inline constexpr std::string_view kActionVar = "action";

struct SearchNode {
  StructureGraph graph;
  std::optional<QualitativeAction> action;
  std::vector<ObjectTrace> trace;
};

/// Builds and prunes the structure graph, then emits one child per
/// candidate action, ordered by (object, qr, qd).
std::vector<SearchNode> branch_root(const Scene& scene, const SolverConfig& cfg);

/// Checks `vertex`: assigns its unlabeled incoming contact variables so that
/// the object's change is entailed, labels the paired edges by Rule 3 and
/// hands the reactions to the neighbours. One child per valid assignment.
std::vector<SearchNode> branch_intermediate(const SearchNode& node, std::size_t vertex,
                                            const SolverConfig& cfg);

/// Next vertex to check, or nullopt when every movable vertex is checked.
std::optional<std::size_t> select_vertex(const SearchNode& node,
                                         VertexOrder order = VertexOrder::PreferKnown);

std::vector<Solution> solve(const Scene& scene, const SolverConfig& cfg = {});

/// Re-checks every constraint of a solution against the scene from scratch.
bool validate_solution(const Scene& scene, const Solution& sol);

std::vector<QualitativeAction> distinct_actions(std::span<const Solution> solutions);

}  // namespace qmotion
