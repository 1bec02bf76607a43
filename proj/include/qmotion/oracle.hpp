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
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qmotion/scene.hpp"
#include "qmotion/simulator.hpp"
#include "qmotion/solver.hpp"

namespace qmotion::oracle {

using Rng = std::mt19937_64;

/// One box of a single-column tower, listed bottom first. `offset` shifts
/// the box centre horizontally relative to the box below (or the origin).
struct BoxSpec {
  Vec3 half_extents = Vec3::Constant(0.5);
  double mass = 1.0;
  Eigen::Vector2d offset = Eigen::Vector2d::Zero();
};

struct StackSpec {
  std::vector<BoxSpec> boxes;
  bool gravity = true;

  /// Boxes named box0 (bottom) .. box<n-1> (top).
  static std::string box_name(std::size_t i) { return "box" + std::to_string(i); }
  /// Unit boxes of mass 1, centred on one another.
  static StackSpec uniform(std::size_t n);
};

/// A random tower where every sub-stack's mass centre lies over its support.
StackSpec random_stack(std::size_t n, Rng& rng);

/// Impulse request in stack terms: `box` is an index into the stack.
struct ImpulseSpec {
  std::size_t box = 0;
  Vec3 impulse = Vec3::Zero();
  /// World offset from the box centre; defaults to the boundary point on
  /// the ray opposite the impulse, so the push carries no torque.
  std::optional<Vec3> offset;
};

/// A horizontal push on a random box, or with `allow_lift` a push that may
/// also point upward.
ImpulseSpec random_impulse(const StackSpec& stack, Rng& rng, bool allow_lift = false);

/// Parses "x,y,z@target" where target is "top", "bottom" or a box index,
/// or the word "zero".
ImpulseSpec parse_impulse(const std::string& text, std::size_t stack_size);

struct GenerateConfig {
  double dt = 1e-3;
  std::size_t horizon = 5;
  std::size_t settle_steps = 200;
  /// Largest resting speed accepted after settling.
  double max_jitter = 1e-3;
  double min_epsilon = 1e-6;
  sim::Integrator integrator = sim::Integrator::SemiImplicit;
};

struct GeneratedScene {
  Scene scene;
  /// Q(impulse), absent for a zero impulse.
  std::optional<QualitativeAction> truth;
  double epsilon = 0.0;
  double jitter = 0.0;
  sim::World before;
  sim::World after;
};

/// Builds the tower on a static "ground", settles it, applies the impulse at
/// step 0, simulates to the horizon and quantizes both states.
/// Throws UnstableInitialStack if the settled tower still moves.
GeneratedScene generate_scene(const StackSpec& stack, const ImpulseSpec& impulse,
                              const GenerateConfig& cfg = {});

/// The numeric world of a stack at rest, with corner contacts.
sim::World build_world(const StackSpec& stack);

/// Every candidate action for which some assignment of all contact forces
/// satisfies every object's change and the contact rules. Resistance under
/// H1 follows the solver's checking order, replayed independently here.
std::set<QualitativeAction> enumerate_actions(const Scene& scene, const SolverConfig& cfg = {},
                                              std::size_t max_assignments = 1u << 16);

/// A numeric force applied at offset `r` from the mass centre.
struct NumericForce {
  Vec3 force;
  Vec3 offset;
};

/// Vector with uniform components in [-1, 1]; each is exactly 0 with
/// probability `zero_probability`.
Vec3 random_vector(Rng& rng, double zero_probability = 0.2);

std::vector<NumericForce> random_force_set(Rng& rng, std::size_t count);

}  // namespace qmotion::oracle
