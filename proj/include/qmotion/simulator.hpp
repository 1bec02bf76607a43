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
#include <span>
#include <string>
#include <vector>

#include <Eigen/Geometry>

#include "qmotion/dynamics.hpp"

namespace qmotion::sim {

/// An axis-aligned box. Inertia is the diagonal of the body-frame tensor and
/// is used unrotated in the world frame.
struct RigidBody {
  ObjectId id;
  bool is_static = false;
  double mass = 1.0;
  Vec3 inertia = Vec3::Ones();
  Vec3 half_extents = Vec3::Constant(0.5);
  Vec3 position = Vec3::Zero();
  Eigen::Quaterniond orientation = Eigen::Quaterniond::Identity();
  Vec3 velocity = Vec3::Zero();
  Vec3 angular_velocity = Vec3::Zero();

  double inverse_mass() const { return is_static ? 0.0 : 1.0 / mass; }
  Vec3 inverse_inertia() const {
    return is_static ? Vec3(Vec3::Zero()) : Vec3(inertia.cwiseInverse());
  }
  /// Velocity of the material point at world offset `r` from the mass centre.
  Vec3 point_velocity(const Vec3& r) const { return velocity + angular_velocity.cross(r); }
};

/// Solid box inertia about the mass centre.
Vec3 box_inertia(double mass, const Vec3& half_extents);

/// A unilateral contact between two bodies. Offsets are fixed in each body's
/// frame; the normal points from b into a.
struct ContactPoint {
  std::size_t a;
  std::size_t b;
  Vec3 offset_a;
  Vec3 offset_b;
  Vec3 normal;
};

struct ImpulseEvent {
  ObjectId body;
  /// World coordinates, on the body's boundary.
  Vec3 application_point;
  Vec3 impulse;
  std::size_t step = 0;
};

enum class Integrator { SemiImplicit, Explicit };

struct World {
  std::vector<RigidBody> bodies;
  std::vector<ContactPoint> contacts;
  Vec3 gravity{0.0, 0.0, -9.81};
  Integrator integrator = Integrator::SemiImplicit;
  std::size_t solver_iterations = 64;
  /// Contacts whose gap exceeds this are inactive.
  double contact_slop = 1e-3;
  double blowup_bound = 1e6;
  std::size_t step_index = 0;

  std::size_t index_of(const ObjectId& id) const;
  Vec3 world_offset(std::size_t body, const Vec3& body_offset) const;
  Vec3 linear_momentum() const;
};

/// Checks the body invariants. Throws std::invalid_argument.
void validate(const World& world);

/// Advances one step: gravity and due impulses change momenta, contact
/// impulses keep contacts from approaching, then positions integrate.
/// Throws NumericBlowup when a state component leaves the configured bound.
World step(World world, double dt, std::span<const ImpulseEvent> impulses = {});

/// Largest linear or angular speed over the movable bodies.
double max_speed(const World& world);

}  // namespace qmotion::sim
