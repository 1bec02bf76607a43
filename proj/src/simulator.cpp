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

#include "qmotion/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qmotion/errors.hpp"

namespace qmotion::sim {

Vec3 box_inertia(double mass, const Vec3& h) {
  const Vec3 s = (2.0 * h).cwiseAbs2();
  return mass / 12.0 * Vec3(s.y() + s.z(), s.x() + s.z(), s.x() + s.y());
}

std::size_t World::index_of(const ObjectId& id) const {
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    if (bodies[i].id == id) return i;
  }
  throw std::invalid_argument("no body named '" + id.value + "'");
}

Vec3 World::world_offset(std::size_t body, const Vec3& body_offset) const {
  return bodies[body].orientation * body_offset;
}

Vec3 World::linear_momentum() const {
  Vec3 p = Vec3::Zero();
  for (const auto& b : bodies) {
    if (!b.is_static) p += b.mass * b.velocity;
  }
  return p;
}

void validate(const World& world) {
  for (const auto& b : world.bodies) {
    if (b.is_static) continue;
    if (!(b.mass > 0.0)) throw std::invalid_argument("body '" + b.id.value + "': mass must be positive");
    if (!(b.inertia.minCoeff() > 0.0)) {
      throw std::invalid_argument("body '" + b.id.value + "': inertia must be positive");
    }
  }
  for (const auto& c : world.contacts) {
    if (c.a >= world.bodies.size() || c.b >= world.bodies.size() || c.a == c.b) {
      throw std::invalid_argument("contact refers to an invalid body pair");
    }
  }
}

namespace {

void apply_impulse(RigidBody& body, const Vec3& r, const Vec3& j) {
  if (body.is_static) return;
  body.velocity += j * body.inverse_mass();
  body.angular_velocity += body.inverse_inertia().cwiseProduct(r.cross(j));
}

struct ActiveContact {
  const ContactPoint* c;
  Vec3 r_a;
  Vec3 r_b;
  double inv_k;
  double bias;
  double lambda = 0.0;
};

double normal_mass(const RigidBody& a, const Vec3& r_a, const RigidBody& b, const Vec3& r_b,
                   const Vec3& n) {
  const Vec3 ca = r_a.cross(n);
  const Vec3 cb = r_b.cross(n);
  return a.inverse_mass() + b.inverse_mass() + ca.dot(a.inverse_inertia().cwiseProduct(ca)) +
         cb.dot(b.inverse_inertia().cwiseProduct(cb));
}

void check_bounds(const World& w) {
  for (const auto& b : w.bodies) {
    const double m = std::max({b.position.cwiseAbs().maxCoeff(), b.velocity.cwiseAbs().maxCoeff(),
                               b.angular_velocity.cwiseAbs().maxCoeff()});
    if (!std::isfinite(m) || m > w.blowup_bound) {
      throw NumericBlowup("body '" + b.id.value + "' left the numeric bound at step " +
                          std::to_string(w.step_index));
    }
  }
}

}  // namespace

World step(World w, double dt, std::span<const ImpulseEvent> impulses) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");

  std::vector<Vec3> v0, w0;
  for (const auto& b : w.bodies) {
    v0.push_back(b.velocity);
    w0.push_back(b.angular_velocity);
  }

  for (auto& b : w.bodies) {
    if (!b.is_static) b.velocity += w.gravity * dt;
  }
  for (const ImpulseEvent& e : impulses) {
    if (e.step != w.step_index) continue;
    RigidBody& b = w.bodies[w.index_of(e.body)];
    apply_impulse(b, e.application_point - b.position, e.impulse);
  }

  std::vector<ActiveContact> active;
  for (const ContactPoint& c : w.contacts) {
    const RigidBody& a = w.bodies[c.a];
    const RigidBody& b = w.bodies[c.b];
    const Vec3 r_a = w.world_offset(c.a, c.offset_a);
    const Vec3 r_b = w.world_offset(c.b, c.offset_b);
    const double gap = c.normal.dot(a.position + r_a - b.position - r_b);
    if (gap > w.contact_slop) continue;
    const double k = normal_mass(a, r_a, b, r_b, c.normal);
    if (k <= 0.0) continue;
    active.push_back({&c, r_a, r_b, 1.0 / k, gap < 0.0 ? -0.2 * gap / dt : 0.0});
  }

  for (std::size_t it = 0; it < w.solver_iterations; ++it) {
    for (ActiveContact& ac : active) {
      RigidBody& a = w.bodies[ac.c->a];
      RigidBody& b = w.bodies[ac.c->b];
      const Vec3& n = ac.c->normal;
      const double vn = n.dot(a.point_velocity(ac.r_a) - b.point_velocity(ac.r_b));
      const double next = std::max(0.0, ac.lambda + (ac.bias - vn) * ac.inv_k);
      const double d = next - ac.lambda;
      ac.lambda = next;
      apply_impulse(a, ac.r_a, d * n);
      apply_impulse(b, ac.r_b, -d * n);
    }
  }

  for (std::size_t i = 0; i < w.bodies.size(); ++i) {
    RigidBody& b = w.bodies[i];
    if (b.is_static) continue;
    const bool explicit_euler = w.integrator == Integrator::Explicit;
    const Vec3 v = explicit_euler ? v0[i] : b.velocity;
    const Vec3 om = explicit_euler ? w0[i] : b.angular_velocity;
    b.position += v * dt;
    const Eigen::Quaterniond spin(0.0, om.x(), om.y(), om.z());
    Eigen::Quaterniond q = b.orientation;
    q.coeffs() += 0.5 * dt * (spin * q).coeffs();
    b.orientation = q.normalized();
  }
  ++w.step_index;
  check_bounds(w);
  return w;
}

double max_speed(const World& world) {
  double m = 0.0;
  for (const auto& b : world.bodies) {
    if (b.is_static) continue;
    m = std::max({m, b.velocity.norm(), b.angular_velocity.norm()});
  }
  return m;
}

}  // namespace qmotion::sim
