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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qmotion/errors.hpp"
#include "qmotion/oracle.hpp"

namespace qmotion::oracle {

namespace {

constexpr double kGroundHalfWidth = 50.0;
constexpr double kGroundHalfHeight = 0.5;
constexpr double kStabilityMargin = 0.05;

struct Footprint {
  double x0, x1, y0, y1;
};

Footprint footprint(const Eigen::Vector2d& c, const Vec3& h) {
  return {c.x() - h.x(), c.x() + h.x(), c.y() - h.y(), c.y() + h.y()};
}

Footprint overlap(const Footprint& l, const Footprint& r) {
  return {std::max(l.x0, r.x0), std::min(l.x1, r.x1), std::max(l.y0, r.y0), std::min(l.y1, r.y1)};
}

std::vector<Eigen::Vector2d> centres(const StackSpec& stack) {
  std::vector<Eigen::Vector2d> out;
  Eigen::Vector2d c = Eigen::Vector2d::Zero();
  for (const BoxSpec& b : stack.boxes) {
    c += b.offset;
    out.push_back(c);
  }
  return out;
}

bool is_stable(const StackSpec& stack) {
  const auto c = centres(stack);
  for (std::size_t i = 1; i < stack.boxes.size(); ++i) {
    const Footprint f = overlap(footprint(c[i - 1], stack.boxes[i - 1].half_extents),
                                footprint(c[i], stack.boxes[i].half_extents));
    if (f.x1 - f.x0 < 2 * kStabilityMargin || f.y1 - f.y0 < 2 * kStabilityMargin) return false;
    Eigen::Vector2d com = Eigen::Vector2d::Zero();
    double mass = 0.0;
    for (std::size_t j = i; j < stack.boxes.size(); ++j) {
      com += stack.boxes[j].mass * c[j];
      mass += stack.boxes[j].mass;
    }
    com /= mass;
    if (com.x() < f.x0 + kStabilityMargin || com.x() > f.x1 - kStabilityMargin ||
        com.y() < f.y0 + kStabilityMargin || com.y() > f.y1 - kStabilityMargin) {
      return false;
    }
  }
  return true;
}

Vec3 default_offset(const Vec3& h, const Vec3& j) {
  double t = std::numeric_limits<double>::infinity();
  const Vec3 d = j.normalized();
  for (int i = 0; i < 3; ++i) {
    if (d[i] != 0.0) t = std::min(t, h[i] / std::abs(d[i]));
  }
  Vec3 r = -t * d;
  // Snap components that rounding moved off the face.
  for (int i = 0; i < 3; ++i) {
    if (d[i] == 0.0) r[i] = 0.0;
  }
  return r;
}

ObjectState quantized_state(const sim::RigidBody& b, double eps) {
  return {quantize(b.velocity, {eps}), quantize(b.angular_velocity, {eps})};
}

double trailing_jitter(sim::World& world, std::size_t steps, double dt) {
  double jitter = 0.0;
  for (std::size_t s = 0; s < steps; ++s) {
    world = sim::step(std::move(world), dt);
    if (2 * s >= steps) jitter = std::max(jitter, sim::max_speed(world));
  }
  return jitter;
}

}  // namespace

StackSpec StackSpec::uniform(std::size_t n) {
  StackSpec s;
  s.boxes.assign(n, BoxSpec{});
  return s;
}

StackSpec random_stack(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> extent(0.3, 0.6);
  std::uniform_real_distribution<double> mass(0.5, 2.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  StackSpec s;
  for (std::size_t i = 0; i < n; ++i) {
    BoxSpec b;
    b.half_extents = Vec3(extent(rng), extent(rng), extent(rng));
    b.mass = mass(rng);
    s.boxes.push_back(b);
  }
  for (int attempt = 0; attempt < 200; ++attempt) {
    for (std::size_t i = 1; i < n; ++i) {
      const double reach = 0.3 * std::min(s.boxes[i].half_extents.head<2>().minCoeff(),
                                          s.boxes[i - 1].half_extents.head<2>().minCoeff());
      s.boxes[i].offset = Eigen::Vector2d(reach * unit(rng), reach * unit(rng));
    }
    if (is_stable(s)) return s;
  }
  for (auto& b : s.boxes) b.offset.setZero();
  return s;
}

ImpulseSpec random_impulse(const StackSpec& stack, Rng& rng, bool allow_lift) {
  if (stack.boxes.empty()) throw std::invalid_argument("random_impulse needs a nonempty stack");
  std::uniform_int_distribution<std::size_t> pick(0, stack.boxes.size() - 1);
  std::uniform_real_distribution<double> scale(1.0, 3.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::bernoulli_distribution compass(0.5);
  ImpulseSpec spec;
  spec.box = pick(rng);
  double theta = angle(rng);
  if (compass(rng)) theta = std::round(theta / (std::numbers::pi / 4)) * (std::numbers::pi / 4);
  Vec3 d(std::cos(theta), std::sin(theta), 0.0);
  for (int i = 0; i < 2; ++i) {
    if (std::abs(d[i]) < 1e-9) d[i] = 0.0;
  }
  if (allow_lift) {
    std::uniform_real_distribution<double> lift(0.5, 1.5);
    d.z() = lift(rng);
  }
  spec.impulse = scale(rng) * stack.boxes[spec.box].mass * d.normalized();
  return spec;
}

ImpulseSpec parse_impulse(const std::string& text, std::size_t stack_size) {
  if (stack_size == 0) throw std::invalid_argument("empty stack");
  ImpulseSpec spec;
  spec.box = stack_size - 1;
  if (text == "zero") return spec;
  const auto at = text.find('@');
  const std::string vec = text.substr(0, at);
  const std::string target = at == std::string::npos ? "top" : text.substr(at + 1);

  std::stringstream ss(vec);
  std::string part;
  int i = 0;
  while (std::getline(ss, part, ',')) {
    if (i >= 3) throw std::invalid_argument("impulse needs three components: '" + text + "'");
    std::size_t used = 0;
    try {
      spec.impulse[i] = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size()) {
      throw std::invalid_argument("bad impulse component '" + part + "'");
    }
    ++i;
  }
  if (i != 3) throw std::invalid_argument("impulse needs three components: '" + text + "'");

  if (target == "top") {
    spec.box = stack_size - 1;
  } else if (target == "bottom") {
    spec.box = 0;
  } else {
    std::string digits = target.starts_with("box") ? target.substr(3) : target;
    std::size_t index = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size() ||
        index >= stack_size) {
      throw std::invalid_argument("bad impulse target '" + target + "'");
    }
    spec.box = index;
  }
  return spec;
}

sim::World build_world(const StackSpec& stack) {
  sim::World w;
  sim::RigidBody ground;
  ground.id = ObjectId{"ground"};
  ground.is_static = true;
  ground.half_extents = Vec3(kGroundHalfWidth, kGroundHalfWidth, kGroundHalfHeight);
  ground.position = Vec3(0.0, 0.0, -kGroundHalfHeight);
  w.bodies.push_back(ground);
  if (!stack.gravity) w.gravity.setZero();

  const auto c = centres(stack);
  double floor = 0.0;
  for (std::size_t i = 0; i < stack.boxes.size(); ++i) {
    const BoxSpec& spec = stack.boxes[i];
    sim::RigidBody b;
    b.id = ObjectId{StackSpec::box_name(i)};
    b.mass = spec.mass;
    b.half_extents = spec.half_extents;
    b.inertia = sim::box_inertia(spec.mass, spec.half_extents);
    b.position = Vec3(c[i].x(), c[i].y(), floor + spec.half_extents.z());
    w.bodies.push_back(b);

    const std::size_t below = i;  // ground is body 0, box j is body j + 1
    const sim::RigidBody& lower = w.bodies[below];
    const sim::RigidBody& upper = w.bodies.back();
    const Footprint f =
        overlap(footprint(lower.position.head<2>(), lower.half_extents),
                footprint(upper.position.head<2>(), upper.half_extents));
    for (double x : {f.x0, f.x1}) {
      for (double y : {f.y0, f.y1}) {
        const Vec3 p(x, y, floor);
        w.contacts.push_back({i + 1, below, p - upper.position, p - lower.position, Vec3::UnitZ()});
      }
    }
    floor += 2.0 * spec.half_extents.z();
  }
  sim::validate(w);
  return w;
}

GeneratedScene generate_scene(const StackSpec& stack, const ImpulseSpec& impulse,
                              const GenerateConfig& cfg) {
  if (stack.boxes.empty()) throw std::invalid_argument("stack has no boxes");
  if (impulse.box >= stack.boxes.size()) throw std::invalid_argument("impulse target out of range");

  sim::World world = build_world(stack);
  world.integrator = cfg.integrator;
  const double jitter = trailing_jitter(world, cfg.settle_steps, cfg.dt);
  if (jitter > cfg.max_jitter) {
    std::ostringstream msg;
    msg << "stack still moves after " << cfg.settle_steps << " settling steps (max speed "
        << jitter << " > " << cfg.max_jitter << ")";
    throw UnstableInitialStack(msg.str(), jitter);
  }
  const double eps = std::max(cfg.min_epsilon, 10.0 * jitter);
  for (auto& b : world.bodies) {
    b.velocity.setZero();
    b.angular_velocity.setZero();
  }
  world.step_index = 0;

  GeneratedScene out;
  out.epsilon = eps;
  out.jitter = jitter;
  out.before = world;

  std::vector<sim::ImpulseEvent> events;
  const std::size_t target = impulse.box + 1;
  const sim::RigidBody& pushed = world.bodies[target];
  if (!impulse.impulse.isZero(0.0)) {
    const Vec3 r = impulse.offset.value_or(default_offset(pushed.half_extents, impulse.impulse));
    events.push_back({pushed.id, pushed.position + r, impulse.impulse, 0});
    out.truth = QualitativeAction({quantize(impulse.impulse, {eps}), quantize(r, {eps}), pushed.id});
  }
  for (std::size_t s = 0; s < cfg.horizon; ++s) world = sim::step(std::move(world), cfg.dt, events);
  out.after = world;

  Scene& scene = out.scene;
  scene.gravity = stack.gravity;
  for (std::size_t i = 0; i < world.bodies.size(); ++i) {
    const sim::RigidBody& b0 = out.before.bodies[i];
    SceneObject o;
    o.id = b0.id;
    o.is_static = b0.is_static;
    o.before = quantized_state(b0, eps);
    o.after = quantized_state(world.bodies[i], eps);
    o.mass_center = b0.position;
    scene.objects.push_back(o);
  }
  for (const sim::ContactPoint& c : out.before.contacts) {
    const Vec3 r_a = out.before.world_offset(c.a, c.offset_a);
    const Vec3 p = out.before.bodies[c.a].position + r_a;
    Contact k;
    k.a = out.before.bodies[c.a].id;
    k.b = out.before.bodies[c.b].id;
    k.geometry.normal_q = quantize(c.normal, {eps});
    k.geometry.numeric_normal = c.normal;
    k.geometry.qr_on_a = quantize(r_a, {eps});
    k.geometry.qr_on_b = quantize(p - out.before.bodies[c.b].position, {eps});
    k.point = p;
    scene.contacts.push_back(k);
  }
  scene = canonicalize(std::move(scene));
  return out;
}

Vec3 random_vector(Rng& rng, double zero_probability) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::bernoulli_distribution zero(zero_probability);
  Vec3 v;
  for (int i = 0; i < 3; ++i) v[i] = zero(rng) ? 0.0 : u(rng);
  return v;
}

std::vector<NumericForce> random_force_set(Rng& rng, std::size_t count) {
  std::vector<NumericForce> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back({random_vector(rng), random_vector(rng)});
  return out;
}

}  // namespace qmotion::oracle
