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
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "qmotion/errors.hpp"
#include "qmotion/oracle.hpp"
#include "qmotion/scene_io.hpp"
#include "scenes.hpp"

namespace qmotion {
namespace {

using testing::V;

sim::RigidBody free_box(const std::string& id, const Vec3& position) {
  sim::RigidBody b;
  b.id = ObjectId{id};
  b.position = position;
  b.inertia = sim::box_inertia(b.mass, b.half_extents);
  return b;
}

TEST(Simulator, FreeFall) {
  sim::World w;
  w.bodies.push_back(free_box("b", Vec3(0, 0, 10)));
  for (int i = 0; i < 100; ++i) w = sim::step(std::move(w), 0.01);
  EXPECT_NEAR(w.bodies[0].velocity.z(), -9.81, 0.02 * 9.81);
  EXPECT_NEAR(w.bodies[0].velocity.x(), 0.0, 1e-12);
}

TEST(Simulator, ExplicitIntegratorFallsToo) {
  sim::World w;
  w.integrator = sim::Integrator::Explicit;
  w.bodies.push_back(free_box("b", Vec3(0, 0, 10)));
  for (int i = 0; i < 100; ++i) w = sim::step(std::move(w), 0.01);
  EXPECT_NEAR(w.bodies[0].velocity.z(), -9.81, 0.02 * 9.81);
  EXPECT_NEAR(w.bodies[0].position.z(), 10 - 0.5 * 9.81 * 0.99, 0.05);
}

TEST(Simulator, RestingBoxStaysInDeadBand) {
  sim::World w = oracle::build_world(oracle::StackSpec::uniform(1));
  for (int i = 0; i < 500; ++i) w = sim::step(std::move(w), 1e-3);
  const auto& box = w.bodies[w.index_of(ObjectId{"box0"})];
  EXPECT_EQ(quantize(box.velocity, {1e-3}), SignVec::zero());
  EXPECT_EQ(quantize(box.angular_velocity, {1e-3}), SignVec::zero());
}

TEST(Simulator, ImpulseMomentum) {
  sim::World w = oracle::build_world(oracle::StackSpec::uniform(1));
  const std::size_t i = w.index_of(ObjectId{"box0"});
  const Vec3 centre = w.bodies[i].position;
  const double j = 2.0;
  const sim::ImpulseEvent push{ObjectId{"box0"}, centre - Vec3(0.5, 0, 0), Vec3(j, 0, 0), 0};
  w = sim::step(std::move(w), 1e-3, std::span(&push, 1));
  EXPECT_NEAR(w.bodies[i].velocity.x(), j / w.bodies[i].mass, 0.01 * j);
  EXPECT_NEAR(w.bodies[i].angular_velocity.norm(), 0.0, 1e-9);
}

TEST(Simulator, ZeroGravityMomentumConserved) {
  sim::World w = oracle::build_world(oracle::StackSpec::uniform(2));
  w.gravity = Vec3::Zero();
  // Drop the ground so only the two boxes interact.
  std::erase_if(w.contacts, [&](const sim::ContactPoint& c) { return w.bodies[c.a].is_static || w.bodies[c.b].is_static; });
  const std::size_t top = w.index_of(ObjectId{"box1"});
  const sim::ImpulseEvent push{ObjectId{"box1"}, w.bodies[top].position + Vec3(0, 0, 0.5), Vec3(0.3, 0.2, -1.0), 0};
  w = sim::step(std::move(w), 1e-3, std::span(&push, 1));
  const Vec3 p0 = w.linear_momentum();
  for (int i = 0; i < 100; ++i) w = sim::step(std::move(w), 1e-3);
  EXPECT_LE((w.linear_momentum() - p0).norm(), 0.01 * p0.norm());
  const auto& bottom = w.bodies[w.index_of(ObjectId{"box0"})];
  EXPECT_LT(bottom.velocity.z(), 0.0);
}

TEST(Simulator, BlowupAndValidation) {
  sim::World w;
  w.bodies.push_back(free_box("b", Vec3::Zero()));
  const sim::ImpulseEvent huge{ObjectId{"b"}, Vec3(-0.5, 0, 0), Vec3(1e9, 0, 0), 0};
  EXPECT_THROW((void)sim::step(w, 1e-3, std::span(&huge, 1)), NumericBlowup);
  w.bodies[0].mass = 0.0;
  EXPECT_THROW(sim::validate(w), std::invalid_argument);
  EXPECT_THROW((void)sim::step(w, 0.0), std::invalid_argument);
}

TEST(Generate, LateralPushOnOneBox) {
  const auto g = oracle::generate_scene(oracle::StackSpec::uniform(1), {0, Vec3(1, 0, 0), std::nullopt});
  ASSERT_TRUE(g.truth.has_value());
  EXPECT_EQ(g.truth->qd(), V("+", "0", "0"));
  EXPECT_EQ(g.truth->qr(), V("-", "0", "0"));
  EXPECT_EQ(g.truth->object().value, "box0");
  const SceneObject* box = g.scene.find(ObjectId{"box0"});
  ASSERT_NE(box, nullptr);
  EXPECT_EQ(box->observed().dqv, V("+", "0", "0"));
  EXPECT_EQ(g.scene.contacts.size(), 4u);
  EXPECT_GE(g.epsilon, 1e-6);
}

TEST(Generate, ThreeBoxTopPush) {
  const auto g = oracle::generate_scene(oracle::StackSpec::uniform(3),
                                        oracle::parse_impulse("1,0,0@top", 3));
  EXPECT_EQ(g.truth->object().value, "box2");
  EXPECT_EQ(g.scene.objects.size(), 4u);
  EXPECT_EQ(g.scene.contacts.size(), 12u);
  EXPECT_FALSE(g.scene.find(ObjectId{"box2"})->observed().is_zero());
  const auto found = distinct_actions(solve(g.scene));
  EXPECT_NE(std::find(found.begin(), found.end(), *g.truth), found.end());
}

TEST(Generate, ZeroImpulseLeavesEverythingAtRest) {
  const auto g = oracle::generate_scene(oracle::StackSpec::uniform(2), oracle::parse_impulse("zero", 2));
  EXPECT_FALSE(g.truth.has_value());
  for (const SceneObject& o : g.scene.objects) EXPECT_TRUE(o.observed().is_zero()) << o.id.value;
  EXPECT_THROW((void)solve(g.scene), NoMovedObject);
}

TEST(Generate, Deterministic) {
  oracle::Rng a(5), b(5);
  const auto sa = oracle::random_stack(4, a);
  const auto sb = oracle::random_stack(4, b);
  const auto ga = oracle::generate_scene(sa, oracle::random_impulse(sa, a));
  const auto gb = oracle::generate_scene(sb, oracle::random_impulse(sb, b));
  EXPECT_EQ(serialize_scene(ga.scene), serialize_scene(gb.scene));
  EXPECT_EQ(ga.truth, gb.truth);
}

TEST(Generate, UnstableStackIsRejected) {
  oracle::StackSpec s = oracle::StackSpec::uniform(2);
  s.boxes[1].offset = Eigen::Vector2d(0.9, 0.0);
  try {
    (void)oracle::generate_scene(s, oracle::parse_impulse("zero", 2));
    FAIL() << "expected UnstableInitialStack";
  } catch (const UnstableInitialStack& e) {
    EXPECT_GT(e.max_speed(), 1e-3);
  }
}

TEST(Generate, RandomStacksAreStable) {
  oracle::Rng rng(6);
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto s = oracle::random_stack(n, rng);
    EXPECT_EQ(s.boxes.size(), n);
    EXPECT_NO_THROW((void)oracle::generate_scene(s, oracle::random_impulse(s, rng)));
  }
}

TEST(ParseImpulse, Forms) {
  EXPECT_EQ(oracle::parse_impulse("1,0,0@top", 3).box, 2u);
  EXPECT_EQ(oracle::parse_impulse("1,0,0@bottom", 3).box, 0u);
  EXPECT_EQ(oracle::parse_impulse("1,0,0@box1", 3).box, 1u);
  EXPECT_EQ(oracle::parse_impulse("1,0,0@1", 3).box, 1u);
  EXPECT_EQ(oracle::parse_impulse("0,-2,0", 3).impulse, Vec3(0, -2, 0));
  EXPECT_TRUE(oracle::parse_impulse("zero", 3).impulse.isZero());
  EXPECT_THROW((void)oracle::parse_impulse("1,0@top", 3), std::invalid_argument);
  EXPECT_THROW((void)oracle::parse_impulse("1,0,0@7", 3), std::invalid_argument);
  EXPECT_THROW((void)oracle::parse_impulse("a,b,c", 3), std::invalid_argument);
}

TEST(Enumerate, ContainsTruthAndMatchesSolver) {
  oracle::Rng rng(7);
  for (std::size_t n = 1; n <= 2; ++n) {
    const auto stack = oracle::random_stack(n, rng);
    const auto g = oracle::generate_scene(stack, oracle::random_impulse(stack, rng));
    for (const auto& h : {HeuristicSet::none(), HeuristicSet::both()}) {
      SolverConfig cfg;
      cfg.heuristics = h;
      const auto oracle_set = oracle::enumerate_actions(g.scene, cfg);
      EXPECT_TRUE(oracle_set.count(*g.truth));
      const auto v = distinct_actions(solve(g.scene, cfg));
      EXPECT_EQ(std::set<QualitativeAction>(v.begin(), v.end()), oracle_set);
    }
  }
}

TEST(Enumerate, RefusesOversizedScenes) {
  Scene s = testing::block_on_ground(testing::sliding_x());
  const SignVec tilted = V("+", "0", "+");
  for (Contact& c : s.contacts) c.geometry.normal_q = tilted;
  const std::size_t g = rule2_direction_groups(tilted).size();
  ASSERT_GT(g, 1u);
  std::size_t total = 1;
  for (std::size_t i = 0; i < s.contacts.size(); ++i) total *= g;
  EXPECT_THROW((void)oracle::enumerate_actions(s, {}, total - 1), CapExceeded);
  EXPECT_NO_THROW((void)oracle::enumerate_actions(s, {}, total));
}

TEST(RandomVector, ZeroProbability) {
  oracle::Rng rng(8);
  int zeros = 0;
  for (int i = 0; i < 1000; ++i) {
    const Vec3 v = oracle::random_vector(rng, 0.5);
    for (int k = 0; k < 3; ++k) {
      EXPECT_LE(std::abs(v[k]), 1.0);
      zeros += v[k] == 0.0;
    }
  }
  EXPECT_NEAR(zeros / 3000.0, 0.5, 0.05);
  EXPECT_EQ(oracle::random_force_set(rng, 4).size(), 4u);
}

}  // namespace
}  // namespace qmotion
