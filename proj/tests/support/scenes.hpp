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

// Small hand-built scenes shared by the unit tests.

#pragma once

#include <string>

#include "oracles.hpp"
#include "qmotion/scene.hpp"

namespace qmotion::testing {

inline SceneObject ground() {
  SceneObject g;
  g.id = ObjectId{"ground"};
  g.is_static = true;
  return g;
}

inline SceneObject block(const std::string& id, const ObjectState& after = {},
                         const ObjectState& before = {}) {
  SceneObject o;
  o.id = ObjectId{id};
  o.before = before;
  o.after = after;
  return o;
}

/// The four bottom corners of a unit block resting on `below`.
inline std::vector<Contact> corners(const std::string& above, const std::string& below) {
  std::vector<Contact> out;
  for (const char* x : {"+", "-"}) {
    for (const char* y : {"+", "-"}) {
      Contact c;
      c.a = ObjectId{above};
      c.b = ObjectId{below};
      c.geometry.normal_q = V("0", "0", "+");
      c.geometry.qr_on_a = V(x, y, "-");
      c.geometry.qr_on_b = V(x, y, "+");
      out.push_back(c);
    }
  }
  return out;
}

/// One block on the ground with the given after-state.
inline Scene block_on_ground(const ObjectState& after) {
  Scene s;
  s.objects = {ground(), block("box0", after)};
  s.contacts = corners("box0", "ground");
  return canonicalize(s);
}

/// Two stacked blocks; box1 sits on box0.
inline Scene two_blocks(const ObjectState& bottom_after, const ObjectState& top_after) {
  Scene s;
  s.objects = {ground(), block("box0", bottom_after), block("box1", top_after)};
  s.contacts = corners("box0", "ground");
  const auto upper = corners("box1", "box0");
  s.contacts.insert(s.contacts.end(), upper.begin(), upper.end());
  return canonicalize(s);
}

inline ObjectState sliding_x() { return {V("+", "0", "0"), SignVec::zero()}; }

}  // namespace qmotion::testing
