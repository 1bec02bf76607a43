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

#include <bitset>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qmotion/sign.hpp"

namespace qmotion {

inline constexpr std::size_t kDefaultSubsetCap = 12;

struct ObjectId {
  std::string value;

  friend bool operator==(const ObjectId&, const ObjectId&) = default;
  friend auto operator<=>(const ObjectId&, const ObjectId&) = default;
};

/// A force on `object`: direction signs `qd`, and the signs of the direction
/// from the object's mass centre to the point of application `qr`.
struct QualitativeForce {
  SignVec qd;
  SignVec qr;
  ObjectId object;

  static QualitativeForce gravity(ObjectId object);

  friend bool operator==(const QualitativeForce&, const QualitativeForce&) = default;
  friend auto operator<=>(const QualitativeForce&, const QualitativeForce&) = default;
};

struct ObjectState {
  SignVec qv;
  SignVec qw;

  static ObjectState rest() { return {}; }
  bool at_rest() const { return qv.is_zero() && qw.is_zero(); }

  friend bool operator==(const ObjectState&, const ObjectState&) = default;
};

inline constexpr std::size_t kDefiniteStates = kDefiniteVectors * kDefiniteVectors;

/// Signs of the velocity differences between two time points. An observed
/// change is definite; one derived from qualitative states may be a set, in
/// which case it matches if any member does.
struct StateChange {
  SignVec dqv;
  SignVec dqw;

  bool is_definite() const { return dqv.is_definite() && dqw.is_definite(); }
  bool is_zero() const { return dqv.is_zero() && dqw.is_zero(); }
  /// Index in [0, 729) of a definite change.
  std::size_t index() const { return dqv.index() * kDefiniteVectors + dqw.index(); }
  static StateChange from_index(std::size_t i);

  friend bool operator==(const StateChange&, const StateChange&) = default;
  friend auto operator<=>(const StateChange&, const StateChange&) = default;
};

StateChange observed_change(const ObjectState& before, const ObjectState& after);

/// An impulse at a qualitative locus on an object. The direction is nonzero.
class QualitativeAction {
 public:
  explicit QualitativeAction(QualitativeForce force);

  const QualitativeForce& force() const noexcept { return force_; }
  const ObjectId& object() const noexcept { return force_.object; }
  const SignVec& qd() const noexcept { return force_.qd; }
  const SignVec& qr() const noexcept { return force_.qr; }

  friend bool operator==(const QualitativeAction&, const QualitativeAction&) = default;
  friend auto operator<=>(const QualitativeAction&, const QualitativeAction&) = default;

 private:
  QualitativeForce force_;
};

std::string to_string(const QualitativeForce& f);
std::string to_string(const QualitativeAction& a);
std::string to_string(const StateChange& c);

/// Geometry of a contact as seen from object `a`. The normal points from b into a.
struct ContactGeometry {
  SignVec normal_q;
  std::optional<Vec3> numeric_normal;
  SignVec qr_on_a;
  SignVec qr_on_b;
};

/// The set of definite state changes produced by some subset of a force set.
class Envelope {
 public:
  void insert(const StateChange& c) { bits_.set(c.index()); }
  /// True if any member of `c` is in the envelope.
  bool contains(const StateChange& c) const;
  std::size_t size() const { return bits_.count(); }
  std::vector<StateChange> elements() const;

  friend bool operator==(const Envelope&, const Envelope&) = default;
  bool subset_of(const Envelope& other) const { return (bits_ & ~other.bits_).none(); }

 private:
  std::bitset<kDefiniteStates> bits_;
};

/// Union over all subsets of the forces of (sum of qd) x (sum of qr x qd).
/// Set-valued force components are read as "any member": each force
/// contributes one definite (qd, qr) member of its denotation.
Envelope delta_envelope(std::span<const QualitativeForce> forces,
                        std::size_t cap = kDefaultSubsetCap);

bool change_entailed(const StateChange& change, std::span<const QualitativeForce> forces,
                     std::size_t cap = kDefaultSubsetCap);

/// One force of a witnessing subset, with the definite member that was used.
struct ForceUse {
  std::size_t index;
  SignVec qd;
  SignVec qr;
  bool resistant = false;
};

/// A subset of forces whose combined effect contains the observed change.
struct Entailment {
  std::vector<ForceUse> used;
  SignVec linear;
  SignVec angular;
  StateChange matched;
};

/// Finds a witness for `change`. When `resistant` is nonempty (one flag per
/// force), resistant forces are summed separately and may only cancel the
/// other forces, per component (heuristic_resistant_add).
std::optional<Entailment> explain_change(const StateChange& change,
                                         std::span<const QualitativeForce> forces,
                                         std::span<const bool> resistant = {},
                                         std::size_t cap = kDefaultSubsetCap);

/// Point kinematics for the numeric form of the vanishing-point condition.
struct NumericKinematics {
  Vec3 v_a, w_a, r_a;
  Vec3 v_b, w_b, r_b;
};

/// Rule 1, evaluated on the t1 states of the two contacting objects.
bool is_vanishing_point(const ObjectState& a, const ObjectState& b, const ContactGeometry& geom,
                        const std::optional<NumericKinematics>& numeric = std::nullopt);

/// Rule 2 for a force on object a of the contact.
bool satisfies_no_attraction(const SignVec& qd, const ContactGeometry& geom);
bool satisfies_no_attraction(const Vec3& direction, const Vec3& normal);

/// Rule 3.
SignVec third_law_pair(const SignVec& qd);

SignSet heuristic_resistant_add(SignSet resistant, SignSet other);
SignVec heuristic_resistant_add(const SignVec& resistant, const SignVec& other);

/// Disjoint boxes whose union is every definite direction allowed by Rule 2
/// against `normal_q`, zero direction included.
std::vector<SignVec> rule2_direction_groups(const SignVec& normal_q);

}  // namespace qmotion
