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

#include "qmotion/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include <Eigen/Geometry>

#include "qmotion/errors.hpp"

namespace qmotion {

QualitativeForce QualitativeForce::gravity(ObjectId object) {
  return {SignVec(Sign::Zero, Sign::Zero, Sign::Minus), SignVec::zero(), std::move(object)};
}

StateChange StateChange::from_index(std::size_t i) {
  if (i >= kDefiniteStates) throw std::out_of_range("state change index out of range");
  return {SignVec::from_index(i / kDefiniteVectors), SignVec::from_index(i % kDefiniteVectors)};
}

StateChange observed_change(const ObjectState& before, const ObjectState& after) {
  return {vec_sub(after.qv, before.qv), vec_sub(after.qw, before.qw)};
}

QualitativeAction::QualitativeAction(QualitativeForce force) : force_(std::move(force)) {
  if (force_.qd.is_zero()) throw std::invalid_argument("an action needs a nonzero direction");
}

std::string to_string(const QualitativeForce& f) {
  return "<" + to_string(f.qd) + ", " + to_string(f.qr) + ", " + f.object.value + ">";
}

std::string to_string(const QualitativeAction& a) { return to_string(a.force()); }

std::string to_string(const StateChange& c) {
  return "<" + to_string(c.dqv) + ", " + to_string(c.dqw) + ">";
}

bool Envelope::contains(const StateChange& c) const {
  if (c.is_definite()) return bits_.test(c.index());
  for (const SignVec& v : c.dqv.denotation()) {
    for (const SignVec& w : c.dqw.denotation()) {
      if (bits_.test(StateChange{v, w}.index())) return true;
    }
  }
  return false;
}

std::vector<StateChange> Envelope::elements() const {
  std::vector<StateChange> out;
  for (std::size_t i = 0; i < kDefiniteStates; ++i) {
    if (bits_.test(i)) out.push_back(StateChange::from_index(i));
  }
  return out;
}

namespace {

// A sum of definite signs and indefinite cross-product components is one of
// {0}, {+}, {-}, {+,-,0}. Encoding each as (plus, minus) bits makes the sign
// sum a bitwise OR. Six components (linear then angular) pack into 12 bits.
constexpr std::size_t kMaskStates = 1u << 12;
using Mask = std::uint16_t;

unsigned encode(SignSet s) {
  if (s == SignSet(Sign::Zero)) return 0;
  if (s == SignSet(Sign::Plus)) return 1;
  if (s == SignSet(Sign::Minus)) return 2;
  assert(s.is_full());
  return 3;
}

SignSet decode(unsigned bits) {
  switch (bits & 3u) {
    case 0:
      return Sign::Zero;
    case 1:
      return Sign::Plus;
    case 2:
      return Sign::Minus;
    default:
      return SignSet::all();
  }
}

unsigned component(Mask m, std::size_t k) { return (m >> (2 * k)) & 3u; }

Mask encode(const SignVec& linear, const SignVec& angular) {
  unsigned m = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    m |= encode(linear[k]) << (2 * k);
    m |= encode(angular[k]) << (2 * (k + 3));
  }
  return static_cast<Mask>(m);
}

SignVec decode_linear(Mask m) {
  return {decode(component(m, 0)), decode(component(m, 1)), decode(component(m, 2))};
}
SignVec decode_angular(Mask m) {
  return {decode(component(m, 3)), decode(component(m, 4)), decode(component(m, 5))};
}

struct Member {
  Mask mask;
  SignVec qd;
  SignVec qr;
};

std::vector<Member> compute_members(const QualitativeForce& f) {
  std::vector<Member> out;
  for (const SignVec& qd : f.qd.denotation()) {
    for (const SignVec& qr : f.qr.denotation()) {
      const Mask m = encode(qd, vec_cross(qr, qd));
      const bool seen = std::any_of(out.begin(), out.end(),
                                    [m](const Member& x) { return x.mask == m; });
      if (!seen) out.push_back({m, qd, qr});
    }
  }
  return out;
}

using MemberList = const std::vector<Member>*;

MemberList members_of(const QualitativeForce& f) {
  thread_local std::unordered_map<std::uint32_t, std::vector<Member>> cache;
  std::uint32_t key = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    key = (key << 3) | f.qd[k].bits();
    key = (key << 3) | f.qr[k].bits();
  }
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, compute_members(f)).first;
  return &it->second;
}

// Per-thread scratch for a closure. Entries are valid only when their stamp
// matches the current generation, so no clearing is needed between uses.
struct ClosureBuffer {
  std::array<std::uint32_t, kMaskStates> stamp{};
  std::array<std::int32_t, kMaskStates> parent{};
  std::array<std::pair<std::uint16_t, std::uint16_t>, kMaskStates> via{};
  std::uint32_t generation = 0;
};

// Reachable sums over subsets of a group of forces, with parent links for
// recovering a witness. Each force extends the sums found before it. `slot`
// selects the scratch buffer; closures alive at the same time need distinct slots.
class Closure {
 public:
  using StopAt = std::function<bool(Mask)>;

  /// With `stop_at`, construction ends at the first sum it accepts.
  Closure(std::span<const MemberList> members, std::span<const std::size_t> forces,
          std::size_t slot, const StopAt& stop_at = {})
      : members_(members), buf_(buffer(slot)) {
    if (++buf_.generation == 0) {
      buf_.stamp.fill(0);
      buf_.generation = 1;
    }
    mark(0, kRoot, {0, 0});
    reached_.push_back(0);
    if (stop_at && stop_at(0)) {
      stopped_ = 0;
      return;
    }
    for (std::size_t force : forces) {
      const std::size_t before = reached_.size();
      const auto& ms = *members_[force];
      for (std::size_t i = 0; i < before; ++i) {
        const Mask base = reached_[i];
        for (std::size_t j = 0; j < ms.size(); ++j) {
          const Mask next = base | ms[j].mask;
          if (contains(next)) continue;
          mark(next, base, {static_cast<std::uint16_t>(force), static_cast<std::uint16_t>(j)});
          reached_.push_back(next);
          if (stop_at && stop_at(next)) {
            stopped_ = next;
            return;
          }
        }
      }
    }
  }

  Closure(const Closure&) = delete;
  Closure& operator=(const Closure&) = delete;

  std::span<const Mask> reached() const { return reached_; }
  std::optional<Mask> stopped() const { return stopped_; }
  bool contains(Mask m) const { return buf_.stamp[m] == buf_.generation; }

  void witness(Mask m, bool resistant, std::vector<ForceUse>& out) const {
    while (buf_.parent[m] != kRoot) {
      const auto [force, j] = buf_.via[m];
      const Member& member = (*members_[force])[j];
      out.push_back({force, member.qd, member.qr, resistant});
      m = static_cast<Mask>(buf_.parent[m]);
    }
  }

 private:
  static constexpr std::int32_t kRoot = -1;

  static ClosureBuffer& buffer(std::size_t slot) {
    thread_local std::array<std::unique_ptr<ClosureBuffer>, 2> buffers;
    auto& b = buffers.at(slot);
    if (!b) b = std::make_unique<ClosureBuffer>();
    return *b;
  }

  void mark(Mask m, std::int32_t parent, std::pair<std::uint16_t, std::uint16_t> via) {
    buf_.stamp[m] = buf_.generation;
    buf_.parent[m] = parent;
    buf_.via[m] = via;
  }

  std::span<const MemberList> members_;
  ClosureBuffer& buf_;
  std::vector<Mask> reached_;
  std::optional<Mask> stopped_;
};

std::array<SignSet, 6> target_of(const StateChange& c) {
  return {c.dqv[0], c.dqv[1], c.dqv[2], c.dqw[0], c.dqw[1], c.dqw[2]};
}

bool matches(Mask m, const std::array<SignSet, 6>& target) {
  for (std::size_t k = 0; k < 6; ++k) {
    if (!decode(component(m, k)).intersect(target[k])) return false;
  }
  return true;
}

void check_forces(std::span<const QualitativeForce> forces, std::size_t cap) {
  if (forces.empty()) return;
  const ObjectId& object = forces.front().object;
  for (const auto& f : forces) {
    if (f.object != object) {
      throw std::invalid_argument("forces in one envelope must act on the same object");
    }
  }
  if (forces.size() > cap) throw CapExceeded(object.value, forces.size(), cap);
}

StateChange pick_member(const SignVec& lin, const SignVec& ang, const StateChange& target) {
  for (const SignVec& v : lin.denotation()) {
    if (!target.dqv.covers(v)) continue;
    for (const SignVec& w : ang.denotation()) {
      if (target.dqw.covers(w)) return {v, w};
    }
  }
  throw std::logic_error("witness does not contain the target change");
}

}  // namespace

Envelope delta_envelope(std::span<const QualitativeForce> forces, std::size_t cap) {
  check_forces(forces, cap);
  std::vector<MemberList> members;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < forces.size(); ++i) {
    members.push_back(members_of(forces[i]));
    order.push_back(i);
  }
  const Closure closure(members, order, 0);

  Envelope env;
  for (Mask m : closure.reached()) {
    for (const SignVec& v : decode_linear(m).denotation()) {
      for (const SignVec& w : decode_angular(m).denotation()) env.insert({v, w});
    }
  }
  return env;
}

bool change_entailed(const StateChange& change, std::span<const QualitativeForce> forces,
                     std::size_t cap) {
  return explain_change(change, forces, {}, cap).has_value();
}

namespace {

std::uint8_t resistant_add_bits(std::uint8_t resistant, std::uint8_t other) {
  std::uint8_t bits = 0;
  for (Sign r : kAllSigns) {
    if (!((resistant >> static_cast<unsigned>(r)) & 1u)) continue;
    for (Sign o : kAllSigns) {
      if (!((other >> static_cast<unsigned>(o)) & 1u)) continue;
      if (r == Sign::Zero || r == o) {
        bits |= SignSet(o).bits();
      } else if (o == Sign::Zero) {
        bits |= SignSet(Sign::Zero).bits();
      } else {
        bits |= (SignSet(o) | Sign::Zero).bits();
      }
    }
  }
  return bits;
}

const std::array<std::array<std::uint8_t, 8>, 8>& resistant_add_table() {
  static const auto table = [] {
    std::array<std::array<std::uint8_t, 8>, 8> t{};
    for (std::uint8_t r = 1; r < 8; ++r) {
      for (std::uint8_t o = 1; o < 8; ++o) t[r][o] = resistant_add_bits(r, o);
    }
    return t;
  }();
  return table;
}

}  // namespace

SignSet heuristic_resistant_add(SignSet resistant, SignSet other) {
  return *SignSet::from_bits(resistant_add_table()[resistant.bits()][other.bits()]);
}

SignVec heuristic_resistant_add(const SignVec& resistant, const SignVec& other) {
  return {heuristic_resistant_add(resistant[0], other[0]),
          heuristic_resistant_add(resistant[1], other[1]),
          heuristic_resistant_add(resistant[2], other[2])};
}

namespace {

std::optional<Entailment> compute_explanation(const StateChange& change,
                                              std::span<const QualitativeForce> forces,
                                              std::span<const bool> resistant) {
  const auto target = target_of(change);

  std::vector<MemberList> members;
  std::vector<std::size_t> plain;
  std::vector<std::size_t> resisting;
  for (std::size_t i = 0; i < forces.size(); ++i) {
    members.push_back(members_of(forces[i]));
    (!resistant.empty() && resistant[i] ? resisting : plain).push_back(i);
  }

  if (resisting.empty()) {
    const Closure others(members, plain, 0, [&](Mask m) { return matches(m, target); });
    if (const auto found = others.stopped()) {
      const Mask m = *found;
      Entailment e;
      others.witness(m, false, e.used);
      std::reverse(e.used.begin(), e.used.end());
      e.linear = decode_linear(m);
      e.angular = decode_angular(m);
      e.matched = pick_member(e.linear, e.angular, change);
      return e;
    }
    return std::nullopt;
  }
  const Closure others(members, plain, 0);

  // allowed[k][o] is the set of resistant bit patterns r (as a 4-bit mask)
  // for which heuristic_resistant_add(r, o) meets the target in component k.
  std::array<std::array<unsigned, 4>, 6> allowed{};
  for (std::size_t k = 0; k < 6; ++k) {
    for (unsigned o = 0; o < 4; ++o) {
      for (unsigned r = 0; r < 4; ++r) {
        if (heuristic_resistant_add(decode(r), decode(o)).intersect(target[k])) {
          allowed[k][o] |= 1u << r;
        }
      }
    }
  }

  const Closure resisting_sums(members, resisting, 1);

  // Which allowed-pattern tuples some resistant sum satisfies: start from the
  // reached sums and widen one component at a time to the patterns in use.
  std::array<std::array<unsigned, 4>, 6> slot{};
  std::vector<Mask> keys(resisting_sums.reached().begin(), resisting_sums.reached().end());
  std::bitset<kMaskStates> seen;
  for (std::size_t k = 0; k < 6; ++k) {
    std::array<unsigned, 4> patterns{};
    unsigned distinct = 0;
    for (unsigned o = 0; o < 4; ++o) {
      unsigned j = 0;
      while (j < distinct && patterns[j] != allowed[k][o]) ++j;
      if (j == distinct) patterns[distinct++] = allowed[k][o];
      slot[k][o] = j;
    }
    std::vector<Mask> next;
    seen.reset();
    for (Mask m : keys) {
      const unsigned c = component(m, k);
      for (unsigned j = 0; j < distinct; ++j) {
        if (!((patterns[j] >> c) & 1u)) continue;
        const auto widened = static_cast<Mask>((m & ~(3u << (2 * k))) | (j << (2 * k)));
        if (!seen.test(widened)) {
          seen.set(widened);
          next.push_back(widened);
        }
      }
    }
    keys = std::move(next);
  }
  seen.reset();
  for (Mask m : keys) seen.set(m);

  for (Mask o : others.reached()) {
    unsigned key = 0;
    for (std::size_t k = 0; k < 6; ++k) key |= slot[k][component(o, k)] << (2 * k);
    if (!seen.test(key)) continue;
    for (Mask r : resisting_sums.reached()) {
      bool ok = true;
      for (std::size_t k = 0; k < 6 && ok; ++k) {
        ok = (allowed[k][component(o, k)] >> component(r, k)) & 1u;
      }
      if (!ok) continue;
      Entailment e;
      others.witness(o, false, e.used);
      resisting_sums.witness(r, true, e.used);
      std::sort(e.used.begin(), e.used.end(),
                [](const ForceUse& a, const ForceUse& b) { return a.index < b.index; });
      e.linear = heuristic_resistant_add(decode_linear(r), decode_linear(o));
      e.angular = heuristic_resistant_add(decode_angular(r), decode_angular(o));
      e.matched = pick_member(e.linear, e.angular, change);
      return e;
    }
  }
  return std::nullopt;
}

std::string memo_key(const StateChange& change, std::span<const QualitativeForce> forces,
                     std::span<const bool> resistant) {
  std::string key;
  key.reserve(6 + 7 * forces.size());
  for (std::size_t k = 0; k < 3; ++k) key.push_back(static_cast<char>(change.dqv[k].bits()));
  for (std::size_t k = 0; k < 3; ++k) key.push_back(static_cast<char>(change.dqw[k].bits()));
  for (std::size_t i = 0; i < forces.size(); ++i) {
    for (std::size_t k = 0; k < 3; ++k) {
      key.push_back(static_cast<char>(forces[i].qd[k].bits() | (forces[i].qr[k].bits() << 3)));
    }
    key.push_back(!resistant.empty() && resistant[i] ? 'r' : 'p');
  }
  return key;
}

}  // namespace

std::optional<Entailment> explain_change(const StateChange& change,
                                         std::span<const QualitativeForce> forces,
                                         std::span<const bool> resistant, std::size_t cap) {
  check_forces(forces, cap);
  if (!resistant.empty() && resistant.size() != forces.size()) {
    throw std::invalid_argument("one resistant flag per force is required");
  }
  constexpr std::size_t kMemoLimit = 1u << 16;
  thread_local std::unordered_map<std::string, std::optional<Entailment>> memo;
  std::string key = memo_key(change, forces, resistant);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  if (memo.size() >= kMemoLimit) memo.clear();
  auto result = compute_explanation(change, forces, resistant);
  memo.emplace(std::move(key), result);
  return result;
}

bool is_vanishing_point(const ObjectState& a, const ObjectState& b, const ContactGeometry& geom,
                        const std::optional<NumericKinematics>& numeric) {
  if (numeric && geom.numeric_normal) {
    const Vec3 xa = numeric->v_a + numeric->w_a.cross(numeric->r_a);
    const Vec3 xb = numeric->v_b + numeric->w_b.cross(numeric->r_b);
    return geom.numeric_normal->dot(xa - xb) > 0;
  }
  const SignVec qxa = vec_add(a.qv, vec_cross(a.qw, geom.qr_on_a));
  const SignVec qxb = vec_add(b.qv, vec_cross(b.qw, geom.qr_on_b));
  std::uint8_t approach = 0;
  for (const SignVec& delta : vec_sub(qxa, qxb).denotation()) {
    approach |= vec_dot(geom.normal_q, delta).bits();
  }
  const SignSet not_apart = SignSet::of({Sign::Minus, Sign::Zero});
  return (approach & not_apart.bits()) == 0;
}

bool satisfies_no_attraction(const SignVec& qd, const ContactGeometry& geom) {
  const SignSet dot = vec_dot(qd, geom.normal_q);
  return dot.contains(Sign::Plus) || dot.contains(Sign::Zero);
}

bool satisfies_no_attraction(const Vec3& direction, const Vec3& normal) {
  return direction.dot(normal) >= 0;
}

SignVec third_law_pair(const SignVec& qd) { return inverse(qd); }

std::vector<SignVec> rule2_direction_groups(const SignVec& normal_q) {
  ContactGeometry geom;
  geom.normal_q = normal_q;

  // For each x sign, the feasible z sets keyed by y, merged into y sets.
  using Rows = std::vector<std::pair<std::uint8_t, std::uint8_t>>;  // (y bits, z bits)
  std::vector<std::pair<std::uint8_t, Rows>> by_x;
  for (Sign x : kAllSigns) {
    Rows rows;
    for (Sign y : kAllSigns) {
      std::uint8_t zbits = 0;
      for (Sign z : kAllSigns) {
        if (satisfies_no_attraction(SignVec(x, y, z), geom)) zbits |= SignSet(z).bits();
      }
      if (zbits == 0) continue;
      auto same = std::find_if(rows.begin(), rows.end(),
                               [zbits](const auto& r) { return r.second == zbits; });
      if (same != rows.end()) {
        same->first |= SignSet(y).bits();
      } else {
        rows.emplace_back(SignSet(y).bits(), zbits);
      }
    }
    if (rows.empty()) continue;
    auto same = std::find_if(by_x.begin(), by_x.end(),
                             [&rows](const auto& e) { return e.second == rows; });
    if (same != by_x.end()) {
      same->first |= SignSet(x).bits();
    } else {
      by_x.emplace_back(SignSet(x).bits(), std::move(rows));
    }
  }

  std::vector<SignVec> groups;
  for (const auto& [xbits, rows] : by_x) {
    for (const auto& [ybits, zbits] : rows) {
      groups.emplace_back(*SignSet::from_bits(xbits), *SignSet::from_bits(ybits),
                          *SignSet::from_bits(zbits));
    }
  }
  std::sort(groups.begin(), groups.end());
  return groups;
}

}  // namespace qmotion
