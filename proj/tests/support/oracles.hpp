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

// Reference implementations used only by tests. Each one is computed from
// numeric samples or by brute force, never by calling the library routine
// it checks.

#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <string_view>
#include <vector>

#include <Eigen/Geometry>

#include "qmotion/dynamics.hpp"
#include "qmotion/sign.hpp"

namespace qmotion::testing {

using Rng = std::mt19937_64;

/// The operation tables as printed, row = left operand, in (+, 0, -) order.
/// '*' is the full set.
inline constexpr std::array<std::array<char, 3>, 3> kPrintedAdd{{
    {'+', '+', '*'},
    {'+', '0', '-'},
    {'*', '-', '-'},
}};
inline constexpr std::array<std::array<char, 3>, 3> kPrintedSub{{
    {'*', '+', '+'},
    {'-', '0', '+'},
    {'-', '-', '*'},
}};
inline constexpr std::array<std::array<char, 3>, 3> kPrintedMul{{
    {'+', '0', '-'},
    {'0', '0', '0'},
    {'-', '0', '+'},
}};

/// Shorthand for literals in tests, e.g. V("+", "[0-]", "0").
inline SignVec V(std::string_view x, std::string_view y, std::string_view z) {
  return {parse_sign_set(x), parse_sign_set(y), parse_sign_set(z)};
}

inline StateChange C(const SignVec& dqv, const SignVec& dqw) { return {dqv, dqw}; }

inline SignSet from_cell(char c) {
  switch (c) {
    case '+':
      return Sign::Plus;
    case '-':
      return Sign::Minus;
    case '0':
      return Sign::Zero;
    default:
      return SignSet::all();
  }
}

inline Sign sign_of(double x) { return x > 0 ? Sign::Plus : (x < 0 ? Sign::Minus : Sign::Zero); }

/// Numeric stand-ins for each sign, with enough spread that every
/// reachable result sign shows up.
inline std::vector<double> representatives(Sign s) {
  switch (s) {
    case Sign::Plus:
      return {0.5, 1.0, 2.0};
    case Sign::Minus:
      return {-0.5, -1.0, -2.0};
    case Sign::Zero:
      break;
  }
  return {0.0};
}

inline std::vector<double> representatives(SignSet s) {
  std::vector<double> out;
  for (Sign m : kAllSigns) {
    if (!s.contains(m)) continue;
    for (double v : representatives(m)) out.push_back(v);
  }
  return out;
}

enum class Op { Add, Sub, Mul };

inline double apply(Op op, double a, double b) {
  switch (op) {
    case Op::Add:
      return a + b;
    case Op::Sub:
      return a - b;
    case Op::Mul:
      break;
  }
  return a * b;
}

/// Signs reachable by the numeric operation over representatives.
inline SignSet sampled(Op op, SignSet a, SignSet b) {
  std::uint8_t bits = 0;
  for (double x : representatives(a)) {
    for (double y : representatives(b)) bits |= 1u << static_cast<unsigned>(sign_of(apply(op, x, y)));
  }
  return *SignSet::from_bits(bits);
}

/// All seven nonempty sign sets.
inline std::vector<SignSet> all_sign_sets() {
  std::vector<SignSet> out;
  for (std::uint8_t b = 1; b < 8; ++b) out.push_back(*SignSet::from_bits(b));
  return out;
}

inline SignSet random_sign_set(Rng& rng) {
  std::uniform_int_distribution<int> d(1, 7);
  return *SignSet::from_bits(static_cast<std::uint8_t>(d(rng)));
}

inline Sign random_sign(Rng& rng) {
  std::uniform_int_distribution<int> d(0, 2);
  return kAllSigns[static_cast<std::size_t>(d(rng))];
}

inline SignVec random_definite(Rng& rng) {
  return SignVec{random_sign(rng), random_sign(rng), random_sign(rng)};
}

inline SignVec random_sign_vec(Rng& rng) {
  return SignVec{random_sign_set(rng), random_sign_set(rng), random_sign_set(rng)};
}

/// Numeric vector with components that are exactly zero about a fifth of
/// the time.
inline Vec3 random_numeric(Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::bernoulli_distribution zero(0.2);
  Vec3 v;
  for (int i = 0; i < 3; ++i) v[i] = zero(rng) ? 0.0 : u(rng);
  return v;
}

inline std::vector<SignVec> all_definite_vectors() {
  std::vector<SignVec> out;
  for (Sign x : kAllSigns)
    for (Sign y : kAllSigns)
      for (Sign z : kAllSigns) out.push_back(SignVec{x, y, z});
  return out;
}

inline std::vector<std::array<Sign, 3>> members(const SignVec& v) {
  std::vector<std::array<Sign, 3>> out;
  for (Sign x : kAllSigns)
    for (Sign y : kAllSigns)
      for (Sign z : kAllSigns)
        if (v[0].contains(x) && v[1].contains(y) && v[2].contains(z)) out.push_back({x, y, z});
  return out;
}

/// Component signs of numeric cross products over representatives.
inline std::array<std::uint8_t, 3> sampled_cross_bits(const std::array<Sign, 3>& u,
                                                      const std::array<Sign, 3>& w) {
  std::array<std::uint8_t, 3> bits{0, 0, 0};
  const auto ru = std::array{representatives(u[0]), representatives(u[1]), representatives(u[2])};
  const auto rw = std::array{representatives(w[0]), representatives(w[1]), representatives(w[2])};
  for (double a0 : ru[0])
    for (double a1 : ru[1])
      for (double a2 : ru[2])
        for (double b0 : rw[0])
          for (double b1 : rw[1])
            for (double b2 : rw[2]) {
              const Vec3 c = Vec3(a0, a1, a2).cross(Vec3(b0, b1, b2));
              for (int i = 0; i < 3; ++i) bits[i] |= 1u << static_cast<unsigned>(sign_of(c[i]));
            }
  return bits;
}

/// Brute-force envelope: every subset, every definite member of every
/// force, numeric sums over representatives.
inline std::set<std::pair<std::array<Sign, 3>, std::array<Sign, 3>>> brute_envelope(
    const std::vector<QualitativeForce>& forces) {
  using Vecs = std::array<Sign, 3>;
  std::set<std::pair<Vecs, Vecs>> out;
  const std::size_t n = forces.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    // Per chosen force: the set of (linear bits, angular bits) it can add.
    std::vector<std::vector<std::pair<Vecs, std::array<std::uint8_t, 3>>>> options;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1u)) continue;
      std::vector<std::pair<Vecs, std::array<std::uint8_t, 3>>> opts;
      for (const auto& qd : members(forces[i].qd))
        for (const auto& qr : members(forces[i].qr)) opts.push_back({qd, sampled_cross_bits(qr, qd)});
      options.push_back(std::move(opts));
    }
    // Enumerate one member per force, fold the sign sets with sampled addition.
    std::vector<std::size_t> pick(options.size(), 0);
    while (true) {
      std::array<std::uint8_t, 3> lin{2, 2, 2};
      std::array<std::uint8_t, 3> ang{2, 2, 2};
      for (std::size_t k = 0; k < options.size(); ++k) {
        const auto& [qd, torque] = options[k][pick[k]];
        for (int c = 0; c < 3; ++c) {
          lin[c] = sampled(Op::Add, *SignSet::from_bits(lin[c]), qd[c]).bits();
          ang[c] = sampled(Op::Add, *SignSet::from_bits(ang[c]), *SignSet::from_bits(torque[c])).bits();
        }
      }
      for (const auto& l : members(SignVec{*SignSet::from_bits(lin[0]), *SignSet::from_bits(lin[1]),
                                           *SignSet::from_bits(lin[2])}))
        for (const auto& a : members(SignVec{*SignSet::from_bits(ang[0]), *SignSet::from_bits(ang[1]),
                                             *SignSet::from_bits(ang[2])}))
          out.insert({l, a});
      std::size_t k = 0;
      while (k < pick.size() && ++pick[k] == options[k].size()) pick[k++] = 0;
      if (k == pick.size()) break;
    }
  }
  return out;
}

inline StateChange to_change(const std::pair<std::array<Sign, 3>, std::array<Sign, 3>>& p) {
  return {SignVec{p.first[0], p.first[1], p.first[2]}, SignVec{p.second[0], p.second[1], p.second[2]}};
}

}  // namespace qmotion::testing
