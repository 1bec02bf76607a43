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

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace qmotion {

using Vec3 = Eigen::Vector3d;

/// Sign of a real quantity.
enum class Sign : std::uint8_t { Plus = 0, Zero = 1, Minus = 2 };

inline constexpr std::array<Sign, 3> kAllSigns{Sign::Plus, Sign::Zero, Sign::Minus};

constexpr Sign negate(Sign s) noexcept {
  switch (s) {
    case Sign::Plus:
      return Sign::Minus;
    case Sign::Minus:
      return Sign::Plus;
    case Sign::Zero:
      break;
  }
  return Sign::Zero;
}

char to_char(Sign s) noexcept;

/// A nonempty set of signs. The indefinite value `*` is the full set.
class SignSet {
 public:
  constexpr SignSet(Sign s) noexcept  // NOLINT(google-explicit-constructor)
      : bits_(static_cast<std::uint8_t>(1u << static_cast<unsigned>(s))) {}

  static constexpr SignSet all() noexcept { return SignSet(kFullBits, Tag{}); }
  static SignSet of(std::initializer_list<Sign> signs);
  /// Returns nullopt for the empty set or stray bits.
  static std::optional<SignSet> from_bits(std::uint8_t bits) noexcept;

  constexpr bool contains(Sign s) const noexcept {
    return (bits_ >> static_cast<unsigned>(s)) & 1u;
  }
  constexpr bool is_singleton() const noexcept {
    return bits_ == 1 || bits_ == 2 || bits_ == 4;
  }
  constexpr bool is_full() const noexcept { return bits_ == kFullBits; }
  std::optional<Sign> single() const noexcept;
  std::size_t size() const noexcept;
  constexpr std::uint8_t bits() const noexcept { return bits_; }
  constexpr bool subset_of(SignSet other) const noexcept {
    return (bits_ & ~other.bits_) == 0;
  }
  std::vector<Sign> members() const;

  constexpr SignSet operator|(SignSet other) const noexcept {
    return SignSet(static_cast<std::uint8_t>(bits_ | other.bits_), Tag{});
  }
  /// Intersection, or nullopt when disjoint.
  std::optional<SignSet> intersect(SignSet other) const noexcept;

  friend constexpr bool operator==(SignSet, SignSet) noexcept = default;
  friend constexpr auto operator<=>(SignSet a, SignSet b) noexcept {
    return a.bits_ <=> b.bits_;
  }

 private:
  struct Tag {};
  static constexpr std::uint8_t kFullBits = 0b111;
  constexpr SignSet(std::uint8_t bits, Tag) noexcept : bits_(bits) {}

  std::uint8_t bits_;
};

/// Table lookups for definite operands.
SignSet add(Sign a, Sign b) noexcept;
SignSet sub(Sign a, Sign b) noexcept;
Sign mul(Sign a, Sign b) noexcept;

SignSet sign_add(SignSet a, SignSet b) noexcept;
SignSet sign_sub(SignSet a, SignSet b) noexcept;
SignSet sign_mul(SignSet a, SignSet b) noexcept;
SignSet inverse(SignSet s) noexcept;

/// A qualitative 3-vector. Denotes the Cartesian product of its components.
struct SignVec {
  std::array<SignSet, 3> c{Sign::Zero, Sign::Zero, Sign::Zero};

  constexpr SignVec() noexcept = default;
  constexpr SignVec(SignSet x, SignSet y, SignSet z) noexcept : c{x, y, z} {}

  static constexpr SignVec zero() noexcept { return {}; }
  static constexpr SignVec all() noexcept {
    return {SignSet::all(), SignSet::all(), SignSet::all()};
  }
  /// The definite vector with index `i` in [0, 27).
  static SignVec from_index(std::size_t i);

  constexpr SignSet x() const noexcept { return c[0]; }
  constexpr SignSet y() const noexcept { return c[1]; }
  constexpr SignSet z() const noexcept { return c[2]; }
  constexpr SignSet operator[](std::size_t i) const noexcept { return c[i]; }

  bool is_definite() const noexcept;
  bool is_zero() const noexcept;
  /// Index of a definite vector in [0, 27). Throws std::logic_error otherwise.
  std::size_t index() const;
  std::size_t cardinality() const noexcept;
  /// Definite vectors in this vector's denotation, in index order.
  std::vector<SignVec> denotation() const;
  /// True when every definite member of `other` is a member of this.
  bool covers(const SignVec& other) const noexcept;

  friend constexpr bool operator==(const SignVec&, const SignVec&) noexcept = default;
  friend constexpr auto operator<=>(const SignVec& a, const SignVec& b) noexcept {
    return a.c <=> b.c;
  }
};

/// Number of definite sign vectors.
inline constexpr std::size_t kDefiniteVectors = 27;

SignVec vec_add(const SignVec& a, const SignVec& b) noexcept;
SignVec vec_sub(const SignVec& a, const SignVec& b) noexcept;
SignVec vec_cross(const SignVec& a, const SignVec& b) noexcept;
SignSet vec_dot(const SignVec& a, const SignVec& b) noexcept;
SignVec inverse(const SignVec& v) noexcept;
/// Left fold of vec_add; the empty sum is the zero vector.
SignVec big_sum(std::span<const SignVec> vs) noexcept;

struct QuantizationConfig {
  double epsilon = 1e-6;
};

Sign quantize(double value, double epsilon);
/// Throws std::invalid_argument on non-finite input or negative epsilon.
SignVec quantize(const Vec3& v, const QuantizationConfig& cfg = {});

// Text encoding: "+", "-", "0", or a bracketed set such as "[+0]".
std::string to_string(SignSet s);
std::string to_string(const SignVec& v);
/// Accepts ASCII '-' and U+2212 for minus; throws std::invalid_argument.
SignSet parse_sign_set(std::string_view text);

}  // namespace qmotion
