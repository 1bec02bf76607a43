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

#include "qmotion/sign.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qmotion {

namespace {

constexpr unsigned idx(Sign s) { return static_cast<unsigned>(s); }

// Rows are the left operand, columns the right, both in (+, 0, -) order.
constexpr SignSet kStar = SignSet::all();
constexpr std::array<std::array<SignSet, 3>, 3> kAddTable{{
    {Sign::Plus, Sign::Plus, kStar},
    {Sign::Plus, Sign::Zero, Sign::Minus},
    {kStar, Sign::Minus, Sign::Minus},
}};
constexpr std::array<std::array<SignSet, 3>, 3> kSubTable{{
    {kStar, Sign::Plus, Sign::Plus},
    {Sign::Minus, Sign::Zero, Sign::Plus},
    {Sign::Minus, Sign::Minus, kStar},
}};
constexpr std::array<std::array<Sign, 3>, 3> kMulTable{{
    {Sign::Plus, Sign::Zero, Sign::Minus},
    {Sign::Zero, Sign::Zero, Sign::Zero},
    {Sign::Minus, Sign::Zero, Sign::Plus},
}};

using LiftTable = std::array<std::array<std::uint8_t, 8>, 8>;

// Set-level operation tables indexed by the operand bit masks.
template <typename Op>
constexpr LiftTable make_lift(Op op) {
  LiftTable t{};
  for (unsigned a = 1; a < 8; ++a) {
    for (unsigned b = 1; b < 8; ++b) {
      for (unsigned x = 0; x < 3; ++x) {
        if (!((a >> x) & 1u)) continue;
        for (unsigned y = 0; y < 3; ++y) {
          if ((b >> y) & 1u) t[a][b] |= op(x, y);
        }
      }
    }
  }
  return t;
}

constexpr LiftTable kAddLift =
    make_lift([](unsigned x, unsigned y) { return kAddTable[x][y].bits(); });
constexpr LiftTable kSubLift =
    make_lift([](unsigned x, unsigned y) { return kSubTable[x][y].bits(); });
constexpr LiftTable kMulLift = make_lift(
    [](unsigned x, unsigned y) { return static_cast<std::uint8_t>(1u << idx(kMulTable[x][y])); });

SignSet lift(const LiftTable& t, SignSet a, SignSet b) noexcept {
  return *SignSet::from_bits(t[a.bits()][b.bits()]);
}

}  // namespace

char to_char(Sign s) noexcept {
  switch (s) {
    case Sign::Plus:
      return '+';
    case Sign::Minus:
      return '-';
    case Sign::Zero:
      break;
  }
  return '0';
}

SignSet SignSet::of(std::initializer_list<Sign> signs) {
  std::uint8_t bits = 0;
  for (Sign s : signs) bits |= SignSet(s).bits();
  if (bits == 0) throw std::invalid_argument("SignSet must be nonempty");
  return SignSet(bits, Tag{});
}

std::optional<SignSet> SignSet::from_bits(std::uint8_t bits) noexcept {
  if (bits == 0 || (bits & ~kFullBits) != 0) return std::nullopt;
  return SignSet(bits, Tag{});
}

std::optional<Sign> SignSet::single() const noexcept {
  if (!is_singleton()) return std::nullopt;
  return static_cast<Sign>(std::countr_zero(bits_));
}

std::size_t SignSet::size() const noexcept { return std::popcount(bits_); }

std::vector<Sign> SignSet::members() const {
  std::vector<Sign> out;
  for (Sign s : kAllSigns) {
    if (contains(s)) out.push_back(s);
  }
  return out;
}

std::optional<SignSet> SignSet::intersect(SignSet other) const noexcept {
  return from_bits(static_cast<std::uint8_t>(bits_ & other.bits_));
}

SignSet add(Sign a, Sign b) noexcept { return kAddTable[idx(a)][idx(b)]; }
SignSet sub(Sign a, Sign b) noexcept { return kSubTable[idx(a)][idx(b)]; }
Sign mul(Sign a, Sign b) noexcept { return kMulTable[idx(a)][idx(b)]; }

SignSet sign_add(SignSet a, SignSet b) noexcept { return lift(kAddLift, a, b); }
SignSet sign_sub(SignSet a, SignSet b) noexcept { return lift(kSubLift, a, b); }
SignSet sign_mul(SignSet a, SignSet b) noexcept { return lift(kMulLift, a, b); }

SignSet inverse(SignSet s) noexcept {
  std::uint8_t bits = 0;
  for (Sign x : kAllSigns) {
    if (s.contains(x)) bits |= SignSet(negate(x)).bits();
  }
  return *SignSet::from_bits(bits);
}

SignVec SignVec::from_index(std::size_t i) {
  if (i >= kDefiniteVectors) throw std::out_of_range("sign vector index out of range");
  return {static_cast<Sign>(i / 9), static_cast<Sign>((i / 3) % 3),
          static_cast<Sign>(i % 3)};
}

bool SignVec::is_definite() const noexcept {
  return c[0].is_singleton() && c[1].is_singleton() && c[2].is_singleton();
}

bool SignVec::is_zero() const noexcept {
  return *this == SignVec::zero();
}

std::size_t SignVec::index() const {
  if (!is_definite()) throw std::logic_error("index() of an indefinite sign vector");
  return idx(*c[0].single()) * 9 + idx(*c[1].single()) * 3 + idx(*c[2].single());
}

std::size_t SignVec::cardinality() const noexcept {
  return c[0].size() * c[1].size() * c[2].size();
}

std::vector<SignVec> SignVec::denotation() const {
  std::vector<SignVec> out;
  out.reserve(cardinality());
  for (Sign x : c[0].members()) {
    for (Sign y : c[1].members()) {
      for (Sign z : c[2].members()) out.emplace_back(x, y, z);
    }
  }
  return out;
}

bool SignVec::covers(const SignVec& other) const noexcept {
  return other.c[0].subset_of(c[0]) && other.c[1].subset_of(c[1]) &&
         other.c[2].subset_of(c[2]);
}

SignVec vec_add(const SignVec& a, const SignVec& b) noexcept {
  return {sign_add(a.c[0], b.c[0]), sign_add(a.c[1], b.c[1]), sign_add(a.c[2], b.c[2])};
}

SignVec vec_sub(const SignVec& a, const SignVec& b) noexcept {
  return {sign_sub(a.c[0], b.c[0]), sign_sub(a.c[1], b.c[1]), sign_sub(a.c[2], b.c[2])};
}

SignVec vec_cross(const SignVec& u, const SignVec& v) noexcept {
  return {sign_sub(sign_mul(u.c[1], v.c[2]), sign_mul(u.c[2], v.c[1])),
          sign_sub(sign_mul(u.c[2], v.c[0]), sign_mul(u.c[0], v.c[2])),
          sign_sub(sign_mul(u.c[0], v.c[1]), sign_mul(u.c[1], v.c[0]))};
}

SignSet vec_dot(const SignVec& u, const SignVec& v) noexcept {
  return sign_add(sign_add(sign_mul(u.c[0], v.c[0]), sign_mul(u.c[1], v.c[1])),
                  sign_mul(u.c[2], v.c[2]));
}

SignVec inverse(const SignVec& v) noexcept {
  return {inverse(v.c[0]), inverse(v.c[1]), inverse(v.c[2])};
}

SignVec big_sum(std::span<const SignVec> vs) noexcept {
  SignVec acc = SignVec::zero();
  for (const SignVec& v : vs) acc = vec_add(acc, v);
  return acc;
}

Sign quantize(double value, double epsilon) {
  if (!std::isfinite(value)) throw std::invalid_argument("cannot quantize a non-finite value");
  if (std::abs(value) <= epsilon) return Sign::Zero;
  return value > 0 ? Sign::Plus : Sign::Minus;
}

SignVec quantize(const Vec3& v, const QuantizationConfig& cfg) {
  if (!(cfg.epsilon >= 0)) throw std::invalid_argument("quantization epsilon must be >= 0");
  return {quantize(v.x(), cfg.epsilon), quantize(v.y(), cfg.epsilon),
          quantize(v.z(), cfg.epsilon)};
}

std::string to_string(SignSet s) {
  if (auto one = s.single()) return std::string(1, to_char(*one));
  std::string out = "[";
  for (Sign x : s.members()) out.push_back(to_char(x));
  out.push_back(']');
  return out;
}

std::string to_string(const SignVec& v) {
  return "(" + to_string(v.c[0]) + "," + to_string(v.c[1]) + "," + to_string(v.c[2]) + ")";
}

SignSet parse_sign_set(std::string_view text) {
  auto fail = [&]() -> SignSet {
    throw std::invalid_argument("invalid sign encoding '" + std::string(text) + "'");
  };
  // U+2212 MINUS SIGN, UTF-8 encoded.
  constexpr std::string_view kUnicodeMinus = "\xE2\x88\x92";

  std::string_view body = text;
  const bool bracketed = body.size() >= 2 && body.front() == '[' && body.back() == ']';
  if (bracketed) body = body.substr(1, body.size() - 2);
  if (body.empty()) return fail();

  std::uint8_t bits = 0;
  std::size_t count = 0;
  while (!body.empty()) {
    Sign s;
    if (body.starts_with(kUnicodeMinus)) {
      s = Sign::Minus;
      body.remove_prefix(kUnicodeMinus.size());
    } else {
      switch (body.front()) {
        case '+':
          s = Sign::Plus;
          break;
        case '-':
          s = Sign::Minus;
          break;
        case '0':
          s = Sign::Zero;
          break;
        default:
          return fail();
      }
      body.remove_prefix(1);
    }
    const std::uint8_t bit = SignSet(s).bits();
    if (bits & bit) return fail();
    bits |= bit;
    ++count;
  }
  if (!bracketed && count != 1) return fail();
  return *SignSet::from_bits(bits);
}

}  // namespace qmotion
