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
#include <stdexcept>
#include <string>
#include <utility>

namespace qmotion {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A force set is larger than the configured power-set cap.
class CapExceeded : public Error {
 public:
  CapExceeded(std::string object, std::size_t count, std::size_t cap)
      : Error("object '" + object + "' has " + std::to_string(count) +
              " forces, above the subset cap of " + std::to_string(cap)),
        object_(std::move(object)),
        count_(count),
        cap_(cap) {}

  const std::string& object() const noexcept { return object_; }
  std::size_t count() const noexcept { return count_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::string object_;
  std::size_t count_;
  std::size_t cap_;
};

/// Malformed or inconsistent scene input. `field` names the offending item.
class InvalidScene : public Error {
 public:
  enum class Kind { Malformed, UnknownObject, DuplicateId };

  InvalidScene(Kind kind, std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), kind_(kind), field_(std::move(field)) {}

  Kind kind() const noexcept { return kind_; }
  const std::string& field() const noexcept { return field_; }

 private:
  Kind kind_;
  std::string field_;
};

/// Heuristic 2 is enabled but no object changed state.
class NoMovedObject : public Error {
 public:
  NoMovedObject() : Error("no object changed state; an action on a moved object is required") {}
};

class NumericBlowup : public Error {
 public:
  using Error::Error;
};

class UnstableInitialStack : public Error {
 public:
  UnstableInitialStack(const std::string& what, double max_speed)
      : Error(what), max_speed_(max_speed) {}

  double max_speed() const noexcept { return max_speed_; }

 private:
  double max_speed_;
};

}  // namespace qmotion
