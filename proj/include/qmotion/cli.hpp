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

#include <ostream>
#include <string>
#include <vector>

namespace qmotion::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kNoSolution = 3,
  kCheckFailed = 4,
};

/// Runs one command line (without the program name).
///
///   validate <scene>
///   infer    <scene> [--heuristics H] [--cap N] [--max-solutions N] [--format F] [--epsilon E]
///   predict  <scene> <forces> [--cap N] [--format F] [--epsilon E]
///   generate --stack N [--impulse SPEC] [--seed S] [--horizon H] [--lift] [--out P] [--truth P]
///   check    <scene> <sidecar> [--heuristics H] [--cap N] [--epsilon E] [--format F]
///            [--max-objects N]
///
/// Bad arguments count as input errors. AIP_THREADS caps the solver's worker threads.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qmotion::cli
