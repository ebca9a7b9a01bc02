// Copyright 2026 The STA Authors
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

// Scenario files (JSON) and their content hash.

#ifndef STA_CORE_SCENARIO_IO_HPP_
#define STA_CORE_SCENARIO_IO_HPP_

#include <string>
#include <string_view>

#include "pipeline.hpp"

namespace sta {

struct LoadedScenario {
  Scenario scenario;
  std::string sha256;  // hex digest of the source text
};

// Schema:
//   {
//     "name": "...",                                   optional
//     "tasks": [[x, y], ...],
//     "robots": [{"mean": [x, y], "cov": [[a, b], [c, d]]}, ...],
//     "adjacency": [[0, 1, ...], ...],                 optional
//     "ut": {"alpha": 1, "beta": 2, "kappa": 0}        optional, per key
//   }
// Unknown keys are rejected with their JSON pointer.
LoadedScenario ParseScenario(std::string_view text);
LoadedScenario LoadScenarioFile(const std::string& path);

std::string Sha256Hex(std::string_view data);

}  // namespace sta

#endif  // STA_CORE_SCENARIO_IO_HPP_
