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

// End-to-end runs and their report documents.

#ifndef STA_CORE_EXPERIMENT_HPP_
#define STA_CORE_EXPERIMENT_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "evaluation.hpp"
#include "pipeline.hpp"
#include "scenario_io.hpp"

namespace sta {

inline constexpr char kToolName[] = "sta";
inline constexpr char kToolVersion[] = "0.1.0";
inline constexpr char kRandomStreamName[] = "philox4x32-10";
inline constexpr double kTargetReductionRatio = 0.30;
inline constexpr double kReductionTolerance = 0.15;

enum class AllocationMode { kDeterministic, kStochastic };

struct InterpretSettings {
  double support_floor = kDefaultSupportFloor;
  std::optional<double> sentinel;
};

struct AllocationRun {
  std::string scenario_name;
  std::string scenario_sha256;
  std::size_t robots = 0;
  AllocationMode mode = AllocationMode::kDeterministic;
  DeterministicAllocation deterministic;
  // Present in stochastic mode.
  std::optional<StochasticAssignment> stochastic;
  std::optional<Interpretation> interpretation;
  InterpretSettings interpret_settings;

  // The executable permutation: Gamma_f when stochastic, Gamma_0 otherwise.
  const Assignment& executable() const;
};

struct ComparisonRun {
  AllocationRun allocation;  // always stochastic
  MCReport monte_carlo;
};

// `ut` overrides the scenario's own settings when given.
AllocationRun RunAllocation(const LoadedScenario& s, AllocationMode mode,
                            const std::optional<UtConfig>& ut = std::nullopt,
                            const InterpretSettings& interp = {});

// Deterministic and stochastic pipelines, then a paired Monte Carlo
// comparison of Gamma_0 (first) against Gamma_f (second).
ComparisonRun RunComparison(const LoadedScenario& s, std::uint64_t runs,
                            std::uint64_t seed,
                            const std::optional<UtConfig>& ut = std::nullopt,
                            const InterpretSettings& interp = {},
                            unsigned threads = 1);

// JSON report text, newline terminated. Matrices are arrays of rows (entry
// [i][j] is robot i, task j); m^2 x m^2 covariances use column-major
// vectorization, index j*m + i for cell (i, j); indices are 0-based. Output
// is a pure function of the run, so identical runs give identical bytes.
std::string AllocationReportJson(const AllocationRun& run);
std::string ComparisonReportJson(const ComparisonRun& run);

// Columns: run, one per compared assignment in order, oracle. Header line
// first, then one line per run; numbers use 17 significant digits.
std::string RunsCsv(const MCReport& report);

}  // namespace sta

#endif  // STA_CORE_EXPERIMENT_HPP_
