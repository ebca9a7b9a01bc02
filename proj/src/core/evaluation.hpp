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

// Seeded Monte Carlo comparison of fixed assignments under sampled robot
// positions.

#ifndef STA_CORE_EVALUATION_HPP_
#define STA_CORE_EVALUATION_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "lsap.hpp"
#include "pipeline.hpp"
#include "random.hpp"

namespace sta {

inline constexpr std::uint64_t kDefaultRuns = 10000;

struct NamedAssignment {
  std::string name;
  Assignment assignment;
};

struct AssignmentStats {
  std::string name;
  double mean_cost = 0.0;
  double std_cost = 0.0;  // sample standard deviation, 0 for a single run
  std::uint64_t wins = 0;  // runs where it was strictly cheapest
};

struct MCReport {
  std::uint64_t runs = 0;
  std::uint64_t seed = 0;
  std::vector<AssignmentStats> stats;
  // 1 - mean(second) / mean(first); 0 with fewer than two assignments.
  double reduction_ratio = 0.0;
  // Per-run optimum over all permutations for the sampled positions.
  double oracle_mean_cost = 0.0;
  std::uint64_t lower_bound_violations = 0;
  Matrix run_costs;  // runs x assignments
  Vector oracle_costs;
};

// robot_i = mean_i + S_i z with S_i = PsdFactor(cov_i) and z one standard
// normal pair drawn from `stream`, robots in index order.
Positions SampleRealization(const Scenario& s, RandomStream& stream);

double EvaluateAssignment(const Assignment& a, const Positions& robots,
                          const Positions& tasks);
// Matrix form; rejects anything that is not a permutation matrix.
double EvaluateAssignment(const Matrix& a, const Positions& robots,
                          const Positions& tasks);

// Run r samples one realization from substream r of `seed` and prices every
// assignment on it. Results depend only on (scenario, assignments, runs,
// seed); `threads` only splits the run range.
MCReport MonteCarloCompare(const Scenario& s,
                           const std::vector<NamedAssignment>& assignments,
                           std::uint64_t runs, std::uint64_t seed,
                           unsigned threads = 1);

}  // namespace sta

#endif  // STA_CORE_EVALUATION_HPP_
