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

#include "evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "error.hpp"

namespace sta {

namespace {

std::vector<Matrix> RobotFactors(const Scenario& s) {
  std::vector<Matrix> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    try {
      out.push_back(PsdFactor(s.robots[i].cov));
    } catch (const Error& e) {
      throw Error(e.code(), "robot " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

Positions Sample(const Scenario& s, const std::vector<Matrix>& factors,
                 RandomStream& stream) {
  Positions out(s.size(), 2);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto [z0, z1] = stream.NextNormalPair();
    const Eigen::Vector2d z(z0, z1);
    out.row(static_cast<Eigen::Index>(i)) =
        (s.robots[i].mean + factors[i] * z).transpose();
  }
  return out;
}

double OptimalCost(const CostMatrix& c) {
  if (static_cast<std::size_t>(c.rows()) <= kBruteForceMaxSize) {
    return BruteForceSolve(c).total_cost;
  }
  return Solve(c).total_cost;
}

}  // namespace

Positions SampleRealization(const Scenario& s, RandomStream& stream) {
  s.Validate();
  return Sample(s, RobotFactors(s), stream);
}

double EvaluateAssignment(const Assignment& a, const Positions& robots,
                          const Positions& tasks) {
  if (static_cast<Eigen::Index>(a.size()) != robots.rows() ||
      robots.rows() != tasks.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "assignment, robot and task counts differ");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    const Eigen::Index t = a.task_of(i);
    total += std::hypot(robots(r, 0) - tasks(t, 0), robots(r, 1) - tasks(t, 1));
  }
  return total;
}

double EvaluateAssignment(const Matrix& a, const Positions& robots,
                          const Positions& tasks) {
  return EvaluateAssignment(Assignment::FromMatrix(a), robots, tasks);
}

MCReport MonteCarloCompare(const Scenario& s,
                           const std::vector<NamedAssignment>& assignments,
                           std::uint64_t runs, std::uint64_t seed,
                           unsigned threads) {
  s.Validate();
  if (assignments.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no assignments to compare");
  }
  if (runs == 0) {
    throw Error(ErrorCode::kOutOfRange, "runs must be >= 1");
  }
  for (const auto& a : assignments) {
    if (a.assignment.size() != s.size()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "assignment '" + a.name + "' has the wrong size");
    }
  }

  const std::vector<Matrix> factors = RobotFactors(s);
  const auto n_runs = static_cast<Eigen::Index>(runs);
  const auto k = static_cast<Eigen::Index>(assignments.size());

  MCReport report;
  report.runs = runs;
  report.seed = seed;
  report.run_costs.resize(n_runs, k);
  report.oracle_costs.resize(n_runs);

  auto work = [&](Eigen::Index begin, Eigen::Index end) {
    for (Eigen::Index r = begin; r < end; ++r) {
      RandomStream stream(seed, static_cast<std::uint64_t>(r));
      const Positions robots = Sample(s, factors, stream);
      for (Eigen::Index a = 0; a < k; ++a) {
        report.run_costs(r, a) =
            EvaluateAssignment(assignments[a].assignment, robots, s.tasks);
      }
      report.oracle_costs[r] = OptimalCost(BuildCostMatrix(robots, s.tasks));
    }
  };

  const unsigned n_threads = std::max(
      1u, std::min<unsigned>(threads, static_cast<unsigned>(
                                          std::min<std::uint64_t>(runs, 256))));
  if (n_threads == 1) {
    work(0, n_runs);
  } else {
    std::vector<std::jthread> pool;
    const Eigen::Index chunk = (n_runs + n_threads - 1) / n_threads;
    for (unsigned t = 0; t < n_threads; ++t) {
      const Eigen::Index begin = std::min<Eigen::Index>(t * chunk, n_runs);
      const Eigen::Index end = std::min<Eigen::Index>(begin + chunk, n_runs);
      pool.emplace_back(work, begin, end);
    }
  }

  // Reductions in run-index order.
  report.stats.resize(assignments.size());
  for (Eigen::Index a = 0; a < k; ++a) {
    AssignmentStats& st = report.stats[a];
    st.name = assignments[a].name;
    // Offsets from the first run keep a constant column exactly constant.
    const double anchor = report.run_costs(0, a);
    double sum = 0.0;
    for (Eigen::Index r = 0; r < n_runs; ++r) {
      sum += report.run_costs(r, a) - anchor;
    }
    st.mean_cost = anchor + sum / static_cast<double>(runs);
    double sq = 0.0;
    for (Eigen::Index r = 0; r < n_runs; ++r) {
      const double d = report.run_costs(r, a) - st.mean_cost;
      sq += d * d;
    }
    st.std_cost = runs > 1 ? std::sqrt(sq / static_cast<double>(runs - 1))
                           : 0.0;
  }
  double oracle_sum = 0.0;
  for (Eigen::Index r = 0; r < n_runs; ++r) {
    oracle_sum += report.oracle_costs[r];
    const double bound =
        report.oracle_costs[r] - 1e-9 * (1.0 + report.oracle_costs[r]);
    bool violated = false;
    for (Eigen::Index a = 0; a < k; ++a) {
      violated = violated || report.run_costs(r, a) < bound;
      bool strictly_cheapest = k > 1;
      for (Eigen::Index b = 0; b < k && strictly_cheapest; ++b) {
        if (b != a && !(report.run_costs(r, a) < report.run_costs(r, b))) {
          strictly_cheapest = false;
        }
      }
      if (strictly_cheapest) ++report.stats[a].wins;
    }
    if (violated) ++report.lower_bound_violations;
  }
  report.oracle_mean_cost = oracle_sum / static_cast<double>(runs);

  if (k >= 2) {
    const double base = report.stats[0].mean_cost;
    const double other = report.stats[1].mean_cost;
    if (base > 0.0) {
      report.reduction_ratio = 1.0 - other / base;
    } else {
      report.reduction_ratio =
          other > 0.0 ? -std::numeric_limits<double>::infinity() : 0.0;
    }
  }
  return report;
}

}  // namespace sta
