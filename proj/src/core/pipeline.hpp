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

// Stochastic task allocation: scenario -> tasks -> costs -> sigma-point
// allocation -> aggregated assignment with confidence -> executable
// permutation.

#ifndef STA_CORE_PIPELINE_HPP_
#define STA_CORE_PIPELINE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lsap.hpp"
#include "unscented.hpp"

namespace sta {

// m x 2 matrix of planar positions, row i is entity i.
using Positions = Eigen::Matrix<double, Eigen::Dynamic, 2>;
using Mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

struct UtConfig {
  double alpha = 1.0;
  double beta = 2.0;
  double kappa = 0.0;
};

struct Scenario {
  std::string name;
  std::vector<GaussianVector> robots;  // 2-D position estimates
  Positions tasks;
  std::optional<Eigen::MatrixXi> adjacency;  // communication graph, data only
  UtConfig ut;

  std::size_t size() const { return robots.size(); }

  // Counts match and are >= 1, robot Gaussians are 2-D and PSD, adjacency is
  // m x m 0/1 with a zero diagonal.
  void Validate() const;

  // neighbors()[i] lists j with adjacency(i, j) == 1; empty without a graph.
  std::vector<std::vector<int>> Neighbors() const;

  Positions RobotMeans() const;
};

struct TaskSet {
  std::vector<GaussianVector> tasks;
};

struct StochasticCost {
  CostMatrix mean_cost;
  Matrix cov;  // m^2 x m^2, column-major vectorization
};

struct StochasticAssignment {
  Matrix gamma_s;   // sum_i w_m[i] * per_point[i]
  Matrix p_gamma;   // m^2 x m^2, column-major vectorization
  Matrix sigma_s;   // diagonal of p_gamma reshaped column-major
  std::vector<Assignment> per_point;
  std::vector<double> per_point_cost;
  UtParams params;
  SigmaPointSet sigma;
  StochasticCost cost;  // diagnostic only
};

struct DeterministicAllocation {
  Assignment assignment;
  double total_cost = 0.0;
  CostMatrix cost;
};

struct WeightedInverse {
  Matrix q;
  Mask unsupported;  // cells that received the sentinel
  double sentinel = 0.0;
};

struct Interpretation {
  Assignment assignment;
  WeightedInverse weighted_inverse;
  double total = 0.0;  // Q-total, sentinels included
  int sentinel_cells = 0;
  bool low_confidence = false;
};

inline constexpr double kDefaultSupportFloor = 1e-6;

// Task means from the scenario; covariances zero unless an override with one
// PSD 2x2 matrix per task is given.
TaskSet GenerateTasks(const Scenario& s,
                      const std::optional<std::vector<Matrix>>& task_cov =
                          std::nullopt);

// c_ij = |robot_i - task_j|.
CostMatrix BuildCostMatrix(const Positions& robots, const Positions& tasks);

// Robot means stacked (x1, y1, x2, y2, ...) with a block-diagonal covariance.
GaussianVector JointState(const Scenario& s);

// Inverse of the stacking in JointState.
Positions UnstackPositions(const Vector& joint);

UtParams ScenarioUtParams(const Scenario& s);

DeterministicAllocation DeterministicAllocate(const Scenario& s);

StochasticAssignment StochasticAllocate(const Scenario& s, const UtParams& p);

// Element (i, j) goes to index j * m + i.
Vector VecColumnMajor(const Matrix& m);
Matrix UnvecColumnMajor(const Vector& v);

// Q(i, j) = sigma_s(i, j) / gamma_s(i, j) where gamma_s(i, j) >= floor, the
// sentinel elsewhere. The default sentinel is m * (max finite Q + 1); a
// supplied one must be finite and at least m * max finite Q.
WeightedInverse WeightedInverseMatrix(const Matrix& gamma_s,
                                      const Matrix& sigma_s,
                                      double floor = kDefaultSupportFloor,
                                      std::optional<double> sentinel =
                                          std::nullopt);

// Hungarian on Q. A sentinel-priced cell can only be chosen when no
// permutation avoids them all; such results are flagged low_confidence.
Interpretation Interpret(const Matrix& gamma_s, const Matrix& sigma_s,
                         double floor = kDefaultSupportFloor,
                         std::optional<double> sentinel = std::nullopt);
Interpretation Interpret(const StochasticAssignment& sa,
                         double floor = kDefaultSupportFloor,
                         std::optional<double> sentinel = std::nullopt);

}  // namespace sta

#endif  // STA_CORE_PIPELINE_HPP_
