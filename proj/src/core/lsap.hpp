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

// Linear sum assignment: a primal-dual Hungarian solver and an exhaustive
// enumeration oracle for small instances.

#ifndef STA_CORE_LSAP_HPP_
#define STA_CORE_LSAP_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace sta {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Square cost matrix, c(i, j) is what agent i pays for task j.
using CostMatrix = Matrix;

// Permutation of m agents onto m tasks. Stored as the task index chosen by
// each agent; the 0/1 matrix form is produced on demand.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::vector<int> task_of_agent);

  // Throws unless every row and every column holds exactly one 1 and all
  // other entries are 0.
  static Assignment FromMatrix(const Matrix& binary);
  static Assignment Identity(std::size_t m);

  std::size_t size() const { return task_of_agent_.size(); }
  int task_of(std::size_t agent) const { return task_of_agent_[agent]; }
  const std::vector<int>& tasks() const { return task_of_agent_; }

  Matrix ToMatrix() const;

  // Sum of cost(i, task_of(i)).
  double CostUnder(const Matrix& cost) const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<int> task_of_agent_;
};

// Task labels u, agent labels v. At termination v_i + u_j <= c_ij + eps for
// every pair, and matched pairs are tight within eps.
struct DualLabels {
  Vector u;
  Vector v;
  double eps = 0.0;
};

struct ShiftedCost {
  CostMatrix cost;
  double offset = 0.0;  // shifted = original - offset
};

struct LsapSolution {
  Assignment assignment;
  DualLabels duals;  // expressed against the caller's (unshifted) matrix
  double total_cost = 0.0;
  int augmentations = 0;
  int label_updates = 0;
};

struct BruteForceSolution {
  Assignment assignment;
  double total_cost = 0.0;
};

inline constexpr std::size_t kBruteForceMaxSize = 8;

// Rejects empty, non-square, or non-finite matrices, naming the first bad
// entry.
void ValidateCostMatrix(const Matrix& cost);

// Subtracts the minimum entry when it is negative. The optimal permutation is
// unchanged since every permutation's total moves by m * offset.
ShiftedCost ShiftNonnegative(const CostMatrix& cost);

// 1e-9 * (1 + max |entry|).
double DefaultTolerance(const CostMatrix& cost);

// Hungarian method. Labels start at v = 0 and u = column minima; admissible
// edges (|v_i + u_j - c_ij| <= eps) are matched greedily, augmenting paths are
// grown from all free agents at once, and when the alternating forest is stuck
// the marked agents gain delta while marked tasks lose delta (unmarked ones
// the opposite), with delta half the smallest slack leaving the forest.
//
// Negative inputs are shifted internally; total_cost is always reported on the
// original entries. O(m^3).
LsapSolution Solve(const CostMatrix& cost,
                   std::optional<double> eps = std::nullopt);

// Exhaustive search over all m! permutations, m <= kBruteForceMaxSize. Ties go
// to the lexicographically smallest task vector.
BruteForceSolution BruteForceSolve(const CostMatrix& cost);

}  // namespace sta

#endif  // STA_CORE_LSAP_HPP_
