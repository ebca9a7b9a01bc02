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

#include "lsap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "error.hpp"

namespace sta {

Assignment::Assignment(std::vector<int> task_of_agent)
    : task_of_agent_(std::move(task_of_agent)) {
  const int m = static_cast<int>(task_of_agent_.size());
  std::vector<bool> used(task_of_agent_.size(), false);
  for (int t : task_of_agent_) {
    if (t < 0 || t >= m || used[t]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "assignment is not a permutation");
    }
    used[t] = true;
  }
}

Assignment Assignment::FromMatrix(const Matrix& binary) {
  if (binary.rows() != binary.cols() || binary.rows() == 0) {
    throw Error(ErrorCode::kDimensionMismatch,
                "assignment matrix must be square and non-empty");
  }
  const Eigen::Index m = binary.rows();
  std::vector<int> tasks(m, -1);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const double x = binary(i, j);
      if (x == 1.0) {
        if (tasks[i] != -1) {
          throw Error(ErrorCode::kInvalidArgument,
                      "row " + std::to_string(i) + " has more than one 1");
        }
        tasks[i] = static_cast<int>(j);
      } else if (x != 0.0) {
        throw Error(ErrorCode::kInvalidArgument,
                    "assignment entry (" + std::to_string(i) + ", " +
                        std::to_string(j) + ") is not 0 or 1");
      }
    }
    if (tasks[i] == -1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "row " + std::to_string(i) + " has no 1");
    }
  }
  return Assignment(std::move(tasks));  // column uniqueness checked here
}

Assignment Assignment::Identity(std::size_t m) {
  std::vector<int> tasks(m);
  std::iota(tasks.begin(), tasks.end(), 0);
  return Assignment(std::move(tasks));
}

Matrix Assignment::ToMatrix() const {
  const auto m = static_cast<Eigen::Index>(size());
  Matrix out = Matrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) out(i, task_of_agent_[i]) = 1.0;
  return out;
}

double Assignment::CostUnder(const Matrix& cost) const {
  if (cost.rows() != static_cast<Eigen::Index>(size()) ||
      cost.cols() != static_cast<Eigen::Index>(size())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cost matrix size does not match assignment size");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    total += cost(static_cast<Eigen::Index>(i), task_of_agent_[i]);
  }
  return total;
}

void ValidateCostMatrix(const Matrix& cost) {
  if (cost.rows() == 0 || cost.rows() != cost.cols()) {
    std::ostringstream msg;
    msg << "cost matrix must be square and non-empty, got " << cost.rows()
        << "x" << cost.cols();
    throw Error(ErrorCode::kDimensionMismatch, msg.str());
  }
  for (Eigen::Index i = 0; i < cost.rows(); ++i) {
    for (Eigen::Index j = 0; j < cost.cols(); ++j) {
      if (!std::isfinite(cost(i, j))) {
        std::ostringstream msg;
        msg << "cost entry (" << i << ", " << j << ") is not finite";
        throw Error(ErrorCode::kNonFinite, msg.str());
      }
    }
  }
}

ShiftedCost ShiftNonnegative(const CostMatrix& cost) {
  ValidateCostMatrix(cost);
  const double lowest = cost.minCoeff();
  if (lowest >= 0.0) return {cost, 0.0};
  return {(cost.array() - lowest).matrix(), lowest};
}

double DefaultTolerance(const CostMatrix& cost) {
  return 1e-9 * (1.0 + cost.cwiseAbs().maxCoeff());
}

namespace {

constexpr int kNone = -1;

// Working state of one Hungarian run on a non-negative matrix.
class HungarianState {
 public:
  HungarianState(const Matrix& cost, double eps)
      : c_(cost),
        m_(static_cast<int>(cost.rows())),
        eps_(eps),
        u_(cost.colwise().minCoeff().transpose()),
        v_(Vector::Zero(m_)),
        task_of_agent_(m_, kNone),
        agent_of_task_(m_, kNone) {}

  void Run() {
    GreedyMatch();
    while (matched_ < m_) {
      GrowUntilAugmented();
    }
  }

  Assignment TakeAssignment() { return Assignment(task_of_agent_); }
  const Vector& u() const { return u_; }
  const Vector& v() const { return v_; }
  int augmentations() const { return augmentations_; }
  int label_updates() const { return label_updates_; }

 private:
  double Reduced(int i, int j) const { return c_(i, j) - u_[j] - v_[i]; }

  void GreedyMatch() {
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < m_; ++j) {
        if (agent_of_task_[j] == kNone && std::abs(Reduced(i, j)) <= eps_) {
          task_of_agent_[i] = j;
          agent_of_task_[j] = i;
          ++matched_;
          break;
        }
      }
    }
  }

  void MarkAgent(int i) {
    agent_marked_[i] = true;
    for (int j = 0; j < m_; ++j) {
      if (task_marked_[j]) continue;
      const double s = Reduced(i, j);
      if (s < slack_[j]) {
        slack_[j] = s;
        slack_agent_[j] = i;
      }
    }
  }

  // One phase: builds the alternating forest rooted at every free agent,
  // updating labels whenever it cannot grow, until one augmentation happens.
  void GrowUntilAugmented() {
    agent_marked_.assign(m_, false);
    task_marked_.assign(m_, false);
    slack_.assign(m_, std::numeric_limits<double>::infinity());
    slack_agent_.assign(m_, kNone);
    pred_agent_.assign(m_, kNone);
    for (int i = 0; i < m_; ++i) {
      if (task_of_agent_[i] == kNone) MarkAgent(i);
    }

    while (true) {
      int next = kNone;
      for (int j = 0; j < m_; ++j) {
        if (!task_marked_[j] && slack_[j] <= eps_) {
          next = j;
          break;
        }
      }
      if (next == kNone) {
        UpdateLabels();
        continue;
      }
      task_marked_[next] = true;
      pred_agent_[next] = slack_agent_[next];
      const int owner = agent_of_task_[next];
      if (owner == kNone) {
        Augment(next);
        return;
      }
      MarkAgent(owner);
    }
  }

  void UpdateLabels() {
    double min_slack = std::numeric_limits<double>::infinity();
    for (int j = 0; j < m_; ++j) {
      if (!task_marked_[j]) min_slack = std::min(min_slack, slack_[j]);
    }
    const double delta = min_slack / 2.0;
    for (int i = 0; i < m_; ++i) v_[i] += agent_marked_[i] ? delta : -delta;
    for (int j = 0; j < m_; ++j) {
      if (task_marked_[j]) {
        u_[j] -= delta;
      } else {
        u_[j] += delta;
        slack_[j] -= 2.0 * delta;
      }
    }
    ++label_updates_;
  }

  void Augment(int task) {
    int j = task;
    while (j != kNone) {
      const int i = pred_agent_[j];
      const int previous = task_of_agent_[i];
      task_of_agent_[i] = j;
      agent_of_task_[j] = i;
      j = previous;
    }
    ++matched_;
    ++augmentations_;
  }

  const Matrix& c_;
  const int m_;
  const double eps_;
  Vector u_;
  Vector v_;
  std::vector<int> task_of_agent_;
  std::vector<int> agent_of_task_;
  int matched_ = 0;
  int augmentations_ = 0;
  int label_updates_ = 0;

  std::vector<bool> agent_marked_;
  std::vector<bool> task_marked_;
  std::vector<double> slack_;
  std::vector<int> slack_agent_;
  std::vector<int> pred_agent_;
};

}  // namespace

LsapSolution Solve(const CostMatrix& cost, std::optional<double> eps) {
  ShiftedCost shifted = ShiftNonnegative(cost);
  const double tol = eps.value_or(DefaultTolerance(cost));
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw Error(ErrorCode::kInvalidArgument,
                "admissibility tolerance must be positive and finite");
  }

  HungarianState state(shifted.cost, tol);
  state.Run();

  LsapSolution out;
  out.assignment = state.TakeAssignment();
  // Labels for the shifted matrix become labels for the original by moving
  // the offset onto the task side.
  out.duals.u = (state.u().array() + shifted.offset).matrix();
  out.duals.v = state.v();
  out.duals.eps = tol;
  out.total_cost = out.assignment.CostUnder(cost);
  out.augmentations = state.augmentations();
  out.label_updates = state.label_updates();
  return out;
}

BruteForceSolution BruteForceSolve(const CostMatrix& cost) {
  ValidateCostMatrix(cost);
  const auto m = static_cast<std::size_t>(cost.rows());
  if (m > kBruteForceMaxSize) {
    throw Error(ErrorCode::kOutOfRange,
                "brute force is limited to m <= " +
                    std::to_string(kBruteForceMaxSize) + ", got " +
                    std::to_string(m));
  }
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best = perm;
  double best_cost = std::numeric_limits<double>::infinity();
  // next_permutation walks lexicographic order, so strict < keeps the
  // smallest vector among ties.
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      total += cost(static_cast<Eigen::Index>(i), perm[i]);
    }
    if (total < best_cost) {
      best_cost = total;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {Assignment(std::move(best)), best_cost};
}

}  // namespace sta
