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

#include "pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "error.hpp"

namespace sta {

void Scenario::Validate() const {
  const std::size_t m = robots.size();
  if (m == 0) {
    throw Error(ErrorCode::kInvalidArgument, "scenario has no robots");
  }
  if (static_cast<std::size_t>(tasks.rows()) != m) {
    std::ostringstream msg;
    msg << "scenario has " << m << " robots but " << tasks.rows() << " tasks";
    throw Error(ErrorCode::kDimensionMismatch, msg.str());
  }
  if (!tasks.allFinite()) {
    throw Error(ErrorCode::kNonFinite, "task positions are not finite");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (robots[i].dim() != 2) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "robot " + std::to_string(i) + " is not 2-D");
    }
    try {
      robots[i].Validate();
    } catch (const Error& e) {
      throw Error(e.code(), "robot " + std::to_string(i) + ": " + e.what());
    }
  }
  if (adjacency) {
    const auto& g = *adjacency;
    if (static_cast<std::size_t>(g.rows()) != m ||
        static_cast<std::size_t>(g.cols()) != m) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "adjacency must be " + std::to_string(m) + "x" +
                      std::to_string(m));
    }
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      if (g(i, i) != 0) {
        throw Error(ErrorCode::kInvalidArgument,
                    "adjacency diagonal must be zero");
      }
      for (Eigen::Index j = 0; j < g.cols(); ++j) {
        if (g(i, j) != 0 && g(i, j) != 1) {
          throw Error(ErrorCode::kInvalidArgument,
                      "adjacency entries must be 0 or 1");
        }
      }
    }
  }
}

std::vector<std::vector<int>> Scenario::Neighbors() const {
  std::vector<std::vector<int>> out(size());
  if (!adjacency) return out;
  for (Eigen::Index i = 0; i < adjacency->rows(); ++i) {
    for (Eigen::Index j = 0; j < adjacency->cols(); ++j) {
      if ((*adjacency)(i, j) == 1) out[i].push_back(static_cast<int>(j));
    }
  }
  return out;
}

Positions Scenario::RobotMeans() const {
  Positions out(robots.size(), 2);
  for (std::size_t i = 0; i < robots.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = robots[i].mean.transpose();
  }
  return out;
}

TaskSet GenerateTasks(const Scenario& s,
                      const std::optional<std::vector<Matrix>>& task_cov) {
  s.Validate();
  const std::size_t m = s.size();
  if (task_cov && task_cov->size() != m) {
    throw Error(ErrorCode::kDimensionMismatch,
                "task covariance override needs one matrix per task");
  }
  TaskSet out;
  out.tasks.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    GaussianVector t;
    t.mean = s.tasks.row(static_cast<Eigen::Index>(j)).transpose();
    t.cov = task_cov ? (*task_cov)[j] : Matrix::Zero(2, 2);
    try {
      t.Validate();
    } catch (const Error& e) {
      throw Error(e.code(), "task " + std::to_string(j) + ": " + e.what());
    }
    out.tasks.push_back(std::move(t));
  }
  return out;
}

CostMatrix BuildCostMatrix(const Positions& robots, const Positions& tasks) {
  if (robots.rows() != tasks.rows()) {
    std::ostringstream msg;
    msg << "cost matrix needs equal counts, got " << robots.rows()
        << " robots and " << tasks.rows() << " tasks";
    throw Error(ErrorCode::kDimensionMismatch, msg.str());
  }
  if (!robots.allFinite() || !tasks.allFinite()) {
    throw Error(ErrorCode::kNonFinite, "positions are not finite");
  }
  const Eigen::Index m = robots.rows();
  CostMatrix c(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      c(i, j) = std::hypot(robots(i, 0) - tasks(j, 0),
                           robots(i, 1) - tasks(j, 1));
    }
  }
  return c;
}

GaussianVector JointState(const Scenario& s) {
  s.Validate();
  const auto m = static_cast<Eigen::Index>(s.size());
  GaussianVector joint;
  joint.mean.resize(2 * m);
  joint.cov = Matrix::Zero(2 * m, 2 * m);
  for (Eigen::Index i = 0; i < m; ++i) {
    joint.mean.segment<2>(2 * i) = s.robots[i].mean;
    joint.cov.block<2, 2>(2 * i, 2 * i) = s.robots[i].cov;
  }
  return joint;
}

Positions UnstackPositions(const Vector& joint) {
  if (joint.size() % 2 != 0) {
    throw Error(ErrorCode::kDimensionMismatch,
                "joint state length must be even");
  }
  const Eigen::Index m = joint.size() / 2;
  Positions out(m, 2);
  for (Eigen::Index i = 0; i < m; ++i) {
    out(i, 0) = joint[2 * i];
    out(i, 1) = joint[2 * i + 1];
  }
  return out;
}

UtParams ScenarioUtParams(const Scenario& s) {
  return MakeUtParams(2 * s.size(), s.ut.alpha, s.ut.beta, s.ut.kappa);
}

DeterministicAllocation DeterministicAllocate(const Scenario& s) {
  s.Validate();
  DeterministicAllocation out;
  out.cost = BuildCostMatrix(s.RobotMeans(), s.tasks);
  LsapSolution sol = Solve(out.cost);
  out.assignment = std::move(sol.assignment);
  out.total_cost = sol.total_cost;
  return out;
}

StochasticAssignment StochasticAllocate(const Scenario& s, const UtParams& p) {
  s.Validate();
  const auto m = static_cast<Eigen::Index>(s.size());
  if (p.dim != static_cast<std::size_t>(2 * m)) {
    std::ostringstream msg;
    msg << "UT parameters are for L=" << p.dim << ", scenario needs L="
        << 2 * m;
    throw Error(ErrorCode::kDimensionMismatch, msg.str());
  }

  StochasticAssignment out;
  out.params = p;
  out.sigma = GenerateSigmaPoints(JointState(s), p);

  const Eigen::Index n = out.sigma.points.rows();
  const Eigen::Index mm = m * m;
  Matrix gamma_vecs(mm, n);
  Matrix cost_vecs(mm, n);
  out.per_point.reserve(n);
  out.per_point_cost.reserve(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Positions robots =
        UnstackPositions(out.sigma.points.row(k).transpose());
    const CostMatrix c = BuildCostMatrix(robots, s.tasks);
    LsapSolution sol = Solve(c);
    gamma_vecs.col(k) = VecColumnMajor(sol.assignment.ToMatrix());
    cost_vecs.col(k) = VecColumnMajor(c);
    out.per_point_cost.push_back(sol.total_cost);
    out.per_point.push_back(std::move(sol.assignment));
  }

  // Fixed-order weighted reductions.
  const Vector gamma_mean =
      WeightedMean(gamma_vecs.transpose(), p.mean_weights);
  const Vector cost_mean =
      WeightedMean(cost_vecs.transpose(), p.mean_weights);
  out.p_gamma = Matrix::Zero(mm, mm);
  out.cost.cov = Matrix::Zero(mm, mm);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Vector dg = gamma_vecs.col(k) - gamma_mean;
    const Vector dc = cost_vecs.col(k) - cost_mean;
    out.p_gamma.noalias() += p.cov_weights[k] * (dg * dg.transpose());
    out.cost.cov.noalias() += p.cov_weights[k] * (dc * dc.transpose());
  }

  out.gamma_s = UnvecColumnMajor(gamma_mean);
  out.sigma_s = UnvecColumnMajor(out.p_gamma.diagonal());
  out.cost.mean_cost = UnvecColumnMajor(cost_mean);
  return out;
}

Vector VecColumnMajor(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix must be square");
  }
  // Eigen's default storage is column-major, so this is a plain copy.
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix UnvecColumnMajor(const Vector& v) {
  const auto m = static_cast<Eigen::Index>(
      std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (m * m != v.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vector length " + std::to_string(v.size()) +
                    " is not a perfect square");
  }
  return Eigen::Map<const Matrix>(v.data(), m, m);
}

WeightedInverse WeightedInverseMatrix(const Matrix& gamma_s,
                                      const Matrix& sigma_s, double floor,
                                      std::optional<double> sentinel) {
  if (gamma_s.rows() != gamma_s.cols() || gamma_s.rows() == 0 ||
      sigma_s.rows() != gamma_s.rows() || sigma_s.cols() != gamma_s.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "gamma_s and sigma_s must be the same square shape");
  }
  if (!gamma_s.allFinite() || !sigma_s.allFinite()) {
    throw Error(ErrorCode::kNonFinite, "gamma_s or sigma_s is not finite");
  }
  if (!(floor > 0.0) || !std::isfinite(floor)) {
    throw Error(ErrorCode::kOutOfRange, "support floor must be positive");
  }
  const Eigen::Index m = gamma_s.rows();
  WeightedInverse out;
  out.q = Matrix::Zero(m, m);
  out.unsupported = (gamma_s.array() < floor);
  double max_finite = 0.0;
  bool any_finite = false;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      if (out.unsupported(i, j)) continue;
      const double q = sigma_s(i, j) / gamma_s(i, j);
      out.q(i, j) = q;
      max_finite = any_finite ? std::max(max_finite, q) : q;
      any_finite = true;
    }
  }
  if (!any_finite) max_finite = 0.0;
  const double md = static_cast<double>(m);
  if (sentinel) {
    if (!std::isfinite(*sentinel) || *sentinel < md * max_finite) {
      std::ostringstream msg;
      msg << "sentinel " << *sentinel << " must be finite and >= "
          << md * max_finite;
      throw Error(ErrorCode::kOutOfRange, msg.str());
    }
    out.sentinel = *sentinel;
  } else {
    out.sentinel = md * (max_finite + 1.0);
  }
  out.q = out.unsupported.select(Matrix::Constant(m, m, out.sentinel), out.q);
  return out;
}

Interpretation Interpret(const Matrix& gamma_s, const Matrix& sigma_s,
                         double floor, std::optional<double> sentinel) {
  Interpretation out;
  out.weighted_inverse = WeightedInverseMatrix(gamma_s, sigma_s, floor,
                                               sentinel);
  LsapSolution sol = Solve(out.weighted_inverse.q);
  out.assignment = std::move(sol.assignment);
  out.total = sol.total_cost;
  for (std::size_t i = 0; i < out.assignment.size(); ++i) {
    if (out.weighted_inverse.unsupported(static_cast<Eigen::Index>(i),
                                         out.assignment.task_of(i))) {
      ++out.sentinel_cells;
    }
  }
  out.low_confidence = out.sentinel_cells > 0;
  return out;
}

Interpretation Interpret(const StochasticAssignment& sa, double floor,
                         std::optional<double> sentinel) {
  return Interpret(sa.gamma_s, sa.sigma_s, floor, sentinel);
}

}  // namespace sta
