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

#include <cmath>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "error.hpp"
#include "test_support.hpp"

namespace sta {
namespace {

using testing::EnumeratedArgmins;
using testing::EnumeratedMinimum;
using testing::IsPermutationMatrix;

Matrix Mat(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(rows.size(), rows.begin()->size());
  Eigen::Index i = 0;
  for (auto r : rows) {
    Eigen::Index j = 0;
    for (double x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

Matrix DistanceMatrix(const std::vector<Eigen::Vector2d>& robots,
                      const std::vector<Eigen::Vector2d>& tasks) {
  Matrix c(robots.size(), tasks.size());
  for (std::size_t i = 0; i < robots.size(); ++i) {
    for (std::size_t j = 0; j < tasks.size(); ++j) {
      c(i, j) = (robots[i] - tasks[j]).norm();
    }
  }
  return c;
}

// Dual feasibility over every pair and tightness on matched pairs.
void ExpectDualCertificate(const Matrix& c, const LsapSolution& sol) {
  const double eps = sol.duals.eps;
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    for (Eigen::Index j = 0; j < c.cols(); ++j) {
      EXPECT_LE(sol.duals.v[i] + sol.duals.u[j], c(i, j) + eps)
          << "(" << i << ", " << j << ")";
    }
    const int j = sol.assignment.task_of(i);
    EXPECT_LE(std::abs(sol.duals.v[i] + sol.duals.u[j] - c(i, j)), eps)
        << "matched (" << i << ", " << j << ")";
  }
}

TEST(ShiftNonnegativeTest, LeavesNonnegativeMatrixAlone) {
  const Matrix c = Mat({{0, 1}, {1, 0}});
  const ShiftedCost s = ShiftNonnegative(c);
  EXPECT_EQ(s.cost, c);
  EXPECT_EQ(s.offset, 0.0);
}

TEST(ShiftNonnegativeTest, ShiftsByMinimum) {
  const ShiftedCost s = ShiftNonnegative(Mat({{-1, 0}, {0, -1}}));
  EXPECT_EQ(s.cost, Mat({{0, 1}, {1, 0}}));
  EXPECT_EQ(s.offset, -1.0);
}

TEST(ShiftNonnegativeTest, RejectsNonFiniteWithIndices) {
  Matrix c = Mat({{0, 1}, {1, 0}});
  c(1, 0) = std::nan("");
  try {
    ShiftNonnegative(c);
    FAIL() << "expected rejection";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFinite);
    EXPECT_NE(std::string(e.what()).find("(1, 0)"), std::string::npos);
  }
}

TEST(ShiftNonnegativeTest, PreservesOptimalPermutations) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix c = testing::UniformMatrix(rng, 4, 4, -50.0, 50.0);
    const ShiftedCost s = ShiftNonnegative(c);
    EXPECT_GE(s.cost.minCoeff(), 0.0);
    EXPECT_EQ(EnumeratedArgmins(c, 1e-9), EnumeratedArgmins(s.cost, 1e-9));
  }
}

TEST(SolveTest, ZeroDiagonal) {
  const LsapSolution sol = Solve(Mat({{0, 1}, {1, 0}}));
  EXPECT_EQ(sol.assignment, Assignment::Identity(2));
  EXPECT_EQ(sol.total_cost, 0.0);
}

TEST(SolveTest, SingleEntry) {
  const LsapSolution sol = Solve(Mat({{7}}));
  EXPECT_EQ(sol.assignment.task_of(0), 0);
  EXPECT_EQ(sol.total_cost, 7.0);
}

TEST(SolveTest, ScenarioTwoMeanDistances) {
  const Matrix c = DistanceMatrix({{1, 5}, {2, 2}, {9, 9}, {8, 4}},
                                  {{5, 5}, {2.5, 10}, {10, 5}, {5, 3}});
  const LsapSolution sol = Solve(c);
  EXPECT_EQ(sol.assignment, Assignment({1, 3, 2, 0}));
  ExpectDualCertificate(c, sol);
}

TEST(SolveTest, MatchesBruteForceOnRandomFourByFour) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix c = testing::UniformMatrix(rng, 4, 4, 0.0, 100.0);
    const LsapSolution sol = Solve(c);
    EXPECT_NEAR(sol.total_cost, BruteForceSolve(c).total_cost, 1e-9);
  }
}

TEST(SolveTest, NegativeEntriesReportOriginalCost) {
  const Matrix c = Mat({{-3, 5, 2}, {4, -1, 0}, {1, 2, -6}});
  const LsapSolution sol = Solve(c);
  EXPECT_NEAR(sol.total_cost, EnumeratedMinimum(c), 1e-12);
  EXPECT_DOUBLE_EQ(sol.total_cost, -10.0);
  ExpectDualCertificate(c, sol);
}

TEST(SolveTest, RejectsNonSquare) {
  EXPECT_THROW(Solve(Matrix::Zero(2, 3)), Error);
  EXPECT_THROW(Solve(Matrix(0, 0)), Error);
}

TEST(SolveTest, RejectsNonFinite) {
  Matrix c = Matrix::Zero(3, 3);
  c(2, 1) = std::numeric_limits<double>::infinity();
  try {
    Solve(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFinite);
  }
}

TEST(SolveTest, RejectsNonPositiveTolerance) {
  EXPECT_THROW(Solve(Matrix::Zero(2, 2), 0.0), Error);
}

// Solver cost equals enumeration for every size up to 6, including heavily
// tied integer matrices; the result is a permutation, the dual certificate
// holds, and the number of augmentations never exceeds m.
TEST(SolvePropertyTest, OptimalPermutationWithCertificate) {
  std::mt19937_64 rng(99);
  for (int m = 1; m <= 6; ++m) {
    for (int trial = 0; trial < 60; ++trial) {
      const Matrix c = trial % 2 == 0
                           ? testing::UniformMatrix(rng, m, m, 0.0, 100.0)
                           : testing::TiedMatrix(rng, m, 3);
      const LsapSolution sol = Solve(c);
      ASSERT_TRUE(IsPermutationMatrix(sol.assignment.ToMatrix()));
      EXPECT_NEAR(sol.total_cost, EnumeratedMinimum(c), 1e-9);
      EXPECT_LE(sol.augmentations, m);
      ExpectDualCertificate(c, sol);
    }
  }
}

TEST(SolvePropertyTest, ShiftInvariance) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> shift(-200.0, 200.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 2 + trial % 5;
    const Matrix c = testing::TiedMatrix(rng, m, 4);
    const Matrix shifted = (c.array() + shift(rng)).matrix();
    const auto argmins = EnumeratedArgmins(c, 1e-9);
    EXPECT_EQ(argmins, EnumeratedArgmins(shifted, 1e-6));
    const auto chosen = Solve(shifted).assignment.tasks();
    EXPECT_NE(std::find(argmins.begin(), argmins.end(), chosen),
              argmins.end());
  }
}

// Beyond enumeration range the dual certificate alone proves optimality:
// sum(u) + sum(v) lower-bounds every permutation within m * eps.
TEST(SolvePropertyTest, LargeInstancesCertifyThemselves) {
  std::mt19937_64 rng(64);
  for (int m : {16, 40, 64}) {
    const Matrix c = testing::UniformMatrix(rng, m, m, 0.0, 1000.0);
    const LsapSolution sol = Solve(c);
    ASSERT_TRUE(IsPermutationMatrix(sol.assignment.ToMatrix()));
    ExpectDualCertificate(c, sol);
    const double dual = sol.duals.u.sum() + sol.duals.v.sum();
    EXPECT_NEAR(sol.total_cost, dual, m * sol.duals.eps);
    EXPECT_LE(sol.augmentations, m);
  }
}

TEST(BruteForceTest, SingleEntry) {
  const BruteForceSolution sol = BruteForceSolve(Mat({{7}}));
  EXPECT_EQ(sol.assignment.ToMatrix(), Mat({{1}}));
  EXPECT_EQ(sol.total_cost, 7.0);
}

TEST(BruteForceTest, ZeroDiagonal) {
  EXPECT_EQ(BruteForceSolve(Mat({{0, 1}, {1, 0}})).total_cost, 0.0);
}

TEST(BruteForceTest, ScenarioOneIsIdentity) {
  const Matrix c = DistanceMatrix({{10, 15}, {2, 2}, {0, 40}, {20, 4}},
                                  {{9, 14}, {1, 1}, {0, 38}, {18, 3}});
  EXPECT_EQ(BruteForceSolve(c).assignment, Assignment::Identity(4));
}

TEST(BruteForceTest, LexicographicTieBreak) {
  EXPECT_EQ(BruteForceSolve(Matrix::Zero(3, 3)).assignment,
            Assignment::Identity(3));
  const Matrix c = Mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  // Both (1, 2, 0) and (2, 0, 1) cost 0.
  EXPECT_EQ(BruteForceSolve(c).assignment, Assignment({1, 2, 0}));
}

TEST(BruteForceTest, RejectsLargeInstances) {
  try {
    BruteForceSolve(Matrix::Zero(9, 9));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfRange);
  }
}

TEST(AssignmentTest, FromMatrixRejectsNonPermutations) {
  EXPECT_THROW(Assignment::FromMatrix(Mat({{1, 1}, {0, 0}})), Error);
  EXPECT_THROW(Assignment::FromMatrix(Mat({{1, 0}, {1, 0}})), Error);
  EXPECT_THROW(Assignment::FromMatrix(Mat({{0.5, 0.5}, {0.5, 0.5}})), Error);
  EXPECT_THROW(Assignment::FromMatrix(Matrix::Zero(2, 3)), Error);
  EXPECT_EQ(Assignment::FromMatrix(Mat({{0, 1}, {1, 0}})),
            Assignment({1, 0}));
}

TEST(AssignmentTest, ConstructorRejectsRepeatedTask) {
  EXPECT_THROW(Assignment({0, 0}), Error);
  EXPECT_THROW(Assignment({0, 2}), Error);
}

}  // namespace
}  // namespace sta
