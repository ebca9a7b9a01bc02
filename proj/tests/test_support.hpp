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

// Test-side oracles and generators. Nothing here calls into the solver code
// paths it is used to check.

#ifndef STA_TESTS_TEST_SUPPORT_HPP_
#define STA_TESTS_TEST_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace sta::testing {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

inline MatrixXd UniformMatrix(std::mt19937_64& rng, Index rows, Index cols,
                              double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  MatrixXd out(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) out(i, j) = dist(rng);
  }
  return out;
}

// Small integer entries so that many optimal permutations tie.
inline MatrixXd TiedMatrix(std::mt19937_64& rng, Index m, int max_value) {
  std::uniform_int_distribution<int> dist(0, max_value);
  MatrixXd out(m, m);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < m; ++j) out(i, j) = dist(rng);
  }
  return out;
}

inline MatrixXd RandomSpd(std::mt19937_64& rng, Index n) {
  const MatrixXd a = UniformMatrix(rng, n, n, -1.0, 1.0);
  return a * a.transpose() + 0.1 * MatrixXd::Identity(n, n);
}

// Visits every permutation of 0..m-1 in lexicographic order.
template <typename Fn>
void ForEachPermutation(int m, Fn&& fn) {
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 0);
  do {
    fn(p);
  } while (std::next_permutation(p.begin(), p.end()));
}

inline double PermutationCost(const MatrixXd& c, const std::vector<int>& p) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    total += c(static_cast<Index>(i), p[i]);
  }
  return total;
}

inline double EnumeratedMinimum(const MatrixXd& c) {
  double best = std::numeric_limits<double>::infinity();
  ForEachPermutation(static_cast<int>(c.rows()), [&](const auto& p) {
    best = std::min(best, PermutationCost(c, p));
  });
  return best;
}

// All permutations attaining the minimum within tol.
inline std::vector<std::vector<int>> EnumeratedArgmins(const MatrixXd& c,
                                                       double tol) {
  const double best = EnumeratedMinimum(c);
  std::vector<std::vector<int>> out;
  ForEachPermutation(static_cast<int>(c.rows()), [&](const auto& p) {
    if (PermutationCost(c, p) <= best + tol) out.push_back(p);
  });
  return out;
}

inline bool IsPermutationMatrix(const MatrixXd& a) {
  if (a.rows() != a.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) != 0.0 && a(i, j) != 1.0) return false;
    }
  }
  return (a.rowwise().sum().array() == 1.0).all() &&
         (a.colwise().sum().array() == 1.0).all();
}

inline double RelativeError(const MatrixXd& approx, const MatrixXd& exact) {
  const double denom = std::max(exact.norm(), 1e-300);
  return (approx - exact).norm() / denom;
}

}  // namespace sta::testing

#endif  // STA_TESTS_TEST_SUPPORT_HPP_
