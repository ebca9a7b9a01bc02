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

// Scaled unscented transform: sigma-point generation, pointwise propagation
// through a black-box function, and weighted moment reconstruction.

#ifndef STA_CORE_UNSCENTED_HPP_
#define STA_CORE_UNSCENTED_HPP_

#include <cstddef>
#include <functional>

#include <Eigen/Dense>

#include "lsap.hpp"

namespace sta {

// Mean and covariance of a Gaussian. Validate() enforces finiteness,
// symmetry (1e-9 relative) and positive semidefiniteness (eigenvalues
// >= -1e-9 * trace); moments produced by reconstruction are not forced
// through it since negative UT weights can yield indefinite estimates.
struct GaussianVector {
  Vector mean;
  Matrix cov;

  std::size_t dim() const { return static_cast<std::size_t>(mean.size()); }
  void Validate() const;
};

struct UtParams {
  double alpha = 1.0;
  double beta = 2.0;
  double kappa = 0.0;
  std::size_t dim = 0;  // L

  // Derived by MakeUtParams.
  double lambda = 0.0;
  double gamma = 0.0;
  Vector mean_weights;  // 2L+1 entries
  Vector cov_weights;   // 2L+1 entries

  std::size_t num_points() const { return 2 * dim + 1; }
};

// lambda = alpha^2 (L + kappa) - L, gamma = sqrt(L + lambda),
// w_m[0] = lambda / (L + lambda), w_c[0] = w_m[0] + 1 - alpha^2 + beta,
// and 1 / (2 (L + lambda)) for every other point.
UtParams MakeUtParams(std::size_t dim, double alpha = 1.0, double beta = 2.0,
                      double kappa = 0.0);

// Lower-triangular S with S * S^T == cov. Semidefinite inputs are handled by
// zeroing columns whose pivot is within 1e-12 * trace of zero; when the
// round trip still misses 1e-9 relative Frobenius error the factorization is
// repeated with 1e-12 * trace added to the diagonal. Indefinite inputs are
// rejected with the offending pivot index.
Matrix PsdFactor(const Matrix& cov);

struct SigmaPointSet {
  Matrix points;  // (2L+1) x L, row i is sigma point i
  UtParams params;
};

SigmaPointSet GenerateSigmaPoints(const GaussianVector& g, const UtParams& p);

// Sum_i w[i] * rows.row(i), assuming the weights sum to one. Accumulated as
// offsets from row 0, so identical rows reproduce that row exactly even when
// the weights only sum to one up to rounding.
Vector WeightedMean(const Matrix& rows, const Vector& weights);

// Weighted mean and mean-centred weighted covariance of the rows of
// `outputs`. The covariance is symmetrized.
GaussianVector ReconstructMoments(const Matrix& outputs, const UtParams& p);

// Sum_i w_c[i] (X_i - x_mean)(Y_i - y_mean)^T.
Matrix CrossCovariance(const SigmaPointSet& sigma, const Matrix& outputs,
                       const UtParams& p);

using VectorFunction = std::function<Vector(const Vector&)>;

struct Propagation {
  GaussianVector output;
  SigmaPointSet sigma;
  Matrix outputs;  // (2L+1) x D, row i = fn(sigma point i)
  Matrix cross_cov;  // L x D
};

// Generate -> apply fn to every point -> reconstruct. A throwing fn, or one
// whose output length changes between points, aborts with the point index.
Propagation Propagate(const GaussianVector& g, const UtParams& p,
                      const VectorFunction& fn);

}  // namespace sta

#endif  // STA_CORE_UNSCENTED_HPP_
