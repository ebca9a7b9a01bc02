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

#include "unscented.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <string>

#include "error.hpp"

namespace sta {

namespace {

void RequireSymmetric(const Matrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    std::ostringstream msg;
    msg << what << " must be square, got " << a.rows() << "x" << a.cols();
    throw Error(ErrorCode::kDimensionMismatch, msg.str());
  }
  if (!a.allFinite()) {
    throw Error(ErrorCode::kNonFinite, std::string(what) + " is not finite");
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw Error(ErrorCode::kNotPositiveSemidefinite,
                std::string(what) + " is not symmetric");
  }
}

Matrix SemidefiniteCholesky(const Matrix& a, double trace) {
  const Eigen::Index n = a.rows();
  const double zero_pivot = 1e-12 * trace;
  const double negative_pivot = 1e-9 * trace;
  Matrix l = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double d = a(k, k) - l.row(k).head(k).squaredNorm();
    if (d < -negative_pivot) {
      std::ostringstream msg;
      msg << "covariance is indefinite at pivot " << k << " (residual " << d
          << ")";
      throw Error(ErrorCode::kNotPositiveSemidefinite, msg.str());
    }
    if (d <= zero_pivot) {
      // A PSD matrix with a vanishing pivot has a vanishing residual column.
      const double bound =
          std::sqrt((std::max(d, 0.0) + zero_pivot) * trace) + negative_pivot;
      for (Eigen::Index i = k + 1; i < n; ++i) {
        const double r = a(i, k) - l.row(i).head(k).dot(l.row(k).head(k));
        if (std::abs(r) > bound) {
          std::ostringstream msg;
          msg << "covariance is indefinite at pivot " << k
              << " (zero pivot with coupling " << r << " to index " << i
              << ")";
          throw Error(ErrorCode::kNotPositiveSemidefinite, msg.str());
        }
      }
      continue;
    }
    const double root = std::sqrt(d);
    l(k, k) = root;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      l(i, k) = (a(i, k) - l.row(i).head(k).dot(l.row(k).head(k))) / root;
    }
  }
  return l;
}

double RelativeFrobenius(const Matrix& approx, const Matrix& exact) {
  const double denom = exact.norm();
  const double err = (approx - exact).norm();
  return denom > 0.0 ? err / denom : err;
}

}  // namespace

void GaussianVector::Validate() const {
  if (mean.size() == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "Gaussian has dimension 0");
  }
  if (!mean.allFinite()) {
    throw Error(ErrorCode::kNonFinite, "Gaussian mean is not finite");
  }
  if (cov.rows() != mean.size() || cov.cols() != mean.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "covariance shape does not match mean length");
  }
  RequireSymmetric(cov, "covariance");
  const double trace = cov.trace();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(cov, Eigen::EigenvaluesOnly);
  const double lowest = eig.eigenvalues().minCoeff();
  if (lowest < -1e-9 * std::max(trace, 0.0)) {
    std::ostringstream msg;
    msg << "covariance is not positive semidefinite (eigenvalue " << lowest
        << ")";
    throw Error(ErrorCode::kNotPositiveSemidefinite, msg.str());
  }
}

UtParams MakeUtParams(std::size_t dim, double alpha, double beta,
                      double kappa) {
  if (dim == 0) {
    throw Error(ErrorCode::kInvalidArgument, "UT dimension must be positive");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::kOutOfRange, "alpha must lie in (0, 1]");
  }
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw Error(ErrorCode::kOutOfRange, "beta must be finite and >= 0");
  }
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw Error(ErrorCode::kOutOfRange, "kappa must be finite and >= 0");
  }
  const double l = static_cast<double>(dim);
  UtParams p;
  p.alpha = alpha;
  p.beta = beta;
  p.kappa = kappa;
  p.dim = dim;
  p.lambda = alpha * alpha * (l + kappa) - l;
  const double spread = l + p.lambda;
  if (!(spread > 0.0)) {
    throw Error(ErrorCode::kOutOfRange,
                "degenerate UT scaling: L + lambda must be positive");
  }
  p.gamma = std::sqrt(spread);
  const auto n = static_cast<Eigen::Index>(p.num_points());
  p.mean_weights = Vector::Constant(n, 1.0 / (2.0 * spread));
  p.cov_weights = p.mean_weights;
  p.mean_weights[0] = p.lambda / spread;
  p.cov_weights[0] = p.mean_weights[0] + (1.0 - alpha * alpha + beta);
  return p;
}

Matrix PsdFactor(const Matrix& cov) {
  RequireSymmetric(cov, "covariance");
  if (cov.rows() == 0) return cov;
  const double trace = cov.trace();
  if (trace < 0.0) {
    for (Eigen::Index k = 0; k < cov.rows(); ++k) {
      if (cov(k, k) < 0.0) {
        throw Error(ErrorCode::kNotPositiveSemidefinite,
                    "covariance is indefinite at pivot " + std::to_string(k));
      }
    }
  }
  Matrix l = SemidefiniteCholesky(cov, trace);
  if (RelativeFrobenius(l * l.transpose(), cov) <= 1e-9) return l;

  Matrix jittered = cov;
  jittered.diagonal().array() += 1e-12 * trace;
  return SemidefiniteCholesky(jittered, jittered.trace());
}

SigmaPointSet GenerateSigmaPoints(const GaussianVector& g, const UtParams& p) {
  if (g.dim() != p.dim) {
    std::ostringstream msg;
    msg << "UT parameters are for L=" << p.dim << " but the Gaussian has L="
        << g.dim();
    throw Error(ErrorCode::kDimensionMismatch, msg.str());
  }
  if (!g.mean.allFinite()) {
    throw Error(ErrorCode::kNonFinite, "Gaussian mean is not finite");
  }
  const Matrix s = PsdFactor(g.cov);
  const auto l = static_cast<Eigen::Index>(p.dim);

  SigmaPointSet out;
  out.params = p;
  out.points.resize(2 * l + 1, l);
  out.points.row(0) = g.mean.transpose();
  for (Eigen::Index i = 0; i < l; ++i) {
    const Vector offset = p.gamma * s.col(i);
    out.points.row(1 + i) = (g.mean + offset).transpose();
    out.points.row(1 + l + i) = (g.mean - offset).transpose();
  }
  return out;
}

Vector WeightedMean(const Matrix& rows, const Vector& weights) {
  if (rows.rows() != weights.size() || rows.rows() == 0) {
    throw Error(ErrorCode::kDimensionMismatch,
                "weighted mean needs one weight per row");
  }
  const Vector anchor = rows.row(0).transpose();
  Vector offset = Vector::Zero(rows.cols());
  for (Eigen::Index i = 1; i < rows.rows(); ++i) {
    offset += weights[i] * (rows.row(i).transpose() - anchor);
  }
  return anchor + offset;
}

GaussianVector ReconstructMoments(const Matrix& outputs, const UtParams& p) {
  if (outputs.rows() != static_cast<Eigen::Index>(p.num_points())) {
    std::ostringstream msg;
    msg << "expected " << p.num_points() << " output rows, got "
        << outputs.rows();
    throw Error(ErrorCode::kDimensionMismatch, msg.str());
  }
  GaussianVector out;
  out.mean = WeightedMean(outputs, p.mean_weights);
  out.cov = Matrix::Zero(outputs.cols(), outputs.cols());
  for (Eigen::Index i = 0; i < outputs.rows(); ++i) {
    const Vector d = outputs.row(i).transpose() - out.mean;
    out.cov.noalias() += p.cov_weights[i] * (d * d.transpose());
  }
  out.cov = 0.5 * (out.cov + out.cov.transpose()).eval();
  return out;
}

Matrix CrossCovariance(const SigmaPointSet& sigma, const Matrix& outputs,
                       const UtParams& p) {
  if (outputs.rows() != sigma.points.rows() ||
      outputs.rows() != static_cast<Eigen::Index>(p.num_points())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "sigma points and outputs have different row counts");
  }
  const Vector x_mean = WeightedMean(sigma.points, p.mean_weights);
  const Vector y_mean = WeightedMean(outputs, p.mean_weights);
  Matrix out = Matrix::Zero(sigma.points.cols(), outputs.cols());
  for (Eigen::Index i = 0; i < outputs.rows(); ++i) {
    out.noalias() += p.cov_weights[i] *
                     ((sigma.points.row(i).transpose() - x_mean) *
                      (outputs.row(i) - y_mean.transpose()));
  }
  return out;
}

Propagation Propagate(const GaussianVector& g, const UtParams& p,
                      const VectorFunction& fn) {
  Propagation out;
  out.sigma = GenerateSigmaPoints(g, p);
  const Eigen::Index n = out.sigma.points.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    Vector y;
    try {
      y = fn(out.sigma.points.row(i).transpose());
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "function failed at sigma point " << i << ": " << e.what();
      throw Error(ErrorCode::kEvaluation, msg.str());
    }
    if (i == 0) {
      out.outputs.resize(n, y.size());
    } else if (y.size() != out.outputs.cols()) {
      std::ostringstream msg;
      msg << "function output length changed at sigma point " << i;
      throw Error(ErrorCode::kEvaluation, msg.str());
    }
    out.outputs.row(i) = y.transpose();
  }
  out.output = ReconstructMoments(out.outputs, p);
  out.cross_cov = CrossCovariance(out.sigma, out.outputs, p);
  return out;
}

}  // namespace sta
