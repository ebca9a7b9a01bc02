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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "evaluation.hpp"
#include "experiment.hpp"
#include "lsap.hpp"
#include "pipeline.hpp"
#include "scenario_io.hpp"
#include "test_support.hpp"
#include "unscented.hpp"

namespace sta {
namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kMcRuns = 10000;
constexpr std::uint64_t kMcSeed = 42;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void Report(const char* name, const Outcome& o) {
  std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

void Run(const char* name, const std::function<Outcome()>& fn) {
  try {
    Report(name, fn());
  } catch (const std::exception& e) {
    Report(name, {false, std::string("exception: ") + e.what()});
  }
}

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Format(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
std::string Format(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

std::string ScenarioPath(const char* name) {
  return std::string(STA_SOURCE_DIR) + "/scenarios/" + name;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Shared by the oracle and certificate criteria.
struct OracleCase {
  Matrix cost;
  LsapSolution solution;
};

std::vector<OracleCase> oracle_cases;
double oracle_seconds = 0.0;

Outcome LsapOracle() {
  std::mt19937_64 rng(20260101);
  const auto start = Clock::now();
  double worst = 0.0;
  int mismatches = 0;
  for (int k = 0; k < 500; ++k) {
    const int m = 2 + k % 5;
    Matrix c = testing::UniformMatrix(rng, m, m, 0.0, 100.0);
    LsapSolution sol = Solve(c);
    const double brute = BruteForceSolve(c).total_cost;
    const double err = std::abs(sol.total_cost - brute);
    worst = std::max(worst, err);
    if (err > 1e-9) ++mismatches;
    oracle_cases.push_back({std::move(c), std::move(sol)});
  }
  oracle_seconds = Seconds(start);
  return {mismatches == 0 && oracle_seconds < 5.0,
          Format("500 matrices m=2..6, %d mismatches, max |diff| %.3g, %.3f s",
                 mismatches, worst, oracle_seconds)};
}

Outcome DualCertificates() {
  int bad = 0;
  double worst = 0.0;
  for (const auto& [c, sol] : oracle_cases) {
    const double eps = sol.duals.eps;
    bool ok = true;
    for (Eigen::Index i = 0; i < c.rows(); ++i) {
      for (Eigen::Index j = 0; j < c.cols(); ++j) {
        const double excess = sol.duals.v[i] + sol.duals.u[j] - c(i, j);
        worst = std::max(worst, excess);
        if (excess > eps) ok = false;
      }
      const int j = sol.assignment.task_of(static_cast<int>(i));
      const double gap = std::abs(sol.duals.v[i] + sol.duals.u[j] - c(i, j));
      worst = std::max(worst, gap);
      if (gap > eps) ok = false;
    }
    if (!ok) ++bad;
  }
  return {bad == 0 && !oracle_cases.empty(),
          Format("%zu instances, %d violate feasibility or slackness, "
                 "worst residual %.3g",
                 oracle_cases.size(), bad, worst)};
}

std::string Tasks(const Assignment& a) {
  std::string out = "[";
  for (int i = 0; i < a.size(); ++i) {
    out += (i ? "," : "") + std::to_string(a.task_of(i));
  }
  return out + "]";
}

Outcome ScenarioOneReproduction() {
  const LoadedScenario l = LoadScenarioFile(ScenarioPath("scenario1.json"));
  const AllocationRun det = RunAllocation(l, AllocationMode::kDeterministic);
  const AllocationRun st = RunAllocation(l, AllocationMode::kStochastic);
  const Assignment id = Assignment::Identity(4);
  return {det.executable() == id && st.executable() == id,
          "gamma_0 " + Tasks(det.executable()) + ", gamma_f " +
              Tasks(st.executable())};
}

Outcome ScenarioTwoDeterministic() {
  const LoadedScenario l = LoadScenarioFile(ScenarioPath("scenario2.json"));
  const AllocationRun det = RunAllocation(l, AllocationMode::kDeterministic);
  const Assignment expected({1, 3, 2, 0});
  return {det.executable() == expected,
          "gamma_0 " + Tasks(det.executable()) + ", expected " +
              Tasks(expected)};
}

Outcome InterpretationPolicy() {
  Matrix gamma_s(4, 4);
  gamma_s << 1, -0.2, 0, 0.2,
             0.7, 0, 0, 0.3,
             0.2, 1.2, -0.3, 0,
             -0.8, 0, 1.3, 0.5;
  Matrix sigma_s(4, 4);
  sigma_s << 0.8, 1.0, 0, 0.1,
             0.4, 0, 0, 0.4,
             0.1, 1.0, 1.1, 0,
             1.4, 0, 1.1, 0.3;
  const Interpretation in = Interpret(gamma_s, sigma_s);
  const Assignment expected({3, 0, 1, 2});

  const WeightedInverse& w = in.weighted_inverse;
  double best = INFINITY;
  int supported = 0;
  testing::ForEachPermutation(4, [&](const std::vector<int>& p) {
    double total = 0.0;
    for (int i = 0; i < 4; ++i) {
      if (w.unsupported(i, p[i])) return;
      total += w.q(i, p[i]);
    }
    ++supported;
    best = std::min(best, total);
  });
  const bool minimal = std::abs(in.total - best) <= 1e-12;
  const bool near = std::abs(in.total - 2.75) < 0.01;
  return {in.assignment == expected && minimal && near && !in.low_confidence,
          Format("gamma_f %s, Q-total %.6f, best of %d sentinel-free "
                 "permutations %.6f",
                 Tasks(in.assignment).c_str(), in.total, supported, best)};
}

Outcome UtExactness() {
  std::mt19937_64 rng(777);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 1 + trial % 8;
    const int out_dim = 1 + (trial / 8) % 8;
    GaussianVector in{testing::UniformMatrix(rng, dim, 1, -10, 10),
                      testing::RandomSpd(rng, dim)};
    const Matrix a = testing::UniformMatrix(rng, out_dim, dim, -2, 2);
    const Vector b = testing::UniformMatrix(rng, out_dim, 1, -5, 5);
    const Propagation out =
        Propagate(in, MakeUtParams(dim),
                  [&](const Vector& x) -> Vector { return a * x + b; });
    worst = std::max(worst, testing::RelativeError(out.output.mean,
                                                   a * in.mean + b));
    worst = std::max(worst, testing::RelativeError(
                                out.output.cov, a * in.cov * a.transpose()));
  }

  // Zero covariance: every sigma point is the mean and the pipeline
  // reduces to the deterministic allocation.
  bool collapse = true;
  for (int m = 1; m <= 6; ++m) {
    GaussianVector point{testing::UniformMatrix(rng, 2 * m, 1, -5, 5),
                         Matrix::Zero(2 * m, 2 * m)};
    const SigmaPointSet s = GenerateSigmaPoints(point, MakeUtParams(2 * m));
    for (Eigen::Index k = 0; k < s.points.rows(); ++k) {
      collapse = collapse && s.points.row(k) == point.mean.transpose();
    }
    Scenario sc;
    sc.tasks = testing::UniformMatrix(rng, m, 2, 0, 20);
    for (int i = 0; i < m; ++i) {
      sc.robots.push_back({testing::UniformMatrix(rng, 2, 1, 0, 20),
                           Matrix::Zero(2, 2)});
    }
    const StochasticAssignment sa = StochasticAllocate(sc, ScenarioUtParams(sc));
    const Assignment det = DeterministicAllocate(sc).assignment;
    collapse = collapse && sa.gamma_s == det.ToMatrix() &&
               sa.sigma_s.isZero(0.0) && Interpret(sa).assignment == det;
  }
  return {worst < 1e-8 && collapse,
          Format("100 linear maps, max relative error %.3g; zero-covariance "
                 "collapse %s",
                 worst, collapse ? "exact" : "broken")};
}

Outcome MixtureInvariants() {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> coord(0.0, 20.0);
  std::uniform_real_distribution<double> var(0.2, 4.0);
  double worst_sum = 0.0;
  double min_diag = INFINITY;
  bool index_ok = true;
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 2 + trial % 4;
    Scenario s;
    s.tasks.resize(m, 2);
    for (int i = 0; i < m; ++i) {
      s.tasks(i, 0) = coord(rng);
      s.tasks(i, 1) = coord(rng);
      const double sx = var(rng);
      const double sy = var(rng);
      const double rho = 0.5 * std::sqrt(sx * sy);
      Matrix cov(2, 2);
      cov << sx, rho, rho, sy;
      s.robots.push_back({Eigen::Vector2d(coord(rng), coord(rng)), cov});
    }
    const StochasticAssignment sa = StochasticAllocate(s, ScenarioUtParams(s));
    worst_sum = std::max(
        {worst_sum, (sa.gamma_s.rowwise().sum().array() - 1.0).abs().maxCoeff(),
         (sa.gamma_s.colwise().sum().array() - 1.0).abs().maxCoeff()});
    min_diag = std::min(min_diag, sa.p_gamma.diagonal().minCoeff());
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const int k = j * m + i;
        index_ok = index_ok && sa.sigma_s(i, j) == sa.p_gamma(k, k);
      }
    }
  }
  return {worst_sum <= 1e-10 && min_diag >= 0.0 && index_ok,
          Format("50 scenarios m=2..5, max |sum-1| %.3g, min P diag %.3g, "
                 "sigma_s indexing %s",
                 worst_sum, min_diag, index_ok ? "exact" : "inconsistent")};
}

// Kept for the determinism criterion.
std::string mc_report_text;

Outcome MonteCarloHard() {
  const LoadedScenario l = LoadScenarioFile(ScenarioPath("scenario2.json"));
  const auto start = Clock::now();
  const ComparisonRun first = RunComparison(l, kMcRuns, kMcSeed);
  const double seconds = Seconds(start);
  const ComparisonRun second = RunComparison(l, kMcRuns, kMcSeed);
  mc_report_text = ComparisonReportJson(first);
  const bool same = mc_report_text == ComparisonReportJson(second) &&
                    RunsCsv(first.monte_carlo) == RunsCsv(second.monte_carlo);
  const auto violations = first.monte_carlo.lower_bound_violations;
  return {same && violations == 0 && seconds < 30.0,
          Format("scenario2 runs=%llu seed=%llu, repeat identical: %s, "
                 "lower-bound violations %llu, %.3f s",
                 static_cast<unsigned long long>(kMcRuns),
                 static_cast<unsigned long long>(kMcSeed), same ? "yes" : "no",
                 static_cast<unsigned long long>(violations), seconds)};
}

Outcome MonteCarloReproduction() {
  const LoadedScenario l = LoadScenarioFile(ScenarioPath("scenario2.json"));
  const ComparisonRun run = RunComparison(l, kMcRuns, kMcSeed);
  const MCReport& mc = run.monte_carlo;
  const UtParams& p = run.allocation.stochastic->params;
  const double ratio = mc.reduction_ratio;
  const double deviation = ratio - kTargetReductionRatio;
  const std::string measured = Format(
      "reduction_ratio %.6f vs target %.2f (deviation %+.6f), alpha=%g "
      "beta=%g kappa=%g, seed %llu, runs %llu",
      ratio, kTargetReductionRatio, deviation, p.alpha, p.beta, p.kappa,
      static_cast<unsigned long long>(kMcSeed),
      static_cast<unsigned long long>(kMcRuns));
  if (std::abs(deviation) <= kReductionTolerance) {
    return {true, measured + ", within tolerance"};
  }
  // Outside tolerance the results file must record this exact measurement.
  const std::string results = ReadFile(STA_RESULTS_FILE);
  const bool documented =
      !results.empty() &&
      results.find(Format("%.6f", ratio)) != std::string::npos &&
      results.find(Format("seed %llu",
                          static_cast<unsigned long long>(kMcSeed))) !=
          std::string::npos &&
      results.find(Format("%+.6f", deviation)) != std::string::npos;
  return {documented, measured + (documented
                                      ? ", outside tolerance, documented in "
                                      : ", outside tolerance, NOT documented in ") +
                          STA_RESULTS_FILE};
}

Outcome Determinism() {
  const std::string dir = std::string(STA_BINARY_DIR) + "/acceptance_out";
  const std::string mkdir = "mkdir -p '" + dir + "'";
  if (std::system(mkdir.c_str()) != 0) return {false, "cannot create " + dir};
  std::string outputs[2];
  for (int k = 0; k < 2; ++k) {
    const std::string out = dir + "/compare" + std::to_string(k) + ".json";
    std::remove(out.c_str());
    const std::string cmd = std::string("'") + STA_CLI_PATH +
                            "' compare --scenario '" +
                            ScenarioPath("scenario2.json") +
                            "' --runs 10000 --seed 42 --out '" + out +
                            "' > /dev/null";
    if (std::system(cmd.c_str()) != 0) return {false, "CLI failed: " + cmd};
    outputs[k] = ReadFile(out);
  }
  const bool same = !outputs[0].empty() && outputs[0] == outputs[1];
  const bool matches_library = outputs[0] == mc_report_text;
  return {same && matches_library,
          Format("two CLI compare reports (%zu bytes) %s; %s the in-process "
                 "report",
                 outputs[0].size(), same ? "byte-identical" : "differ",
                 matches_library ? "equal to" : "differ from")};
}

}  // namespace
}  // namespace sta

int main() {
  using namespace sta;
  Run("lsap-oracle-equivalence", LsapOracle);
  Run("lsap-dual-certificates", DualCertificates);
  Run("scenario1-reproduction", ScenarioOneReproduction);
  Run("scenario2-deterministic-gamma0", ScenarioTwoDeterministic);
  Run("interpretation-policy", InterpretationPolicy);
  Run("ut-exactness", UtExactness);
  Run("mixture-invariants", MixtureInvariants);
  Run("monte-carlo-determinism-and-lower-bound", MonteCarloHard);
  Run("monte-carlo-reduction-ratio", MonteCarloReproduction);
  Run("compare-byte-determinism", Determinism);
  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
