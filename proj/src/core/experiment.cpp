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

#include "experiment.hpp"

#include <cmath>
#include <cstdio>

#include "error.hpp"
#include "json.hpp"

namespace sta {

namespace {

using nlohmann::json;

json MatrixJson(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json VectorJson(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json AssignmentJson(const Assignment& a) {
  return {{"matrix", MatrixJson(a.ToMatrix())}, {"task_of_robot", a.tasks()}};
}

json UtJson(const UtParams& p) {
  return {{"alpha", p.alpha},
          {"beta", p.beta},
          {"kappa", p.kappa},
          {"L", p.dim},
          {"lambda", p.lambda},
          {"gamma", p.gamma},
          {"mean_weights", VectorJson(p.mean_weights)},
          {"cov_weights", VectorJson(p.cov_weights)}};
}

json AllocationBody(const AllocationRun& run) {
  json doc;
  doc["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  doc["scenario"] = {{"name", run.scenario_name},
                     {"sha256", run.scenario_sha256},
                     {"robots", run.robots}};
  doc["conventions"] = {
      {"matrix_layout", "arrays of rows; entry [i][j] is robot i, task j"},
      {"vectorization", "column-major; cell (i, j) of an m x m matrix is "
                        "index j*m + i"},
      {"indices", "0-based"}};
  doc["mode"] = run.mode == AllocationMode::kStochastic ? "stoch" : "det";

  const auto& det = run.deterministic;
  doc["deterministic"] = {{"gamma_0", AssignmentJson(det.assignment)},
                          {"cost_matrix", MatrixJson(det.cost)},
                          {"total_cost", det.total_cost}};

  if (run.stochastic) {
    const auto& st = *run.stochastic;
    doc["ut"] = UtJson(st.params);
    json points = json::array();
    for (std::size_t k = 0; k < st.per_point.size(); ++k) {
      const auto idx = static_cast<Eigen::Index>(k);
      points.push_back({{"index", k},
                        {"sigma_point", VectorJson(st.sigma.points.row(idx)
                                                       .transpose())},
                        {"mean_weight", st.params.mean_weights[idx]},
                        {"cov_weight", st.params.cov_weights[idx]},
                        {"task_of_robot", st.per_point[k].tasks()},
                        {"total_cost", st.per_point_cost[k]}});
    }
    doc["stochastic"] = {{"gamma_s", MatrixJson(st.gamma_s)},
                         {"sigma_s", MatrixJson(st.sigma_s)},
                         {"p_gamma", MatrixJson(st.p_gamma)},
                         {"mean_cost", MatrixJson(st.cost.mean_cost)},
                         {"cost_cov", MatrixJson(st.cost.cov)},
                         {"per_point", std::move(points)}};
  }
  if (run.interpretation) {
    const auto& in = *run.interpretation;
    doc["interpretation"] = {
        {"support_floor", run.interpret_settings.support_floor},
        {"sentinel", in.weighted_inverse.sentinel},
        {"q", MatrixJson(in.weighted_inverse.q)},
        {"gamma_f", AssignmentJson(in.assignment)},
        {"q_total", in.total},
        {"sentinel_cells", in.sentinel_cells},
        {"low_confidence", in.low_confidence}};
  }
  doc["executable"] = AssignmentJson(run.executable());
  return doc;
}

std::string Dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

const Assignment& AllocationRun::executable() const {
  if (interpretation) return interpretation->assignment;
  return deterministic.assignment;
}

AllocationRun RunAllocation(const LoadedScenario& s, AllocationMode mode,
                            const std::optional<UtConfig>& ut,
                            const InterpretSettings& interp) {
  AllocationRun run;
  run.scenario_name = s.scenario.name;
  run.scenario_sha256 = s.sha256;
  run.robots = s.scenario.size();
  run.mode = mode;
  run.interpret_settings = interp;
  run.deterministic = DeterministicAllocate(s.scenario);
  if (mode == AllocationMode::kStochastic) {
    const UtConfig cfg = ut.value_or(s.scenario.ut);
    const UtParams p =
        MakeUtParams(2 * s.scenario.size(), cfg.alpha, cfg.beta, cfg.kappa);
    run.stochastic = StochasticAllocate(s.scenario, p);
    run.interpretation =
        Interpret(*run.stochastic, interp.support_floor, interp.sentinel);
  }
  return run;
}

ComparisonRun RunComparison(const LoadedScenario& s, std::uint64_t runs,
                            std::uint64_t seed,
                            const std::optional<UtConfig>& ut,
                            const InterpretSettings& interp,
                            unsigned threads) {
  ComparisonRun out;
  out.allocation = RunAllocation(s, AllocationMode::kStochastic, ut, interp);
  const std::vector<NamedAssignment> compared = {
      {"gamma_0", out.allocation.deterministic.assignment},
      {"gamma_f", out.allocation.interpretation->assignment}};
  out.monte_carlo =
      MonteCarloCompare(s.scenario, compared, runs, seed, threads);
  return out;
}

std::string AllocationReportJson(const AllocationRun& run) {
  json doc = AllocationBody(run);
  doc["kind"] = "allocate";
  return Dump(doc);
}

std::string ComparisonReportJson(const ComparisonRun& run) {
  json doc = AllocationBody(run.allocation);
  doc["kind"] = "compare";
  const MCReport& mc = run.monte_carlo;
  json stats = json::array();
  for (const auto& st : mc.stats) {
    stats.push_back({{"name", st.name},
                     {"mean_cost", st.mean_cost},
                     {"std_cost", st.std_cost},
                     {"wins", st.wins}});
  }
  const double deviation = mc.reduction_ratio - kTargetReductionRatio;
  doc["monte_carlo"] = {
      {"runs", mc.runs},
      {"seed", mc.seed},
      {"rng", {{"name", kRandomStreamName}, {"version", kRandomStreamVersion}}},
      {"sampling", "robots only, paired: one realization per run shared by "
                   "all assignments"},
      {"assignments", std::move(stats)},
      {"reduction_ratio", mc.reduction_ratio},
      {"target_reduction_ratio", kTargetReductionRatio},
      {"deviation_from_target", deviation},
      {"within_target_tolerance", std::abs(deviation) <= kReductionTolerance},
      {"oracle_mean_cost", mc.oracle_mean_cost},
      {"lower_bound_violations", mc.lower_bound_violations}};
  return Dump(doc);
}

std::string RunsCsv(const MCReport& report) {
  std::string out = "run";
  for (const auto& st : report.stats) out += "," + st.name;
  out += ",oracle\n";
  char buf[40];
  for (Eigen::Index r = 0; r < report.run_costs.rows(); ++r) {
    out += std::to_string(r);
    for (Eigen::Index a = 0; a < report.run_costs.cols(); ++a) {
      std::snprintf(buf, sizeof buf, ",%.17g", report.run_costs(r, a));
      out += buf;
    }
    std::snprintf(buf, sizeof buf, ",%.17g\n", report.oracle_costs[r]);
    out += buf;
  }
  return out;
}

}  // namespace sta
