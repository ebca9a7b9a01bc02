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

#include "sta/sta.h"

#include <cstring>
#include <exception>
#include <fstream>
#include <new>
#include <string>

#include "error.hpp"
#include "experiment.hpp"
#include "lsap.hpp"
#include "scenario_io.hpp"

struct sta_scenario {
  sta::LoadedScenario loaded;
};

struct sta_allocation {
  sta::AllocationRun run;
  std::string json;
};

struct sta_comparison {
  sta::ComparisonRun run;
  std::string json;
  std::string csv;
};

namespace {

thread_local std::string g_last_error;

sta_status StatusOf(sta::ErrorCode code) {
  switch (code) {
    case sta::ErrorCode::kInvalidArgument: return STA_ERR_INVALID_ARGUMENT;
    case sta::ErrorCode::kDimensionMismatch: return STA_ERR_DIMENSION;
    case sta::ErrorCode::kNonFinite: return STA_ERR_NOT_FINITE;
    case sta::ErrorCode::kNotPositiveSemidefinite: return STA_ERR_NOT_PSD;
    case sta::ErrorCode::kParse: return STA_ERR_PARSE;
    case sta::ErrorCode::kSchema: return STA_ERR_SCHEMA;
    case sta::ErrorCode::kIo: return STA_ERR_IO;
    case sta::ErrorCode::kOutOfRange: return STA_ERR_OUT_OF_RANGE;
    case sta::ErrorCode::kEvaluation: return STA_ERR_EVALUATION;
  }
  return STA_ERR_INTERNAL;
}

sta_status Fail(sta_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename Fn>
sta_status Guard(Fn&& body) {
  try {
    return body();
  } catch (const sta::Error& e) {
    return Fail(StatusOf(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(STA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(STA_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(STA_ERR_INTERNAL, "unknown error");
  }
}

sta::Matrix RowMajor(const double* data, std::size_t rows, std::size_t cols) {
  sta::Matrix out(static_cast<Eigen::Index>(rows),
                  static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          data[i * cols + j];
    }
  }
  return out;
}

void WriteAssignment(const sta::Assignment& a, int32_t* out) {
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a.task_of(i);
}

std::optional<sta::UtConfig> UtOverride(const sta_ut_params* ut) {
  if (ut == nullptr) return std::nullopt;
  return sta::UtConfig{ut->alpha, ut->beta, ut->kappa};
}

sta_status CopyText(const std::string& text, char* buffer, size_t capacity,
                    size_t* needed) {
  if (needed != nullptr) *needed = text.size() + 1;
  if (capacity < text.size() + 1 || buffer == nullptr) {
    if (capacity == 0 && buffer == nullptr) return STA_OK;
    return Fail(STA_ERR_BUFFER_TOO_SMALL, "buffer too small for report text");
  }
  std::memcpy(buffer, text.c_str(), text.size() + 1);
  return STA_OK;
}

sta_status WriteFile(const std::string& text, const char* path) {
  if (path == nullptr) return Fail(STA_ERR_INVALID_ARGUMENT, "path is null");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return Fail(STA_ERR_IO, std::string("cannot open ") + path);
  out << text;
  out.flush();
  if (!out) return Fail(STA_ERR_IO, std::string("cannot write ") + path);
  return STA_OK;
}

}  // namespace

extern "C" {

const char* sta_version(void) { return sta::kToolVersion; }

const char* sta_last_error(void) { return g_last_error.c_str(); }

const char* sta_status_name(sta_status status) {
  switch (status) {
    case STA_OK: return "ok";
    case STA_ERR_INVALID_ARGUMENT: return "invalid argument";
    case STA_ERR_DIMENSION: return "dimension mismatch";
    case STA_ERR_NOT_FINITE: return "non-finite value";
    case STA_ERR_NOT_PSD: return "not positive semidefinite";
    case STA_ERR_PARSE: return "parse error";
    case STA_ERR_SCHEMA: return "schema violation";
    case STA_ERR_IO: return "i/o error";
    case STA_ERR_OUT_OF_RANGE: return "out of range";
    case STA_ERR_EVALUATION: return "evaluation failure";
    case STA_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case STA_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

sta_status sta_lsap_solve(const double* cost, size_t m, double eps,
                          int32_t* task_of_robot, double* total_cost) {
  if (cost == nullptr || task_of_robot == nullptr || m == 0) {
    return Fail(STA_ERR_INVALID_ARGUMENT, "null buffer or empty matrix");
  }
  return Guard([&] {
    const sta::Matrix c = RowMajor(cost, m, m);
    const auto sol =
        eps > 0.0 ? sta::Solve(c, eps) : sta::Solve(c, std::nullopt);
    WriteAssignment(sol.assignment, task_of_robot);
    if (total_cost != nullptr) *total_cost = sol.total_cost;
    return STA_OK;
  });
}

sta_status sta_lsap_brute_force(const double* cost, size_t m,
                                int32_t* task_of_robot, double* total_cost) {
  if (cost == nullptr || task_of_robot == nullptr || m == 0) {
    return Fail(STA_ERR_INVALID_ARGUMENT, "null buffer or empty matrix");
  }
  return Guard([&] {
    const auto sol = sta::BruteForceSolve(RowMajor(cost, m, m));
    WriteAssignment(sol.assignment, task_of_robot);
    if (total_cost != nullptr) *total_cost = sol.total_cost;
    return STA_OK;
  });
}

sta_status sta_scenario_load(const char* path, sta_scenario** out) {
  if (path == nullptr || out == nullptr) {
    return Fail(STA_ERR_INVALID_ARGUMENT, "null argument");
  }
  *out = nullptr;
  return Guard([&] {
    *out = new sta_scenario{sta::LoadScenarioFile(path)};
    return STA_OK;
  });
}

sta_status sta_scenario_parse(const char* json_text, sta_scenario** out) {
  if (json_text == nullptr || out == nullptr) {
    return Fail(STA_ERR_INVALID_ARGUMENT, "null argument");
  }
  *out = nullptr;
  return Guard([&] {
    *out = new sta_scenario{sta::ParseScenario(json_text)};
    return STA_OK;
  });
}

void sta_scenario_free(sta_scenario* scenario) { delete scenario; }

size_t sta_scenario_size(const sta_scenario* scenario) {
  return scenario == nullptr ? 0 : scenario->loaded.scenario.size();
}

const char* sta_scenario_name(const sta_scenario* scenario) {
  return scenario == nullptr ? "" : scenario->loaded.scenario.name.c_str();
}

const char* sta_scenario_sha256(const sta_scenario* scenario) {
  return scenario == nullptr ? "" : scenario->loaded.sha256.c_str();
}

sta_status sta_scenario_ut(const sta_scenario* scenario, sta_ut_params* out) {
  if (scenario == nullptr || out == nullptr) {
    return Fail(STA_ERR_INVALID_ARGUMENT, "null argument");
  }
  const auto& ut = scenario->loaded.scenario.ut;
  *out = {ut.alpha, ut.beta, ut.kappa};
  return STA_OK;
}

sta_status sta_allocate(const sta_scenario* scenario, sta_mode mode,
                        const sta_ut_params* ut, sta_allocation** out) {
  if (scenario == nullptr || out == nullptr) {
    return Fail(STA_ERR_INVALID_ARGUMENT, "null argument");
  }
  if (mode != STA_MODE_DETERMINISTIC && mode != STA_MODE_STOCHASTIC) {
    return Fail(STA_ERR_INVALID_ARGUMENT, "unknown allocation mode");
  }
  *out = nullptr;
  return Guard([&] {
    auto run = sta::RunAllocation(
        scenario->loaded,
        mode == STA_MODE_STOCHASTIC ? sta::AllocationMode::kStochastic
                                    : sta::AllocationMode::kDeterministic,
        UtOverride(ut));
    std::string json = sta::AllocationReportJson(run);
    *out = new sta_allocation{std::move(run), std::move(json)};
    return STA_OK;
  });
}

void sta_allocation_free(sta_allocation* allocation) { delete allocation; }

size_t sta_allocation_size(const sta_allocation* allocation) {
  return allocation == nullptr ? 0 : allocation->run.robots;
}

sta_status sta_allocation_assignment(const sta_allocation* allocation,
                                     int32_t* task_of_robot, size_t capacity) {
  if (allocation == nullptr || task_of_robot == nullptr) {
    return Fail(STA_ERR_INVALID_ARGUMENT, "null argument");
  }
  const auto& a = allocation->run.executable();
  if (capacity < a.size()) {
    return Fail(STA_ERR_BUFFER_TOO_SMALL, "assignment buffer too small");
  }
  WriteAssignment(a, task_of_robot);
  return STA_OK;
}

sta_status sta_allocation_matrix(const sta_allocation* allocation,
                                 sta_matrix_kind kind, double* out,
                                 size_t capacity, size_t* rows, size_t* cols) {
  if (allocation == nullptr) {
    return Fail(STA_ERR_INVALID_ARGUMENT, "null allocation");
  }
  return Guard([&]() -> sta_status {
    const auto& run = allocation->run;
    const bool stochastic = run.stochastic.has_value();
    sta::Matrix m;
    switch (kind) {
      case STA_MATRIX_COST: m = run.deterministic.cost; break;
      case STA_MATRIX_GAMMA_0:
        m = run.deterministic.assignment.ToMatrix();
        break;
      case STA_MATRIX_GAMMA_S:
      case STA_MATRIX_SIGMA_S:
      case STA_MATRIX_P_GAMMA:
      case STA_MATRIX_Q:
      case STA_MATRIX_GAMMA_F:
        if (!stochastic) {
          return Fail(STA_ERR_INVALID_ARGUMENT,
                      "matrix only exists in stochastic mode");
        }
        if (kind == STA_MATRIX_GAMMA_S) m = run.stochastic->gamma_s;
        if (kind == STA_MATRIX_SIGMA_S) m = run.stochastic->sigma_s;
        if (kind == STA_MATRIX_P_GAMMA) m = run.stochastic->p_gamma;
        if (kind == STA_MATRIX_Q) m = run.interpretation->weighted_inverse.q;
        if (kind == STA_MATRIX_GAMMA_F) {
          m = run.interpretation->assignment.ToMatrix();
        }
        break;
      default:
        return Fail(STA_ERR_INVALID_ARGUMENT, "unknown matrix kind");
    }
    if (rows != nullptr) *rows = static_cast<size_t>(m.rows());
    if (cols != nullptr) *cols = static_cast<size_t>(m.cols());
    if (out == nullptr || capacity < static_cast<size_t>(m.size())) {
      return Fail(STA_ERR_BUFFER_TOO_SMALL, "matrix buffer too small");
    }
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        out[i * m.cols() + j] = m(i, j);
      }
    }
    return STA_OK;
  });
}

int sta_allocation_low_confidence(const sta_allocation* allocation) {
  if (allocation == nullptr || !allocation->run.interpretation) return 0;
  return allocation->run.interpretation->low_confidence ? 1 : 0;
}

sta_status sta_allocation_json(const sta_allocation* allocation, char* buffer,
                               size_t capacity, size_t* needed) {
  if (allocation == nullptr) {
    return Fail(STA_ERR_INVALID_ARGUMENT, "null allocation");
  }
  return CopyText(allocation->json, buffer, capacity, needed);
}

sta_status sta_allocation_write_json(const sta_allocation* allocation,
                                     const char* path) {
  if (allocation == nullptr) {
    return Fail(STA_ERR_INVALID_ARGUMENT, "null allocation");
  }
  return WriteFile(allocation->json, path);
}

sta_status sta_compare(const sta_scenario* scenario, uint64_t runs,
                       uint64_t seed, const sta_ut_params* ut,
                       unsigned threads, sta_comparison** out) {
  if (scenario == nullptr || out == nullptr) {
    return Fail(STA_ERR_INVALID_ARGUMENT, "null argument");
  }
  *out = nullptr;
  return Guard([&] {
    auto run = sta::RunComparison(scenario->loaded, runs, seed,
                                  UtOverride(ut), {}, threads);
    std::string json = sta::ComparisonReportJson(run);
    std::string csv = sta::RunsCsv(run.monte_carlo);
    *out = new sta_comparison{std::move(run), std::move(json), std::move(csv)};
    return STA_OK;
  });
}

void sta_comparison_free(sta_comparison* comparison) { delete comparison; }

sta_status sta_comparison_reduction_ratio(const sta_comparison* comparison,
                                          double* out) {
  if (comparison == nullptr || out == nullptr) {
    return Fail(STA_ERR_INVALID_ARGUMENT, "null argument");
  }
  *out = comparison->run.monte_carlo.reduction_ratio;
  return STA_OK;
}

sta_status sta_comparison_mean_costs(const sta_comparison* comparison,
                                     double* gamma_0, double* gamma_f,
                                     double* oracle) {
  if (comparison == nullptr) {
    return Fail(STA_ERR_INVALID_ARGUMENT, "null comparison");
  }
  const auto& mc = comparison->run.monte_carlo;
  if (gamma_0 != nullptr) *gamma_0 = mc.stats[0].mean_cost;
  if (gamma_f != nullptr) *gamma_f = mc.stats[1].mean_cost;
  if (oracle != nullptr) *oracle = mc.oracle_mean_cost;
  return STA_OK;
}

sta_status sta_comparison_lower_bound_violations(
    const sta_comparison* comparison, uint64_t* out) {
  if (comparison == nullptr || out == nullptr) {
    return Fail(STA_ERR_INVALID_ARGUMENT, "null argument");
  }
  *out = comparison->run.monte_carlo.lower_bound_violations;
  return STA_OK;
}

sta_status sta_comparison_json(const sta_comparison* comparison, char* buffer,
                               size_t capacity, size_t* needed) {
  if (comparison == nullptr) {
    return Fail(STA_ERR_INVALID_ARGUMENT, "null comparison");
  }
  return CopyText(comparison->json, buffer, capacity, needed);
}

sta_status sta_comparison_write_json(const sta_comparison* comparison,
                                     const char* path) {
  if (comparison == nullptr) {
    return Fail(STA_ERR_INVALID_ARGUMENT, "null comparison");
  }
  return WriteFile(comparison->json, path);
}

sta_status sta_comparison_write_csv(const sta_comparison* comparison,
                                    const char* path) {
  if (comparison == nullptr) {
    return Fail(STA_ERR_INVALID_ARGUMENT, "null comparison");
  }
  return WriteFile(comparison->csv, path);
}

}  // extern "C"
