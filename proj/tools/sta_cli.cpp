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

// sta-cli: allocate, compare and sweep over scenario files.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sta/sta.h"

namespace {

struct ScenarioDeleter {
  void operator()(sta_scenario* s) const { sta_scenario_free(s); }
};
struct AllocationDeleter {
  void operator()(sta_allocation* a) const { sta_allocation_free(a); }
};
struct ComparisonDeleter {
  void operator()(sta_comparison* c) const { sta_comparison_free(c); }
};
using ScenarioPtr = std::unique_ptr<sta_scenario, ScenarioDeleter>;
using AllocationPtr = std::unique_ptr<sta_allocation, AllocationDeleter>;
using ComparisonPtr = std::unique_ptr<sta_comparison, ComparisonDeleter>;

class CliError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void Check(sta_status status, const std::string& context) {
  if (status != STA_OK) {
    throw CliError(context + ": " + sta_status_name(status) + ": " +
                   sta_last_error());
  }
}

ScenarioPtr Load(const std::string& path) {
  sta_scenario* raw = nullptr;
  Check(sta_scenario_load(path.c_str(), &raw), "loading scenario");
  return ScenarioPtr(raw);
}

// Optional UT overrides layered over the scenario's own settings.
struct UtFlags {
  double alpha = 0.0;
  double beta = 0.0;
  double kappa = 0.0;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* beta_opt = nullptr;
  CLI::Option* kappa_opt = nullptr;

  void Register(CLI::App* app) {
    alpha_opt = app->add_option("--alpha", alpha, "UT spread in (0, 1]");
    beta_opt = app->add_option("--beta", beta, "UT prior-knowledge term");
    kappa_opt = app->add_option("--kappa", kappa, "UT secondary scaling");
  }

  sta_ut_params Resolve(const sta_scenario* s) const {
    sta_ut_params ut{};
    Check(sta_scenario_ut(s, &ut), "reading UT settings");
    if (*alpha_opt) ut.alpha = alpha;
    if (*beta_opt) ut.beta = beta;
    if (*kappa_opt) ut.kappa = kappa;
    return ut;
  }
};

void PrintAssignment(const char* label, const std::vector<int32_t>& a) {
  std::cout << label << ":";
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::cout << " robot" << i + 1 << "->task" << a[i] + 1;
  }
  std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uncertainty-aware multi-robot task allocation"};
  app.set_version_flag("--version", std::string(sta_version()));
  app.require_subcommand(1);

  // allocate
  auto* allocate = app.add_subcommand("allocate", "Run one allocation");
  std::string alloc_scenario, alloc_out, alloc_mode = "stoch";
  UtFlags alloc_ut;
  allocate->add_option("--scenario", alloc_scenario, "Scenario JSON")
      ->required()
      ->check(CLI::ExistingFile);
  allocate->add_option("--mode", alloc_mode, "det or stoch")
      ->check(CLI::IsMember({"det", "stoch"}));
  allocate->add_option("--out", alloc_out, "Report JSON path")->required();
  alloc_ut.Register(allocate);

  // compare
  auto* compare = app.add_subcommand(
      "compare", "Monte Carlo comparison of Gamma_0 against Gamma_f");
  std::string cmp_scenario, cmp_out, cmp_csv;
  std::uint64_t cmp_runs = 10000, cmp_seed = 0;
  unsigned cmp_threads = 1;
  UtFlags cmp_ut;
  compare->add_option("--scenario", cmp_scenario, "Scenario JSON")
      ->required()
      ->check(CLI::ExistingFile);
  compare->add_option("--runs", cmp_runs, "Monte Carlo runs")
      ->check(CLI::PositiveNumber);
  compare->add_option("--seed", cmp_seed, "Random seed")->required();
  compare->add_option("--out", cmp_out, "Report JSON path")->required();
  compare->add_option("--csv", cmp_csv, "Per-run cost CSV path");
  compare->add_option("--threads", cmp_threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  cmp_ut.Register(compare);

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "Repeat compare over values of one UT parameter");
  std::string sw_scenario, sw_param, sw_out_dir = ".";
  std::vector<std::string> sw_values;
  std::uint64_t sw_runs = 10000, sw_seed = 0;
  unsigned sw_threads = 1;
  sweep->add_option("--scenario", sw_scenario, "Scenario JSON")
      ->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--param", sw_param, "alpha, beta or kappa")
      ->required()
      ->check(CLI::IsMember({"alpha", "beta", "kappa"}));
  sweep->add_option("--values", sw_values, "Comma-separated values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--runs", sw_runs, "Monte Carlo runs per value")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--seed", sw_seed, "Random seed")->required();
  sweep->add_option("--out-dir", sw_out_dir, "Directory for reports");
  sweep->add_option("--threads", sw_threads, "Worker threads")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*allocate) {
      ScenarioPtr s = Load(alloc_scenario);
      const bool stochastic = alloc_mode == "stoch";
      const sta_ut_params ut = alloc_ut.Resolve(s.get());
      sta_allocation* raw = nullptr;
      Check(sta_allocate(s.get(),
                         stochastic ? STA_MODE_STOCHASTIC
                                    : STA_MODE_DETERMINISTIC,
                         &ut, &raw),
            "allocating");
      AllocationPtr a(raw);
      std::vector<int32_t> tasks(sta_allocation_size(a.get()));
      Check(sta_allocation_assignment(a.get(), tasks.data(), tasks.size()),
            "reading assignment");
      Check(sta_allocation_write_json(a.get(), alloc_out.c_str()),
            "writing report");
      PrintAssignment(stochastic ? "gamma_f" : "gamma_0", tasks);
      if (sta_allocation_low_confidence(a.get())) {
        std::cout << "warning: executable assignment uses unsupported cells\n";
      }
    } else if (*compare) {
      ScenarioPtr s = Load(cmp_scenario);
      const sta_ut_params ut = cmp_ut.Resolve(s.get());
      sta_comparison* raw = nullptr;
      Check(sta_compare(s.get(), cmp_runs, cmp_seed, &ut, cmp_threads, &raw),
            "comparing");
      ComparisonPtr c(raw);
      Check(sta_comparison_write_json(c.get(), cmp_out.c_str()),
            "writing report");
      if (!cmp_csv.empty()) {
        Check(sta_comparison_write_csv(c.get(), cmp_csv.c_str()),
              "writing csv");
      }
      double g0 = 0, gf = 0, oracle = 0, ratio = 0;
      Check(sta_comparison_mean_costs(c.get(), &g0, &gf, &oracle),
            "reading costs");
      Check(sta_comparison_reduction_ratio(c.get(), &ratio), "reading ratio");
      std::printf("mean cost gamma_0 %.6f, gamma_f %.6f, oracle %.6f\n", g0,
                  gf, oracle);
      std::printf("reduction ratio %.6f\n", ratio);
    } else if (*sweep) {
      ScenarioPtr s = Load(sw_scenario);
      std::filesystem::create_directories(sw_out_dir);
      std::string stem = sta_scenario_name(s.get());
      if (stem.empty()) stem = std::filesystem::path(sw_scenario).stem();
      for (const std::string& text : sw_values) {
        double value = 0.0;
        try {
          std::size_t used = 0;
          value = std::stod(text, &used);
          if (used != text.size()) throw std::invalid_argument(text);
        } catch (const std::exception&) {
          throw CliError("--values: not a number: " + text);
        }
        sta_ut_params ut{};
        Check(sta_scenario_ut(s.get(), &ut), "reading UT settings");
        if (sw_param == "alpha") ut.alpha = value;
        if (sw_param == "beta") ut.beta = value;
        if (sw_param == "kappa") ut.kappa = value;
        sta_comparison* raw = nullptr;
        Check(sta_compare(s.get(), sw_runs, sw_seed, &ut, sw_threads, &raw),
              sw_param + "=" + text);
        ComparisonPtr c(raw);
        const auto path = std::filesystem::path(sw_out_dir) /
                          (stem + "_" + sw_param + "_" + text + ".json");
        Check(sta_comparison_write_json(c.get(), path.string().c_str()),
              "writing report");
        double ratio = 0;
        Check(sta_comparison_reduction_ratio(c.get(), &ratio),
              "reading ratio");
        std::printf("%s=%s reduction ratio %.6f -> %s\n", sw_param.c_str(),
                    text.c_str(), ratio, path.string().c_str());
      }
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
