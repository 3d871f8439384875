// Copyright 2026 The optbench Authors
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

#include "optbench/config/experiment.hpp"
#include "optbench/config/sweep_runner.hpp"
#include "optbench/stats/report.hpp"
#include "optbench/sweep/csv.hpp"
#include "optbench/sweep/run_io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <set>
#include <sstream>

using namespace optbench;
using namespace optbench::config;
namespace fs = std::filesystem;

namespace {

std::string const kSmall = R"(
seed: 3
epochs: 3
samples_per_optimizer: 3
model: {kind: mlp, layers: [2, 5, 3]}
dataset: {kind: spirals, train_samples: 90, test_samples: 30, classes: 3}
batch_sizes: [9, 45]
optimizers:
  sgd:
    learning_rate: [0.05, 0.1, 0.5]
    momentum: [0.0, 0.9]
  lbfgs:
    learning_rate: [0.5, 1.0]
    memory: [3, 5]
)";

bool mentions(std::vector<std::string> const &diags, std::string const &needle)
{
  return std::any_of(diags.begin(), diags.end(),
                     [&](std::string const &d) { return d.find(needle) != std::string::npos; });
}

std::vector<std::string> diagnostics_for(std::string const &yaml)
{
  auto loaded = parse_experiment(yaml);
  auto found  = validate_experiment(loaded.file);
  loaded.diagnostics.insert(loaded.diagnostics.end(), found.begin(), found.end());
  return loaded.diagnostics;
}

std::string with_batches(std::string const &batches)
{
  return R"(
seed: 1
samples_per_optimizer: 1
model: {kind: logistic-regression}
dataset: {kind: gaussians, train_samples: 50000, test_samples: 0, classes: 2}
batch_sizes: )" + batches + R"(
optimizers:
  sgd: {learning_rate: [0.1]}
)";
}

std::vector<sweep::TrainingRun> synthetic_runs()
{
  std::vector<sweep::TrainingRun> runs;
  int                             id = 0;
  for (std::size_t k : {10, 100})
  {
    for (auto opt : {optim::OptimizerId::sgd, optim::OptimizerId::fr, optim::OptimizerId::lbfgs})
    {
      for (int r = 0; r < 3; ++r)
      {
        sweep::TrainingRun run;
        run.run_id            = std::to_string(id++);
        run.config.optimizer  = opt;
        run.config.batch_size = k;
        run.peak_accuracy     = 0.5 + 0.1 * static_cast<int>(opt) - (k == 100 ? 0.1 : 0.0) + 0.01 * r;
        run.ttpa_seconds      = 1.0 + static_cast<int>(opt) + 0.1 * r;
        runs.push_back(run);
      }
    }
  }
  return runs;
}

}  // namespace

TEST_CASE("experiment: a well-formed file is clean")
{
  auto const loaded = parse_experiment(kSmall);
  CHECK(loaded.diagnostics.empty());
  CHECK(validate_experiment(loaded.file).empty());
  CHECK(loaded.file.batch_sizes == std::vector<std::size_t>{9, 45});
  CHECK(loaded.file.optimizers.size() == 2);
  CHECK(loaded.file.dataset.seed == 3);
}

TEST_CASE("experiment: divisibility diagnostic without generating data")
{
  auto const diags = diagnostics_for(with_batches("[3]"));
  CHECK(mentions(diags, "batch size 3"));
  CHECK(diagnostics_for(with_batches("[100, 1000, 5000, 10000, 25000, 50000]")).empty());
}

TEST_CASE("experiment: unknown hyperparameter is named")
{
  auto yaml = with_batches("[100]");
  yaml.replace(yaml.find("learning_rate: [0.1]"), 20, "weight_decay: [0.0001]");
  CHECK(mentions(diagnostics_for(yaml), "weight_decay"));
}

TEST_CASE("experiment: every violation is reported together")
{
  std::string const yaml = R"(
samples_per_optimizer: 5
model: {kind: mlp, layers: [3, 4, 2]}
dataset: {kind: gaussians, train_samples: 10, test_samples: 1, classes: 2}
batch_sizes: [3, 0]
colour: blue
optimizers:
  adam: {learning_rate: [0.1]}
  sgd: {momentum: []}
  fr: {learning_rate: [0.1, 0.2]}
)";
  auto const diags = diagnostics_for(yaml);
  CHECK(mentions(diags, "unknown key 'colour'"));
  CHECK(mentions(diags, "adam"));
  CHECK(mentions(diags, "empty value set"));
  CHECK(mentions(diags, "batch size 3"));
  CHECK(mentions(diags, "batch size 0"));
  CHECK(mentions(diags, "not divisible by classes"));
  CHECK(mentions(diags, "input width 3"));
  CHECK(mentions(diags, "exceeds the 2 grid combinations"));
}

TEST_CASE("experiment: unparseable and unreadable files throw")
{
  CHECK_THROWS_AS(parse_experiment("a: [1, 2"), ConfigError);
  CHECK_THROWS_AS(load_experiment("/nonexistent/optbench.yaml"), ConfigError);
}

TEST_CASE("experiment: bad value types become diagnostics")
{
  auto const loaded = parse_experiment(R"(
seed: banana
samples_per_optimizer: -2
model: {kind: quadratic, dimension: 2}
dataset: {kind: none, train_samples: 4}
batch_sizes: [2]
optimizers: {sgd: {learning_rate: [0.1]}}
)");
  CHECK(mentions(loaded.diagnostics, "seed"));
  CHECK(mentions(loaded.diagnostics, "samples_per_optimizer"));
}

TEST_CASE("sweep plan: counts, sample without replacement, determinism")
{
  auto       file    = parse_experiment(kSmall).file;
  auto const problem = build_problem(file);
  CHECK(problem->train.size() == 90);
  CHECK(problem->test.size() == 30);
  auto const plan = plan_sweep(file, problem);
  REQUIRE(plan.size() == 2 * 2 * 3);
  for (std::size_t start = 0; start < plan.size(); start += 3)
  {
    std::set<optim::Assignment> distinct;
    for (std::size_t i = start; i < start + 3; ++i)
    {
      CHECK(plan[i].batch_size == plan[start].batch_size);
      distinct.insert(plan[i].hyperparameters);
    }
    CHECK(distinct.size() == 3);
  }
  auto const again = plan_sweep(file, problem);
  for (std::size_t i = 0; i < plan.size(); ++i)
  {
    CHECK(plan[i].hyperparameters == again[i].hyperparameters);
    CHECK(plan[i].seed == again[i].seed);
  }

  file.samples_per_optimizer = 0;
  CHECK(plan_sweep(file, problem).empty());
  file.batch_sizes.push_back(7);
  CHECK_THROWS_AS(plan_sweep(file, problem), ConfigError);
}

TEST_CASE("sweep execution: parallel results equal serial results in plan order")
{
  auto const file    = parse_experiment(kSmall).file;
  auto const problem = build_problem(file);
  auto const plan    = plan_sweep(file, problem);
  std::size_t callbacks = 0;
  auto const  serial    = execute_sweep(plan, 1);
  auto const  parallel  = execute_sweep(plan, 4, [&](std::size_t, sweep::TrainingRun const &) { ++callbacks; });
  CHECK(callbacks == plan.size());
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i)
  {
    CHECK(serial[i].config.optimizer == plan[i].optimizer);
    CHECK(serial[i].epoch_test_accuracy == parallel[i].epoch_test_accuracy);
    CHECK(serial[i].status == parallel[i].status);
  }
}

TEST_CASE("analysis report: json schema and plot csvs")
{
  auto const            runs = synthetic_runs();
  stats::AnalysisOptions opts;
  auto const            report = stats::analyze_runs(runs, opts);
  auto const            j      = nlohmann::json::parse(stats::report_to_json(report));

  for (auto const *key : {"design", "transform", "outlier_threshold", "table", "pairwise",
                          "correlations", "ttpa_ratios"})
  {
    CHECK(j.contains(key));
  }
  CHECK(j["design"]["balanced"] == true);
  CHECK(j["design"]["levels"]["optimizer"] == nlohmann::json({"sgd", "fr", "lbfgs"}));
  CHECK(j["table"].size() == 5);
  CHECK(j["table"][0]["source"] == "batch_size");
  CHECK(j["table"][0]["df"] == 1);
  CHECK(j["pairwise"].size() == 2);
  CHECK(j["pairwise"][0]["rows"][0].contains("letters"));
  CHECK(j["ttpa_ratios"].size() == 4);
  CHECK(j["correlations"].size() == 3);

  // Reals survive the text round trip exactly.
  CHECK(j["table"][0]["ss"].get<double>() == report.anova.row("batch_size").ss);
  CHECK(j["pairwise"][0]["rows"][0]["lsmean"].get<double>() == report.pairwise.slices[0].rows[0].lsmean);

  std::vector<stats::AnalysisReport> both{report};
  std::istringstream box(stats::boxplot_csv(both));
  auto const         rows = sweep::parse_csv(box);
  REQUIRE(rows.size() == runs.size() + 1);
  CHECK(rows[0] == sweep::CsvRow{"treatment", "batch_size", "optimizer", "run_id", "log_peak_accuracy"});
  std::istringstream trend(stats::trend_csv(both));
  CHECK(sweep::parse_csv(trend).size() == 7);
  std::istringstream ratio(stats::ttpa_ratio_csv(both));
  CHECK(sweep::parse_csv(ratio).size() == 13);

  auto const text = stats::render_report_text(stats::report_to_json(report));
  CHECK(text.find("Type III") != std::string::npos);
  CHECK_THROWS_AS(stats::render_report_text("{not json"), DataError);
}

TEST_CASE("analysis report: treated removes low runs, untreated ingests them")
{
  auto runs = synthetic_runs();
  runs[0].peak_accuracy = 0.12;
  stats::AnalysisOptions opts;
  auto const             treated = stats::analyze_runs(runs, opts);
  CHECK(treated.removed_runs == 1);
  CHECK_FALSE(treated.fit.balanced());
  opts.treatment         = stats::Treatment::untreated;
  auto const untreated   = stats::analyze_runs(runs, opts);
  CHECK(untreated.removed_runs == 0);
  CHECK(untreated.log_table.rows.size() == runs.size());
  auto const j = nlohmann::json::parse(stats::report_to_json(untreated));
  CHECK(j["outlier_threshold"].is_null());
}

TEST_CASE("analysis report: single optimizer is rejected")
{
  auto runs = synthetic_runs();
  runs.erase(std::remove_if(runs.begin(), runs.end(),
                            [](auto const &r) { return r.config.optimizer != optim::OptimizerId::sgd; }),
             runs.end());
  CHECK_THROWS_AS(stats::analyze_runs(runs, {}), DataError);
}
