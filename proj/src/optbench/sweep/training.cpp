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

#include "optbench/sweep/training.hpp"

#include "optbench/objective/batch_plan.hpp"

#include <chrono>
#include <cmath>

namespace optbench::sweep {

std::string_view to_string(RunStatus status)
{
  switch (status)
  {
  case RunStatus::completed:
    return "completed";
  case RunStatus::diverged:
    return "diverged";
  case RunStatus::error:
    return "error";
  }
  return "error";
}

RunStatus parse_run_status(std::string_view text)
{
  if (text == "completed")
  {
    return RunStatus::completed;
  }
  if (text == "diverged")
  {
    return RunStatus::diverged;
  }
  if (text == "error")
  {
    return RunStatus::error;
  }
  throw DataError("unknown run status '" + std::string(text) + "'");
}

void validate_config(ExperimentConfig const &config)
{
  if (!config.problem)
  {
    throw ConfigError("experiment has no training problem");
  }
  auto const &problem = *config.problem;
  if (config.epochs < 0)
  {
    throw ConfigError("epoch budget must be non-negative");
  }
  if (config.batch_size == 0 || problem.train_size() == 0 ||
      problem.train_size() % config.batch_size != 0)
  {
    throw ConfigError("batch size " + std::to_string(config.batch_size) +
                      " does not divide training set size " +
                      std::to_string(problem.train_size()));
  }
  if (auto problems = optim::check_assignment(config.optimizer, config.hyperparameters);
      !problems.empty())
  {
    throw ConfigError(problems.front());
  }
  if (problem.model.is_classifier())
  {
    if (!problem.data)
    {
      throw ConfigError("classifier model requires a dataset");
    }
    if (problem.data->feature_count() != static_cast<std::size_t>(problem.model.input_width()))
    {
      throw ConfigError("model input width does not match dataset feature count");
    }
    if (problem.data->classes > problem.model.class_count())
    {
      throw ConfigError("dataset has more classes than the model outputs");
    }
  }
}

void finalize_peak(TrainingRun &run)
{
  run.peak_accuracy = 0.0;
  run.peak_epoch    = 0;
  for (std::size_t e = 0; e < run.epoch_test_accuracy.size(); ++e)
  {
    if (run.peak_epoch == 0 || run.epoch_test_accuracy[e] > run.peak_accuracy)
    {
      run.peak_accuracy = run.epoch_test_accuracy[e];
      run.peak_epoch    = static_cast<int>(e) + 1;
    }
  }
  run.ttpa_seconds = run.peak_epoch > 0
                         ? run.epoch_wall_seconds[static_cast<std::size_t>(run.peak_epoch) - 1]
                         : run.total_seconds;
}

TrainingRun run_training(ExperimentConfig const &config)
{
  using clock = std::chrono::steady_clock;

  TrainingRun run;
  run.config = config;
  try
  {
    validate_config(config);
  }
  catch (Error const &e)
  {
    run.status  = RunStatus::error;
    run.message = e.what();
    finalize_peak(run);
    return run;
  }

  auto const &problem = *config.problem;
  auto const &model   = problem.model;
  auto const *data    = problem.data.get();

  auto const started = clock::now();
  auto       elapsed = [&] { return std::chrono::duration<double>(clock::now() - started).count(); };

  try
  {
    auto            optimizer = optim::make_optimizer(config.optimizer, config.hyperparameters);
    ParameterVector params    = objective::init_params(model, mix_seed(config.seed, 0));

    std::vector<std::size_t> block(config.batch_size);
    optim::BatchObjective    objective{
        [&](Vector const &x) { return objective::evaluate(model, x, data, block); },
        [&](Vector const &x) { return objective::evaluate_loss(model, x, data, block); },
    };

    std::span<std::size_t const> test_indices = problem.test.empty()
                                                    ? std::span<std::size_t const>(problem.train)
                                                    : std::span<std::size_t const>(problem.test);

    for (int epoch = 0; epoch < config.epochs && run.status == RunStatus::completed; ++epoch)
    {
      auto const plan = objective::make_batch_plan(problem.train_size(), config.batch_size,
                                                   mix_seed(config.seed, 1 + static_cast<std::uint64_t>(epoch)));
      for (std::size_t b = 0; b < plan.batch_count(); ++b)
      {
        auto const positions = plan.batch(b);
        for (std::size_t i = 0; i < positions.size(); ++i)
        {
          block[i] = problem.train[positions[i]];
        }
        auto const outcome = optimizer->step(objective, params);
        if (outcome.status == optim::StepStatus::diverged || !params.allFinite())
        {
          run.status  = RunStatus::diverged;
          run.message = "non-finite value in epoch " + std::to_string(epoch + 1) + ", batch " +
                        std::to_string(b + 1);
          break;
        }
      }
      if (run.status != RunStatus::completed)
      {
        break;
      }
      double const accuracy = objective::evaluate_accuracy(model, params, data, test_indices);
      if (!std::isfinite(accuracy))
      {
        run.status  = RunStatus::diverged;
        run.message = "non-finite test accuracy in epoch " + std::to_string(epoch + 1);
        break;
      }
      run.epoch_test_accuracy.push_back(accuracy);
      run.epoch_wall_seconds.push_back(elapsed());
    }
  }
  catch (Error const &e)
  {
    run.status  = RunStatus::error;
    run.message = e.what();
  }

  run.total_seconds = elapsed();
  finalize_peak(run);
  return run;
}

stats::ObservationTable runs_to_observations(std::span<TrainingRun const> runs)
{
  stats::ObservationTable table;
  table.rows.reserve(runs.size());
  for (auto const &run : runs)
  {
    table.rows.push_back({static_cast<std::int64_t>(run.config.batch_size),
                          std::string(optim::to_string(run.config.optimizer)), run.peak_accuracy,
                          run.run_id});
  }
  return table;
}

}  // namespace optbench::sweep
