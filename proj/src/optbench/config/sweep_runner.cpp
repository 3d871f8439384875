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

#include "optbench/config/sweep_runner.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <thread>

namespace optbench::config {

namespace {

std::string join(std::vector<std::string> const &lines)
{
  std::string out;
  for (auto const &l : lines)
  {
    out += (out.empty() ? "" : "; ") + l;
  }
  return out;
}

objective::ModelSpec model_for(ExperimentFile const &file, objective::Dataset const *data)
{
  auto const kind = objective::parse_model_kind(file.model.kind);
  switch (kind)
  {
  case objective::ModelKind::quadratic:
    return objective::ModelSpec::quadratic(file.model.dimension);
  case objective::ModelKind::rosenbrock:
    return objective::ModelSpec::rosenbrock();
  case objective::ModelKind::logistic_regression:
    return objective::ModelSpec::logistic_regression(static_cast<int>(data->feature_count()),
                                                     data->classes);
  case objective::ModelKind::mlp:
    return objective::ModelSpec::mlp(file.model.layers);
  }
  throw ConfigError("unsupported model");
}

}  // namespace

std::shared_ptr<sweep::TrainingProblem const> build_problem(ExperimentFile const &file)
{
  auto        problem = std::make_shared<sweep::TrainingProblem>();
  auto const &ds      = file.dataset;
  if (ds.kind == "none")
  {
    problem->train.resize(ds.train_samples);
    std::iota(problem->train.begin(), problem->train.end(), std::size_t{0});
    problem->model = model_for(file, nullptr);
    return problem;
  }

  std::shared_ptr<objective::Dataset> data;
  if (ds.kind == "csv")
  {
    data = std::make_shared<objective::Dataset>(objective::read_dataset_csv(ds.path));
  }
  else
  {
    data = std::make_shared<objective::Dataset>(objective::generate_synthetic_dataset(
        objective::parse_synthetic_kind(ds.kind), ds.train_samples + ds.test_samples, ds.classes,
        ds.seed));
  }
  if (ds.test_samples >= data->size())
  {
    throw DataError("test_samples leaves no training data");
  }
  auto split     = objective::split_train_test(data->size(), ds.test_samples, mix_seed(ds.seed, 7));
  problem->train = std::move(split.train);
  problem->test  = std::move(split.test);
  problem->model = model_for(file, data.get());
  problem->data  = std::move(data);
  return problem;
}

std::vector<sweep::ExperimentConfig> plan_sweep(ExperimentFile const                         &file,
                                                std::shared_ptr<sweep::TrainingProblem const> problem)
{
  if (auto problems = validate_experiment(file); !problems.empty())
  {
    throw ConfigError(join(problems));
  }
  std::vector<sweep::ExperimentConfig> plan;
  for (auto const &opt : file.optimizers)
  {
    auto const pool = sweep::expand_grid(opt.grid);
    auto const rank = static_cast<std::uint64_t>(optim::optimizer_rank(optim::to_string(opt.id)));
    for (std::size_t b = 0; b < file.batch_sizes.size(); ++b)
    {
      auto const draw_seed = mix_seed(mix_seed(file.seed, 1000 + rank), file.batch_sizes[b]);
      for (auto &assignment : sweep::sample_configs(pool, file.samples_per_optimizer, draw_seed))
      {
        sweep::ExperimentConfig config;
        config.optimizer       = opt.id;
        config.batch_size      = file.batch_sizes[b];
        config.hyperparameters = std::move(assignment);
        config.seed            = mix_seed(file.seed, 2000 + plan.size());
        config.epochs          = file.epochs;
        config.problem         = problem;
        plan.push_back(std::move(config));
      }
    }
  }
  return plan;
}

std::vector<sweep::TrainingRun> execute_sweep(std::vector<sweep::ExperimentConfig> const &plan,
                                              unsigned parallelism, RunCallback const &on_done)
{
  std::vector<sweep::TrainingRun> results(plan.size());
  if (parallelism == 0)
  {
    parallelism = std::max(1u, std::thread::hardware_concurrency());
  }
  parallelism = static_cast<unsigned>(std::min<std::size_t>(parallelism, plan.size()));

  std::atomic<std::size_t> next{0};
  std::mutex               callback_mutex;
  auto                     worker = [&] {
    for (auto i = next.fetch_add(1); i < plan.size(); i = next.fetch_add(1))
    {
      results[i] = sweep::run_training(plan[i]);
      if (on_done)
      {
        std::lock_guard lock(callback_mutex);
        on_done(i, results[i]);
      }
    }
  };

  if (parallelism <= 1)
  {
    worker();
    return results;
  }
  std::vector<std::jthread> threads;
  threads.reserve(parallelism);
  for (unsigned t = 0; t < parallelism; ++t)
  {
    threads.emplace_back(worker);
  }
  threads.clear();
  return results;
}

}  // namespace optbench::config
