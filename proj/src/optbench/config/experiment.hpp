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

#pragma once

#include "optbench/objective/model.hpp"
#include "optbench/sweep/grid.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace optbench::config {

struct DatasetSpec
{
  std::string   kind = "spirals";  // spirals, gaussians, csv, none
  std::size_t   train_samples = 0;
  std::size_t   test_samples  = 0;
  int           classes       = 2;
  std::uint64_t seed          = 0;
  std::filesystem::path path;  // csv only
};

struct ModelEntry
{
  std::string      kind = "mlp";
  std::vector<int> layers;         // mlp
  int              dimension = 2;  // quadratic
};

struct OptimizerGrid
{
  optim::OptimizerId        id = optim::OptimizerId::sgd;
  sweep::HyperparameterGrid grid;
};

/// Declarative description of a whole sweep, as read from the YAML file.
struct ExperimentFile
{
  ModelEntry                 model;
  DatasetSpec                dataset;
  std::vector<std::size_t>   batch_sizes;
  std::vector<OptimizerGrid> optimizers;
  std::size_t                samples_per_optimizer = 1;
  std::uint64_t              seed                  = 0;
  int                        epochs                = 100;
  std::string                output = "optbench-out";
};

struct LoadedExperiment
{
  ExperimentFile           file;
  std::vector<std::string> diagnostics;  // structural problems found while reading
};

/// Throws ConfigError when the file cannot be read or is not valid YAML.
/// Problems with individual values are collected as diagnostics instead.
LoadedExperiment load_experiment(std::filesystem::path const &path);
LoadedExperiment parse_experiment(std::string const &yaml_text);

/// Number of training samples the experiment trains on. For csv datasets
/// this reads the file.
std::size_t training_set_size(ExperimentFile const &file);

/// Every constraint violation: batch-size divisibility, grid names and
/// values, sample counts exceeding the grid, model/dataset mismatch.
std::vector<std::string> validate_experiment(ExperimentFile const &file);

}  // namespace optbench::config
