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

#include "optbench/common.hpp"

#include <cstddef>
#include <filesystem>
#include <string_view>
#include <vector>

namespace optbench::objective {

using FeatureMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Labelled samples. Row i of `features` belongs to `labels[i]`.
struct Dataset
{
  FeatureMatrix    features;
  std::vector<int> labels;
  int              classes = 0;

  std::size_t size() const noexcept { return labels.size(); }
  std::size_t feature_count() const noexcept { return static_cast<std::size_t>(features.cols()); }
};

enum class SyntheticKind
{
  gaussians,
  spirals,
};

SyntheticKind    parse_synthetic_kind(std::string_view name);
std::string_view to_string(SyntheticKind kind);

/// Two-dimensional synthetic classification data with `n / classes` samples
/// per class. Features are standardized to zero mean and unit (population)
/// variance per coordinate. Throws DataError unless `classes` divides `n`.
Dataset generate_synthetic_dataset(SyntheticKind kind, std::size_t n, int classes,
                                   std::uint64_t seed);

/// Disjoint train/test index sets over `n` samples, shuffled with `seed`.
struct Split
{
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

Split split_train_test(std::size_t n, std::size_t test_count, std::uint64_t seed);

// CSV layout: header `f0,...,f{d-1},label`, one sample per row.
Dataset read_dataset_csv(std::filesystem::path const &path);
void    write_dataset_csv(Dataset const &data, std::filesystem::path const &path);

}  // namespace optbench::objective
