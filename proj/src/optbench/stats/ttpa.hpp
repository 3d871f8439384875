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

#include "optbench/stats/outliers.hpp"

#include <string>
#include <vector>

namespace optbench::stats {

struct RatioCell
{
  std::string  optimizer;
  std::int64_t batch_size = 0;
  double       min        = 0.0;
  double       mean       = 0.0;
  double       median     = 0.0;
  double       max        = 0.0;
  std::size_t  count      = 0;  // runs of `optimizer` in the cell
};

struct RatioSummary
{
  bool                   treated   = false;
  double                 threshold = kDefaultOutlierThreshold;
  std::vector<RatioCell> cells;  // optimizer rank, then ascending batch size
};

/// For every non-SGD optimizer and batch size, each statistic of its TTPA
/// distribution divided by the same statistic of the SGD TTPAs at that batch
/// size. With `treated`, outliers are removed first. Throws DataError when a
/// batch size has no SGD reference runs or a reference statistic is not
/// positive.
RatioSummary ttpa_ratio_summary(std::span<sweep::TrainingRun const> runs, bool treated,
                                double threshold = kDefaultOutlierThreshold);

struct RunRatio
{
  std::string  run_id;
  std::string  optimizer;
  std::int64_t batch_size = 0;
  double       ratio      = 0.0;
};

/// Per-run TTPA divided by the mean SGD TTPA at the same batch size; the
/// distribution behind each RatioSummary cell. Batch sizes without SGD runs
/// are skipped.
std::vector<RunRatio> ttpa_run_ratios(std::span<sweep::TrainingRun const> runs);

}  // namespace optbench::stats
