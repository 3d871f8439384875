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

#include "optbench/sweep/training.hpp"

#include <span>
#include <vector>

namespace optbench::stats {

inline constexpr double kDefaultOutlierThreshold = 0.15;

struct OutlierPartition
{
  std::vector<sweep::TrainingRun> kept;
  std::vector<sweep::TrainingRun> removed;
};

/// Moves runs with peak accuracy <= threshold into `removed`. A threshold
/// <= 0 removes nothing.
inline OutlierPartition treat_outliers(std::span<sweep::TrainingRun const> runs, double threshold)
{
  OutlierPartition out;
  for (auto const &run : runs)
  {
    if (threshold > 0.0 && run.peak_accuracy <= threshold)
    {
      out.removed.push_back(run);
    }
    else
    {
      out.kept.push_back(run);
    }
  }
  return out;
}

}  // namespace optbench::stats
