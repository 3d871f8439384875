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

#include "optbench/stats/ttpa.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace optbench::stats {

namespace {

struct Moments
{
  double min;
  double mean;
  double median;
  double max;
};

Moments describe(std::vector<double> values)
{
  std::sort(values.begin(), values.end());
  std::size_t const n = values.size();
  double const median = n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  double const mean   = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  return {values.front(), mean, median, values.back()};
}

using CellKey = std::pair<std::string, std::int64_t>;

std::map<CellKey, std::vector<double>> ttpa_by_cell(std::span<sweep::TrainingRun const> runs)
{
  std::map<CellKey, std::vector<double>> cells;
  for (auto const &run : runs)
  {
    cells[{std::string(optim::to_string(run.config.optimizer)),
           static_cast<std::int64_t>(run.config.batch_size)}]
        .push_back(run.ttpa_seconds);
  }
  return cells;
}

}  // namespace

RatioSummary ttpa_ratio_summary(std::span<sweep::TrainingRun const> runs, bool treated,
                                double threshold)
{
  RatioSummary summary;
  summary.treated   = treated;
  summary.threshold = threshold;

  std::vector<sweep::TrainingRun> kept;
  if (treated)
  {
    kept = treat_outliers(runs, threshold).kept;
    runs = kept;
  }

  auto const cells = ttpa_by_cell(runs);
  for (auto const &[key, values] : cells)
  {
    auto const &[optimizer, batch] = key;
    if (optimizer == "sgd")
    {
      continue;
    }
    auto const reference = cells.find({"sgd", batch});
    if (reference == cells.end())
    {
      throw DataError("no SGD reference runs at batch size " + std::to_string(batch));
    }
    Moments const ref = describe(reference->second);
    if (!(ref.min > 0.0))
    {
      throw DataError("SGD reference TTPA at batch size " + std::to_string(batch) +
                      " is not positive");
    }
    Moments const own = describe(values);
    summary.cells.push_back({optimizer, batch, own.min / ref.min, own.mean / ref.mean,
                             own.median / ref.median, own.max / ref.max, values.size()});
  }
  std::stable_sort(summary.cells.begin(), summary.cells.end(),
                   [](RatioCell const &l, RatioCell const &r) {
                     int const lr = optim::optimizer_rank(l.optimizer);
                     int const rr = optim::optimizer_rank(r.optimizer);
                     if (lr != rr)
                     {
                       return lr < rr;
                     }
                     return l.optimizer != r.optimizer ? l.optimizer < r.optimizer
                                                       : l.batch_size < r.batch_size;
                   });
  return summary;
}

std::vector<RunRatio> ttpa_run_ratios(std::span<sweep::TrainingRun const> runs)
{
  std::map<std::int64_t, std::vector<double>> sgd;
  for (auto const &run : runs)
  {
    if (run.config.optimizer == optim::OptimizerId::sgd)
    {
      sgd[static_cast<std::int64_t>(run.config.batch_size)].push_back(run.ttpa_seconds);
    }
  }
  std::vector<RunRatio> out;
  for (auto const &run : runs)
  {
    if (run.config.optimizer == optim::OptimizerId::sgd)
    {
      continue;
    }
    auto const batch = static_cast<std::int64_t>(run.config.batch_size);
    auto const it    = sgd.find(batch);
    if (it == sgd.end())
    {
      continue;
    }
    double const mean = describe(it->second).mean;
    if (!(mean > 0.0))
    {
      continue;
    }
    out.push_back({run.run_id, std::string(optim::to_string(run.config.optimizer)), batch,
                   run.ttpa_seconds / mean});
  }
  return out;
}

}  // namespace optbench::stats
