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

#include "optbench/sweep/grid.hpp"

namespace optbench::sweep {

std::vector<Assignment> expand_grid(HyperparameterGrid const &grid)
{
  if (grid.axes.empty())
  {
    throw ConfigError("hyperparameter grid is empty");
  }
  std::size_t total = 1;
  for (auto const &[name, values] : grid.axes)
  {
    if (values.empty())
    {
      throw ConfigError("hyperparameter '" + name + "' has an empty value set");
    }
    total *= values.size();
  }

  std::vector<Assignment> out;
  out.reserve(total);
  std::vector<std::size_t> digit(grid.axes.size(), 0);
  for (std::size_t n = 0; n < total; ++n)
  {
    Assignment a;
    a.reserve(grid.axes.size());
    for (std::size_t i = 0; i < grid.axes.size(); ++i)
    {
      a.emplace_back(grid.axes[i].first, grid.axes[i].second[digit[i]]);
    }
    out.push_back(std::move(a));
    // Odometer increment, last axis fastest.
    for (std::size_t i = grid.axes.size(); i-- > 0;)
    {
      if (++digit[i] < grid.axes[i].second.size())
      {
        break;
      }
      digit[i] = 0;
    }
  }
  return out;
}

}  // namespace optbench::sweep
