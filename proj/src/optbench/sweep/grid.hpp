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
#include "optbench/optim/optimizer.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace optbench::sweep {

using optim::Assignment;
using optim::HyperValue;

/// Per-optimizer discrete value sets, in declaration order.
struct HyperparameterGrid
{
  std::vector<std::pair<std::string, std::vector<HyperValue>>> axes;
};

/// Cartesian product of the grid's value sets. The first declared axis
/// varies slowest. Throws ConfigError on an empty grid or value set.
std::vector<Assignment> expand_grid(HyperparameterGrid const &grid);

/// `count` distinct elements of `pool` drawn uniformly without replacement,
/// in draw order. Deterministic for a fixed seed.
template <typename T>
std::vector<T> sample_configs(std::vector<T> const &pool, std::size_t count, std::uint64_t seed)
{
  if (count > pool.size())
  {
    throw ConfigError("cannot sample " + std::to_string(count) + " configurations from a pool of " +
                      std::to_string(pool.size()));
  }
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates: the first `count` slots are the sample.
  for (std::size_t i = 0; i < count; ++i)
  {
    std::uniform_int_distribution<std::size_t> pick(i, order.size() - 1);
    std::swap(order[i], order[pick(rng)]);
  }
  std::vector<T> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
  {
    out.push_back(pool[order[i]]);
  }
  return out;
}

}  // namespace optbench::sweep
