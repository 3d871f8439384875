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

#include "optbench/objective/batch_plan.hpp"

#include "optbench/common.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace optbench::objective {

BatchPlan::BatchPlan(std::vector<std::size_t> permutation, std::size_t batch_size)
  : order_(std::move(permutation))
  , batch_size_(batch_size)
{}

std::span<std::size_t const> BatchPlan::batch(std::size_t i) const
{
  return std::span<std::size_t const>(order_).subspan(i * batch_size_, batch_size_);
}

BatchPlan make_batch_plan(std::size_t n, std::size_t k, std::uint64_t seed)
{
  if (n == 0 || k == 0)
  {
    throw ConfigError("batch plan needs n >= 1 and k >= 1");
  }
  if (n % k != 0)
  {
    throw ConfigError("batch size " + std::to_string(k) + " does not divide training set size " +
                      std::to_string(n));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  return BatchPlan(std::move(order), k);
}

}  // namespace optbench::objective
