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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace optbench::objective {

/// A shuffled permutation of {0..n-1} cut into n/k contiguous blocks of
/// exactly k indices. Truncated batches are never produced.
class BatchPlan
{
public:
  BatchPlan(std::vector<std::size_t> permutation, std::size_t batch_size);

  std::size_t batch_size() const noexcept { return batch_size_; }
  std::size_t batch_count() const noexcept { return order_.size() / batch_size_; }
  std::size_t sample_count() const noexcept { return order_.size(); }

  std::span<std::size_t const> batch(std::size_t i) const;

private:
  std::vector<std::size_t> order_;
  std::size_t              batch_size_;
};

/// Throws ConfigError when k does not divide n.
BatchPlan make_batch_plan(std::size_t n, std::size_t k, std::uint64_t seed);

}  // namespace optbench::objective
