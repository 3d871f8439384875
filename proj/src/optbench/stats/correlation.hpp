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
#include <span>

namespace optbench::stats {

struct CorrelationResult
{
  double      r = 0.0;
  double      t = 0.0;
  double      p = 1.0;  // two-sided
  std::size_t n = 0;
};

/// Sample Pearson correlation with t = r sqrt((n-2)/(1-r^2)) on n-2 degrees
/// of freedom. Needs equal lengths >= 3 and nonzero variance in both inputs.
CorrelationResult pearson_correlation(std::span<double const> x, std::span<double const> y);

}  // namespace optbench::stats
