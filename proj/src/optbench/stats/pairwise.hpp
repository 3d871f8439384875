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

#include "optbench/stats/anova.hpp"

#include <string>
#include <vector>

namespace optbench::stats {

/// Letters per level such that two levels share a letter iff they are not
/// significantly different (insert-and-absorb). Letters are ordered so that
/// the level with the largest mean carries "A".
std::vector<std::string> compact_letter_display(std::vector<double> const            &means,
                                                std::vector<std::vector<bool>> const &significant);

struct PairwiseRow
{
  std::string optimizer;
  double      lsmean = 0.0;
  std::string letters;
  int         count  = 0;
};

struct PairwiseSlice
{
  std::int64_t             batch_size = 0;
  std::vector<PairwiseRow> rows;  // descending LS mean

  // Indexed like `rows`.
  std::vector<std::vector<double>> adjusted_p;
  std::vector<std::vector<bool>>   significant;
};

struct PairwiseResult
{
  double                     significance = 0.05;
  std::string                adjustment   = "bonferroni";
  std::vector<PairwiseSlice> slices;  // ascending batch size
};

/// Within each batch size, t-tests on every pair of optimizer LS means using
/// the pooled error mean square of the full model, Bonferroni-adjusted over
/// the b(b-1)/2 comparisons of the slice.
PairwiseResult pairwise_by_slice(TwoWayFit const &fit, double significance);

}  // namespace optbench::stats
