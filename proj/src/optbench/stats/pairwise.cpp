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

#include "optbench/stats/pairwise.hpp"

#include "optbench/stats/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace optbench::stats {

namespace {

using Column = std::vector<bool>;

bool is_subset(Column const &small, Column const &big)
{
  for (std::size_t i = 0; i < small.size(); ++i)
  {
    if (small[i] && !big[i])
    {
      return false;
    }
  }
  return true;
}

void absorb(std::vector<Column> &columns)
{
  std::vector<Column> kept;
  for (std::size_t i = 0; i < columns.size(); ++i)
  {
    bool redundant = false;
    for (std::size_t j = 0; j < columns.size() && !redundant; ++j)
    {
      if (i == j || !is_subset(columns[i], columns[j]))
      {
        continue;
      }
      // Equal columns: keep the first copy only.
      redundant = columns[i] != columns[j] || j < i;
    }
    if (!redundant)
    {
      kept.push_back(columns[i]);
    }
  }
  columns = std::move(kept);
}

char letter(std::size_t index)
{
  return index < 26 ? static_cast<char>('A' + index) : static_cast<char>('a' + (index - 26) % 26);
}

}  // namespace

std::vector<std::string> compact_letter_display(std::vector<double> const            &means,
                                                std::vector<std::vector<bool>> const &significant)
{
  std::size_t const n = means.size();
  if (n == 0)
  {
    return {};
  }
  std::vector<Column> columns{Column(n, true)};
  for (std::size_t i = 0; i < n; ++i)
  {
    for (std::size_t j = i + 1; j < n; ++j)
    {
      if (!significant[i][j])
      {
        continue;
      }
      std::vector<Column> next;
      for (auto const &col : columns)
      {
        if (col[i] && col[j])
        {
          Column without_i = col;
          without_i[i]     = false;
          Column without_j = col;
          without_j[j]     = false;
          next.push_back(std::move(without_i));
          next.push_back(std::move(without_j));
        }
        else
        {
          next.push_back(col);
        }
      }
      columns = std::move(next);
      absorb(columns);
    }
  }

  std::vector<std::size_t> by_mean(n);
  std::iota(by_mean.begin(), by_mean.end(), std::size_t{0});
  std::stable_sort(by_mean.begin(), by_mean.end(),
                   [&](std::size_t l, std::size_t r) { return means[l] > means[r]; });
  std::vector<std::size_t> rank(n);
  for (std::size_t r = 0; r < n; ++r)
  {
    rank[by_mean[r]] = r;
  }
  auto first_member = [&](Column const &col) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i)
    {
      if (col[i])
      {
        best = std::min(best, rank[i]);
      }
    }
    return best;
  };
  std::stable_sort(columns.begin(), columns.end(), [&](Column const &l, Column const &r) {
    return first_member(l) < first_member(r);
  });

  std::vector<std::string> letters(n);
  for (std::size_t c = 0; c < columns.size(); ++c)
  {
    for (std::size_t i = 0; i < n; ++i)
    {
      if (columns[c][i])
      {
        letters[i].push_back(letter(c));
      }
    }
  }
  return letters;
}

PairwiseResult pairwise_by_slice(TwoWayFit const &fit, double significance)
{
  if (!(significance > 0.0 && significance < 1.0))
  {
    throw Error("significance level must be in (0, 1)");
  }
  PairwiseResult result;
  result.significance = significance;

  auto const   b           = static_cast<std::size_t>(fit.b_levels.size());
  double const mse         = fit.mean_square_error();
  double const comparisons = static_cast<double>(b * (b - 1) / 2);

  for (std::size_t i = 0; i < fit.a_levels.size(); ++i)
  {
    auto const ii = static_cast<Eigen::Index>(i);
    std::vector<std::size_t> order(b);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
      return fit.predicted(ii, static_cast<Eigen::Index>(l)) >
             fit.predicted(ii, static_cast<Eigen::Index>(r));
    });

    PairwiseSlice slice;
    slice.batch_size = fit.a_levels[i];
    slice.adjusted_p.assign(b, std::vector<double>(b, 1.0));
    slice.significant.assign(b, std::vector<bool>(b, false));
    std::vector<double> means(b);
    for (std::size_t r = 0; r < b; ++r)
    {
      auto const j = static_cast<Eigen::Index>(order[r]);
      means[r]     = fit.predicted(ii, j);
      slice.rows.push_back({fit.b_levels[order[r]], means[r], "", fit.counts(ii, j)});
    }
    for (std::size_t r = 0; r < b; ++r)
    {
      for (std::size_t s = r + 1; s < b; ++s)
      {
        double const diff = means[r] - means[s];
        double const se   = std::sqrt(mse * (1.0 / slice.rows[r].count + 1.0 / slice.rows[s].count));
        double       p    = 1.0;
        if (se > 0.0)
        {
          p = t_two_sided_p_value(diff / se, fit.df_error);
        }
        else if (diff != 0.0)
        {
          p = 0.0;
        }
        double const adjusted  = std::min(1.0, p * comparisons);
        slice.adjusted_p[r][s] = slice.adjusted_p[s][r] = adjusted;
        slice.significant[r][s] = slice.significant[s][r] = adjusted < significance;
      }
    }
    auto const letters = compact_letter_display(means, slice.significant);
    for (std::size_t r = 0; r < b; ++r)
    {
      slice.rows[r].letters = letters[r];
    }
    result.slices.push_back(std::move(slice));
  }
  return result;
}

}  // namespace optbench::stats
