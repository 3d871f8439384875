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

#include "optbench/stats/correlation.hpp"

#include "optbench/common.hpp"
#include "optbench/stats/special_functions.hpp"

#include <algorithm>
#include <cmath>

namespace optbench::stats {

CorrelationResult pearson_correlation(std::span<double const> x, std::span<double const> y)
{
  if (x.size() != y.size())
  {
    throw DataError("correlation inputs differ in length");
  }
  if (x.size() < 3)
  {
    throw DataError("correlation needs at least 3 observations");
  }
  auto const n  = static_cast<double>(x.size());
  double     mx = 0.0;
  double     my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    double const dx = x[i] - mx;
    double const dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0))
  {
    throw DataError("correlation is undefined for a constant input");
  }

  CorrelationResult result;
  result.n         = x.size();
  result.r         = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  double const df  = n - 2.0;
  double const rem = 1.0 - result.r * result.r;
  if (rem <= 0.0)
  {
    result.t = std::copysign(HUGE_VAL, result.r);
    result.p = 0.0;
    return result;
  }
  result.t = result.r * std::sqrt(df / rem);
  result.p = t_two_sided_p_value(result.t, df);
  return result;
}

}  // namespace optbench::stats
