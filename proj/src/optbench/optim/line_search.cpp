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

#include "optbench/optim/line_search.hpp"

#include <algorithm>
#include <cmath>

namespace optbench::optim {

LineSearchResult backtracking_line_search(BatchObjective const &objective, Vector const &x,
                                          double f0, Vector const &grad0, Vector const &direction,
                                          BacktrackingOptions const &options,
                                          double *value_at_alpha)
{
  if (!(options.alpha0 > 0.0) || !(options.contraction > 0.0 && options.contraction < 1.0) ||
      options.max_searches < 1)
  {
    throw ConfigError("backtracking needs alpha0 > 0, contraction in (0,1), max_searches >= 1");
  }

  double const slope = grad0.dot(direction);
  double const last  = options.alpha0 * std::pow(options.contraction, options.max_searches - 1);

  LineSearchResult result;
  if (!(slope < 0.0))
  {
    result.alpha = last;
    return result;
  }

  double alpha = options.alpha0;
  for (int j = 0; j < options.max_searches; ++j)
  {
    double const f = objective.value_at(x + alpha * direction);
    ++result.evaluations;
    result.alpha = alpha;
    if (value_at_alpha != nullptr)
    {
      *value_at_alpha = f;
    }
    if (std::isfinite(f) && f <= f0 + options.c1 * alpha * slope)
    {
      result.succeeded = true;
      return result;
    }
    alpha *= options.contraction;
  }
  return result;
}

namespace {

struct Trial
{
  double     alpha = 0.0;
  double     value = 0.0;
  double     slope = 0.0;
  Evaluation eval;

  bool finite() const { return std::isfinite(value) && std::isfinite(slope); }
};

// Minimizer of the cubic matching values and slopes at both ends, kept
// inside the middle 80% of the interval; falls back to bisection.
double interpolate(Trial const &lo, Trial const &hi)
{
  double const left  = std::min(lo.alpha, hi.alpha);
  double const right = std::max(lo.alpha, hi.alpha);
  double const width = right - left;
  double const mid   = 0.5 * (left + right);
  if (!lo.finite() || !hi.finite() || width <= 0.0)
  {
    return mid;
  }

  double const d1 = lo.slope + hi.slope - 3.0 * (lo.value - hi.value) / (lo.alpha - hi.alpha);
  double const disc = d1 * d1 - lo.slope * hi.slope;
  if (!(disc >= 0.0))
  {
    return mid;
  }
  double const d2   = std::copysign(std::sqrt(disc), hi.alpha - lo.alpha);
  double const next = hi.alpha - (hi.alpha - lo.alpha) * (hi.slope + d2 - d1) /
                                     (hi.slope - lo.slope + 2.0 * d2);
  if (!std::isfinite(next) || next < left + 0.1 * width || next > right - 0.1 * width)
  {
    return mid;
  }
  return next;
}

}  // namespace

WolfeResult wolfe_line_search(BatchObjective const &objective, Vector const &x,
                              Evaluation const &at_x, Vector const &direction,
                              WolfeOptions const &options)
{
  if (!(options.alpha_cap > 0.0) || options.max_searches < 1)
  {
    throw ConfigError("wolfe search needs alpha_cap > 0 and max_searches >= 1");
  }

  WolfeResult  out;
  double const f0     = at_x.loss;
  double const slope0 = at_x.gradient.dot(direction);
  if (!(slope0 < 0.0) || !std::isfinite(f0))
  {
    return out;
  }

  int  evaluations = 0;
  auto probe       = [&](double alpha) {
    Trial t;
    t.alpha = alpha;
    t.eval  = objective.evaluate(x + alpha * direction);
    t.value = t.eval.loss;
    t.slope = t.eval.gradient.size() == direction.size() ? t.eval.gradient.dot(direction)
                                                          : std::nan("");
    ++evaluations;
    return t;
  };
  auto sufficient = [&](Trial const &t) {
    return std::isfinite(t.value) && t.value <= f0 + options.c1 * t.alpha * slope0;
  };
  auto curvature = [&](Trial const &t) {
    return std::isfinite(t.slope) && std::abs(t.slope) <= -options.c2 * slope0;
  };
  auto accept = [&](Trial &t) {
    out.search   = {t.alpha, evaluations, true};
    out.at_alpha = std::move(t.eval);
    return out;
  };
  auto fail = [&] {
    out.search = {0.0, evaluations, false};
    return out;
  };

  auto zoom = [&](Trial lo, Trial hi) -> WolfeResult {
    while (evaluations < options.max_searches)
    {
      Trial trial = probe(interpolate(lo, hi));
      if (!sufficient(trial) || trial.value >= lo.value)
      {
        hi = std::move(trial);
        continue;
      }
      if (curvature(trial))
      {
        return accept(trial);
      }
      if (trial.slope * (hi.alpha - lo.alpha) >= 0.0)
      {
        hi = std::move(lo);
      }
      lo = std::move(trial);
    }
    return fail();
  };

  Trial prev;
  prev.alpha = 0.0;
  prev.value = f0;
  prev.slope = slope0;

  double alpha = options.initial_alpha > 0.0 ? std::min(options.initial_alpha, options.alpha_cap)
                                             : std::min(1.0, options.alpha_cap);
  bool first = true;
  while (evaluations < options.max_searches)
  {
    Trial trial = probe(alpha);
    if (!sufficient(trial) || (!first && trial.value >= prev.value))
    {
      return zoom(std::move(prev), std::move(trial));
    }
    if (curvature(trial))
    {
      return accept(trial);
    }
    if (trial.slope >= 0.0)
    {
      return zoom(std::move(trial), std::move(prev));
    }
    if (alpha >= options.alpha_cap)
    {
      return fail();
    }
    prev  = std::move(trial);
    alpha = std::min(2.0 * alpha, options.alpha_cap);
    first = false;
  }
  return fail();
}

}  // namespace optbench::optim
