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

#include "optbench/stats/special_functions.hpp"

#include "optbench/common.hpp"

#include <cmath>
#include <limits>

namespace optbench::stats {

namespace {

// Continued fraction for I_x(a, b) (Numerical Recipes, betacf).
double beta_continued_fraction(double a, double b, double x)
{
  constexpr int    kMaxIterations = 100000;
  constexpr double kEpsilon       = 1e-16;
  constexpr double kTiny          = 1e-300;

  double const qab = a + b;
  double const qap = a + 1.0;
  double const qam = a - 1.0;
  double       c   = 1.0;
  double       d   = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny)
  {
    d = kTiny;
  }
  d        = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m)
  {
    double const m2 = 2.0 * m;
    double       aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d               = 1.0 + aa * d;
    if (std::abs(d) < kTiny)
    {
      d = kTiny;
    }
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny)
    {
      c = kTiny;
    }
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d  = 1.0 + aa * d;
    if (std::abs(d) < kTiny)
    {
      d = kTiny;
    }
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny)
    {
      c = kTiny;
    }
    d                = 1.0 / d;
    double const del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEpsilon)
    {
      return h;
    }
  }
  throw Error("incomplete beta continued fraction did not converge");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x)
{
  if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0 && x <= 1.0))
  {
    throw Error("incomplete beta needs a, b > 0 and x in [0, 1]");
  }
  if (x == 0.0)
  {
    return 0.0;
  }
  if (x == 1.0)
  {
    return 1.0;
  }
  double const log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  double const front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0))
  {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double f_p_value(double f, double df1, double df2)
{
  if (!(df1 >= 1.0) || !(df2 >= 1.0))
  {
    throw Error("F distribution needs df1 >= 1 and df2 >= 1");
  }
  if (std::isnan(f))
  {
    throw Error("F statistic is NaN");
  }
  if (f <= 0.0)
  {
    return 1.0;
  }
  if (std::isinf(f))
  {
    return 0.0;
  }
  return regularized_incomplete_beta(0.5 * df2, 0.5 * df1, df2 / (df2 + df1 * f));
}

double t_two_sided_p_value(double t, double df)
{
  if (!(df > 0.0))
  {
    throw Error("t distribution needs df > 0");
  }
  if (std::isnan(t))
  {
    throw Error("t statistic is NaN");
  }
  if (std::isinf(t))
  {
    return 0.0;
  }
  return regularized_incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
}

}  // namespace optbench::stats
