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

#include "optbench/optim/batch_objective.hpp"

namespace optbench::optim {

inline constexpr double kArmijoC1 = 1e-4;
inline constexpr double kWolfeC2  = 0.9;

struct LineSearchResult
{
  double alpha       = 0.0;
  int    evaluations = 0;
  bool   succeeded   = false;
};

struct BacktrackingOptions
{
  double alpha0       = 1.0;
  double contraction  = 0.5;
  int    max_searches = 10;
  double c1           = kArmijoC1;
};

/// Tries alpha0 * contraction^j for j = 0..max_searches-1 and returns the
/// first step meeting the Armijo condition
///   f(x + a d) <= f(x) + c1 a g^T d.
/// On failure the last (smallest) candidate is returned with
/// succeeded = false. A direction with g^T d >= 0 fails without evaluating.
/// `value_at_alpha`, when non-null, receives f(x + alpha d) whenever it was
/// evaluated for the returned alpha.
LineSearchResult backtracking_line_search(BatchObjective const &objective, Vector const &x,
                                          double f0, Vector const &grad0, Vector const &direction,
                                          BacktrackingOptions const &options,
                                          double *value_at_alpha = nullptr);

struct WolfeOptions
{
  double alpha_cap     = 1.0;
  int    max_searches  = 20;
  double initial_alpha = 0.0;  // <= 0 selects min(1, alpha_cap)
  double c1            = kArmijoC1;
  double c2            = kWolfeC2;
};

struct WolfeResult
{
  LineSearchResult search;
  Evaluation       at_alpha;  // valid when search.succeeded
};

/// Bracket-and-zoom search for a step in (0, alpha_cap] satisfying the strong
/// Wolfe conditions. Every trial point costs one evaluation and the total
/// never exceeds max_searches. Non-descent directions fail immediately.
WolfeResult wolfe_line_search(BatchObjective const &objective, Vector const &x,
                              Evaluation const &at_x, Vector const &direction,
                              WolfeOptions const &options);

}  // namespace optbench::optim
