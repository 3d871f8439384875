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
#include "optbench/optim/line_search.hpp"

#include <deque>

namespace optbench::optim {

struct CurvaturePair
{
  Vector s;  // parameter step
  Vector y;  // gradient difference
  double rho = 0.0;  // 1 / (y^T s)
};

/// Bounded FIFO of curvature pairs. Pairs violating y^T s > 0 are rejected,
/// which keeps the implied Hessian approximation positive definite.
class CurvatureHistory
{
public:
  explicit CurvatureHistory(std::size_t capacity);

  /// Returns false (and stores nothing) when y^T s <= 0.
  bool push(Vector s, Vector y);
  void clear() { pairs_.clear(); }

  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  bool        empty() const noexcept { return pairs_.empty(); }

  std::deque<CurvaturePair> const &pairs() const noexcept { return pairs_; }

private:
  std::size_t               capacity_;
  std::deque<CurvaturePair> pairs_;  // oldest first
};

/// Solves B p = -grad for the BFGS approximation B built from the stored
/// pairs with B0 = I, using the two-loop recursion on the inverse.
Vector lbfgs_direction(CurvatureHistory const &history, Vector const &grad);

struct LbfgsOptions
{
  double learning_rate     = 1.0;  // upper bound on the step length
  int    memory            = 10;
  int    max_line_searches = 20;
};

struct LbfgsState
{
  explicit LbfgsState(LbfgsOptions opts)
    : options(opts)
    , history(static_cast<std::size_t>(opts.memory < 1 ? 1 : opts.memory))
  {}

  LbfgsOptions     options;
  CurvatureHistory history;
};

/// One quasi-Newton iteration on a fixed batch. On a failed Wolfe search the
/// parameters and the history are left untouched.
BatchStepResult lbfgs_batch_step(LbfgsState &state, BatchObjective const &objective,
                                 ParameterVector &params);

}  // namespace optbench::optim
