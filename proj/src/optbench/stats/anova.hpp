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

#include "optbench/common.hpp"
#include "optbench/stats/observation.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace optbench::stats {

/// Natural log of the response expressed in percent (0.76 -> ln 76).
/// Throws DataError naming the first run with a nonpositive response.
ObservationTable log_transform(ObservationTable const &table);

/// Column block of one model term inside the design matrix.
struct TermColumns
{
  Eigen::Index first = 0;
  Eigen::Index count = 0;
};

/// Least-squares fit of the full two-way factorial model under sum-to-zero
/// coding: intercept, (a-1) batch-size effects, (b-1) optimizer effects and
/// (a-1)(b-1) interaction products.
struct TwoWayFit
{
  std::vector<std::int64_t> a_levels;  // ascending batch sizes
  std::vector<std::string>  b_levels;  // sgd, fr, lbfgs, then others lexically

  Eigen::MatrixXi counts;      // a x b observations per cell
  Eigen::MatrixXd cell_means;  // a x b raw cell means
  Eigen::MatrixXd predicted;   // a x b model predictions (LS means)

  Eigen::MatrixXd design;
  Vector          response;
  Vector          coefficients;

  TermColumns a_term;
  TermColumns b_term;
  TermColumns ab_term;

  double residual_ss = 0.0;
  double total_ss    = 0.0;  // corrected for the mean
  int    df_error    = 0;

  std::size_t observation_count() const noexcept { return static_cast<std::size_t>(response.size()); }
  bool        balanced() const;
  double      mean_square_error() const { return residual_ss / df_error; }
};

/// Throws DataError when a factor has fewer than two levels, a cell is empty
/// (the message names it) or no error degrees of freedom remain.
TwoWayFit fit_two_way_model(ObservationTable const &table);

struct AnovaRow
{
  std::string           source;  // batch_size, optimizer, interaction, error, total
  int                   df = 0;
  double                ss = 0.0;
  std::optional<double> ms;
  std::optional<double> f;
  std::optional<double> p;
};

struct AnovaTable
{
  std::vector<AnovaRow> rows;

  AnovaRow const &row(std::string_view source) const;
  int             total_df() const { return row("total").df; }
};

/// Type III sums of squares: for each term, the increase in residual SS when
/// its columns are dropped from the full model. A source with zero SS reports
/// F = 0 and p = 1.
AnovaTable anova_type3(TwoWayFit const &fit);
AnovaTable anova_type3(ObservationTable const &table);

}  // namespace optbench::stats
