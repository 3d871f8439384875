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
#include "optbench/stats/correlation.hpp"
#include "optbench/stats/outliers.hpp"
#include "optbench/stats/pairwise.hpp"
#include "optbench/stats/ttpa.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace optbench::stats {

enum class Treatment
{
  treated,
  untreated,
};

std::string_view to_string(Treatment treatment);

struct AnalysisOptions
{
  Treatment treatment    = Treatment::treated;
  double    significance = 0.05;
  double    threshold    = kDefaultOutlierThreshold;
};

struct CellSummary
{
  std::int64_t batch_size = 0;
  std::string  optimizer;
  std::size_t  count        = 0;
  double       mean_peak    = 0.0;
  double       mean_log     = 0.0;
  double       variance_log = 0.0;  // sample variance; NaN for a single run
};

struct OptimizerCorrelation
{
  std::string                      optimizer;
  std::optional<CorrelationResult> result;  // empty when undefined
  std::string                      note;
};

/// Everything the analysis pipeline produces for one treatment setting.
struct AnalysisReport
{
  AnalysisOptions options;
  std::size_t     input_runs   = 0;
  std::size_t     removed_runs = 0;

  ObservationTable                  log_table;  // ln(percent peak) per kept run
  TwoWayFit                         fit;
  AnovaTable                        anova;
  PairwiseResult                    pairwise;
  std::vector<CellSummary>          cells;
  std::vector<OptimizerCorrelation> correlations;  // ln(percent peak) vs batch size
  std::optional<RatioSummary>       ttpa;
  std::string                       ttpa_note;
  std::vector<RunRatio>             run_ratios;

  CellSummary const *cell(std::int64_t batch_size, std::string_view optimizer) const;
};

/// Outlier treatment (when requested), log transform, two-way Type III
/// ANOVA, per-slice pairwise letters, correlations and TTPA ratios. Throws
/// DataError when the design cannot be analyzed.
AnalysisReport analyze_runs(std::span<sweep::TrainingRun const> runs, AnalysisOptions const &options);

/// anova_report.json; every real carries 17 significant digits, undefined
/// statistics are null.
std::string report_to_json(AnalysisReport const &report);

// Tidy CSVs for the plotting layer. Each accepts several reports (for
// example treated and untreated) and tags rows with their treatment.
std::string boxplot_csv(std::span<AnalysisReport const> reports);
std::string trend_csv(std::span<AnalysisReport const> reports);
std::string ttpa_ratio_csv(std::span<AnalysisReport const> reports);

/// Human-readable tables from an anova_report.json document.
std::string render_report_text(std::string_view report_json);

}  // namespace optbench::stats
