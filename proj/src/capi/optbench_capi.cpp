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

#include "optbench/optbench.h"

#include "optbench/config/experiment.hpp"
#include "optbench/config/sweep_runner.hpp"
#include "optbench/stats/report.hpp"
#include "optbench/stats/special_functions.hpp"
#include "optbench/sweep/csv.hpp"
#include "optbench/sweep/run_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <limits>
#include <memory>
#include <new>
#include <span>
#include <string>
#include <vector>

struct ob_experiment
{
  optbench::config::ExperimentFile file;
  std::vector<std::string>         diagnostics;
};

struct ob_sweep
{
  std::vector<optbench::sweep::TrainingRun> runs;
  std::vector<std::string>                  optimizer_names;
};

struct ob_analysis
{
  ob_treatment                                mode = OB_TREATED;
  std::vector<optbench::stats::AnalysisReport> reports;
  std::vector<std::string>                     json;
};

namespace {

thread_local std::string last_error;

ob_status fail(ob_status status, std::string message)
{
  last_error = std::move(message);
  return status;
}

// Maps exceptions onto status codes: bad inputs are validation failures,
// everything else (I/O, allocation, internal) is a runtime failure.
template <typename F>
ob_status guarded(F &&body)
{
  try
  {
    body();
    return OB_OK;
  }
  catch (optbench::ConfigError const &e)
  {
    return fail(OB_INVALID_INPUT, e.what());
  }
  catch (optbench::DataError const &e)
  {
    return fail(OB_INVALID_INPUT, e.what());
  }
  catch (std::bad_alloc const &)
  {
    return fail(OB_RUNTIME_FAILURE, "out of memory");
  }
  catch (std::exception const &e)
  {
    return fail(OB_RUNTIME_FAILURE, e.what());
  }
  catch (...)
  {
    return fail(OB_RUNTIME_FAILURE, "unknown error");
  }
}

ob_status null_argument(char const *name)
{
  return fail(OB_INVALID_INPUT, std::string("null argument: ") + name);
}

bool valid_report(ob_analysis const *analysis, std::size_t report)
{
  return analysis != nullptr && report < analysis->reports.size();
}

double or_nan(std::optional<double> const &v)
{
  return v ? *v : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

extern "C" {

char const *ob_last_error(void)
{
  return last_error.c_str();
}

char const *ob_version(void)
{
  return "0.1.0";
}

ob_status ob_experiment_load(char const *path, ob_experiment **out)
{
  if (path == nullptr || out == nullptr)
  {
    return null_argument("path/out");
  }
  *out = nullptr;
  return guarded([&] {
    auto loaded = optbench::config::load_experiment(path);
    *out        = new ob_experiment{std::move(loaded.file), std::move(loaded.diagnostics)};
  });
}

ob_status ob_experiment_parse(char const *yaml_text, ob_experiment **out)
{
  if (yaml_text == nullptr || out == nullptr)
  {
    return null_argument("yaml_text/out");
  }
  *out = nullptr;
  return guarded([&] {
    auto loaded = optbench::config::parse_experiment(yaml_text);
    *out        = new ob_experiment{std::move(loaded.file), std::move(loaded.diagnostics)};
  });
}

void ob_experiment_free(ob_experiment *experiment)
{
  delete experiment;
}

ob_status ob_experiment_validate(ob_experiment *experiment, size_t *diagnostic_count)
{
  if (experiment == nullptr)
  {
    return null_argument("experiment");
  }
  auto status = guarded([&] {
    auto found = optbench::config::validate_experiment(experiment->file);
    // Structural problems found while reading stay first.
    std::vector<std::string> all;
    for (auto const &d : experiment->diagnostics)
    {
      if (std::find(all.begin(), all.end(), d) == all.end())
      {
        all.push_back(d);
      }
    }
    for (auto &d : found)
    {
      if (std::find(all.begin(), all.end(), d) == all.end())
      {
        all.push_back(std::move(d));
      }
    }
    experiment->diagnostics = std::move(all);
  });
  if (diagnostic_count != nullptr)
  {
    *diagnostic_count = experiment->diagnostics.size();
  }
  if (status != OB_OK)
  {
    return status;
  }
  if (!experiment->diagnostics.empty())
  {
    return fail(OB_INVALID_INPUT, std::to_string(experiment->diagnostics.size()) +
                                      " configuration problem(s)");
  }
  return OB_OK;
}

char const *ob_experiment_diagnostic(ob_experiment const *experiment, size_t index)
{
  if (experiment == nullptr || index >= experiment->diagnostics.size())
  {
    return nullptr;
  }
  return experiment->diagnostics[index].c_str();
}

void ob_experiment_set_seed(ob_experiment *experiment, uint64_t seed)
{
  if (experiment != nullptr)
  {
    experiment->file.seed         = seed;
    experiment->file.dataset.seed = seed;
  }
}

char const *ob_experiment_output_dir(ob_experiment const *experiment)
{
  return experiment != nullptr ? experiment->file.output.c_str() : nullptr;
}

ob_status ob_experiment_write_dataset(ob_experiment const *experiment, char const *path)
{
  if (experiment == nullptr || path == nullptr)
  {
    return null_argument("experiment/path");
  }
  return guarded([&] {
    auto const problem = optbench::config::build_problem(experiment->file);
    if (!problem->data)
    {
      throw optbench::ConfigError("experiment has no dataset");
    }
    optbench::objective::write_dataset_csv(*problem->data, path);
  });
}

ob_status ob_sweep_run(ob_experiment const *experiment, unsigned parallelism,
                       ob_progress_fn progress, void *user, ob_sweep **out)
{
  if (experiment == nullptr || out == nullptr)
  {
    return null_argument("experiment/out");
  }
  *out = nullptr;
  return guarded([&] {
    if (!experiment->diagnostics.empty())
    {
      throw optbench::ConfigError(experiment->diagnostics.front());
    }
    auto const  problem = optbench::config::build_problem(experiment->file);
    auto const  plan    = optbench::config::plan_sweep(experiment->file, problem);
    std::size_t done    = 0;
    auto        result  = std::make_unique<ob_sweep>();
    result->runs        = optbench::config::execute_sweep(
        plan, parallelism, [&](std::size_t, optbench::sweep::TrainingRun const &run) {
          ++done;
          if (progress != nullptr)
          {
            std::string const status(optbench::sweep::to_string(run.status));
            progress(done, plan.size(), status.c_str(), user);
          }
        });
    for (auto const &run : result->runs)
    {
      result->optimizer_names.emplace_back(optbench::optim::to_string(run.config.optimizer));
    }
    *out = result.release();
  });
}

void ob_sweep_free(ob_sweep *sweep)
{
  delete sweep;
}

size_t ob_sweep_run_count(ob_sweep const *sweep)
{
  return sweep != nullptr ? sweep->runs.size() : 0;
}

ob_status ob_sweep_run_info(ob_sweep const *sweep, size_t index, char const **optimizer,
                            size_t *batch_size, char const **status, double *peak_accuracy,
                            double *ttpa_seconds)
{
  if (sweep == nullptr || index >= sweep->runs.size())
  {
    return fail(OB_INVALID_INPUT, "run index out of range");
  }
  auto const &run = sweep->runs[index];
  if (optimizer != nullptr)
  {
    *optimizer = sweep->optimizer_names[index].c_str();
  }
  if (batch_size != nullptr)
  {
    *batch_size = run.config.batch_size;
  }
  if (status != nullptr)
  {
    // to_string returns views of string literals.
    *status = optbench::sweep::to_string(run.status).data();
  }
  if (peak_accuracy != nullptr)
  {
    *peak_accuracy = run.peak_accuracy;
  }
  if (ttpa_seconds != nullptr)
  {
    *ttpa_seconds = run.ttpa_seconds;
  }
  return OB_OK;
}

ob_status ob_sweep_write_csv(ob_sweep const *sweep, char const *runs_csv, char const *epochs_csv)
{
  if (sweep == nullptr || runs_csv == nullptr || epochs_csv == nullptr)
  {
    return null_argument("sweep/runs_csv/epochs_csv");
  }
  return guarded([&] {
    auto runs = sweep->runs;
    optbench::sweep::write_sweep_csvs(runs, runs_csv, epochs_csv);
  });
}

ob_status ob_analysis_run(char const *runs_csv, ob_treatment treatment, double significance,
                          double threshold, ob_analysis **out)
{
  if (runs_csv == nullptr || out == nullptr)
  {
    return null_argument("runs_csv/out");
  }
  *out = nullptr;
  if (!(significance > 0.0 && significance < 1.0))
  {
    return fail(OB_INVALID_INPUT, "significance must lie in (0, 1)");
  }
  if (!std::isfinite(threshold))
  {
    return fail(OB_INVALID_INPUT, "threshold must be finite");
  }
  return guarded([&] {
    using optbench::stats::Treatment;
    auto const runs     = optbench::sweep::read_runs_csv(runs_csv);
    auto       analysis = std::make_unique<ob_analysis>();
    analysis->mode      = treatment;
    std::vector<Treatment> wanted;
    switch (treatment)
    {
    case OB_TREATED:
      wanted = {Treatment::treated};
      break;
    case OB_UNTREATED:
      wanted = {Treatment::untreated};
      break;
    case OB_BOTH:
      wanted = {Treatment::treated, Treatment::untreated};
      break;
    default:
      throw optbench::ConfigError("unknown treatment mode");
    }
    for (auto const t : wanted)
    {
      optbench::stats::AnalysisOptions options;
      options.treatment    = t;
      options.significance = significance;
      options.threshold    = threshold;
      analysis->reports.push_back(optbench::stats::analyze_runs(runs, options));
      analysis->json.push_back(optbench::stats::report_to_json(analysis->reports.back()));
    }
    *out = analysis.release();
  });
}

void ob_analysis_free(ob_analysis *analysis)
{
  delete analysis;
}

size_t ob_analysis_report_count(ob_analysis const *analysis)
{
  return analysis != nullptr ? analysis->reports.size() : 0;
}

char const *ob_analysis_treatment(ob_analysis const *analysis, size_t report)
{
  if (!valid_report(analysis, report))
  {
    return nullptr;
  }
  return optbench::stats::to_string(analysis->reports[report].options.treatment).data();
}

size_t ob_analysis_input_count(ob_analysis const *analysis, size_t report)
{
  return valid_report(analysis, report) ? analysis->reports[report].input_runs : 0;
}

size_t ob_analysis_removed_count(ob_analysis const *analysis, size_t report)
{
  return valid_report(analysis, report) ? analysis->reports[report].removed_runs : 0;
}

ob_status ob_analysis_anova_row(ob_analysis const *analysis, size_t report, char const *source,
                                double *df, double *ss, double *f, double *p)
{
  if (!valid_report(analysis, report) || source == nullptr)
  {
    return fail(OB_INVALID_INPUT, "invalid report index or source");
  }
  return guarded([&] {
    auto const &row = analysis->reports[report].anova.row(source);
    if (df != nullptr)
    {
      *df = row.df;
    }
    if (ss != nullptr)
    {
      *ss = row.ss;
    }
    if (f != nullptr)
    {
      *f = or_nan(row.f);
    }
    if (p != nullptr)
    {
      *p = or_nan(row.p);
    }
  });
}

char const *ob_analysis_json(ob_analysis const *analysis, size_t report)
{
  return valid_report(analysis, report) ? analysis->json[report].c_str() : nullptr;
}

ob_status ob_analysis_write(ob_analysis const *analysis, char const *out_dir)
{
  if (analysis == nullptr || out_dir == nullptr)
  {
    return null_argument("analysis/out_dir");
  }
  return guarded([&] {
    namespace fs = std::filesystem;
    fs::path const dir(out_dir);
    std::vector<std::pair<fs::path, std::string>> files;
    if (analysis->mode == OB_BOTH)
    {
      for (std::size_t i = 0; i < analysis->reports.size(); ++i)
      {
        std::string const t(optbench::stats::to_string(analysis->reports[i].options.treatment));
        files.emplace_back(dir / ("anova_report_" + t + ".json"), analysis->json[i]);
      }
    }
    else
    {
      files.emplace_back(dir / "anova_report.json", analysis->json.front());
    }
    std::span<optbench::stats::AnalysisReport const> reports(analysis->reports);
    files.emplace_back(dir / "boxplot_data.csv", optbench::stats::boxplot_csv(reports));
    files.emplace_back(dir / "trend_data.csv", optbench::stats::trend_csv(reports));
    files.emplace_back(dir / "ttpa_ratio_data.csv", optbench::stats::ttpa_ratio_csv(reports));

    fs::create_directories(dir);
    for (auto const &[path, content] : files)
    {
      optbench::sweep::write_file_atomically(path, content);
    }
  });
}

ob_status ob_report_render(char const *report_json, char **out_text)
{
  if (report_json == nullptr || out_text == nullptr)
  {
    return null_argument("report_json/out_text");
  }
  *out_text = nullptr;
  return guarded([&] {
    auto const text = optbench::stats::render_report_text(optbench::sweep::read_file(report_json));
    auto      *copy = static_cast<char *>(std::malloc(text.size() + 1));
    if (copy == nullptr)
    {
      throw std::bad_alloc();
    }
    std::memcpy(copy, text.c_str(), text.size() + 1);
    *out_text = copy;
  });
}

void ob_string_free(char *text)
{
  std::free(text);
}

double ob_f_p_value(double f, double df1, double df2)
{
  try
  {
    return optbench::stats::f_p_value(f, df1, df2);
  }
  catch (...)
  {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // extern "C"
