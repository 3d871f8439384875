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

// Command-line front end. Talks to the library only through the C API.

#include "optbench/optbench.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;

namespace {

int report_failure(ob_status status)
{
  std::cerr << "error: " << ob_last_error() << '\n';
  return static_cast<int>(status);
}

struct ExperimentHandle
{
  ob_experiment *ptr = nullptr;
  ~ExperimentHandle() { ob_experiment_free(ptr); }
};

struct SweepHandle
{
  ob_sweep *ptr = nullptr;
  ~SweepHandle() { ob_sweep_free(ptr); }
};

struct AnalysisHandle
{
  ob_analysis *ptr = nullptr;
  ~AnalysisHandle() { ob_analysis_free(ptr); }
};

fs::path resolve_out(std::string const &flag, std::string const &fallback)
{
  if (char const *env = std::getenv("OPTBENCH_OUT"); env != nullptr && *env != '\0')
  {
    return env;
  }
  return flag.empty() ? fs::path(fallback) : fs::path(flag);
}

// Loads and validates, printing every diagnostic. Returns the exit status.
int load_checked(std::string const &path, std::optional<std::uint64_t> seed, ExperimentHandle &h)
{
  if (auto status = ob_experiment_load(path.c_str(), &h.ptr); status != OB_OK)
  {
    return report_failure(status);
  }
  if (seed)
  {
    ob_experiment_set_seed(h.ptr, *seed);
  }
  std::size_t count  = 0;
  auto const  status = ob_experiment_validate(h.ptr, &count);
  for (std::size_t i = 0; i < count; ++i)
  {
    std::cerr << path << ": " << ob_experiment_diagnostic(h.ptr, i) << '\n';
  }
  if (status != OB_OK && count == 0)
  {
    return report_failure(status);
  }
  return static_cast<int>(status);
}

void print_progress(std::size_t done, std::size_t total, char const *status, void *)
{
  std::fprintf(stderr, "[%zu/%zu] %s\n", done, total, status);
}

std::string format_number(double v)
{
  if (std::isnan(v))
  {
    return "NA";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Benchmark optimizers across batch sizes and analyze the results"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ob_version());

  std::string                  config_path;
  std::string                  out_flag;
  unsigned                     parallelism = 1;
  std::optional<std::uint64_t> seed;
  double                       significance = 0.05;
  double                       threshold    = 0.15;
  std::string                  runs_path;
  std::string                  report_path;

  auto *validate = app.add_subcommand("validate", "Check an experiment file without running it");
  validate->add_option("--config,config", config_path, "Experiment file")->required();
  validate->add_option("--seed", seed, "Override the experiment seed");

  auto *sweep = app.add_subcommand("sweep", "Run the sampled configurations of an experiment");
  sweep->add_option("--config,config", config_path, "Experiment file")->required();
  sweep->add_option("--parallelism", parallelism, "Worker threads (0 = one per core)");
  sweep->add_option("--seed", seed, "Override the experiment seed");
  sweep->add_option("--out", out_flag, "Output directory (default: from the experiment file)");

  auto *analyze = app.add_subcommand("analyze", "Two-way ANOVA, pairwise letters and TTPA ratios");
  analyze->add_option("runs", runs_path, "runs.csv (default: OUT/runs.csv)");
  auto *treated   = analyze->add_flag("--treated", "Drop low-accuracy outlier runs (default)");
  auto *untreated = analyze->add_flag("--untreated", "Keep every run");
  auto *both      = analyze->add_flag("--both", "Write treated and untreated reports");
  treated->excludes(untreated)->excludes(both);
  untreated->excludes(both);
  analyze->add_option("--significance", significance, "Pairwise significance level")
      ->check(CLI::Range(0.0, 1.0));
  analyze->add_option("--threshold", threshold, "Peak accuracy at or below which a run is dropped");
  analyze->add_option("--out", out_flag, "Output directory (default: optbench-out)");

  auto *report = app.add_subcommand("report", "Print an anova_report.json as tables");
  report->add_option("report", report_path, "Report file (default: OUT/anova_report.json)");
  report->add_option("--out", out_flag, "Directory holding the report");

  try
  {
    app.parse(argc, argv);
  }
  catch (CLI::ParseError const &e)
  {
    auto const code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(OB_INVALID_INPUT);
  }

  if (validate->parsed())
  {
    ExperimentHandle experiment;
    auto const       status = load_checked(config_path, seed, experiment);
    if (status == OB_OK)
    {
      std::cout << config_path << ": ok\n";
    }
    return status;
  }

  if (sweep->parsed())
  {
    ExperimentHandle experiment;
    if (auto status = load_checked(config_path, seed, experiment); status != OB_OK)
    {
      return status;
    }
    auto const out = resolve_out(out_flag, ob_experiment_output_dir(experiment.ptr));
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec)
    {
      std::cerr << "error: cannot create '" << out.string() << "': " << ec.message() << '\n';
      return OB_RUNTIME_FAILURE;
    }
    SweepHandle runs;
    if (auto status = ob_sweep_run(experiment.ptr, parallelism, print_progress, nullptr, &runs.ptr);
        status != OB_OK)
    {
      return report_failure(status);
    }
    auto const runs_csv   = (out / "runs.csv").string();
    auto const epochs_csv = (out / "epochs.csv").string();
    if (auto status = ob_sweep_write_csv(runs.ptr, runs_csv.c_str(), epochs_csv.c_str());
        status != OB_OK)
    {
      return report_failure(status);
    }
    for (std::size_t i = 0; i < ob_sweep_run_count(runs.ptr); ++i)
    {
      char const *optimizer = nullptr;
      char const *status    = nullptr;
      std::size_t batch     = 0;
      double      peak = 0.0, ttpa = 0.0;
      ob_sweep_run_info(runs.ptr, i, &optimizer, &batch, &status, &peak, &ttpa);
      std::cout << optimizer << " batch=" << batch << " status=" << status
                << " peak=" << format_number(peak) << " ttpa=" << format_number(ttpa) << "s\n";
    }
    std::cout << "wrote " << runs_csv << " and " << epochs_csv << '\n';
    return OB_OK;
  }

  if (analyze->parsed())
  {
    auto const   out  = resolve_out(out_flag, "optbench-out");
    auto const   runs = runs_path.empty() ? (out / "runs.csv").string() : runs_path;
    ob_treatment mode = OB_TREATED;
    if (*untreated)
    {
      mode = OB_UNTREATED;
    }
    else if (*both)
    {
      mode = OB_BOTH;
    }
    AnalysisHandle analysis;
    if (auto status = ob_analysis_run(runs.c_str(), mode, significance, threshold, &analysis.ptr);
        status != OB_OK)
    {
      return report_failure(status);
    }
    if (auto status = ob_analysis_write(analysis.ptr, out.string().c_str()); status != OB_OK)
    {
      return report_failure(status);
    }
    for (std::size_t r = 0; r < ob_analysis_report_count(analysis.ptr); ++r)
    {
      double df = 0, ss = 0, f_a = 0, p_a = 0, f_b = 0, p_b = 0, f_ab = 0, p_ab = 0;
      ob_analysis_anova_row(analysis.ptr, r, "batch_size", &df, &ss, &f_a, &p_a);
      ob_analysis_anova_row(analysis.ptr, r, "optimizer", &df, &ss, &f_b, &p_b);
      ob_analysis_anova_row(analysis.ptr, r, "interaction", &df, &ss, &f_ab, &p_ab);
      std::cout << ob_analysis_treatment(analysis.ptr, r) << ": "
                << ob_analysis_input_count(analysis.ptr, r) << " runs, "
                << ob_analysis_removed_count(analysis.ptr, r) << " removed"
                << "; batch_size p=" << format_number(p_a) << ", optimizer p=" << format_number(p_b)
                << ", interaction p=" << format_number(p_ab) << '\n';
    }
    std::cout << "wrote reports to " << out.string() << '\n';
    return OB_OK;
  }

  if (report->parsed())
  {
    auto const path =
        report_path.empty() ? (resolve_out(out_flag, "optbench-out") / "anova_report.json").string()
                            : report_path;
    char *text = nullptr;
    if (auto status = ob_report_render(path.c_str(), &text); status != OB_OK)
    {
      return report_failure(status);
    }
    std::cout << text;
    ob_string_free(text);
    return OB_OK;
  }
  return OB_INVALID_INPUT;
}
