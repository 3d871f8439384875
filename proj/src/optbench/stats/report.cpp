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

#include "optbench/stats/report.hpp"

#include "optbench/sweep/csv.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace optbench::stats {

using Json = nlohmann::ordered_json;

std::string_view to_string(Treatment treatment)
{
  return treatment == Treatment::treated ? "treated" : "untreated";
}

CellSummary const *AnalysisReport::cell(std::int64_t batch_size, std::string_view optimizer) const
{
  for (auto const &c : cells)
  {
    if (c.batch_size == batch_size && c.optimizer == optimizer)
    {
      return &c;
    }
  }
  return nullptr;
}

AnalysisReport analyze_runs(std::span<sweep::TrainingRun const> runs, AnalysisOptions const &options)
{
  if (!(options.significance > 0.0 && options.significance < 1.0))
  {
    throw DataError("significance level must be in (0, 1)");
  }
  AnalysisReport report;
  report.options    = options;
  report.input_runs = runs.size();

  std::vector<sweep::TrainingRun> kept(runs.begin(), runs.end());
  if (options.treatment == Treatment::treated)
  {
    auto partition      = treat_outliers(runs, options.threshold);
    kept                = std::move(partition.kept);
    report.removed_runs = partition.removed.size();
  }

  report.log_table = log_transform(sweep::runs_to_observations(kept));
  report.fit       = fit_two_way_model(report.log_table);
  report.anova     = anova_type3(report.fit);
  report.pairwise  = pairwise_by_slice(report.fit, options.significance);

  std::map<std::pair<std::int64_t, std::string>, std::vector<std::pair<double, double>>> groups;
  for (std::size_t i = 0; i < kept.size(); ++i)
  {
    auto const &row = report.log_table.rows[i];
    groups[{row.batch_size, row.optimizer}].emplace_back(kept[i].peak_accuracy, row.response);
  }
  for (auto const &a : report.fit.a_levels)
  {
    for (auto const &b : report.fit.b_levels)
    {
      auto const &values = groups.at({a, b});
      CellSummary cell;
      cell.batch_size = a;
      cell.optimizer  = b;
      cell.count      = values.size();
      for (auto const &[peak, log_peak] : values)
      {
        cell.mean_peak += peak;
        cell.mean_log += log_peak;
      }
      cell.mean_peak /= static_cast<double>(cell.count);
      cell.mean_log /= static_cast<double>(cell.count);
      if (cell.count > 1)
      {
        for (auto const &[peak, log_peak] : values)
        {
          cell.variance_log += (log_peak - cell.mean_log) * (log_peak - cell.mean_log);
        }
        cell.variance_log /= static_cast<double>(cell.count - 1);
      }
      else
      {
        cell.variance_log = std::nan("");
      }
      report.cells.push_back(cell);
    }
  }

  for (auto const &b : report.fit.b_levels)
  {
    std::vector<double> x;
    std::vector<double> y;
    for (auto const &row : report.log_table.rows)
    {
      if (row.optimizer == b)
      {
        x.push_back(static_cast<double>(row.batch_size));
        y.push_back(row.response);
      }
    }
    OptimizerCorrelation entry;
    entry.optimizer = b;
    try
    {
      entry.result = pearson_correlation(x, y);
    }
    catch (DataError const &e)
    {
      entry.note = e.what();
    }
    report.correlations.push_back(std::move(entry));
  }

  try
  {
    report.ttpa = ttpa_ratio_summary(runs, options.treatment == Treatment::treated, options.threshold);
  }
  catch (DataError const &e)
  {
    report.ttpa_note = e.what();
  }
  report.run_ratios = ttpa_run_ratios(kept);
  return report;
}

namespace {

std::string format_real(double value)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", value);
  return buf;
}

void emit(Json const &j, std::string &out, int depth)
{
  auto newline = [&](int d) {
    out.push_back('\n');
    out.append(static_cast<std::size_t>(2 * d), ' ');
  };
  switch (j.type())
  {
  case Json::value_t::number_float:
  {
    double const v = j.get<double>();
    out += std::isfinite(v) ? format_real(v) : "null";
    break;
  }
  case Json::value_t::array:
    if (j.empty())
    {
      out += "[]";
      break;
    }
    out.push_back('[');
    for (std::size_t i = 0; i < j.size(); ++i)
    {
      newline(depth + 1);
      emit(j[i], out, depth + 1);
      if (i + 1 < j.size())
      {
        out.push_back(',');
      }
    }
    newline(depth);
    out.push_back(']');
    break;
  case Json::value_t::object:
  {
    if (j.empty())
    {
      out += "{}";
      break;
    }
    out.push_back('{');
    std::size_t i = 0;
    for (auto const &[key, value] : j.items())
    {
      newline(depth + 1);
      out += Json(key).dump();
      out += ": ";
      emit(value, out, depth + 1);
      if (++i < j.size())
      {
        out.push_back(',');
      }
    }
    newline(depth);
    out.push_back('}');
    break;
  }
  default:
    out += j.dump();
  }
}

Json optional_real(std::optional<double> const &v)
{
  return v && std::isfinite(*v) ? Json(*v) : Json(nullptr);
}

}  // namespace

std::string report_to_json(AnalysisReport const &report)
{
  auto const &fit = report.fit;
  Json        j;

  Json counts = Json::array();
  for (std::size_t i = 0; i < fit.a_levels.size(); ++i)
  {
    for (std::size_t k = 0; k < fit.b_levels.size(); ++k)
    {
      counts.push_back({{"batch_size", fit.a_levels[i]},
                        {"optimizer", fit.b_levels[k]},
                        {"n", fit.counts(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k))}});
    }
  }
  j["design"] = {{"levels", {{"batch_size", fit.a_levels}, {"optimizer", fit.b_levels}}},
                 {"counts", counts},
                 {"balanced", fit.balanced()}};
  j["transform"]         = "ln(100 * peak_accuracy)";
  j["treatment"]         = to_string(report.options.treatment);
  j["outlier_threshold"] = report.options.treatment == Treatment::treated
                               ? Json(report.options.threshold)
                               : Json(nullptr);
  j["runs"] = {{"input", report.input_runs},
               {"removed", report.removed_runs},
               {"analyzed", report.log_table.rows.size()}};
  j["significance"]        = report.pairwise.significance;
  j["pairwise_adjustment"] = report.pairwise.adjustment;

  Json table = Json::array();
  for (auto const &row : report.anova.rows)
  {
    table.push_back({{"source", row.source},
                     {"df", row.df},
                     {"ss", row.ss},
                     {"ms", optional_real(row.ms)},
                     {"f", optional_real(row.f)},
                     {"p", optional_real(row.p)}});
  }
  // +inf F (zero error variance) serializes as null; p stays exact.
  j["table"] = table;

  Json pairwise = Json::array();
  for (auto const &slice : report.pairwise.slices)
  {
    Json rows = Json::array();
    for (auto const &row : slice.rows)
    {
      rows.push_back({{"optimizer", row.optimizer},
                      {"lsmean", row.lsmean},
                      {"letters", row.letters},
                      {"n", row.count}});
    }
    pairwise.push_back({{"batch_size", slice.batch_size}, {"rows", rows}});
  }
  j["pairwise"] = pairwise;

  Json cells = Json::array();
  for (auto const &c : report.cells)
  {
    cells.push_back({{"batch_size", c.batch_size},
                     {"optimizer", c.optimizer},
                     {"n", c.count},
                     {"mean_peak", c.mean_peak},
                     {"mean_log", c.mean_log},
                     {"variance_log", c.variance_log}});
  }
  j["cells"] = cells;

  Json correlations = Json::array();
  for (auto const &c : report.correlations)
  {
    Json entry = {{"optimizer", c.optimizer}, {"against", "batch_size"}};
    if (c.result)
    {
      entry["r"] = c.result->r;
      entry["t"] = c.result->t;
      entry["p"] = c.result->p;
      entry["n"] = c.result->n;
    }
    else
    {
      entry["r"]    = nullptr;
      entry["t"]    = nullptr;
      entry["p"]    = nullptr;
      entry["n"]    = nullptr;
      entry["note"] = c.note;
    }
    correlations.push_back(std::move(entry));
  }
  j["correlations"] = correlations;

  if (report.ttpa)
  {
    Json ratios = Json::array();
    for (auto const &c : report.ttpa->cells)
    {
      ratios.push_back({{"optimizer", c.optimizer},
                        {"batch_size", c.batch_size},
                        {"min", c.min},
                        {"mean", c.mean},
                        {"median", c.median},
                        {"max", c.max},
                        {"n", c.count}});
    }
    j["ttpa_ratios"] = ratios;
  }
  else
  {
    j["ttpa_ratios"] = nullptr;
    j["ttpa_note"]   = report.ttpa_note;
  }

  std::string out;
  emit(j, out, 0);
  out.push_back('\n');
  return out;
}

std::string boxplot_csv(std::span<AnalysisReport const> reports)
{
  sweep::CsvWriter w({"treatment", "batch_size", "optimizer", "run_id", "log_peak_accuracy"});
  for (auto const &report : reports)
  {
    for (auto const &row : report.log_table.rows)
    {
      w.add_row({std::string(to_string(report.options.treatment)), std::to_string(row.batch_size),
                 row.optimizer, row.run_id, sweep::format_double(row.response)});
    }
  }
  return w.str();
}

std::string trend_csv(std::span<AnalysisReport const> reports)
{
  sweep::CsvWriter w({"treatment", "batch_size", "optimizer", "mean_peak", "n"});
  for (auto const &report : reports)
  {
    for (auto const &c : report.cells)
    {
      w.add_row({std::string(to_string(report.options.treatment)), std::to_string(c.batch_size),
                 c.optimizer, sweep::format_double(c.mean_peak), std::to_string(c.count)});
    }
  }
  return w.str();
}

std::string ttpa_ratio_csv(std::span<AnalysisReport const> reports)
{
  sweep::CsvWriter w({"treatment", "batch_size", "optimizer", "run_id", "ttpa_ratio"});
  for (auto const &report : reports)
  {
    for (auto const &r : report.run_ratios)
    {
      w.add_row({std::string(to_string(report.options.treatment)), std::to_string(r.batch_size),
                 r.optimizer, r.run_id, sweep::format_double(r.ratio)});
    }
  }
  return w.str();
}

namespace {

std::string fixed(Json const &v, int precision)
{
  if (v.is_null())
  {
    return "-";
  }
  char buf[64];
  double const x = v.get<double>();
  if (precision < 0)
  {
    std::snprintf(buf, sizeof buf, "%.3g", x);
  }
  else
  {
    std::snprintf(buf, sizeof buf, "%.*f", precision, x);
  }
  return buf;
}

std::string p_value(Json const &v)
{
  if (v.is_null())
  {
    return "-";
  }
  double const p = v.get<double>();
  if (p < 0.001)
  {
    return "<0.001";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", p);
  return buf;
}

}  // namespace

std::string render_report_text(std::string_view report_json)
{
  Json j;
  try
  {
    j = Json::parse(report_json);
  }
  catch (nlohmann::json::exception const &e)
  {
    throw DataError(std::string("malformed report: ") + e.what());
  }

  std::ostringstream out;
  char               line[256];
  try
  {
    out << "Treatment: " << j.at("treatment").get<std::string>();
    if (!j.at("outlier_threshold").is_null())
    {
      out << " (threshold " << fixed(j["outlier_threshold"], 2) << ")";
    }
    out << "; runs analyzed " << j.at("runs").at("analyzed").get<std::size_t>() << " of "
        << j["runs"].at("input").get<std::size_t>() << ", removed "
        << j["runs"].at("removed").get<std::size_t>() << "\n";
    out << "Design: " << (j.at("design").at("balanced").get<bool>() ? "balanced" : "unbalanced")
        << ", transform " << j.at("transform").get<std::string>() << "\n\n";

    out << "ANOVA of log peak accuracy (Type III SS)\n";
    std::snprintf(line, sizeof line, "%-12s %5s %14s %14s %12s %9s\n", "Source", "DF",
                  "Type III SS", "Mean Square", "F Value", "Pr > F");
    out << line;
    for (auto const &row : j.at("table"))
    {
      std::snprintf(line, sizeof line, "%-12s %5d %14s %14s %12s %9s\n",
                    row.at("source").get<std::string>().c_str(), row.at("df").get<int>(),
                    fixed(row.at("ss"), 4).c_str(), fixed(row.at("ms"), 4).c_str(),
                    fixed(row.at("f"), 2).c_str(), p_value(row.at("p")).c_str());
      out << line;
    }

    out << "\nPairwise tests within batch size (" << j.at("pairwise_adjustment").get<std::string>()
        << ", alpha " << fixed(j.at("significance"), 3) << ")\n";
    std::snprintf(line, sizeof line, "%-12s %-10s %14s %8s %5s\n", "Batch Size", "Optimizer",
                  "LS Mean", "Letters", "n");
    out << line;
    for (auto const &slice : j.at("pairwise"))
    {
      for (auto const &row : slice.at("rows"))
      {
        std::snprintf(line, sizeof line, "%-12lld %-10s %14s %8s %5d\n",
                      static_cast<long long>(slice.at("batch_size").get<std::int64_t>()),
                      row.at("optimizer").get<std::string>().c_str(),
                      fixed(row.at("lsmean"), 4).c_str(),
                      row.at("letters").get<std::string>().c_str(), row.at("n").get<int>());
        out << line;
      }
    }

    out << "\nCell summaries (log scale)\n";
    std::snprintf(line, sizeof line, "%-12s %-10s %5s %11s %11s %13s\n", "Batch Size",
                  "Optimizer", "n", "Mean Peak", "Mean Log", "Variance Log");
    out << line;
    for (auto const &c : j.at("cells"))
    {
      std::snprintf(line, sizeof line, "%-12lld %-10s %5d %11s %11s %13s\n",
                    static_cast<long long>(c.at("batch_size").get<std::int64_t>()),
                    c.at("optimizer").get<std::string>().c_str(), c.at("n").get<int>(),
                    fixed(c.at("mean_peak"), 4).c_str(), fixed(c.at("mean_log"), 4).c_str(),
                    fixed(c.at("variance_log"), -1).c_str());
      out << line;
    }

    out << "\nCorrelation of log peak accuracy with batch size\n";
    for (auto const &c : j.at("correlations"))
    {
      if (c.at("r").is_null())
      {
        out << "  " << c.at("optimizer").get<std::string>() << ": undefined ("
            << c.value("note", std::string()) << ")\n";
        continue;
      }
      std::snprintf(line, sizeof line, "  %-8s r = %8s  t = %9s  p = %s  (n = %d)\n",
                    c.at("optimizer").get<std::string>().c_str(), fixed(c.at("r"), 4).c_str(),
                    fixed(c.at("t"), 3).c_str(), p_value(c.at("p")).c_str(), c.at("n").get<int>());
      out << line;
    }

    out << "\nRatio of time to peak accuracy vs SGD\n";
    if (j.at("ttpa_ratios").is_null())
    {
      out << "  unavailable: " << j.value("ttpa_note", std::string()) << "\n";
    }
    else
    {
      std::snprintf(line, sizeof line, "%-10s %-12s %9s %9s %9s %9s\n", "Optimizer",
                    "Batch Size", "Min", "Mean", "Median", "Max");
      out << line;
      for (auto const &c : j.at("ttpa_ratios"))
      {
        std::snprintf(line, sizeof line, "%-10s %-12lld %9s %9s %9s %9s\n",
                      c.at("optimizer").get<std::string>().c_str(),
                      static_cast<long long>(c.at("batch_size").get<std::int64_t>()),
                      fixed(c.at("min"), 3).c_str(), fixed(c.at("mean"), 3).c_str(),
                      fixed(c.at("median"), 3).c_str(), fixed(c.at("max"), 3).c_str());
        out << line;
      }
    }
  }
  catch (nlohmann::json::exception const &e)
  {
    throw DataError(std::string("report does not match the anova_report schema: ") + e.what());
  }
  return out.str();
}

}  // namespace optbench::stats
