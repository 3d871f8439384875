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

#include "optbench/sweep/run_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace optbench::sweep {

CsvRow const &runs_csv_header()
{
  static CsvRow const header{"run_id",        "optimizer",  "batch_size",
                             "hyperparams_json", "status",  "peak_accuracy",
                             "peak_epoch",    "ttpa_seconds", "total_seconds"};
  return header;
}

CsvRow const &epochs_csv_header()
{
  static CsvRow const header{"run_id", "epoch", "test_accuracy", "cum_seconds"};
  return header;
}

namespace {

std::vector<CsvRow> read_existing(std::filesystem::path const &path, CsvRow const &header)
{
  if (!std::filesystem::exists(path))
  {
    return {};
  }
  std::ifstream in(path);
  if (!in)
  {
    throw Error("cannot open '" + path.string() + "'");
  }
  auto rows = parse_csv(in);
  if (rows.empty())
  {
    return rows;
  }
  if (rows.front() != header)
  {
    throw DataError("'" + path.string() + "' has an unexpected header");
  }
  return rows;
}

long long next_run_id(std::vector<CsvRow> const &existing)
{
  long long next = 0;
  for (std::size_t i = 1; i < existing.size(); ++i)
  {
    next = std::max(next, parse_integer(existing[i].at(0)) + 1);
  }
  return next;
}

std::string serialize(std::vector<CsvRow> const &existing, CsvRow const &header,
                      std::vector<CsvRow> rows)
{
  CsvWriter writer(header);
  for (std::size_t i = 1; i < existing.size(); ++i)
  {
    writer.add_row(existing[i]);
  }
  for (auto &row : rows)
  {
    writer.add_row(std::move(row));
  }
  return writer.str();
}

}  // namespace

void write_sweep_csvs(std::vector<TrainingRun> &runs, std::filesystem::path const &runs_csv,
                      std::filesystem::path const &epochs_csv)
{
  auto const old_runs   = read_existing(runs_csv, runs_csv_header());
  auto const old_epochs = read_existing(epochs_csv, epochs_csv_header());
  long long  id         = next_run_id(old_runs);

  std::vector<CsvRow> run_rows;
  std::vector<CsvRow> epoch_rows;
  for (auto &run : runs)
  {
    run.run_id = std::to_string(id++);
    run_rows.push_back({run.run_id, std::string(optim::to_string(run.config.optimizer)),
                        std::to_string(run.config.batch_size),
                        optim::assignment_to_json(run.config.hyperparameters),
                        std::string(to_string(run.status)), format_double(run.peak_accuracy),
                        std::to_string(run.peak_epoch), format_double(run.ttpa_seconds),
                        format_double(run.total_seconds)});
    for (std::size_t e = 0; e < run.epoch_test_accuracy.size(); ++e)
    {
      epoch_rows.push_back({run.run_id, std::to_string(e + 1),
                            format_double(run.epoch_test_accuracy[e]),
                            format_double(run.epoch_wall_seconds[e])});
    }
  }

  auto const runs_text   = serialize(old_runs, runs_csv_header(), std::move(run_rows));
  auto const epochs_text = serialize(old_epochs, epochs_csv_header(), std::move(epoch_rows));
  write_file_atomically(epochs_csv, epochs_text);
  write_file_atomically(runs_csv, runs_text);
}

std::vector<TrainingRun> read_runs_csv(std::filesystem::path const &runs_csv)
{
  std::ifstream in(runs_csv);
  if (!in)
  {
    throw Error("cannot open '" + runs_csv.string() + "'");
  }
  auto const rows = parse_csv(in);
  if (rows.empty() || rows.front() != runs_csv_header())
  {
    throw DataError("'" + runs_csv.string() + "' is not a runs.csv file (bad header)");
  }

  std::vector<TrainingRun> runs;
  runs.reserve(rows.size() - 1);
  for (std::size_t i = 1; i < rows.size(); ++i)
  {
    auto const &r = rows[i];
    if (r.size() != runs_csv_header().size())
    {
      throw DataError("runs.csv line " + std::to_string(i + 1) + " has " +
                      std::to_string(r.size()) + " fields");
    }
    try
    {
      TrainingRun run;
      run.run_id                 = r[0];
      run.config.optimizer       = optim::parse_optimizer_id(r[1]);
      auto const batch           = parse_integer(r[2]);
      if (batch < 1)
      {
        throw DataError("batch_size must be positive");
      }
      run.config.batch_size      = static_cast<std::size_t>(batch);
      run.config.hyperparameters = optim::assignment_from_json(r[3]);
      run.status                 = parse_run_status(r[4]);
      run.peak_accuracy          = parse_double(r[5]);
      run.peak_epoch             = static_cast<int>(parse_integer(r[6]));
      run.ttpa_seconds           = parse_double(r[7]);
      run.total_seconds          = parse_double(r[8]);
      runs.push_back(std::move(run));
    }
    catch (Error const &e)
    {
      throw DataError("runs.csv line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return runs;
}

void attach_epochs(std::vector<TrainingRun> &runs, std::filesystem::path const &epochs_csv)
{
  std::ifstream in(epochs_csv);
  if (!in)
  {
    throw Error("cannot open '" + epochs_csv.string() + "'");
  }
  auto const rows = parse_csv(in);
  if (rows.empty() || rows.front() != epochs_csv_header())
  {
    throw DataError("'" + epochs_csv.string() + "' is not an epochs.csv file (bad header)");
  }
  std::map<std::string, TrainingRun *> by_id;
  for (auto &run : runs)
  {
    run.epoch_test_accuracy.clear();
    run.epoch_wall_seconds.clear();
    by_id[run.run_id] = &run;
  }
  for (std::size_t i = 1; i < rows.size(); ++i)
  {
    auto const &r = rows[i];
    if (r.size() != epochs_csv_header().size())
    {
      throw DataError("epochs.csv line " + std::to_string(i + 1) + " is malformed");
    }
    auto it = by_id.find(r[0]);
    if (it == by_id.end())
    {
      continue;
    }
    auto &run = *it->second;
    if (parse_integer(r[1]) != static_cast<long long>(run.epoch_test_accuracy.size()) + 1)
    {
      throw DataError("epochs.csv line " + std::to_string(i + 1) + " is out of order");
    }
    run.epoch_test_accuracy.push_back(parse_double(r[2]));
    run.epoch_wall_seconds.push_back(parse_double(r[3]));
  }
}

}  // namespace optbench::sweep
