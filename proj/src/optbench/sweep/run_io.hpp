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

#include "optbench/sweep/csv.hpp"
#include "optbench/sweep/training.hpp"

#include <filesystem>
#include <vector>

namespace optbench::sweep {

CsvRow const &runs_csv_header();    // run_id, optimizer, batch_size, hyperparams_json, status, ...
CsvRow const &epochs_csv_header();  // run_id, epoch, test_accuracy, cum_seconds

/// Writes (or appends to) runs.csv and epochs.csv. Run ids are assigned here
/// as consecutive integers following the largest id already present, and
/// stored back into `runs`. Both files are replaced atomically.
void write_sweep_csvs(std::vector<TrainingRun> &runs, std::filesystem::path const &runs_csv,
                      std::filesystem::path const &epochs_csv);

/// Parses runs.csv. Epoch vectors are left empty; peak and timing columns
/// are taken as recorded.
std::vector<TrainingRun> read_runs_csv(std::filesystem::path const &runs_csv);

/// Fills epoch vectors of `runs` from epochs.csv, matching on run_id.
void attach_epochs(std::vector<TrainingRun> &runs, std::filesystem::path const &epochs_csv);

}  // namespace optbench::sweep
