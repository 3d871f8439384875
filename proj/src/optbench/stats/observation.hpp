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

#include <cstdint>
#include <string>
#include <vector>

namespace optbench::stats {

/// One response per run, classified by batch size (factor A) and optimizer
/// (factor B). Both factors are categorical.
struct Observation
{
  std::int64_t batch_size = 0;
  std::string  optimizer;
  double       response = 0.0;
  std::string  run_id;
};

struct ObservationTable
{
  std::vector<Observation> rows;
};

}  // namespace optbench::stats
