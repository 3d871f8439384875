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

#include "optbench/objective/dataset.hpp"

#include "optbench/sweep/csv.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <random>

namespace optbench::objective {

SyntheticKind parse_synthetic_kind(std::string_view name)
{
  if (name == "gaussians")
  {
    return SyntheticKind::gaussians;
  }
  if (name == "spirals")
  {
    return SyntheticKind::spirals;
  }
  throw DataError("unknown synthetic dataset kind '" + std::string(name) + "'");
}

std::string_view to_string(SyntheticKind kind)
{
  return kind == SyntheticKind::gaussians ? "gaussians" : "spirals";
}

namespace {

void standardize(FeatureMatrix &x)
{
  auto const n = static_cast<double>(x.rows());
  for (Eigen::Index c = 0; c < x.cols(); ++c)
  {
    double const mean = x.col(c).sum() / n;
    x.col(c).array() -= mean;
    double const sd = std::sqrt(x.col(c).squaredNorm() / n);
    if (sd > 0.0)
    {
      x.col(c) /= sd;
    }
  }
}

}  // namespace

Dataset generate_synthetic_dataset(SyntheticKind kind, std::size_t n, int classes,
                                   std::uint64_t seed)
{
  if (classes < 1)
  {
    throw DataError("class count must be at least 1");
  }
  if (n == 0 || n % static_cast<std::size_t>(classes) != 0)
  {
    throw DataError("sample count " + std::to_string(n) + " is not divisible by class count " +
                    std::to_string(classes));
  }

  std::mt19937_64                  rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);

  std::size_t const per_class = n / static_cast<std::size_t>(classes);
  Dataset           data;
  data.classes = classes;
  data.features.resize(static_cast<Eigen::Index>(n), 2);
  data.labels.resize(n);

  std::size_t row = 0;
  for (int c = 0; c < classes; ++c)
  {
    for (std::size_t i = 0; i < per_class; ++i, ++row)
    {
      double x = 0.0;
      double y = 0.0;
      if (kind == SyntheticKind::gaussians)
      {
        double const angle = 2.0 * std::numbers::pi * c / classes;
        x                  = 3.0 * std::cos(angle) + noise(rng);
        y                  = 3.0 * std::sin(angle) + noise(rng);
      }
      else
      {
        double const r = per_class > 1 ? static_cast<double>(i) / static_cast<double>(per_class - 1) : 1.0;
        double const t = 4.0 * c + 4.0 * r + 0.2 * noise(rng);
        x              = r * std::sin(t);
        y              = r * std::cos(t);
      }
      data.features(static_cast<Eigen::Index>(row), 0) = x;
      data.features(static_cast<Eigen::Index>(row), 1) = y;
      data.labels[row]                                 = c;
    }
  }

  // Interleave classes so positional splits see every class.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  Dataset shuffled;
  shuffled.classes = classes;
  shuffled.features.resize(data.features.rows(), data.features.cols());
  shuffled.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    shuffled.features.row(static_cast<Eigen::Index>(i)) =
        data.features.row(static_cast<Eigen::Index>(order[i]));
    shuffled.labels[i] = data.labels[order[i]];
  }

  standardize(shuffled.features);
  return shuffled;
}

Split split_train_test(std::size_t n, std::size_t test_count, std::uint64_t seed)
{
  if (test_count >= n)
  {
    throw DataError("test split of " + std::to_string(test_count) +
                    " samples leaves no training data out of " + std::to_string(n));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  Split split;
  split.test.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(test_count));
  split.train.assign(order.begin() + static_cast<std::ptrdiff_t>(test_count), order.end());
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

Dataset read_dataset_csv(std::filesystem::path const &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw DataError("cannot open dataset '" + path.string() + "'");
  }
  auto const rows = sweep::parse_csv(in);
  if (rows.empty())
  {
    throw DataError("dataset '" + path.string() + "' is empty");
  }
  auto const &header = rows.front();
  if (header.size() < 2 || header.back() != "label")
  {
    throw DataError("dataset header must be f0,...,f{d-1},label");
  }
  std::size_t const d = header.size() - 1;
  for (std::size_t j = 0; j < d; ++j)
  {
    if (header[j] != "f" + std::to_string(j))
    {
      throw DataError("dataset header column " + std::to_string(j) + " must be 'f" +
                      std::to_string(j) + "'");
    }
  }

  Dataset data;
  data.features.resize(static_cast<Eigen::Index>(rows.size() - 1), static_cast<Eigen::Index>(d));
  data.labels.reserve(rows.size() - 1);
  int max_label = -1;
  for (std::size_t i = 1; i < rows.size(); ++i)
  {
    auto const &r = rows[i];
    if (r.size() != d + 1)
    {
      throw DataError("dataset row " + std::to_string(i) + " has " + std::to_string(r.size()) +
                      " fields, expected " + std::to_string(d + 1));
    }
    for (std::size_t j = 0; j < d; ++j)
    {
      data.features(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j)) =
          sweep::parse_double(r[j]);
    }
    int const label = static_cast<int>(sweep::parse_integer(r[d]));
    if (label < 0)
    {
      throw DataError("dataset row " + std::to_string(i) + " has a negative label");
    }
    max_label = std::max(max_label, label);
    data.labels.push_back(label);
  }
  data.classes = max_label + 1;
  return data;
}

void write_dataset_csv(Dataset const &data, std::filesystem::path const &path)
{
  std::vector<std::string> header;
  for (std::size_t j = 0; j < data.feature_count(); ++j)
  {
    header.push_back("f" + std::to_string(j));
  }
  header.emplace_back("label");

  sweep::CsvWriter writer(header);
  for (std::size_t i = 0; i < data.size(); ++i)
  {
    std::vector<std::string> row;
    for (std::size_t j = 0; j < data.feature_count(); ++j)
    {
      row.push_back(sweep::format_double(
          data.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
    }
    row.push_back(std::to_string(data.labels[i]));
    writer.add_row(std::move(row));
  }
  sweep::write_file_atomically(path, writer.str());
}

}  // namespace optbench::objective
