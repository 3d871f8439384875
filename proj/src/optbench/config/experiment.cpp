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

#include "optbench/config/experiment.hpp"

#include "optbench/objective/dataset.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace optbench::config {

namespace {

class Reader
{
public:
  explicit Reader(std::vector<std::string> &diagnostics)
    : diagnostics_(diagnostics)
  {}

  template <typename T>
  void read(YAML::Node const &node, std::string const &where, T &target)
  {
    if (!node)
    {
      return;
    }
    try
    {
      target = node.as<T>();
    }
    catch (YAML::Exception const &)
    {
      diagnostics_.push_back(where + ": invalid value '" + scalar_text(node) + "'");
    }
  }

  void read_count(YAML::Node const &node, std::string const &where, std::size_t &target)
  {
    if (!node)
    {
      return;
    }
    long long value = 0;
    try
    {
      value = node.as<long long>();
    }
    catch (YAML::Exception const &)
    {
      diagnostics_.push_back(where + ": expected a non-negative integer, got '" +
                             scalar_text(node) + "'");
      return;
    }
    if (value < 0)
    {
      diagnostics_.push_back(where + ": expected a non-negative integer, got " +
                             std::to_string(value));
      return;
    }
    target = static_cast<std::size_t>(value);
  }

  void unknown_keys(YAML::Node const &map, std::string const &where,
                    std::set<std::string> const &known)
  {
    if (!map.IsMap())
    {
      return;
    }
    for (auto const &kv : map)
    {
      auto const key = kv.first.as<std::string>();
      if (!known.contains(key))
      {
        diagnostics_.push_back(where + ": unknown key '" + key + "'");
      }
    }
  }

  void note(std::string message) { diagnostics_.push_back(std::move(message)); }

  static std::string scalar_text(YAML::Node const &node)
  {
    if (node.IsScalar())
    {
      return node.Scalar();
    }
    std::ostringstream ss;
    ss << node;
    return ss.str();
  }

private:
  std::vector<std::string> &diagnostics_;
};

optim::HyperValue to_hyper_value(YAML::Node const &node)
{
  double number = 0.0;
  if (YAML::convert<double>::decode(node, number))
  {
    return number;
  }
  return node.Scalar();
}

LoadedExperiment parse_document(YAML::Node const &root)
{
  LoadedExperiment loaded;
  auto            &file = loaded.file;
  Reader           reader(loaded.diagnostics);

  if (!root.IsMap())
  {
    reader.note("top level must be a mapping");
    return loaded;
  }
  reader.unknown_keys(root, "experiment",
                      {"seed", "epochs", "samples_per_optimizer", "output", "model", "dataset",
                       "batch_sizes", "optimizers"});

  reader.read(root["seed"], "seed", file.seed);
  reader.read(root["epochs"], "epochs", file.epochs);
  reader.read_count(root["samples_per_optimizer"], "samples_per_optimizer",
                    file.samples_per_optimizer);
  reader.read(root["output"], "output", file.output);

  file.dataset.seed = file.seed;
  if (auto model = root["model"])
  {
    reader.unknown_keys(model, "model", {"kind", "layers", "dimension"});
    reader.read(model["kind"], "model.kind", file.model.kind);
    reader.read(model["layers"], "model.layers", file.model.layers);
    reader.read(model["dimension"], "model.dimension", file.model.dimension);
  }
  else
  {
    reader.note("missing 'model' section");
  }

  if (auto data = root["dataset"])
  {
    reader.unknown_keys(data, "dataset",
                        {"kind", "train_samples", "test_samples", "classes", "seed", "path"});
    reader.read(data["kind"], "dataset.kind", file.dataset.kind);
    reader.read_count(data["train_samples"], "dataset.train_samples", file.dataset.train_samples);
    reader.read_count(data["test_samples"], "dataset.test_samples", file.dataset.test_samples);
    reader.read(data["classes"], "dataset.classes", file.dataset.classes);
    reader.read(data["seed"], "dataset.seed", file.dataset.seed);
    std::string path;
    reader.read(data["path"], "dataset.path", path);
    file.dataset.path = path;
  }
  else
  {
    reader.note("missing 'dataset' section");
  }

  if (auto sizes = root["batch_sizes"]; sizes && sizes.IsSequence())
  {
    for (std::size_t i = 0; i < sizes.size(); ++i)
    {
      std::size_t k = 0;
      reader.read_count(sizes[i], "batch_sizes[" + std::to_string(i) + "]", k);
      file.batch_sizes.push_back(k);
    }
  }
  else
  {
    reader.note("'batch_sizes' must be a list");
  }

  if (auto optimizers = root["optimizers"]; optimizers && optimizers.IsMap())
  {
    for (auto const &entry : optimizers)
    {
      auto const name = entry.first.as<std::string>();
      OptimizerGrid grid;
      try
      {
        grid.id = optim::parse_optimizer_id(name);
      }
      catch (ConfigError const &e)
      {
        reader.note(std::string("optimizers: ") + e.what());
        continue;
      }
      if (!entry.second.IsMap())
      {
        reader.note("optimizers." + name + " must map hyperparameter names to value lists");
        continue;
      }
      for (auto const &axis : entry.second)
      {
        auto const                     hp = axis.first.as<std::string>();
        std::vector<optim::HyperValue> values;
        if (axis.second.IsSequence())
        {
          for (auto const &v : axis.second)
          {
            values.push_back(to_hyper_value(v));
          }
        }
        else if (axis.second.IsScalar())
        {
          values.push_back(to_hyper_value(axis.second));
        }
        else
        {
          reader.note("optimizers." + name + "." + hp + " must be a value or a list of values");
          continue;
        }
        grid.grid.axes.emplace_back(hp, std::move(values));
      }
      file.optimizers.push_back(std::move(grid));
    }
  }
  else
  {
    reader.note("'optimizers' must be a mapping of optimizer name to hyperparameter grid");
  }
  return loaded;
}

}  // namespace

LoadedExperiment parse_experiment(std::string const &yaml_text)
{
  YAML::Node root;
  try
  {
    root = YAML::Load(yaml_text);
  }
  catch (YAML::Exception const &e)
  {
    throw ConfigError(std::string("cannot parse experiment file: ") + e.what());
  }
  return parse_document(root);
}

LoadedExperiment load_experiment(std::filesystem::path const &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError("cannot read experiment file '" + path.string() + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  auto loaded = parse_experiment(ss.str());
  // Relative dataset paths resolve against the experiment file.
  auto &data_path = loaded.file.dataset.path;
  if (!data_path.empty() && data_path.is_relative())
  {
    data_path = path.parent_path() / data_path;
  }
  return loaded;
}

std::size_t training_set_size(ExperimentFile const &file)
{
  if (file.dataset.kind == "csv")
  {
    auto const data = objective::read_dataset_csv(file.dataset.path);
    if (file.dataset.test_samples >= data.size())
    {
      throw DataError("test_samples leaves no training data");
    }
    return data.size() - file.dataset.test_samples;
  }
  return file.dataset.train_samples;
}

std::vector<std::string> validate_experiment(ExperimentFile const &file)
{
  std::vector<std::string> out;
  auto const              &ds = file.dataset;

  static std::set<std::string> const dataset_kinds{"spirals", "gaussians", "csv", "none"};
  bool const                         known_dataset = dataset_kinds.contains(ds.kind);
  if (!known_dataset)
  {
    out.push_back("dataset.kind: unknown kind '" + ds.kind +
                  "' (expected spirals, gaussians, csv or none)");
  }

  std::size_t n            = 0;
  std::size_t feature_dim  = 2;
  int         class_count  = ds.classes;
  bool        have_dataset = known_dataset;
  if (ds.kind == "csv")
  {
    try
    {
      auto const data = objective::read_dataset_csv(ds.path);
      feature_dim     = data.feature_count();
      class_count     = data.classes;
      if (ds.test_samples >= data.size())
      {
        out.push_back("dataset.test_samples: leaves no training data out of " +
                      std::to_string(data.size()) + " samples");
        have_dataset = false;
      }
      else
      {
        n = data.size() - ds.test_samples;
      }
    }
    catch (Error const &e)
    {
      out.push_back(std::string("dataset.path: ") + e.what());
      have_dataset = false;
    }
  }
  else if (known_dataset)
  {
    n = ds.train_samples;
    if (n == 0)
    {
      out.push_back("dataset.train_samples must be at least 1");
      have_dataset = false;
    }
    if (ds.kind != "none")
    {
      if (ds.classes < 2)
      {
        out.push_back("dataset.classes must be at least 2");
      }
      else if ((ds.train_samples + ds.test_samples) % static_cast<std::size_t>(ds.classes) != 0)
      {
        out.push_back("dataset: train_samples + test_samples = " +
                      std::to_string(ds.train_samples + ds.test_samples) +
                      " is not divisible by classes = " + std::to_string(ds.classes));
      }
    }
  }

  // Model.
  try
  {
    auto const kind = objective::parse_model_kind(file.model.kind);
    bool const classifier =
        kind == objective::ModelKind::mlp || kind == objective::ModelKind::logistic_regression;
    if (classifier && ds.kind == "none")
    {
      out.push_back("model." + file.model.kind + " needs a dataset (dataset.kind is 'none')");
    }
    if (kind == objective::ModelKind::mlp)
    {
      auto const spec = objective::ModelSpec::mlp(file.model.layers);
      if (ds.kind != "none" && have_dataset)
      {
        if (static_cast<std::size_t>(spec.layers.front()) != feature_dim)
        {
          out.push_back("model.layers: input width " + std::to_string(spec.layers.front()) +
                        " does not match dataset feature count " + std::to_string(feature_dim));
        }
        if (spec.layers.back() < class_count)
        {
          out.push_back("model.layers: output width " + std::to_string(spec.layers.back()) +
                        " is smaller than the class count " + std::to_string(class_count));
        }
      }
    }
    else if (kind == objective::ModelKind::quadratic)
    {
      objective::ModelSpec::quadratic(file.model.dimension);
    }
  }
  catch (ConfigError const &e)
  {
    out.push_back(std::string("model: ") + e.what());
  }

  if (file.epochs < 0)
  {
    out.push_back("epochs must be non-negative");
  }

  if (file.batch_sizes.empty())
  {
    out.push_back("batch_sizes is empty");
  }
  for (auto const k : file.batch_sizes)
  {
    if (k == 0)
    {
      out.push_back("batch size 0 is not allowed");
    }
    else if (have_dataset && n > 0 && n % k != 0)
    {
      out.push_back("batch size " + std::to_string(k) + " does not divide the training set size " +
                    std::to_string(n) + " (" + std::to_string(n) + " mod " + std::to_string(k) +
                    " = " + std::to_string(n % k) + ")");
    }
  }
  std::set<std::size_t> seen(file.batch_sizes.begin(), file.batch_sizes.end());
  if (seen.size() != file.batch_sizes.size())
  {
    out.push_back("batch_sizes contains duplicates");
  }

  if (file.optimizers.empty())
  {
    out.push_back("no optimizers configured");
  }
  std::set<optim::OptimizerId> ids;
  for (auto const &opt : file.optimizers)
  {
    std::string const name(optim::to_string(opt.id));
    if (!ids.insert(opt.id).second)
    {
      out.push_back("optimizers." + name + " configured twice");
    }
    if (opt.grid.axes.empty())
    {
      out.push_back("optimizers." + name + ": hyperparameter grid is empty");
      continue;
    }
    std::size_t pool = 1;
    for (auto const &[hp, values] : opt.grid.axes)
    {
      pool *= values.size();
      if (values.empty())
      {
        out.push_back("optimizers." + name + "." + hp + ": empty value set");
        continue;
      }
      std::set<std::string> problems;
      for (auto const &v : values)
      {
        for (auto const &p : optim::check_assignment(opt.id, {{hp, v}}))
        {
          problems.insert(p);
        }
      }
      out.insert(out.end(), problems.begin(), problems.end());
    }
    if (file.samples_per_optimizer > pool)
    {
      out.push_back("optimizers." + name + ": samples_per_optimizer = " +
                    std::to_string(file.samples_per_optimizer) + " exceeds the " +
                    std::to_string(pool) + " grid combinations");
    }
  }
  return out;
}

}  // namespace optbench::config
