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

#include "optbench/optim/optimizer.hpp"

#include "optbench/optim/fletcher_reeves.hpp"
#include "optbench/optim/lbfgs.hpp"
#include "optbench/optim/sgd.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace optbench::optim {

OptimizerId parse_optimizer_id(std::string_view name)
{
  if (name == "sgd")
  {
    return OptimizerId::sgd;
  }
  if (name == "fr")
  {
    return OptimizerId::fr;
  }
  if (name == "lbfgs")
  {
    return OptimizerId::lbfgs;
  }
  throw ConfigError("unknown optimizer '" + std::string(name) + "' (expected sgd, fr or lbfgs)");
}

std::string_view to_string(OptimizerId id)
{
  switch (id)
  {
  case OptimizerId::sgd:
    return "sgd";
  case OptimizerId::fr:
    return "fr";
  case OptimizerId::lbfgs:
    return "lbfgs";
  }
  return "unknown";
}

int optimizer_rank(std::string_view name)
{
  if (name == "sgd")
  {
    return 0;
  }
  if (name == "fr")
  {
    return 1;
  }
  if (name == "lbfgs")
  {
    return 2;
  }
  return 3;
}

namespace {

constexpr std::array<std::string_view, 2> kSgdNames{"learning_rate", "momentum"};
constexpr std::array<std::string_view, 5> kFrNames{"learning_rate", "contraction",
                                                   "max_line_searches", "steps_per_batch",
                                                   "beta_variant"};
constexpr std::array<std::string_view, 3> kLbfgsNames{"learning_rate", "memory",
                                                      "max_line_searches"};

bool is_count(double v)
{
  return v >= 1.0 && v == std::floor(v) && v < 1e9;
}

// Range check for a numeric hyperparameter; empty string means valid.
std::string check_number(std::string_view name, double v)
{
  if (!std::isfinite(v))
  {
    return "must be finite";
  }
  if (name == "learning_rate")
  {
    return v > 0.0 ? "" : "must be > 0";
  }
  if (name == "momentum")
  {
    return v >= 0.0 && v < 1.0 ? "" : "must be in [0, 1)";
  }
  if (name == "contraction")
  {
    return v > 0.0 && v < 1.0 ? "" : "must be in (0, 1)";
  }
  if (name == "max_line_searches" || name == "steps_per_batch" || name == "memory")
  {
    return is_count(v) ? "" : "must be a positive integer";
  }
  return "";
}

template <typename T>
T number_or(Assignment const &a, std::string_view name, T fallback)
{
  for (auto const &[key, value] : a)
  {
    if (key == name)
    {
      return static_cast<T>(std::get<double>(value));
    }
  }
  return fallback;
}

std::string string_or(Assignment const &a, std::string_view name, std::string fallback)
{
  for (auto const &[key, value] : a)
  {
    if (key == name)
    {
      return std::get<std::string>(value);
    }
  }
  return fallback;
}

class Sgd final : public Optimizer
{
public:
  explicit Sgd(SgdOptions o) { state_.options = o; }
  OptimizerId     id() const noexcept override { return OptimizerId::sgd; }
  BatchStepResult step(BatchObjective const &f, ParameterVector &p) override
  {
    return sgd_batch_step(state_, f, p);
  }

private:
  SgdState state_;
};

class FletcherReeves final : public Optimizer
{
public:
  explicit FletcherReeves(FrOptions o) { state_.options = o; }
  OptimizerId     id() const noexcept override { return OptimizerId::fr; }
  BatchStepResult step(BatchObjective const &f, ParameterVector &p) override
  {
    return fr_batch_step(state_, f, p);
  }

private:
  FrState state_;
};

class Lbfgs final : public Optimizer
{
public:
  explicit Lbfgs(LbfgsOptions o)
    : state_(o)
  {}
  OptimizerId     id() const noexcept override { return OptimizerId::lbfgs; }
  BatchStepResult step(BatchObjective const &f, ParameterVector &p) override
  {
    return lbfgs_batch_step(state_, f, p);
  }

private:
  LbfgsState state_;
};

}  // namespace

std::span<std::string_view const> hyperparameter_names(OptimizerId id)
{
  switch (id)
  {
  case OptimizerId::sgd:
    return kSgdNames;
  case OptimizerId::fr:
    return kFrNames;
  case OptimizerId::lbfgs:
    return kLbfgsNames;
  }
  return {};
}

std::vector<std::string> check_assignment(OptimizerId id, Assignment const &assignment)
{
  std::vector<std::string> problems;
  auto const               names = hyperparameter_names(id);
  std::vector<std::string> seen;
  for (auto const &[name, value] : assignment)
  {
    std::string const where = std::string(to_string(id)) + "." + name;
    if (std::find(names.begin(), names.end(), name) == names.end())
    {
      problems.push_back("unknown hyperparameter '" + name + "' for " +
                         std::string(to_string(id)));
      continue;
    }
    if (std::find(seen.begin(), seen.end(), name) != seen.end())
    {
      problems.push_back(where + " given more than once");
    }
    seen.push_back(name);
    if (name == "beta_variant")
    {
      auto const *text = std::get_if<std::string>(&value);
      if (text == nullptr || (*text != "unsquared" && *text != "squared"))
      {
        problems.push_back(where + " must be 'unsquared' or 'squared'");
      }
      continue;
    }
    auto const *number = std::get_if<double>(&value);
    if (number == nullptr)
    {
      problems.push_back(where + " must be numeric");
      continue;
    }
    if (auto msg = check_number(name, *number); !msg.empty())
    {
      problems.push_back(where + " = " + to_string(value) + " " + msg);
    }
  }
  return problems;
}

std::string to_string(HyperValue const &value)
{
  if (auto const *text = std::get_if<std::string>(&value))
  {
    return *text;
  }
  std::ostringstream ss;
  ss.precision(17);
  ss << std::get<double>(value);
  return ss.str();
}

std::string assignment_to_json(Assignment const &assignment)
{
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (auto const &[name, value] : assignment)
  {
    std::visit([&](auto const &v) { j[name] = v; }, value);
  }
  return j.dump();
}

Assignment assignment_from_json(std::string_view json)
{
  nlohmann::ordered_json j;
  try
  {
    j = nlohmann::ordered_json::parse(json);
  }
  catch (nlohmann::json::exception const &e)
  {
    throw DataError(std::string("malformed hyperparameter JSON: ") + e.what());
  }
  if (!j.is_object())
  {
    throw DataError("hyperparameter JSON must be an object");
  }
  Assignment out;
  for (auto const &[key, value] : j.items())
  {
    if (value.is_number())
    {
      out.emplace_back(key, value.get<double>());
    }
    else if (value.is_string())
    {
      out.emplace_back(key, value.get<std::string>());
    }
    else
    {
      throw DataError("hyperparameter '" + key + "' must be a number or string");
    }
  }
  return out;
}

std::unique_ptr<Optimizer> make_optimizer(OptimizerId id, Assignment const &assignment)
{
  if (auto problems = check_assignment(id, assignment); !problems.empty())
  {
    throw ConfigError(problems.front());
  }
  switch (id)
  {
  case OptimizerId::sgd:
    return std::make_unique<Sgd>(SgdOptions{
        number_or(assignment, "learning_rate", 0.01),
        number_or(assignment, "momentum", 0.0),
    });
  case OptimizerId::fr:
    return std::make_unique<FletcherReeves>(FrOptions{
        number_or(assignment, "learning_rate", 1.0),
        number_or(assignment, "contraction", 0.5),
        number_or(assignment, "max_line_searches", 10),
        number_or(assignment, "steps_per_batch", 2),
        parse_beta_variant(string_or(assignment, "beta_variant", "unsquared")),
    });
  case OptimizerId::lbfgs:
    return std::make_unique<Lbfgs>(LbfgsOptions{
        number_or(assignment, "learning_rate", 1.0),
        number_or(assignment, "memory", 10),
        number_or(assignment, "max_line_searches", 20),
    });
  }
  throw ConfigError("unknown optimizer");
}

}  // namespace optbench::optim
