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

#include "optbench/objective/model.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace optbench::objective {

ModelKind parse_model_kind(std::string_view name)
{
  if (name == "quadratic")
  {
    return ModelKind::quadratic;
  }
  if (name == "rosenbrock")
  {
    return ModelKind::rosenbrock;
  }
  if (name == "logistic-regression" || name == "logistic_regression")
  {
    return ModelKind::logistic_regression;
  }
  if (name == "mlp")
  {
    return ModelKind::mlp;
  }
  throw ConfigError("unknown model kind '" + std::string(name) + "'");
}

std::string_view to_string(ModelKind kind)
{
  switch (kind)
  {
  case ModelKind::quadratic:
    return "quadratic";
  case ModelKind::rosenbrock:
    return "rosenbrock";
  case ModelKind::logistic_regression:
    return "logistic-regression";
  case ModelKind::mlp:
    return "mlp";
  }
  return "unknown";
}

ModelSpec ModelSpec::quadratic(int dimension)
{
  if (dimension < 1)
  {
    throw ConfigError("quadratic dimension must be at least 1");
  }
  ModelSpec spec;
  spec.kind      = ModelKind::quadratic;
  spec.dimension = dimension;
  return spec;
}

ModelSpec ModelSpec::rosenbrock()
{
  ModelSpec spec;
  spec.kind      = ModelKind::rosenbrock;
  spec.dimension = 2;
  return spec;
}

ModelSpec ModelSpec::logistic_regression(int features, int classes)
{
  if (features < 1 || classes < 2)
  {
    throw ConfigError("logistic regression needs >= 1 feature and >= 2 classes");
  }
  ModelSpec spec;
  spec.kind   = ModelKind::logistic_regression;
  spec.layers = {features, classes};
  return spec;
}

ModelSpec ModelSpec::mlp(std::vector<int> layers)
{
  if (layers.size() < 2)
  {
    throw ConfigError("mlp needs at least an input and an output layer");
  }
  for (int width : layers)
  {
    if (width < 1)
    {
      throw ConfigError("mlp layer widths must be positive");
    }
  }
  if (layers.back() < 2)
  {
    throw ConfigError("mlp output layer must have at least 2 classes");
  }
  ModelSpec spec;
  spec.kind   = ModelKind::mlp;
  spec.layers = std::move(layers);
  return spec;
}

bool ModelSpec::is_classifier() const noexcept
{
  return kind == ModelKind::logistic_regression || kind == ModelKind::mlp;
}

int ModelSpec::class_count() const noexcept
{
  return is_classifier() ? layers.back() : 0;
}

int ModelSpec::input_width() const noexcept
{
  return is_classifier() ? layers.front() : 0;
}

std::size_t ModelSpec::parameter_count() const
{
  if (!is_classifier())
  {
    return static_cast<std::size_t>(dimension);
  }
  std::size_t count = 0;
  for (std::size_t l = 0; l + 1 < layers.size(); ++l)
  {
    count += static_cast<std::size_t>(layers[l]) * static_cast<std::size_t>(layers[l + 1]) +
             static_cast<std::size_t>(layers[l + 1]);
  }
  return count;
}

bool Evaluation::finite() const noexcept
{
  return std::isfinite(loss) && gradient.allFinite();
}

namespace {

using RowMatrix      = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstWeightMap = Eigen::Map<RowMatrix const>;
using WeightMap      = Eigen::Map<RowMatrix>;

void check_dimension(ModelSpec const &model, ParameterVector const &params)
{
  if (static_cast<std::size_t>(params.size()) != model.parameter_count())
  {
    throw ConfigError("parameter vector has dimension " + std::to_string(params.size()) +
                      ", model expects " + std::to_string(model.parameter_count()));
  }
}

struct TestFunctionValue
{
  double loss;
  Vector gradient;
};

TestFunctionValue test_function(ModelSpec const &model, ParameterVector const &x, bool want_grad)
{
  if (model.kind == ModelKind::quadratic)
  {
    return {0.5 * x.squaredNorm(), want_grad ? Vector(x) : Vector()};
  }
  double const a = 1.0 - x[0];
  double const b = x[1] - x[0] * x[0];
  Vector       g;
  if (want_grad)
  {
    g.resize(2);
    g[0] = -2.0 * a - 400.0 * x[0] * b;
    g[1] = 200.0 * b;
  }
  return {a * a + 100.0 * b * b, std::move(g)};
}

struct ClassifierPass
{
  double loss     = 0.0;
  double accuracy = 0.0;
  Vector gradient;
};

// Forward (and optionally backward) pass of the tanh/softmax network over the
// rows selected by `indices`. Layer l owns a row-major (out x in) weight block
// followed by its bias.
ClassifierPass classifier_pass(ModelSpec const &model, ParameterVector const &params,
                               Dataset const &data, std::span<std::size_t const> indices,
                               bool want_grad)
{
  if (indices.empty())
  {
    throw DataError("cannot evaluate a classifier on an empty block");
  }
  if (data.feature_count() != static_cast<std::size_t>(model.input_width()))
  {
    throw ConfigError("model input width " + std::to_string(model.input_width()) +
                      " does not match dataset feature count " +
                      std::to_string(data.feature_count()));
  }

  auto const  k          = static_cast<Eigen::Index>(indices.size());
  std::size_t layer_count = model.layers.size() - 1;

  std::vector<RowMatrix> activations;
  activations.reserve(layer_count + 1);
  RowMatrix input(k, data.features.cols());
  for (Eigen::Index i = 0; i < k; ++i)
  {
    auto const row = indices[static_cast<std::size_t>(i)];
    if (row >= data.size())
    {
      throw DataError("sample index " + std::to_string(row) + " out of range");
    }
    input.row(i) = data.features.row(static_cast<Eigen::Index>(row));
  }
  activations.push_back(std::move(input));

  std::vector<Eigen::Index> offsets;
  Eigen::Index              offset = 0;
  for (std::size_t l = 0; l < layer_count; ++l)
  {
    Eigen::Index const in  = model.layers[l];
    Eigen::Index const out = model.layers[l + 1];
    offsets.push_back(offset);
    ConstWeightMap W(params.data() + offset, out, in);
    Eigen::Map<Vector const> b(params.data() + offset + out * in, out);
    offset += out * in + out;

    RowMatrix z = activations.back() * W.transpose();
    z.rowwise() += b.transpose();
    if (l + 1 < layer_count)
    {
      z = z.array().tanh();
    }
    activations.push_back(std::move(z));
  }

  RowMatrix const &logits = activations.back();
  RowMatrix        delta(k, logits.cols());
  double           loss    = 0.0;
  std::size_t      correct = 0;
  for (Eigen::Index i = 0; i < k; ++i)
  {
    int const label = data.labels[indices[static_cast<std::size_t>(i)]];
    if (label < 0 || label >= logits.cols())
    {
      throw DataError("label " + std::to_string(label) + " outside model class range");
    }
    Eigen::Index arg  = 0;
    double const peak = logits.row(i).maxCoeff(&arg);
    if (arg == label)
    {
      ++correct;
    }
    auto const   shifted = (logits.row(i).array() - peak).exp();
    double const total   = shifted.sum();
    loss += std::log(total) + peak - logits(i, label);
    if (want_grad)
    {
      delta.row(i) = shifted / total;
      delta(i, label) -= 1.0;
    }
  }

  ClassifierPass pass;
  pass.loss     = loss / static_cast<double>(k);
  pass.accuracy = static_cast<double>(correct) / static_cast<double>(k);
  if (!want_grad)
  {
    return pass;
  }

  pass.gradient = Vector::Zero(params.size());
  delta /= static_cast<double>(k);
  for (std::size_t l = layer_count; l-- > 0;)
  {
    Eigen::Index const in  = model.layers[l];
    Eigen::Index const out = model.layers[l + 1];
    WeightMap          gW(pass.gradient.data() + offsets[l], out, in);
    gW = delta.transpose() * activations[l];
    pass.gradient.segment(offsets[l] + out * in, out) = delta.colwise().sum().transpose();
    if (l > 0)
    {
      ConstWeightMap W(params.data() + offsets[l], out, in);
      RowMatrix      back = delta * W;
      delta               = back.array() * (1.0 - activations[l].array().square());
    }
  }
  return pass;
}

}  // namespace

Evaluation evaluate(ModelSpec const &model, ParameterVector const &params, Dataset const *data,
                    std::span<std::size_t const> indices)
{
  check_dimension(model, params);
  if (!model.is_classifier())
  {
    auto value = test_function(model, params, true);
    return {value.loss, std::move(value.gradient), 1.0 / (1.0 + value.loss)};
  }
  if (data == nullptr)
  {
    throw DataError("classifier evaluation requires a dataset");
  }
  auto pass = classifier_pass(model, params, *data, indices, true);
  return {pass.loss, std::move(pass.gradient), pass.accuracy};
}

double evaluate_loss(ModelSpec const &model, ParameterVector const &params, Dataset const *data,
                     std::span<std::size_t const> indices)
{
  check_dimension(model, params);
  if (!model.is_classifier())
  {
    return test_function(model, params, false).loss;
  }
  if (data == nullptr)
  {
    throw DataError("classifier evaluation requires a dataset");
  }
  return classifier_pass(model, params, *data, indices, false).loss;
}

double evaluate_accuracy(ModelSpec const &model, ParameterVector const &params,
                         Dataset const *data, std::span<std::size_t const> indices)
{
  check_dimension(model, params);
  if (!model.is_classifier())
  {
    double const f = test_function(model, params, false).loss;
    return std::isfinite(f) ? 1.0 / (1.0 + f) : 0.0;
  }
  if (data == nullptr)
  {
    throw DataError("classifier evaluation requires a dataset");
  }
  return classifier_pass(model, params, *data, indices, false).accuracy;
}

ParameterVector init_params(ModelSpec const &model, std::uint64_t seed)
{
  switch (model.kind)
  {
  case ModelKind::quadratic:
    return ParameterVector::Ones(model.dimension);
  case ModelKind::rosenbrock:
    return (ParameterVector(2) << -1.2, 1.0).finished();
  case ModelKind::logistic_regression:
  case ModelKind::mlp:
    break;
  }

  ParameterVector params = ParameterVector::Zero(static_cast<Eigen::Index>(model.parameter_count()));
  std::mt19937_64 rng(seed);
  Eigen::Index    offset = 0;
  for (std::size_t l = 0; l + 1 < model.layers.size(); ++l)
  {
    Eigen::Index const in  = model.layers[l];
    Eigen::Index const out = model.layers[l + 1];
    std::normal_distribution<double> weight(0.0, 1.0 / std::sqrt(static_cast<double>(in)));
    for (Eigen::Index i = 0; i < out * in; ++i)
    {
      params[offset + i] = weight(rng);
    }
    offset += out * in + out;
  }
  return params;
}

}  // namespace optbench::objective
