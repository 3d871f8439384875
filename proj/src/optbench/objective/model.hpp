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

#include "optbench/common.hpp"
#include "optbench/objective/dataset.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace optbench::objective {

enum class ModelKind
{
  quadratic,            // f(x) = 0.5 |x|^2
  rosenbrock,           // f(x, y) = (1 - x)^2 + 100 (y - x^2)^2
  logistic_regression,  // softmax regression, no hidden layer
  mlp,                  // tanh hidden layers, softmax cross-entropy output
};

ModelKind        parse_model_kind(std::string_view name);
std::string_view to_string(ModelKind kind);

struct ModelSpec
{
  ModelKind        kind = ModelKind::quadratic;
  std::vector<int> layers;     // classifiers: input width, hidden widths..., class count
  int              dimension = 0;  // test functions only

  static ModelSpec quadratic(int dimension);
  static ModelSpec rosenbrock();
  static ModelSpec logistic_regression(int features, int classes);
  static ModelSpec mlp(std::vector<int> layers);

  bool        is_classifier() const noexcept;
  int         class_count() const noexcept;
  int         input_width() const noexcept;
  std::size_t parameter_count() const;
};

/// Loss, gradient and accuracy over one block of samples.
struct Evaluation
{
  double loss     = 0.0;
  Vector gradient;
  double accuracy = 0.0;

  /// A false result is the divergence signal.
  bool finite() const noexcept;
};

// Test functions ignore `data` and `indices`; their accuracy is 1 / (1 + f).
Evaluation evaluate(ModelSpec const &model, ParameterVector const &params, Dataset const *data,
                    std::span<std::size_t const> indices);

/// Loss only, without the backward pass.
double evaluate_loss(ModelSpec const &model, ParameterVector const &params, Dataset const *data,
                     std::span<std::size_t const> indices);

double evaluate_accuracy(ModelSpec const &model, ParameterVector const &params,
                         Dataset const *data, std::span<std::size_t const> indices);

/// Classifier weights ~ N(0, 1/fan_in), biases zero. The quadratic starts at
/// all-ones and Rosenbrock at (-1.2, 1) regardless of seed.
ParameterVector init_params(ModelSpec const &model, std::uint64_t seed);

}  // namespace optbench::objective
