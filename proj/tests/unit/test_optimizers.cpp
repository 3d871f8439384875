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

#include "optbench/optim/fletcher_reeves.hpp"
#include "optbench/optim/lbfgs.hpp"
#include "optbench/optim/line_search.hpp"
#include "optbench/optim/optimizer.hpp"
#include "optbench/optim/sgd.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace optbench;
using namespace optbench::optim;
using oracle::MatrixXd;
using oracle::VectorXd;

namespace {

Vector vec(std::initializer_list<double> v)
{
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v)
  {
    out[i++] = x;
  }
  return out;
}

BatchObjective half_square()
{
  return oracle::quadratic_objective(MatrixXd::Identity(1, 1), VectorXd::Zero(1));
}

}  // namespace

TEST_CASE("sgd: plain step")
{
  SgdState state;
  state.options = {0.1, 0.0};
  Vector theta  = vec({0, 0});
  sgd_step(state, theta, vec({1, -2}));
  CHECK(theta[0] == doctest::Approx(-0.1));
  CHECK(theta[1] == doctest::Approx(0.2));
  CHECK_FALSE(state.momentum_buffer.has_value());
}

TEST_CASE("sgd: zero learning rate leaves parameters unchanged")
{
  SgdState state;
  state.options = {0.0, 0.9};
  Vector theta  = vec({1.5, -3});
  sgd_step(state, theta, vec({7, 8}));
  CHECK(theta == vec({1.5, -3}));
}

TEST_CASE("sgd: two momentum steps match the recurrence")
{
  SgdState state;
  state.options = {1.0, 0.9};
  Vector theta  = vec({0});
  sgd_step(state, theta, vec({1}));
  CHECK((*state.momentum_buffer)[0] == 1.0);
  sgd_step(state, theta, vec({1}));
  CHECK((*state.momentum_buffer)[0] == doctest::Approx(1.9));
  CHECK(theta[0] == doctest::Approx(-2.9));
}

TEST_CASE("sgd property: n momentum steps equal the direct recurrence")
{
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial)
  {
    double const lr = 0.01 + 0.1 * (trial % 5);
    double const mu = 0.1 * (trial % 10);
    SgdState     state;
    state.options  = {lr, mu};
    Vector theta   = oracle::random_vector(3, rng);
    Vector direct  = theta;
    Vector b;
    for (int step = 0; step < 15; ++step)
    {
      Vector const g = oracle::random_vector(3, rng);
      sgd_step(state, theta, g);
      if (mu != 0.0)
      {
        b = step == 0 ? g : Vector(mu * b + g);
        direct -= lr * b;
      }
      else
      {
        direct -= lr * g;
      }
    }
    CHECK(oracle::relative_error(theta, direct) < 1e-14);
  }
}

TEST_CASE("fr beta: formula, zero numerator, zero denominator")
{
  CHECK(fr_beta(vec({3, 4}), vec({0, 5})) == doctest::Approx(1.0));
  CHECK(fr_beta(vec({0, 0}), vec({1, 2})) == 0.0);
  CHECK(fr_beta(vec({3, 0}), vec({0, 6})) == doctest::Approx(0.5));
  CHECK(fr_beta(vec({3, 0}), vec({0, 6}), BetaVariant::squared_ratio) == doctest::Approx(0.25));
  CHECK(fr_beta(vec({1, 1}), vec({0, 0})) == 0.0);
  CHECK(parse_beta_variant("unsquared") == BetaVariant::norm_ratio);
  CHECK(parse_beta_variant("squared") == BetaVariant::squared_ratio);
}

TEST_CASE("fr direction")
{
  Vector const g = vec({1, 0});
  CHECK(fr_direction(g, 0.7, nullptr) == g);
  Vector const prev = vec({0, 2});
  CHECK(fr_direction(g, 0.0, &prev) == g);
  CHECK(fr_direction(g, 0.5, &prev) == vec({1, 1}));
}

TEST_CASE("backtracking: full step accepted on 0.5 x^2")
{
  auto const   obj = half_square();
  Vector const x   = vec({1});
  auto const   e   = obj.evaluate(x);
  auto const   r   = backtracking_line_search(obj, x, e.loss, e.gradient, vec({-1}), {});
  CHECK(r.succeeded);
  CHECK(r.alpha == 1.0);
  CHECK(r.evaluations == 1);
}

TEST_CASE("backtracking: zero direction fails with the smallest candidate")
{
  auto const          obj = half_square();
  Vector const        x   = vec({1});
  auto const          e   = obj.evaluate(x);
  BacktrackingOptions opts{2.0, 0.5, 4};
  auto const          r = backtracking_line_search(obj, x, e.loss, e.gradient, vec({0}), opts);
  CHECK_FALSE(r.succeeded);
  CHECK(r.alpha == doctest::Approx(2.0 * 0.125));
  CHECK(r.evaluations <= 4);
}

TEST_CASE("backtracking: single-search budget")
{
  auto const          obj = half_square();
  Vector const        x   = vec({1});
  auto const          e   = obj.evaluate(x);
  BacktrackingOptions opts{5.0, 0.5, 1};
  auto const          r = backtracking_line_search(obj, x, e.loss, e.gradient, vec({-1}), opts);
  CHECK(r.evaluations <= 1);
  CHECK(r.alpha == 5.0);
  CHECK_FALSE(r.succeeded);
}

TEST_CASE("backtracking property: accepted steps satisfy Armijo")
{
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial)
  {
    int const    n   = 2 + trial % 5;
    auto const   a   = oracle::random_spd(n, rng, 0.1, 50.0);
    auto const   obj = oracle::quadratic_objective(a, oracle::random_vector(n, rng));
    Vector const x   = oracle::random_vector(n, rng);
    auto const   e   = obj.evaluate(x);
    Vector const d   = -e.gradient;
    BacktrackingOptions opts{4.0, 0.5, 30};
    auto const r = backtracking_line_search(obj, x, e.loss, e.gradient, d, opts);
    REQUIRE(r.succeeded);
    CHECK(obj.evaluate(x + r.alpha * d).loss <=
          e.loss + kArmijoC1 * r.alpha * e.gradient.dot(d) + 1e-12);
    CHECK(r.evaluations <= opts.max_searches);
  }
}

TEST_CASE("wolfe: strong conditions hold on 0.5 x^2 with cap 10")
{
  auto const   obj = half_square();
  Vector const x   = vec({1});
  auto const   e   = obj.evaluate(x);
  WolfeOptions opts;
  opts.alpha_cap = 10.0;
  auto const r   = wolfe_line_search(obj, x, e, vec({-1}), opts);
  REQUIRE(r.search.succeeded);
  double const a  = r.search.alpha;
  auto const   at = obj.evaluate(x + a * vec({-1}));
  CHECK(at.loss < e.loss);
  CHECK(at.loss <= e.loss + kArmijoC1 * a * -1.0);
  CHECK(std::abs(-at.gradient[0]) <= kWolfeC2 * 1.0);
  CHECK(a > 0.0);
  CHECK(a <= 10.0);
}

TEST_CASE("wolfe: a starving cap fails")
{
  auto const   obj = oracle::quadratic_objective(MatrixXd::Identity(2, 2), VectorXd::Zero(2));
  Vector const x   = vec({3, -2});
  auto const   e   = obj.evaluate(x);
  WolfeOptions opts;
  opts.alpha_cap = 1e-12;
  CHECK_FALSE(wolfe_line_search(obj, x, e, -e.gradient, opts).search.succeeded);
}

TEST_CASE("wolfe: orthogonal direction fails without evaluating")
{
  auto const   obj = oracle::quadratic_objective(MatrixXd::Identity(2, 2), VectorXd::Zero(2));
  Vector const x   = vec({1, 0});
  auto const   e   = obj.evaluate(x);
  auto const   r   = wolfe_line_search(obj, x, e, vec({0, 1}), WolfeOptions{});
  CHECK_FALSE(r.search.succeeded);
  CHECK(r.search.evaluations == 0);
}

TEST_CASE("wolfe property: accepted steps satisfy both strong conditions")
{
  std::mt19937_64 rng(23);
  int             accepted = 0;
  for (int trial = 0; trial < 100; ++trial)
  {
    int const    n   = 2 + trial % 6;
    auto const   a   = oracle::random_spd(n, rng, 0.1, 100.0);
    auto const   obj = oracle::quadratic_objective(a, oracle::random_vector(n, rng));
    Vector const x   = oracle::random_vector(n, rng);
    auto const   e   = obj.evaluate(x);
    Vector const d   = -oracle::random_spd(n, rng) * e.gradient;  // still a descent direction
    WolfeOptions opts;
    opts.alpha_cap = 0.5 + (trial % 4);
    auto const r   = wolfe_line_search(obj, x, e, d, opts);
    CHECK(r.search.evaluations <= opts.max_searches);
    if (!r.search.succeeded)
    {
      continue;
    }
    ++accepted;
    double const alpha = r.search.alpha;
    auto const   at    = obj.evaluate(x + alpha * d);
    double const slope = e.gradient.dot(d);
    CHECK(alpha > 0.0);
    CHECK(alpha <= opts.alpha_cap);
    CHECK(at.loss <= e.loss + kArmijoC1 * alpha * slope + 1e-12);
    CHECK(std::abs(at.gradient.dot(d)) <= kWolfeC2 * std::abs(slope) + 1e-12);
  }
  CHECK(accepted > 90);
}

TEST_CASE("fr batch step: one step decreases the loss")
{
  auto const obj   = oracle::quadratic_objective(MatrixXd::Identity(2, 2), VectorXd::Zero(2));
  FrState    state;
  state.options.steps_per_batch = 1;
  Vector     theta              = vec({1, 1});
  auto const result             = fr_batch_step(state, obj, theta);
  CHECK(result.status == StepStatus::ok);
  CHECK(obj.evaluate(theta).loss < 1.0);
}

TEST_CASE("fr batch step: conjugacy is reset at each batch")
{
  std::mt19937_64 rng(3);
  auto const      a   = oracle::random_spd(3, rng);
  auto const      obj = oracle::quadratic_objective(a, oracle::random_vector(3, rng));
  Vector          theta(3);
  theta.setOnes();
  FrState state;
  fr_batch_step(state, obj, theta);
  REQUIRE(state.prev_direction.has_value());
  // A second batch entered from the same point must repeat the fresh-state step.
  Vector  start = theta;
  Vector  again = theta;
  fr_batch_step(state, obj, theta);
  FrState fresh;
  fr_batch_step(fresh, obj, again);
  CHECK(theta == again);
  (void)start;
}

TEST_CASE("fr property: successful batch steps never increase the batch loss")
{
  std::mt19937_64 rng(31);
  auto const      data  = objective::generate_synthetic_dataset(objective::SyntheticKind::spirals,
                                                                60, 3, 2);
  auto const      model = objective::ModelSpec::mlp({2, 6, 3});
  std::vector<std::size_t> idx(60);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  BatchObjective obj;
  obj.evaluate = [&](Vector const &p) { return objective::evaluate(model, p, &data, idx); };
  Vector  theta = objective::init_params(model, 1);
  FrState state;
  LbfgsState lstate(LbfgsOptions{});
  Vector     ltheta = theta;
  for (int step = 0; step < 30; ++step)
  {
    double const before = obj.evaluate(theta).loss;
    auto const   r      = fr_batch_step(state, obj, theta);
    if (r.status == StepStatus::ok)
    {
      CHECK(obj.evaluate(theta).loss <= before);
    }
    double const lbefore = obj.evaluate(ltheta).loss;
    auto const   lr      = lbfgs_batch_step(lstate, obj, ltheta);
    if (lr.status == StepStatus::ok)
    {
      CHECK(obj.evaluate(ltheta).loss <= lbefore);
    }
    CHECK(lstate.history.size() <= lstate.history.capacity());
  }
}

TEST_CASE("fr with exact line search reproduces linear CG on a 2-d quadratic")
{
  MatrixXd a(2, 2);
  a << 4, 1, 1, 3;
  VectorXd b(2);
  b << 1, 2;
  VectorXd   x     = VectorXd::Zero(2);
  auto const cg    = oracle::linear_cg_directions(a, b, x, 2);
  std::optional<Vector> prev_g, prev_s;
  for (int k = 0; k < 2; ++k)
  {
    Vector const g    = a * x - b;
    double const beta = prev_g ? fr_beta(g, *prev_g, BetaVariant::squared_ratio) : 0.0;
    Vector const s    = fr_direction(-g, beta, prev_s ? &*prev_s : nullptr);
    CHECK(std::abs(s.normalized().dot(cg[static_cast<std::size_t>(k)].normalized())) ==
          doctest::Approx(1.0).epsilon(1e-12));
    double const alpha = -g.dot(s) / s.dot(a * s);
    x += alpha * s;
    prev_g = g;
    prev_s = s;
  }
  CHECK((a * x - b).norm() < 1e-12);
}

TEST_CASE("lbfgs direction: empty history is steepest descent")
{
  CurvatureHistory h(5);
  Vector const     g = vec({1, -2, 3});
  CHECK(lbfgs_direction(h, g) == -g);
}

TEST_CASE("lbfgs direction: s = y matches the dense solve")
{
  CurvatureHistory h(5);
  Vector const     s = vec({1, 2});
  REQUIRE(h.push(s, s));
  Vector const g     = vec({0.3, -0.7});
  auto const   dense = oracle::dense_bfgs_matrix({{s, s}}, 2);
  CHECK(oracle::relative_error(lbfgs_direction(h, g), dense.ldlt().solve(-g)) < 1e-12);
  CHECK(oracle::relative_error(lbfgs_direction(h, g), -g) < 1e-12);
}

TEST_CASE("lbfgs direction: dimension 5, three pairs, dense oracle")
{
  std::mt19937_64 rng(77);
  auto const      a = oracle::random_spd(5, rng);
  CurvatureHistory h(5);
  std::vector<std::pair<VectorXd, VectorXd>> pairs;
  for (int i = 0; i < 3; ++i)
  {
    VectorXd s = oracle::random_vector(5, rng);
    VectorXd y = a * s;
    pairs.emplace_back(s, y);
    REQUIRE(h.push(s, y));
  }
  Vector const g = oracle::random_vector(5, rng);
  auto const   b = oracle::dense_bfgs_matrix(pairs, 5);
  CHECK(oracle::relative_error(lbfgs_direction(h, g), b.lu().solve(-g)) < 1e-8);
}

TEST_CASE("curvature history: skips non-positive curvature and evicts oldest")
{
  CurvatureHistory h(2);
  CHECK_FALSE(h.push(vec({1, 0}), vec({-1, 0})));
  CHECK_FALSE(h.push(vec({1, 0}), vec({0, 1})));
  CHECK(h.empty());
  CHECK(h.push(vec({1, 0}), vec({1, 0})));
  CHECK(h.push(vec({0, 1}), vec({0, 2})));
  CHECK(h.push(vec({1, 1}), vec({3, 3})));
  REQUIRE(h.size() == 2);
  CHECK(h.pairs().front().s == vec({0, 1}));
  CHECK(h.pairs().back().s == vec({1, 1}));
  CHECK(h.pairs().back().rho == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("lbfgs batch step: converges on a dim-4 quadratic within 10 steps")
{
  std::mt19937_64 rng(8);
  auto const      a     = oracle::random_spd(4, rng);
  VectorXd const  b     = oracle::random_vector(4, rng);
  auto const      obj   = oracle::quadratic_objective(a, b);
  VectorXd const  xstar = a.ldlt().solve(b);
  LbfgsState      state(LbfgsOptions{});
  Vector          theta = Vector::Ones(4);
  int             steps = 0;
  while (obj.evaluate(theta).gradient.norm() >= 1e-10 && steps < 10)
  {
    lbfgs_batch_step(state, obj, theta);
    ++steps;
  }
  CHECK(obj.evaluate(theta).gradient.norm() < 1e-10);
  CHECK(oracle::relative_error(theta, xstar) < 1e-9);
}

TEST_CASE("lbfgs batch step: failed search leaves state bit-identical")
{
  auto const obj = oracle::quadratic_objective(MatrixXd::Identity(2, 2), VectorXd::Zero(2));
  LbfgsState state(LbfgsOptions{1e-12, 5, 20});
  Vector     theta  = vec({3, -2});
  Vector     before = theta;
  auto const r      = lbfgs_batch_step(state, obj, theta);
  CHECK(r.status == StepStatus::line_search_failed);
  CHECK(theta == before);
  CHECK(state.history.empty());
}

TEST_CASE("lbfgs batch step: accepted steps store one positive-curvature pair")
{
  // Strong Wolfe gives y^T s >= (1 - c2) alpha |g^T d| > 0 on a fixed batch, so
  // the skip path is only reachable through CurvatureHistory::push directly.
  BatchObjective obj;
  obj.evaluate = [](Vector const &x) {
    objective::Evaluation e;
    double const          v = x[0];
    e.loss                  = -0.5 * v * v + 0.25 * v * v * v * v;
    e.gradient              = Vector::Constant(1, -v + v * v * v);
    return e;
  };
  LbfgsState state(LbfgsOptions{1.0, 3, 20});
  Vector     theta = vec({0.5});
  for (int step = 0; step < 5; ++step)
  {
    auto const before = state.history.size();
    auto const r      = lbfgs_batch_step(state, obj, theta);
    if (r.status == StepStatus::ok && obj.evaluate(theta).gradient.norm() > 0.0)
    {
      CHECK(state.history.size() == std::min<std::size_t>(before + 1, 3));
    }
    for (auto const &pair : state.history.pairs())
    {
      CHECK(pair.y.dot(pair.s) > 0.0);
    }
  }
  CHECK(theta[0] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("optimizer factory and hyperparameter checks")
{
  CHECK(check_assignment(OptimizerId::sgd, {{"learning_rate", 0.1}, {"momentum", 0.9}}).empty());
  auto const problems = check_assignment(OptimizerId::sgd, {{"weight_decay", 1e-4}});
  REQUIRE(problems.size() == 1);
  CHECK(problems.front().find("weight_decay") != std::string::npos);
  CHECK_FALSE(check_assignment(OptimizerId::sgd, {{"momentum", 1.0}}).empty());
  CHECK_FALSE(check_assignment(OptimizerId::fr, {{"contraction", 1.5}}).empty());
  CHECK_FALSE(check_assignment(OptimizerId::fr, {{"beta_variant", std::string("odd")}}).empty());
  CHECK_FALSE(check_assignment(OptimizerId::lbfgs, {{"memory", 2.5}}).empty());
  CHECK(check_assignment(OptimizerId::fr, {{"steps_per_batch", 1.0}}).empty());
  CHECK_THROWS_AS(make_optimizer(OptimizerId::lbfgs, {{"memory", 0.0}}), ConfigError);
  CHECK(make_optimizer(OptimizerId::fr, {})->id() == OptimizerId::fr);

  Assignment const a{{"learning_rate", 0.5}, {"beta_variant", std::string("squared")}};
  CHECK(assignment_from_json(assignment_to_json(a)) == a);
}
