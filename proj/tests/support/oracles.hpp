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

// Independent reference computations used by the tests. Nothing here calls
// into the code under test.

#include "optbench/objective/model.hpp"
#include "optbench/optim/batch_objective.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <random>
#include <vector>

namespace oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Central differences of an arbitrary scalar function.
template <typename F>
VectorXd central_difference(F &&f, VectorXd const &x, double h = 1e-5)
{
  VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i)
  {
    VectorXd plus = x, minus = x;
    plus[i] += h;
    minus[i] -= h;
    g[i] = (f(plus) - f(minus)) / (2.0 * h);
  }
  return g;
}

inline double relative_error(VectorXd const &a, VectorXd const &b)
{
  double const scale = std::max({a.norm(), b.norm(), 1e-300});
  return (a - b).norm() / scale;
}

// Symmetric positive definite matrix with eigenvalues in [lo, hi].
inline MatrixXd random_spd(int n, std::mt19937_64 &rng, double lo = 1.0, double hi = 10.0)
{
  std::normal_distribution<double>       normal;
  std::uniform_real_distribution<double> eig(lo, hi);
  MatrixXd                               m(n, n);
  for (int i = 0; i < n; ++i)
  {
    for (int j = 0; j < n; ++j)
    {
      m(i, j) = normal(rng);
    }
  }
  Eigen::HouseholderQR<MatrixXd> qr(m);
  MatrixXd const                 q = qr.householderQ();
  VectorXd                       d(n);
  for (int i = 0; i < n; ++i)
  {
    d[i] = eig(rng);
  }
  MatrixXd a = q * d.asDiagonal() * q.transpose();
  return 0.5 * (a + a.transpose());
}

inline VectorXd random_vector(int n, std::mt19937_64 &rng)
{
  std::normal_distribution<double> normal;
  VectorXd                         v(n);
  for (int i = 0; i < n; ++i)
  {
    v[i] = normal(rng);
  }
  return v;
}

// f(x) = 0.5 x^T A x - b^T x with accuracy left at 0.
inline optbench::optim::BatchObjective quadratic_objective(MatrixXd a, VectorXd b)
{
  optbench::optim::BatchObjective obj;
  obj.evaluate = [a, b](VectorXd const &x) {
    optbench::objective::Evaluation e;
    e.loss     = 0.5 * x.dot(a * x) - b.dot(x);
    e.gradient = a * x - b;
    return e;
  };
  return obj;
}

// Dense BFGS update of the Hessian approximation, B0 = I:
//   B <- B + y y^T / (y^T s) - B s s^T B / (s^T B s)
inline MatrixXd dense_bfgs_matrix(std::vector<std::pair<VectorXd, VectorXd>> const &pairs, int n)
{
  MatrixXd b = MatrixXd::Identity(n, n);
  for (auto const &[s, y] : pairs)
  {
    VectorXd const bs = b * s;
    b += (y * y.transpose()) / y.dot(s) - (bs * bs.transpose()) / s.dot(bs);
  }
  return b;
}

// Textbook linear conjugate gradient for A x = b from x0; returns the first
// `steps` search directions.
inline std::vector<VectorXd> linear_cg_directions(MatrixXd const &a, VectorXd const &b,
                                                  VectorXd x, int steps)
{
  std::vector<VectorXd> dirs;
  VectorXd              r = b - a * x;
  VectorXd              p = r;
  for (int k = 0; k < steps; ++k)
  {
    dirs.push_back(p);
    double const   rr    = r.dot(r);
    double const   alpha = rr / p.dot(a * p);
    x += alpha * p;
    VectorXd const r_next = r - alpha * a * p;
    double const   beta   = r_next.dot(r_next) / rr;
    p                     = r_next + beta * p;
    r                     = r_next;
  }
  return dirs;
}

// Classical balanced two-way decomposition from group means.
struct GroupMeanSs
{
  double a = 0, b = 0, ab = 0, error = 0, total = 0;
};

inline GroupMeanSs balanced_two_way_ss(std::vector<std::vector<std::vector<double>>> const &cells)
{
  std::size_t const na = cells.size();
  std::size_t const nb = cells.front().size();
  std::size_t const r  = cells.front().front().size();

  double grand = 0.0;
  for (auto const &row : cells)
    for (auto const &cell : row)
      for (double v : cell)
        grand += v;
  grand /= static_cast<double>(na * nb * r);

  std::vector<double>              mean_a(na, 0.0), mean_b(nb, 0.0);
  std::vector<std::vector<double>> mean_ab(na, std::vector<double>(nb, 0.0));
  for (std::size_t i = 0; i < na; ++i)
  {
    for (std::size_t j = 0; j < nb; ++j)
    {
      for (double v : cells[i][j])
      {
        mean_ab[i][j] += v / static_cast<double>(r);
      }
      mean_a[i] += mean_ab[i][j] / static_cast<double>(nb);
      mean_b[j] += mean_ab[i][j] / static_cast<double>(na);
    }
  }
  GroupMeanSs ss;
  for (std::size_t i = 0; i < na; ++i)
    ss.a += static_cast<double>(nb * r) * std::pow(mean_a[i] - grand, 2);
  for (std::size_t j = 0; j < nb; ++j)
    ss.b += static_cast<double>(na * r) * std::pow(mean_b[j] - grand, 2);
  for (std::size_t i = 0; i < na; ++i)
  {
    for (std::size_t j = 0; j < nb; ++j)
    {
      ss.ab += static_cast<double>(r) *
               std::pow(mean_ab[i][j] - mean_a[i] - mean_b[j] + grand, 2);
      for (double v : cells[i][j])
      {
        ss.error += std::pow(v - mean_ab[i][j], 2);
        ss.total += std::pow(v - grand, 2);
      }
    }
  }
  return ss;
}

}  // namespace oracle
