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

#include "optbench/stats/anova.hpp"

#include "optbench/optim/optimizer.hpp"
#include "optbench/stats/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace optbench::stats {

ObservationTable log_transform(ObservationTable const &table)
{
  ObservationTable out = table;
  for (auto &row : out.rows)
  {
    if (!(row.response > 0.0) || !std::isfinite(row.response))
    {
      throw DataError("cannot log-transform response " + std::to_string(row.response) +
                      (row.run_id.empty() ? std::string() : " of run " + row.run_id) +
                      " (batch size " + std::to_string(row.batch_size) + ", optimizer " +
                      row.optimizer + ")");
    }
    row.response = std::log(100.0 * row.response);
  }
  return out;
}

bool TwoWayFit::balanced() const
{
  return counts.size() > 0 && (counts.array() == counts(0, 0)).all();
}

namespace {

double residual_ss(Eigen::MatrixXd const &x, Vector const &y, Vector *coef = nullptr)
{
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  Vector const                                beta = qr.solve(y);
  if (coef != nullptr)
  {
    *coef = beta;
  }
  return (y - x * beta).squaredNorm();
}

// Sum-to-zero contrast for level `level` of `levels`: row of width levels-1.
double contrast(Eigen::Index level, Eigen::Index column, Eigen::Index levels)
{
  if (level == levels - 1)
  {
    return -1.0;
  }
  return level == column ? 1.0 : 0.0;
}

}  // namespace

TwoWayFit fit_two_way_model(ObservationTable const &table)
{
  TwoWayFit fit;
  for (auto const &row : table.rows)
  {
    if (!std::isfinite(row.response))
    {
      throw DataError("non-finite response" +
                      (row.run_id.empty() ? std::string() : " in run " + row.run_id));
    }
    fit.a_levels.push_back(row.batch_size);
    fit.b_levels.push_back(row.optimizer);
  }
  std::sort(fit.a_levels.begin(), fit.a_levels.end());
  fit.a_levels.erase(std::unique(fit.a_levels.begin(), fit.a_levels.end()), fit.a_levels.end());
  std::sort(fit.b_levels.begin(), fit.b_levels.end(), [](auto const &l, auto const &r) {
    int const lr = optim::optimizer_rank(l);
    int const rr = optim::optimizer_rank(r);
    return lr != rr ? lr < rr : l < r;
  });
  fit.b_levels.erase(std::unique(fit.b_levels.begin(), fit.b_levels.end()), fit.b_levels.end());

  auto const a = static_cast<Eigen::Index>(fit.a_levels.size());
  auto const b = static_cast<Eigen::Index>(fit.b_levels.size());
  if (a < 2)
  {
    throw DataError("factor batch_size needs at least 2 levels, found " + std::to_string(a));
  }
  if (b < 2)
  {
    throw DataError("factor optimizer needs at least 2 levels, found " + std::to_string(b));
  }

  auto const n = static_cast<Eigen::Index>(table.rows.size());
  std::vector<Eigen::Index> ai(table.rows.size());
  std::vector<Eigen::Index> bi(table.rows.size());
  fit.counts     = Eigen::MatrixXi::Zero(a, b);
  fit.cell_means = Eigen::MatrixXd::Zero(a, b);
  fit.response.resize(n);
  for (Eigen::Index r = 0; r < n; ++r)
  {
    auto const &row = table.rows[static_cast<std::size_t>(r)];
    ai[static_cast<std::size_t>(r)] =
        std::lower_bound(fit.a_levels.begin(), fit.a_levels.end(), row.batch_size) - fit.a_levels.begin();
    bi[static_cast<std::size_t>(r)] =
        std::find(fit.b_levels.begin(), fit.b_levels.end(), row.optimizer) - fit.b_levels.begin();
    fit.counts(ai[static_cast<std::size_t>(r)], bi[static_cast<std::size_t>(r)]) += 1;
    fit.cell_means(ai[static_cast<std::size_t>(r)], bi[static_cast<std::size_t>(r)]) += row.response;
    fit.response[r] = row.response;
  }
  for (Eigen::Index i = 0; i < a; ++i)
  {
    for (Eigen::Index j = 0; j < b; ++j)
    {
      if (fit.counts(i, j) == 0)
      {
        throw DataError("empty cell: batch_size=" + std::to_string(fit.a_levels[static_cast<std::size_t>(i)]) +
                        ", optimizer=" + fit.b_levels[static_cast<std::size_t>(j)]);
      }
      fit.cell_means(i, j) /= fit.counts(i, j);
    }
  }

  Eigen::Index const p = a * b;
  fit.df_error         = static_cast<int>(n - p);
  if (fit.df_error <= 0)
  {
    throw DataError("no error degrees of freedom: " + std::to_string(n) + " observations for " +
                    std::to_string(p) + " cells (replicate at least one cell)");
  }

  fit.a_term  = {1, a - 1};
  fit.b_term  = {a, b - 1};
  fit.ab_term = {a + b - 1, (a - 1) * (b - 1)};
  fit.design  = Eigen::MatrixXd::Zero(n, p);
  for (Eigen::Index r = 0; r < n; ++r)
  {
    Eigen::Index const i = ai[static_cast<std::size_t>(r)];
    Eigen::Index const j = bi[static_cast<std::size_t>(r)];
    fit.design(r, 0)     = 1.0;
    for (Eigen::Index u = 0; u < a - 1; ++u)
    {
      fit.design(r, fit.a_term.first + u) = contrast(i, u, a);
    }
    for (Eigen::Index v = 0; v < b - 1; ++v)
    {
      fit.design(r, fit.b_term.first + v) = contrast(j, v, b);
    }
    for (Eigen::Index u = 0; u < a - 1; ++u)
    {
      for (Eigen::Index v = 0; v < b - 1; ++v)
      {
        fit.design(r, fit.ab_term.first + u * (b - 1) + v) = contrast(i, u, a) * contrast(j, v, b);
      }
    }
  }

  fit.residual_ss = residual_ss(fit.design, fit.response, &fit.coefficients);
  fit.total_ss    = (fit.response.array() - fit.response.mean()).square().sum();

  // Prediction for cell (i, j) is the design row of any member of the cell.
  fit.predicted = Eigen::MatrixXd::Zero(a, b);
  Eigen::MatrixXd cell_row = Eigen::MatrixXd::Zero(1, p);
  for (Eigen::Index i = 0; i < a; ++i)
  {
    for (Eigen::Index j = 0; j < b; ++j)
    {
      cell_row.setZero();
      cell_row(0, 0) = 1.0;
      for (Eigen::Index u = 0; u < a - 1; ++u)
      {
        cell_row(0, fit.a_term.first + u) = contrast(i, u, a);
      }
      for (Eigen::Index v = 0; v < b - 1; ++v)
      {
        cell_row(0, fit.b_term.first + v) = contrast(j, v, b);
      }
      for (Eigen::Index u = 0; u < a - 1; ++u)
      {
        for (Eigen::Index v = 0; v < b - 1; ++v)
        {
          cell_row(0, fit.ab_term.first + u * (b - 1) + v) = contrast(i, u, a) * contrast(j, v, b);
        }
      }
      fit.predicted(i, j) = (cell_row * fit.coefficients)(0, 0);
    }
  }
  return fit;
}

AnovaRow const &AnovaTable::row(std::string_view source) const
{
  for (auto const &r : rows)
  {
    if (r.source == source)
    {
      return r;
    }
  }
  throw Error("ANOVA table has no source '" + std::string(source) + "'");
}

AnovaTable anova_type3(TwoWayFit const &fit)
{
  double const mse   = fit.mean_square_error();
  double const scale = std::max(fit.total_ss, fit.response.squaredNorm());
  double const noise = 1e-12 * (scale > 0.0 ? scale : 1.0);

  auto drop_term = [&](TermColumns term) {
    Eigen::Index const p = fit.design.cols();
    Eigen::MatrixXd    reduced(fit.design.rows(), p - term.count);
    reduced.leftCols(term.first) = fit.design.leftCols(term.first);
    reduced.rightCols(p - term.first - term.count) =
        fit.design.rightCols(p - term.first - term.count);
    double ss = residual_ss(reduced, fit.response) - fit.residual_ss;
    return ss <= noise ? 0.0 : ss;
  };

  AnovaTable table;
  auto       add_source = [&](std::string name, TermColumns term) {
    AnovaRow row;
    row.source = std::move(name);
    row.df     = static_cast<int>(term.count);
    row.ss     = drop_term(term);
    row.ms     = row.ss / row.df;
    if (row.ss == 0.0)
    {
      row.f = 0.0;
      row.p = 1.0;
    }
    else if (mse <= 0.0)
    {
      row.f = HUGE_VAL;
      row.p = 0.0;
    }
    else
    {
      row.f = *row.ms / mse;
      row.p = f_p_value(*row.f, row.df, fit.df_error);
    }
    table.rows.push_back(std::move(row));
  };
  add_source("batch_size", fit.a_term);
  add_source("optimizer", fit.b_term);
  add_source("interaction", fit.ab_term);

  AnovaRow error;
  error.source = "error";
  error.df     = fit.df_error;
  error.ss     = fit.residual_ss;
  error.ms     = mse;
  table.rows.push_back(error);

  AnovaRow total;
  total.source = "total";
  total.df     = static_cast<int>(fit.observation_count()) - 1;
  total.ss     = fit.total_ss;
  table.rows.push_back(total);
  return table;
}

AnovaTable anova_type3(ObservationTable const &table)
{
  return anova_type3(fit_two_way_model(table));
}

}  // namespace optbench::stats
