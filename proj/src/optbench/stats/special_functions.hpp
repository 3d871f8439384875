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

namespace optbench::stats {

/// I_x(a, b), the regularized incomplete beta function, for a, b > 0 and
/// x in [0, 1]. Continued-fraction evaluation (modified Lentz).
double regularized_incomplete_beta(double a, double b, double x);

/// P(F > f) for F ~ F(df1, df2). Returns 1 for f <= 0.
double f_p_value(double f, double df1, double df2);

/// Two-sided P(|T| > |t|) for Student's t with `df` degrees of freedom.
double t_two_sided_p_value(double t, double df);

}  // namespace optbench::stats
