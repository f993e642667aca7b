//------------------------------------------------------------------------------
//
//   Copyright 2026 The myfdiv Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------
#pragma once

#include "myfdiv/measures.hpp"
#include "myfdiv/types.hpp"

#include <utility>

namespace myfdiv {

struct TransportPlan
{
  MatrixXd pi;  // pi(i, j): mass moved from point i to point j
  double cost = 0.0;
};

/**
 * Optimal coupling of mu and nu for the cost d(i, j), by the transportation
 * simplex (u-v method) on supp(mu) x supp(nu). Dantzig pricing, switching to
 * Bland's rule after a run of degenerate pivots.
 */
TransportPlan w1_primal(const FiniteMetricSpace& space, const DiscreteMeasure& mu, const DiscreteMeasure& nu);

double wasserstein1(const FiniteMetricSpace& space, const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// max_{i != j} |f_i - f_j| / d(i, j); 0 on a one-point space.
double lipschitz_norm(const FiniteMetricSpace& space, const Potential& f);

/// Lexicographically smallest ordered pair (i, j) attaining the Lipschitz norm with f_i >= f_j.
std::pair<Eigen::Index, Eigen::Index> lipschitz_argmax(const FiniteMetricSpace& space, const Potential& f);

/// Greatest L-Lipschitz function below f: g_i = min_j (f_j + L d(i, j)).
Potential pasch_hausdorff_envelope(const FiniteMetricSpace& space, const Potential& f, double L);

struct KantorovichDual
{
  double value = 0.0;
  Potential f;  // 1-Lipschitz, f[0] = 0
};

/**
 * Kantorovich potential of (mu, nu): the c-transform of the optimal column
 * duals of the transport LP, shifted so that f[0] = 0. Returns the zero
 * potential when mu == nu.
 */
KantorovichDual kantorovich_dual(const FiniteMetricSpace& space, const DiscreteMeasure& mu, const DiscreteMeasure& nu);

}  // namespace myfdiv
