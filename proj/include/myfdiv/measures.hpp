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

#include "myfdiv/catalog.hpp"
#include "myfdiv/types.hpp"

#include <optional>

namespace myfdiv {

/// n points with a distance matrix. The metric axioms are checked on construction.
class FiniteMetricSpace
{
public:
  explicit FiniteMetricSpace(MatrixXd dist);

  /// Euclidean distances between the rows of `points`.
  static FiniteMetricSpace from_points(const MatrixXd& points);

  /// Shortest-path completion of positive symmetric edge weights.
  static FiniteMetricSpace metric_completion(const MatrixXd& weights);

  Eigen::Index size() const noexcept { return dist_.rows(); }
  const MatrixXd& dist() const noexcept { return dist_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return dist_(i, j); }

  /// Coordinates, when the space was built from points.
  const std::optional<MatrixXd>& points() const noexcept { return points_; }

  bool operator==(const FiniteMetricSpace& other) const;

private:
  MatrixXd dist_;
  std::optional<MatrixXd> points_;
};

/// Nonnegative weights over the points of a finite space.
class DiscreteMeasure
{
public:
  DiscreteMeasure() = default;
  explicit DiscreteMeasure(VectorXd weights);

  /// Throws InputError unless the weights sum to 1 within 1e-12.
  static DiscreteMeasure probability(VectorXd weights);

  Eigen::Index size() const noexcept { return weights_.size(); }
  const VectorXd& weights() const noexcept { return weights_; }
  double operator[](Eigen::Index i) const { return weights_[i]; }
  double mass() const { return weights_.sum(); }
  bool is_probability(double tol = 1e-12) const;

private:
  VectorXd weights_;
};

struct LebesgueDecomposition
{
  DiscreteMeasure continuous;  // mass of mu on supp(nu)
  DiscreteMeasure singular;    // mass of mu off supp(nu)
};

LebesgueDecomposition lebesgue_decompose(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/**
 * D_phi(mu | nu) = sum_{nu_i > 0} phi_plus(mu_i / nu_i) nu_i + phi'(inf) * (singular mass),
 * with 0 * inf = 0 when there is no singular mass. The trivial generator gives
 * 0 for mu = nu (within 1e-12) and +inf otherwise.
 */
double exact_divergence(const Spec& spec, const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Same quantity through the generator's textbook (mu, nu) form; an independent oracle.
double closed_form_divergence(const Spec& spec, const DiscreteMeasure& mu, const DiscreteMeasure& nu);

bool approx_equal(const DiscreteMeasure& a, const DiscreteMeasure& b, double tol);

}  // namespace myfdiv
