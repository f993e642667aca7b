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
#include "myfdiv/measures.hpp"

#include <cmath>
#include <string>

namespace myfdiv {

FiniteMetricSpace::FiniteMetricSpace(MatrixXd dist) : dist_(std::move(dist))
{
  const Eigen::Index n = dist_.rows();
  if (n == 0 || dist_.cols() != n) throw InputError("metric space: distance matrix must be square and nonempty");
  const double scale = std::max(1.0, dist_.cwiseAbs().maxCoeff());
  const double tol = 1e-12 * scale;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (dist_(i, i) != 0.0) throw InputError("metric space: diagonal must be zero");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!std::isfinite(dist_(i, j))) throw InputError("metric space: distances must be finite");
      if (i != j && !(dist_(i, j) > 0.0)) {
        throw InputError("metric space: distinct points need positive distance");
      }
      if (std::abs(dist_(i, j) - dist_(j, i)) > tol) throw InputError("metric space: distances must be symmetric");
    }
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (dist_(i, j) > dist_(i, k) + dist_(k, j) + tol) {
          throw InputError("metric space: triangle inequality fails at (" + std::to_string(i) + ", " +
                           std::to_string(k) + ", " + std::to_string(j) + ")");
        }
      }
    }
  }
}

FiniteMetricSpace FiniteMetricSpace::from_points(const MatrixXd& points)
{
  const Eigen::Index n = points.rows();
  MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) d(i, j) = (points.row(i) - points.row(j)).norm();
  }
  FiniteMetricSpace space(std::move(d));
  space.points_ = points;
  return space;
}

FiniteMetricSpace FiniteMetricSpace::metric_completion(const MatrixXd& weights)
{
  const Eigen::Index n = weights.rows();
  if (weights.cols() != n) throw InputError("metric completion: weights must be square");
  MatrixXd d = weights;
  for (Eigen::Index i = 0; i < n; ++i) d(i, i) = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
    }
  }
  // Floyd-Warshall keeps symmetry only up to rounding order.
  d = (0.5 * (d + d.transpose())).eval();
  return FiniteMetricSpace(std::move(d));
}

bool FiniteMetricSpace::operator==(const FiniteMetricSpace& other) const
{
  return dist_.rows() == other.dist_.rows() && dist_ == other.dist_;
}

DiscreteMeasure::DiscreteMeasure(VectorXd weights) : weights_(std::move(weights))
{
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_[i]) || weights_[i] < 0.0) {
      throw InputError("measure: weights must be finite and nonnegative");
    }
  }
}

DiscreteMeasure DiscreteMeasure::probability(VectorXd weights)
{
  DiscreteMeasure m(std::move(weights));
  if (!m.is_probability()) throw InputError("measure: weights must sum to 1");
  return m;
}

bool DiscreteMeasure::is_probability(double tol) const
{
  return weights_.size() > 0 && std::abs(weights_.sum() - 1.0) <= tol;
}

LebesgueDecomposition lebesgue_decompose(const DiscreteMeasure& mu, const DiscreteMeasure& nu)
{
  if (mu.size() != nu.size()) throw InputError("lebesgue_decompose: measures live on different spaces");
  VectorXd cont = VectorXd::Zero(mu.size());
  VectorXd sing = VectorXd::Zero(mu.size());
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    (nu[i] > 0.0 ? cont : sing)[i] = mu[i];
  }
  return {DiscreteMeasure(std::move(cont)), DiscreteMeasure(std::move(sing))};
}

bool approx_equal(const DiscreteMeasure& a, const DiscreteMeasure& b, double tol)
{
  return a.size() == b.size() && (a.weights() - b.weights()).cwiseAbs().maxCoeff() <= tol;
}

namespace {

void check_pair(const DiscreteMeasure& mu, const DiscreteMeasure& nu)
{
  if (mu.size() != nu.size()) throw InputError("divergence: measures live on different spaces");
  if (!mu.is_probability() || !nu.is_probability()) throw InputError("divergence: inputs must be probability measures");
}

double singular_part(const Spec& spec, const DiscreteMeasure& mu, const DiscreteMeasure& nu)
{
  double singular = 0.0;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (nu[i] == 0.0) singular += mu[i];
  }
  return singular > 0.0 ? spec.phi_prime_inf * singular : 0.0;
}

}  // namespace

double exact_divergence(const Spec& spec, const DiscreteMeasure& mu, const DiscreteMeasure& nu)
{
  check_pair(mu, nu);
  if (spec.is_trivial()) return approx_equal(mu, nu, 1e-12) ? 0.0 : infinity<double>();

  double total = 0.0;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (nu[i] > 0.0) total += spec.phi_plus(mu[i] / nu[i]) * nu[i];
  }
  return total + singular_part(spec, mu, nu);
}

double closed_form_divergence(const Spec& spec, const DiscreteMeasure& mu, const DiscreteMeasure& nu)
{
  check_pair(mu, nu);
  if (spec.divergence_term == nullptr) {
    throw InputError("closed_form_divergence: generator " + std::string(spec.name) + " has no closed form");
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (nu[i] > 0.0) total += spec.divergence_term(mu[i], nu[i]);
  }
  return total + singular_part(spec, mu, nu);
}

}  // namespace myfdiv
