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

#include <cmath>
#include <random>

namespace myfdiv::testing {

inline VectorXd dirichlet(std::mt19937_64& rng, Eigen::Index n)
{
  std::gamma_distribution<double> g(1.0, 1.0);
  VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = g(rng);
  return v / v.sum();
}

inline VectorXd normal(std::mt19937_64& rng, Eigen::Index n, double scale = 1.0)
{
  std::normal_distribution<double> d(0.0, scale);
  VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = d(rng);
  return v;
}

inline FiniteMetricSpace random_planar(std::mt19937_64& rng, Eigen::Index n)
{
  std::uniform_real_distribution<double> u(0.0, 1.0);
  MatrixXd p(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    p(i, 0) = u(rng);
    p(i, 1) = u(rng);
  }
  return FiniteMetricSpace::from_points(p);
}

inline FiniteMetricSpace line(std::initializer_list<double> xs)
{
  MatrixXd p(static_cast<Eigen::Index>(xs.size()), 1);
  Eigen::Index i = 0;
  for (double x : xs) p(i++, 0) = x;
  return FiniteMetricSpace::from_points(p);
}

inline VectorXd vec(std::initializer_list<double> xs)
{
  VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace myfdiv::testing
