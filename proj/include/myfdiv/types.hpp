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

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>
#include <string>

namespace myfdiv {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorXd = Vector<double>;
using MatrixXd = Matrix<double>;

/// A real vector over the points of a space (critic / dual variable).
using Potential = VectorXd;

template <typename Scalar>
constexpr Scalar infinity() noexcept
{
  return std::numeric_limits<Scalar>::infinity();
}

/// Malformed arguments: wrong lengths, weights off the simplex, unknown names.
class InputError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of a special function.
class DomainError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

/// An iterative solver gave up. `iterations` and `residual` describe the last iterate.
class SolverError : public std::runtime_error
{
public:
  SolverError(const std::string& what, int iterations, double residual)
    : std::runtime_error(what), iterations_(iterations), residual_(residual)
  {}

  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

private:
  int iterations_;
  double residual_;
};

}  // namespace myfdiv
