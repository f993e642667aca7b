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

// Variational estimation of D_phi(mu | nu) by maximizing
//
//   f -> <mu, f> - D*(f | nu)
//
// over a raw potential vector, and the 1-D Gaussian potential-recovery toy.

#include "myfdiv/catalog.hpp"
#include "myfdiv/conjugate.hpp"
#include "myfdiv/measures.hpp"

#include <cstdint>
#include <vector>

namespace myfdiv {

enum class AscentMethod
{
  gradient,        // f += lr * (mu - grad D*(f)), fixed step
  preconditioned,  // the same gradient scaled by 1 / (nu phi_plus*''(f - gamma)), damped per coordinate
};

struct AscentConfig
{
  double learning_rate = 1.0;
  int iterations = 20000;
  std::uint64_t seed = 0;
  bool use_quotient = true;  // keep f[0] = 0
  AscentMethod method = AscentMethod::gradient;
  /// Stop early once the sup-norm of the gradient falls below this; 0 runs every iteration.
  double gradient_tol = 0.0;
  bool record_trajectory = false;
  SolverConfig conjugate;

  void validate() const;
};

struct EstimateResult
{
  double estimate = 0.0;
  Potential f;
  int iterations = 0;
  double gradient_norm = 0.0;  // sup-norm at the returned f
  std::vector<double> trajectory;
};

/// <mu, f> - D*(f | nu).
double variational_objective(const Spec& spec, const VectorXd& mu, const VectorXd& nu, const Potential& f,
                             const SolverConfig& cfg = {});

/// <mu - nu, f> - D*(f - <nu, f> | nu); equal to the above by topicality.
double mean_deviation_objective(const Spec& spec, const VectorXd& mu, const VectorXd& nu, const Potential& f,
                                const SolverConfig& cfg = {});

/**
 * Ascent from f = 0. Throws SolverError when the objective stops being
 * finite, InputError for the trivial generator or malformed measures.
 */
EstimateResult estimate_divergence(const Spec& spec, const VectorXd& mu, const VectorXd& nu,
                                   const AscentConfig& cfg = {});

struct GaussianParams
{
  double mu1 = -1.0;
  double sigma1 = 0.3;
  double mu2 = 0.5;
  double sigma2 = 0.6;
  double grid_lo = -2.5;
  double grid_hi = 3.0;
  int grid_n = 512;

  /// Grid spanning [m - k s, m + k s] of both Gaussians, k = coverage >= 4.
  static GaussianParams with_default_grid(double mu1, double sigma1, double mu2, double sigma2, int grid_n = 512,
                                          double coverage = 4.0);

  void validate() const;
  VectorXd grid() const;
};

/// dN(mu1, sigma1) / dN(mu2, sigma2) at x.
double gaussian_ratio(double x, const GaussianParams& p);

/// potential_from_ratio(gaussian_ratio(x)); InputError for non-Legendre generators.
double gaussian_potential_closed_form(const Spec& spec, double x, const GaussianParams& p);

struct GaussianReport
{
  VectorXd grid;
  VectorXd f_learned;  // shifted to agree with f_closed at the mode of nu
  VectorXd f_closed;
  std::vector<char> high_density;  // min(mu, nu) >= 1% of its max
  double aligned_sup_error = 0.0;
  double estimate = 0.0;
  double exact = 0.0;
  int iterations = 0;
  bool converged = false;
};

GaussianReport gaussian_experiment(const Spec& spec, const GaussianParams& p, const AscentConfig& cfg = {});

}  // namespace myfdiv
