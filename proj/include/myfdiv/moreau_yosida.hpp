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

// Moreau-Yosida approximation of D_phi(. | nu) with respect to W1,
//
//   D_{phi,lambda,alpha}(mu | nu) = min_xi D_phi(xi | nu) + lambda W1(mu, xi)^alpha,
//
// computed by a primal solver over couplings and, independently, by
// maximizing its variational (dual) form over potentials f with f[0] = 0:
//
//   alpha = 1:     max_{|f|_L <= lambda} <mu, f> - D*(f | nu)
//   alpha > 1:     max_f <mu, f> - D*(f | nu) - penalty(lambda, alpha, |f|_L)
//   alpha = inf:   max_f <mu, f> - D*(f | nu) - beta |f|_L

#include "myfdiv/catalog.hpp"
#include "myfdiv/conjugate.hpp"
#include "myfdiv/measures.hpp"
#include "myfdiv/transport.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace myfdiv {

inline constexpr double alpha_infinity = std::numeric_limits<double>::infinity();

/// Exactly one of lambda and beta drives a solve; alpha = inf accepts only beta.
struct MYParams
{
  std::optional<double> lambda;
  double alpha = 1.0;
  /// Ball radius for alpha = inf, or the source of lambda = beta^-alpha / alpha.
  std::optional<double> beta;

  static MYParams with_lambda(double lambda, double alpha);
  static MYParams with_beta(double beta, double alpha);
  static MYParams ball(double beta) { return with_beta(beta, alpha_infinity); }

  bool is_ball() const noexcept { return std::isinf(alpha); }
  /// lambda, or (1 / alpha) beta^-alpha when only beta is set. Not defined for the ball form.
  double effective_lambda() const;
  /// Throws InputError on inconsistent parameters.
  void validate() const;
};

/**
 * Penalty on the Lipschitz norm L in the dual:
 * (alpha - 1) alpha^(alpha / (1 - alpha)) lambda^(1 / (1 - alpha)) L^(alpha / (alpha - 1))
 * for alpha > 1, and the indicator of L <= lambda for alpha = 1.
 */
double penalty(double lambda, double alpha, double L);

/// As above; beta * L in the ball form.
double penalty(const MYParams& params, double L);

enum class DualMethod
{
  automatic,       // interior point; total variation through its linear-program form
  interior_point,  // log-barrier Newton over (f, L)
  ascent,          // full-gradient ascent, Pasch-Hausdorff restoration for alpha = 1
};

struct MYConfig
{
  // primal: accelerated projected gradient over couplings
  int primal_iterations = 5000;
  double primal_tol = 1e-10;  // stop when the Frank-Wolfe gap falls below tol (1 + value)
  /// Bisection steps on the multiplier of the ball constraint.
  int ball_bisections = 60;

  // dual
  DualMethod dual_method = DualMethod::automatic;
  double dual_tol = 1e-10;  // barrier duality gap, relative to 1 + |value|
  double learning_rate = 0.05;
  int ascent_iterations = 20000;

  std::uint64_t seed = 0;
  SolverConfig conjugate;
};

struct MYResult
{
  double value = 0.0;
  std::optional<DiscreteMeasure> xi_star;  // primal path only
  std::optional<Potential> f_star;         // dual path only
  int iterations = 0;
  double gap_estimate = 0.0;
  bool converged = false;
  bool experimental = false;  // 0 < alpha < 1, no convexity guarantee
  std::string method;
};

MYResult my_primal(const Spec& spec, const FiniteMetricSpace& space, const DiscreteMeasure& mu,
                   const DiscreteMeasure& nu, const MYParams& params, const MYConfig& cfg = {});

MYResult my_dual(const Spec& spec, const FiniteMetricSpace& space, const DiscreteMeasure& mu,
                 const DiscreteMeasure& nu, const MYParams& params, const MYConfig& cfg = {});

/// <mu, f> - D*(f | nu) - penalty(|f|_L): the dual objective at any potential.
double my_dual_objective(const Spec& spec, const FiniteMetricSpace& space, const DiscreteMeasure& mu,
                         const DiscreteMeasure& nu, const MYParams& params, const Potential& f,
                         const SolverConfig& cfg = {});

struct StructureReport
{
  double lipschitz = 0.0;           // |f*|_L
  double expected_lipschitz = 0.0;  // alpha lambda W1(mu, xi*)^(alpha - 1), or lambda for alpha = 1
  double w1_mu_xi = 0.0;
  bool lipschitz_ok = false;
  CsiszarReport<double> csiszar;
  double transport_lhs = 0.0;  // <mu - xi*, f*>
  double transport_rhs = 0.0;  // |f*|_L W1(mu, xi*)
  bool transport_ok = false;
  bool passed = false;
};

/**
 * Checks that the dual maximizer is, at once, a Csiszar potential of
 * (xi*, nu) and |f*|_L times a Kantorovich potential of (mu, xi*), with
 * |f*|_L = alpha lambda W1(mu, xi*)^(alpha - 1). Comparisons are relative:
 * |a - b| <= tol (1 + |b|).
 */
StructureReport check_optimality_structure(const Spec& spec, const FiniteMetricSpace& space,
                                           const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                           const MYParams& params, const MYResult& primal, const MYResult& dual,
                                           double tol);

}  // namespace myfdiv
