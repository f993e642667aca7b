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

// Tight convex conjugate of an f-divergence over probability measures on a
// finite set:
//
//   D*(f | nu) = min_{gamma >= max f - phi'(inf)} <nu, phi_plus*(f - gamma)> + gamma.
//
// The minimizing shift gamma solves <nu, (phi_plus*)'(f - gamma)> = 1 and is
// found by a bracketed Newton iteration; its gradient in f follows from the
// implicit function theorem. Sums run over supp(nu); the feasibility bound on
// gamma uses every entry of f.

#include "myfdiv/catalog.hpp"
#include "myfdiv/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace myfdiv {

struct SolverConfig
{
  /// Newton stops once |step| < tol.
  double tol = 1e-12;
  int max_iter = 100;
  /// Offset of the start from the feasibility bound when phi'(inf) < inf; <= 0 picks
  /// 1e-3 (1 + |max f - mean f|).
  double epsilon = 0.0;
  /// Use log<nu, e^f> (kl) and max f - 1 (total_variation) instead of Newton.
  bool prefer_closed_form = true;
  /// Solve for f - max(f) and add max(f) back.
  bool stabilize = true;
};

template <typename Scalar>
struct GammaSolution
{
  Scalar gamma = Scalar(0);
  /// Gradient of gamma in f; a probability vector.
  Vector<Scalar> grad;
  int iterations = 0;
  int bisection_steps = 0;
  bool converged = false;
  Scalar residual = Scalar(0);
  bool closed_form = false;
  /// gamma sits on the bound max f - phi'(inf), attained off supp(nu).
  bool bound_active = false;
};

template <typename Scalar>
struct ConjugateEvaluation
{
  Scalar value = Scalar(0);
  /// Gradient of D*(. | nu) in f: the maximizing probability measure.
  Vector<Scalar> grad;
  GammaSolution<Scalar> gamma;
};

namespace detail {

template <typename Scalar>
void validate_conjugate_inputs(const Vector<Scalar>& f, const Vector<Scalar>& nu)
{
  if (f.size() != nu.size()) {
    throw InputError("conjugate: f and nu have different lengths");
  }
  if (f.size() == 0) throw InputError("conjugate: empty input");
  Scalar total = Scalar(0);
  bool any = false;
  for (Eigen::Index i = 0; i < nu.size(); ++i) {
    if (!std::isfinite(f[i])) throw InputError("conjugate: f must be finite");
    if (!(nu[i] >= Scalar(0)) || !std::isfinite(nu[i])) {
      throw InputError("conjugate: nu must be nonnegative");
    }
    any = any || nu[i] > Scalar(0);
    total += nu[i];
  }
  if (!any || std::abs(total - Scalar(1)) > Scalar(1e-12) * Scalar(nu.size())) {
    throw InputError("conjugate: nu must sum to 1");
  }
}

template <typename Scalar>
Eigen::Index first_argmax(const Vector<Scalar>& f)
{
  Eigen::Index k = 0;
  for (Eigen::Index i = 1; i < f.size(); ++i) {
    if (f[i] > f[k]) k = i;
  }
  return k;
}

// First-order condition g(gamma) = <nu, d1(f - gamma)> - 1 and its derivative
// magnitude <nu, d2(f - gamma)>; g is nonincreasing in gamma.
template <typename Scalar>
std::pair<Scalar, Scalar> first_order(const GeneratorSpec<Scalar>& spec, const Vector<Scalar>& f,
                                      const Vector<Scalar>& nu, Scalar gamma)
{
  Scalar g = Scalar(0);
  Scalar h = Scalar(0);
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    if (nu[i] <= Scalar(0)) continue;
    const Scalar y = f[i] - gamma;
    g += nu[i] * spec.phi_plus_conj_d1(y);
    h += nu[i] * spec.phi_plus_conj_d2(y);
  }
  return {g - Scalar(1), h};
}

template <typename Scalar>
GammaSolution<Scalar> newton_gamma(const GeneratorSpec<Scalar>& spec, const Vector<Scalar>& f,
                                   const Vector<Scalar>& nu, const SolverConfig& cfg)
{
  GammaSolution<Scalar> sol;

  Scalar smax = -infinity<Scalar>();
  Scalar smin = infinity<Scalar>();
  Scalar mean = Scalar(0);
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    if (nu[i] <= Scalar(0)) continue;
    smax = std::max(smax, f[i]);
    smin = std::min(smin, f[i]);
    mean += nu[i] * f[i];
  }

  // (phi_plus*)'(0) = 1 and (phi_plus*)' is nondecreasing, so the root lies
  // in [min f, max f], intersected with the domain of phi_plus*.
  Scalar lo = smin;
  if (spec.has_finite_slope()) lo = std::max(lo, smax - spec.phi_prime_inf);
  // The sum exceeds any single term, so nu_i (phi_plus*)'(f_i - gamma) <= 1 at the root.
  if (spec.is_legendre()) {
    for (Eigen::Index i = 0; i < f.size(); ++i) {
      if (nu[i] > Scalar(0)) lo = std::max(lo, f[i] - spec.potential_from_ratio(Scalar(1) / nu[i]));
    }
  }
  Scalar hi = smax;
  if (!(hi > lo)) {
    sol.gamma = hi;
    sol.converged = true;
    sol.residual = std::abs(first_order(spec, f, nu, hi).first);
    return sol;
  }

  Scalar gamma;
  if (spec.has_finite_slope()) {
    const Scalar eps = cfg.epsilon > 0.0 ? Scalar(cfg.epsilon)
                                         : Scalar(1e-3) * (Scalar(1) + std::abs(smax - mean));
    gamma = smax - spec.phi_prime_inf + eps;
  } else {
    gamma = mean;
  }
  if (!(gamma > lo && gamma < hi)) gamma = lo + (hi - lo) / Scalar(2);

  Scalar prev_residual = infinity<Scalar>();
  Scalar step_before_last = hi - lo;
  Scalar last_step = hi - lo;
  const Scalar tol = Scalar(cfg.tol);
  for (int it = 1; it <= cfg.max_iter; ++it) {
    sol.iterations = it;
    const auto [g, h] = first_order(spec, f, nu, gamma);
    sol.residual = std::abs(g);
    if (g == Scalar(0)) {
      sol.converged = true;
      break;
    }
    if (g > Scalar(0)) {
      lo = gamma;
    } else {
      hi = gamma;
    }

    Scalar next = gamma + g / h;
    // Slow Newton progress (exponential tails) also falls back to bisection.
    const bool newton_ok = std::isfinite(next) && h > Scalar(0) && next > lo && next < hi &&
                           !(std::abs(g) > prev_residual) &&
                           !(Scalar(2) * std::abs(next - gamma) > std::abs(step_before_last));
    if (!newton_ok) {
      next = lo + (hi - lo) / Scalar(2);
      ++sol.bisection_steps;
    }
    prev_residual = std::abs(g);

    const Scalar step = next - gamma;
    step_before_last = last_step;
    last_step = step;
    gamma = next;
    if (std::abs(step) < tol || hi - lo <= Scalar(4) * std::numeric_limits<Scalar>::epsilon() *
                                                    (Scalar(1) + std::abs(gamma))) {
      sol.converged = true;
      sol.residual = std::abs(first_order(spec, f, nu, gamma).first);
      break;
    }
  }
  sol.gamma = gamma;
  if (!sol.converged) {
    throw SolverError("solve_gamma: no convergence for generator " + std::string(spec.name),
                      sol.iterations, double(sol.residual));
  }
  return sol;
}

}  // namespace detail

/**
 * Minimizing shift gamma of the tight conjugate and its gradient in f.
 *
 * Newton on <nu, (phi_plus*)'(f - gamma)> = 1, started at <nu, f> when
 * phi'(inf) = inf and just above the feasibility bound otherwise, with a
 * bisection step whenever Newton would leave the bracket or the residual
 * grows. Closed forms are used for kl and total_variation unless
 * cfg.prefer_closed_form is false (kl only; total_variation has no Newton path).
 */
template <typename Scalar>
GammaSolution<Scalar> solve_gamma(const GeneratorSpec<Scalar>& spec, const Vector<Scalar>& f,
                                  const Vector<Scalar>& nu, const SolverConfig& cfg = {})
{
  detail::validate_conjugate_inputs(f, nu);
  const Eigen::Index n = f.size();

  const Scalar shift = cfg.stabilize ? f.maxCoeff() : Scalar(0);
  const Vector<Scalar> fs = f.array() - shift;

  GammaSolution<Scalar> sol;
  if (spec.is_trivial()) {
    sol.gamma = nu.dot(f);
    sol.grad = nu;
    sol.closed_form = true;
    sol.converged = true;
    return sol;
  }

  const bool use_closed = spec.closed_form_gamma != nullptr &&
                          (cfg.prefer_closed_form || !spec.newton_applicable);
  if (use_closed) {
    sol.gamma = spec.closed_form_gamma(fs, nu);
    sol.closed_form = true;
    sol.converged = true;
  } else if (spec.newton_applicable) {
    sol = detail::newton_gamma(spec, fs, nu, cfg);
  } else {
    throw InputError("solve_gamma: generator " + std::string(spec.name) + " has no solver");
  }

  const Eigen::Index kmax = detail::first_argmax(fs);
  if (spec.has_finite_slope()) {
    const Scalar bound = fs[kmax] - spec.phi_prime_inf;
    if (sol.gamma < bound) {
      sol.gamma = bound;
      sol.bound_active = true;
    }
  }

  sol.grad = Vector<Scalar>::Zero(n);
  if (spec.id == Generator::total_variation) {
    sol.grad[kmax] = Scalar(1);
  } else if (sol.bound_active) {
    sol.grad[kmax] = Scalar(1);
  } else {
    Scalar total = Scalar(0);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (nu[i] <= Scalar(0)) continue;
      sol.grad[i] = nu[i] * spec.phi_plus_conj_d2(fs[i] - sol.gamma);
      total += sol.grad[i];
    }
    if (total > Scalar(0) && std::isfinite(total)) {
      sol.grad /= total;
    } else {
      sol.grad.setZero();
      sol.grad[kmax] = Scalar(1);
    }
  }
  sol.gamma += shift;
  return sol;
}

/// Value and gradient of D*(f | nu) sharing one gamma solve.
template <typename Scalar>
ConjugateEvaluation<Scalar> evaluate_conjugate(const GeneratorSpec<Scalar>& spec, const Vector<Scalar>& f,
                                               const Vector<Scalar>& nu, const SolverConfig& cfg = {})
{
  ConjugateEvaluation<Scalar> out;
  out.gamma = solve_gamma(spec, f, nu, cfg);
  if (spec.is_trivial()) {
    out.value = nu.dot(f);
    out.grad = nu;
    return out;
  }

  const Eigen::Index n = f.size();
  const Scalar shift = cfg.stabilize ? f.maxCoeff() : Scalar(0);
  const Scalar gamma = out.gamma.gamma - shift;

  Scalar value = Scalar(0);
  out.grad = Vector<Scalar>::Zero(n);
  Scalar mass = Scalar(0);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (nu[i] <= Scalar(0)) continue;
    Scalar y = (f[i] - shift) - gamma;
    // gamma >= max f - phi'(inf); undo the rounding of adding and removing the shift.
    if (spec.has_finite_slope()) y = std::min(y, spec.phi_prime_inf);
    value += nu[i] * spec.phi_plus_conj(y);
    out.grad[i] = nu[i] * spec.phi_plus_conj_d1(y);
    mass += out.grad[i];
  }
  out.value = value + gamma + shift;

  // With a finite recession slope the remaining mass sits where f is largest.
  if (spec.has_finite_slope() && (out.gamma.bound_active || out.gamma.closed_form)) {
    const Scalar rest = Scalar(1) - mass;
    if (rest > Scalar(0)) out.grad[detail::first_argmax(f)] += rest;
  }
  return out;
}

template <typename Scalar>
Scalar conjugate_value(const GeneratorSpec<Scalar>& spec, const Vector<Scalar>& f, const Vector<Scalar>& nu,
                       const SolverConfig& cfg = {})
{
  return evaluate_conjugate(spec, f, nu, cfg).value;
}

template <typename Scalar>
Vector<Scalar> conjugate_gradient(const GeneratorSpec<Scalar>& spec, const Vector<Scalar>& f,
                                  const Vector<Scalar>& nu, const SolverConfig& cfg = {})
{
  return evaluate_conjugate(spec, f, nu, cfg).grad;
}

/**
 * Hessian of D*(. | nu) at f, where it exists. Off the bound this is
 * diag(w) - w w^T / <1, w> with w = nu * (phi_plus*)''(f - gamma). Zero for
 * the trivial and total variation generators.
 */
template <typename Scalar>
Matrix<Scalar> conjugate_hessian(const GeneratorSpec<Scalar>& spec, const Vector<Scalar>& f,
                                 const Vector<Scalar>& nu, const SolverConfig& cfg = {})
{
  const Eigen::Index n = f.size();
  Matrix<Scalar> H = Matrix<Scalar>::Zero(n, n);
  if (!spec.newton_applicable) return H;

  const auto sol = solve_gamma(spec, f, nu, cfg);
  Vector<Scalar> w = Vector<Scalar>::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (nu[i] > Scalar(0)) w[i] = nu[i] * spec.phi_plus_conj_d2(f[i] - sol.gamma);
  }
  const Scalar total = w.sum();
  H.diagonal() = w;
  if (sol.bound_active) {
    const Eigen::Index k = detail::first_argmax(f);
    H.col(k) -= w;
    H.row(k) -= w.transpose();
    H(k, k) = total;
  } else if (total > Scalar(0)) {
    H.noalias() -= (w * w.transpose()) / total;
  }
  return H;
}

template <typename Scalar>
struct CsiszarReport
{
  Scalar C = Scalar(0);
  Scalar max_violation = Scalar(0);
  bool ok = false;
};

namespace detail {

template <typename Scalar>
Scalar csiszar_violation(const GeneratorSpec<Scalar>& spec, const Vector<Scalar>& mu, const Vector<Scalar>& nu,
                         const Vector<Scalar>& f, Scalar C)
{
  Scalar worst = Scalar(0);
  if (spec.has_finite_slope()) {
    worst = std::max(worst, f.maxCoeff() + C - spec.phi_prime_inf);
  }
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    if (nu[i] > Scalar(0)) {
      const Scalar ratio = mu[i] / nu[i];
      const auto [lo, hi] = spec.conj_subdifferential(f[i] + C);
      Scalar d;
      if (lo > hi) {
        d = infinity<Scalar>();
      } else if (ratio < lo) {
        d = lo - ratio;
      } else if (ratio > hi) {
        d = ratio - hi;
      } else {
        d = Scalar(0);
      }
      worst = std::max(worst, d);
    } else if (mu[i] > Scalar(0)) {
      const Scalar d = spec.has_finite_slope() ? std::abs(f[i] + C - spec.phi_prime_inf) : infinity<Scalar>();
      worst = std::max(worst, d);
    }
  }
  return worst;
}

}  // namespace detail

/**
 * Checks whether f is a Csiszar potential of (mu, nu): for some constant C,
 * sup f + C <= phi'(inf), mu_i / nu_i lies in the subdifferential of
 * phi_plus* at f_i + C on supp(nu), and f_i + C = phi'(inf) wherever mu has
 * mass outside supp(nu). C is searched by a grid scan followed by golden
 * section around -gamma(f), since the total violation is quasiconvex in C.
 */
template <typename Scalar>
CsiszarReport<Scalar> check_csiszar_potential(const GeneratorSpec<Scalar>& spec, const Vector<Scalar>& mu,
                                              const Vector<Scalar>& nu, const Vector<Scalar>& f, Scalar tol)
{
  if (mu.size() != nu.size() || f.size() != nu.size()) {
    throw InputError("check_csiszar_potential: length mismatch");
  }
  detail::validate_conjugate_inputs(f, nu);
  if ((mu.array() < Scalar(0)).any()) throw InputError("check_csiszar_potential: mu must be nonnegative");

  auto violation = [&](Scalar C) { return detail::csiszar_violation(spec, mu, nu, f, C); };

  Scalar center = -nu.dot(f);
  if (spec.newton_applicable || spec.closed_form_gamma != nullptr) {
    center = -solve_gamma(spec, f, nu).gamma;
  }
  const Scalar width = Scalar(1) + (f.maxCoeff() - f.minCoeff());

  Scalar best_c = center;
  Scalar best_v = violation(center);
  constexpr int grid = 200;
  for (int k = 0; k <= grid; ++k) {
    const Scalar c = center - width + Scalar(2) * width * Scalar(k) / Scalar(grid);
    const Scalar v = violation(c);
    if (v < best_v) {
      best_v = v;
      best_c = c;
    }
  }

  const Scalar invphi = (std::sqrt(Scalar(5)) - Scalar(1)) / Scalar(2);
  Scalar a = best_c - Scalar(2) * width / Scalar(grid);
  Scalar b = best_c + Scalar(2) * width / Scalar(grid);
  Scalar c1 = b - invphi * (b - a);
  Scalar c2 = a + invphi * (b - a);
  Scalar v1 = violation(c1);
  Scalar v2 = violation(c2);
  for (int it = 0; it < 200 && b - a > Scalar(1e-15) * (Scalar(1) + std::abs(best_c)); ++it) {
    if (v1 <= v2) {
      b = c2;
      c2 = c1;
      v2 = v1;
      c1 = b - invphi * (b - a);
      v1 = violation(c1);
    } else {
      a = c1;
      c1 = c2;
      v1 = v2;
      c2 = a + invphi * (b - a);
      v2 = violation(c2);
    }
  }
  for (auto [c, v] : {std::pair{c1, v1}, std::pair{c2, v2}}) {
    if (v < best_v) {
      best_v = v;
      best_c = c;
    }
  }

  return {best_c, best_v, best_v <= tol};
}

}  // namespace myfdiv
