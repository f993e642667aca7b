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
#include "myfdiv/estimator.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace myfdiv {

void AscentConfig::validate() const
{
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw InputError("ascent: learning_rate must be positive");
  }
  if (iterations < 1) throw InputError("ascent: iterations must be at least 1");
  if (gradient_tol < 0.0) throw InputError("ascent: gradient_tol must be nonnegative");
}

double variational_objective(const Spec& spec, const VectorXd& mu, const VectorXd& nu, const Potential& f,
                             const SolverConfig& cfg)
{
  return mu.dot(f) - conjugate_value(spec, f, nu, cfg);
}

double mean_deviation_objective(const Spec& spec, const VectorXd& mu, const VectorXd& nu, const Potential& f,
                                const SolverConfig& cfg)
{
  const double mean = nu.dot(f);
  const Potential centered = f.array() - mean;
  return (mu - nu).dot(f) - conjugate_value(spec, centered, nu, cfg);
}

EstimateResult estimate_divergence(const Spec& spec, const VectorXd& mu, const VectorXd& nu, const AscentConfig& cfg)
{
  cfg.validate();
  if (spec.is_trivial()) throw InputError("estimate_divergence: the trivial generator has no variational estimate");
  if (mu.size() != nu.size()) throw InputError("estimate_divergence: length mismatch");
  DiscreteMeasure::probability(mu);
  const Eigen::Index n = mu.size();

  EstimateResult out;
  Potential f = Potential::Zero(n);
  auto ev = evaluate_conjugate(spec, f, nu, cfg.conjugate);
  double value = mu.dot(f) - ev.value;
  VectorXd grad = mu - ev.grad;

  int it = 0;
  for (; it < cfg.iterations; ++it) {
    if (cfg.record_trajectory) out.trajectory.push_back(value);
    if (cfg.gradient_tol > 0.0 && grad.cwiseAbs().maxCoeff() <= cfg.gradient_tol) break;

    if (cfg.method == AscentMethod::gradient) {
      f += cfg.learning_rate * grad;
      if (cfg.use_quotient) f.array() -= f[0];
      if (!f.allFinite()) {
        throw SolverError("estimate_divergence: potential is no longer finite", it + 1, grad.cwiseAbs().maxCoeff());
      }
      ev = evaluate_conjugate(spec, f, nu, cfg.conjugate);
      value = mu.dot(f) - ev.value;
      if (!std::isfinite(value)) {
        throw SolverError("estimate_divergence: objective is no longer finite", it + 1, grad.cwiseAbs().maxCoeff());
      }
    } else {
      // At the current shift the objective is bounded below by the separable
      // sum_i mu_i y_i - nu_i phi_plus*(y_i) + const, y = f - gamma, which
      // touches it at f. Each coordinate takes one damped Newton step on its term.
      const double gamma = ev.gamma.gamma;
      Potential fn = f;
      bool moved = false;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double g = grad[i];
        if (g == 0.0) continue;
        if (!(nu[i] > 0.0)) {
          fn[i] += cfg.learning_rate * g;
          moved = true;
          continue;
        }
        const double y = f[i] - gamma;
        const double h = nu[i] * spec.phi_plus_conj_d2(y);
        const double dir = h > 0.0 && std::isfinite(h) ? g / h : g;
        const double base = mu[i] * y - nu[i] * spec.phi_plus_conj(y);
        double t = cfg.learning_rate;
        for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
          const double yn = y + t * dir;
          const double v = mu[i] * yn - nu[i] * spec.phi_plus_conj(yn);
          if (std::isfinite(v) && v >= base + 1e-4 * t * g * dir) {
            fn[i] = f[i] + t * dir;
            break;
          }
        }
        moved = moved || fn[i] != f[i];
      }
      if (!moved) {
        ++it;
        break;
      }
      if (cfg.use_quotient) fn.array() -= fn[0];
      if (!fn.allFinite()) {
        throw SolverError("estimate_divergence: potential is no longer finite", it + 1, grad.cwiseAbs().maxCoeff());
      }
      f = std::move(fn);
      ev = evaluate_conjugate(spec, f, nu, cfg.conjugate);
      value = mu.dot(f) - ev.value;
      if (!std::isfinite(value)) {
        throw SolverError("estimate_divergence: objective is no longer finite", it + 1, grad.cwiseAbs().maxCoeff());
      }
    }
    grad = mu - ev.grad;
  }
  out.estimate = value;
  out.f = f;
  out.iterations = it;
  out.gradient_norm = grad.cwiseAbs().maxCoeff();
  return out;
}

GaussianParams GaussianParams::with_default_grid(double mu1, double sigma1, double mu2, double sigma2, int grid_n,
                                                 double coverage)
{
  if (!(coverage >= 4.0)) throw InputError("gaussian: coverage must be at least 4 sigma");
  GaussianParams p;
  p.mu1 = mu1;
  p.sigma1 = sigma1;
  p.mu2 = mu2;
  p.sigma2 = sigma2;
  p.grid_lo = std::min(mu1 - coverage * sigma1, mu2 - coverage * sigma2);
  p.grid_hi = std::max(mu1 + coverage * sigma1, mu2 + coverage * sigma2);
  p.grid_n = grid_n;
  return p;
}

void GaussianParams::validate() const
{
  if (!(sigma1 > 0.0) || !(sigma2 > 0.0)) throw InputError("gaussian: sigmas must be positive");
  if (!(grid_lo < grid_hi)) throw InputError("gaussian: grid_lo must be below grid_hi");
  if (grid_n < 2) throw InputError("gaussian: grid_n must be at least 2");
  const double slack = 1e-12 * (1.0 + std::abs(grid_lo) + std::abs(grid_hi));
  const bool covers = grid_lo <= std::min(mu1 - 4.0 * sigma1, mu2 - 4.0 * sigma2) + slack &&
                      grid_hi >= std::max(mu1 + 4.0 * sigma1, mu2 + 4.0 * sigma2) - slack;
  if (!covers) throw InputError("gaussian: grid must cover 4 sigma around both means");
}

VectorXd GaussianParams::grid() const
{
  return VectorXd::LinSpaced(grid_n, grid_lo, grid_hi);
}

double gaussian_ratio(double x, const GaussianParams& p)
{
  if (!(p.sigma1 > 0.0) || !(p.sigma2 > 0.0)) throw InputError("gaussian_ratio: sigmas must be positive");
  const double a = (x - p.mu2) / p.sigma2;
  const double b = (x - p.mu1) / p.sigma1;
  return p.sigma2 / p.sigma1 * std::exp(0.5 * (a * a - b * b));
}

double gaussian_potential_closed_form(const Spec& spec, double x, const GaussianParams& p)
{
  if (!spec.is_legendre()) {
    throw InputError("gaussian_potential_closed_form: generator " + std::string(spec.name) + " is not of Legendre type");
  }
  return spec.potential_from_ratio(gaussian_ratio(x, p));
}

namespace {

VectorXd normal_pdf(const VectorXd& x, double m, double s)
{
  return ((x.array() - m) / s).square().unaryExpr([](double z) { return std::exp(-0.5 * z); }) /
         (s * std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace

GaussianReport gaussian_experiment(const Spec& spec, const GaussianParams& p, const AscentConfig& cfg)
{
  p.validate();
  if (!spec.is_legendre()) {
    throw InputError("gaussian_experiment: generator " + std::string(spec.name) + " is not of Legendre type");
  }
  GaussianReport rep;
  rep.grid = p.grid();
  const VectorXd pm = normal_pdf(rep.grid, p.mu1, p.sigma1);
  const VectorXd pn = normal_pdf(rep.grid, p.mu2, p.sigma2);
  const VectorXd mu = pm / pm.sum();
  const VectorXd nu = pn / pn.sum();

  const EstimateResult est = estimate_divergence(spec, mu, nu, cfg);
  rep.estimate = est.estimate;
  rep.iterations = est.iterations;
  rep.exact = exact_divergence(spec, DiscreteMeasure(mu), DiscreteMeasure(nu));

  const Eigen::Index n = rep.grid.size();
  rep.f_closed.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) rep.f_closed[i] = gaussian_potential_closed_form(spec, rep.grid[i], p);

  Eigen::Index mode = 0;
  pn.maxCoeff(&mode);
  rep.f_learned = est.f.array() - est.f[mode] + rep.f_closed[mode];

  const VectorXd overlap = pm.cwiseMin(pn);
  const double cut = 0.01 * overlap.maxCoeff();
  rep.high_density.assign(static_cast<std::size_t>(n), 0);
  rep.aligned_sup_error = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (overlap[i] >= cut) {
      rep.high_density[static_cast<std::size_t>(i)] = 1;
      rep.aligned_sup_error = std::max(rep.aligned_sup_error, std::abs(rep.f_learned[i] - rep.f_closed[i]));
    }
  }
  rep.converged = std::isfinite(rep.aligned_sup_error) && std::isfinite(rep.estimate) &&
                  std::abs(rep.estimate - rep.exact) <= 1e-3 * (1.0 + std::abs(rep.exact));
  return rep;
}

}  // namespace myfdiv
