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
#include "myfdiv/validation.hpp"

#include "myfdiv/conjugate.hpp"
#include "myfdiv/estimator.hpp"
#include "myfdiv/lambert_w.hpp"
#include "myfdiv/measures.hpp"
#include "myfdiv/moreau_yosida.hpp"
#include "myfdiv/transport.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <utility>

namespace myfdiv {

namespace {

using Rng = std::mt19937_64;

template <std::size_t K>
double perturbed_phi(double x)
{
  return get_spec(all_generators[K]).phi_plus(x) + 1e-3 * (x - 1.0) * (x - 1.0);
}

template <std::size_t... K>
constexpr std::array<Spec::UnaryFn, sizeof...(K)> perturbed_table(std::index_sequence<K...>)
{
  return {&perturbed_phi<K>...};
}

constexpr auto perturbed_phis = perturbed_table(std::make_index_sequence<all_generators.size()>{});

class SpecTable
{
public:
  explicit SpecTable(const SuiteOptions& opts)
  {
    for (std::size_t i = 0; i < all_generators.size(); ++i) table_[i] = get_spec(all_generators[i]);
    if (opts.inject_fault) {
      const auto k = static_cast<std::size_t>(*opts.inject_fault);
      table_[k].phi_plus = perturbed_phis[k];
    }
  }

  const Spec& operator()(Generator g) const { return table_[static_cast<std::size_t>(g)]; }

private:
  std::array<Spec, all_generators.size()> table_;
};

VectorXd dirichlet(Rng& rng, Eigen::Index n)
{
  std::gamma_distribution<double> gamma(1.0, 1.0);
  VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = gamma(rng);
  return v / v.sum();
}

VectorXd normal_vector(Rng& rng, Eigen::Index n, double scale)
{
  std::normal_distribution<double> normal(0.0, scale);
  VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

struct Instance
{
  FiniteMetricSpace space;
  DiscreteMeasure mu;
  DiscreteMeasure nu;
};

// Uniform points in the unit square with Dirichlet(1) weights.
Instance planar_instance(std::uint64_t seed, Eigen::Index n)
{
  Rng rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  MatrixXd pts(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) pts(i, j) = unif(rng);
  }
  auto space = FiniteMetricSpace::from_points(pts);
  DiscreteMeasure mu(dirichlet(rng, n));
  DiscreteMeasure nu(dirichlet(rng, n));
  return {std::move(space), std::move(mu), std::move(nu)};
}

std::string sci(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

double rel(double a, double b)
{
  return std::abs(a - b) / (1.0 + std::abs(b));
}

// ---------------------------------------------------------------------------

CriterionResult categorical(const SpecTable& specs)
{
  CriterionResult r;
  r.tolerance = 1e-4;
  const auto t0 = std::chrono::steady_clock::now();

  AscentConfig cfg;
  cfg.method = AscentMethod::preconditioned;
  cfg.learning_rate = 1.0;
  cfg.iterations = 500;
  cfg.gradient_tol = 1e-13;

  bool ok = true;
  std::ostringstream detail;
  for (Generator g : newton_generators) {
    const Spec& spec = specs(g);
    const double tol = g == Generator::reverse_chi2 ? 1e-2 : 1e-4;
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Rng rng(seed);
      const VectorXd mu = dirichlet(rng, 10);
      const VectorXd nu = dirichlet(rng, 10);
      cfg.seed = seed;
      double err;
      try {
        const auto est = estimate_divergence(spec, mu, nu, cfg);
        err = std::abs(est.estimate - exact_divergence(spec, DiscreteMeasure(mu), DiscreteMeasure(nu)));
      } catch (const std::exception&) {
        err = infinity<double>();
      }
      if (!(err <= worst)) worst = err;
    }
    ok = ok && worst <= tol;
    if (g != Generator::reverse_chi2) r.measured = std::max(r.measured, worst);
    detail << ' ' << spec.name << '=' << sci(worst);
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.passed = ok && r.seconds <= 60.0;
  r.detail = "20 seeds x 10 categories, reverse_chi2 tol 1e-2, limit 60 s;" + detail.str();
  return r;
}

CriterionResult gamma_oracles(const SpecTable& specs)
{
  CriterionResult r;
  r.tolerance = 1e-10;
  SolverConfig newton;
  newton.prefer_closed_form = false;
  const Spec& kl = specs(Generator::kl);
  const Spec& tv = specs(Generator::total_variation);

  double worst_kl = 0.0;
  double worst_tv = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const Eigen::Index n = std::uniform_int_distribution<Eigen::Index>(1, 32)(rng);
    const VectorXd f = normal_vector(rng, n, 3.0);
    const VectorXd nu = dirichlet(rng, n);

    long double m = f.maxCoeff();
    long double acc = 0.0L;
    for (Eigen::Index i = 0; i < n; ++i) acc += nu[i] * std::exp(static_cast<long double>(f[i]) - m);
    const double oracle = static_cast<double>(m + std::log(acc));
    double err = std::abs(solve_gamma(kl, f, nu, newton).gamma - oracle);
    if (!(err <= worst_kl)) worst_kl = err;

    const double mx = f.maxCoeff();
    double explicit_value = mx - 1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double y = f[i] - mx + 1.0;
      explicit_value += nu[i] * (y < -1.0 ? -1.0 : y);
    }
    err = std::abs(conjugate_value(tv, f, nu) - explicit_value);
    if (!(err <= worst_tv)) worst_tv = err;
  }
  r.measured = worst_kl;
  r.passed = worst_kl <= 1e-10 && worst_tv <= 1e-12;
  r.detail = "100 seeds, n <= 32; kl Newton vs log<nu, e^f> " + sci(worst_kl) +
             ", total_variation conjugate vs explicit form " + sci(worst_tv) + " (tol 1e-12)";
  return r;
}

CriterionResult implicit_gradients(const SpecTable& specs)
{
  CriterionResult r;
  r.tolerance = 1e-6;
  constexpr double h = 1e-5;
  double worst_simplex = 0.0;
  std::ostringstream detail;
  for (Generator g : newton_generators) {
    const Spec& spec = specs(g);
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      Rng rng(seed);
      const Eigen::Index n = std::uniform_int_distribution<Eigen::Index>(2, 8)(rng);
      const VectorXd f = normal_vector(rng, n, 0.5);
      const VectorXd nu = dirichlet(rng, n);
      double err;
      try {
        const auto ev = evaluate_conjugate(spec, f, nu);
        VectorXd fd_gamma(n), fd_value(n);
        for (Eigen::Index i = 0; i < n; ++i) {
          VectorXd fp = f, fm = f;
          fp[i] += h;
          fm[i] -= h;
          const auto ep = evaluate_conjugate(spec, fp, nu);
          const auto em = evaluate_conjugate(spec, fm, nu);
          fd_gamma[i] = (ep.gamma.gamma - em.gamma.gamma) / (2.0 * h);
          fd_value[i] = (ep.value - em.value) / (2.0 * h);
        }
        const VectorXd& gg = ev.gamma.grad;
        err = std::max((fd_gamma - gg).cwiseAbs().maxCoeff() / gg.cwiseAbs().maxCoeff(),
                       (fd_value - ev.grad).cwiseAbs().maxCoeff() / ev.grad.cwiseAbs().maxCoeff());
        const double off = std::max({std::abs(gg.sum() - 1.0), -gg.minCoeff(), 0.0});
        worst_simplex = std::max(worst_simplex, off);
      } catch (const std::exception&) {
        err = infinity<double>();
      }
      if (!(err <= worst)) worst = err;
    }
    r.measured = std::max(r.measured, worst);
    detail << ' ' << spec.name << '=' << sci(worst);
  }
  r.passed = r.measured <= 1e-6 && worst_simplex <= 1e-8;
  r.detail = "50 seeds per generator, h = 1e-5, simplex defect " + sci(worst_simplex) + " (tol 1e-8);" + detail.str();
  return r;
}

CriterionResult topicality(const SpecTable& specs)
{
  CriterionResult r;
  r.tolerance = 1e-8;
  for (Generator g : all_generators) {
    const Spec& spec = specs(g);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Rng rng(seed);
      const Eigen::Index n = std::uniform_int_distribution<Eigen::Index>(1, 16)(rng);
      const VectorXd f = normal_vector(rng, n, 2.0);
      const VectorXd nu = dirichlet(rng, n);
      const double c = std::uniform_real_distribution<double>(-10.0, 10.0)(rng);
      double err;
      try {
        const VectorXd fc = f.array() + c;
        err = std::abs(conjugate_value(spec, fc, nu) - conjugate_value(spec, f, nu) - c);
      } catch (const std::exception&) {
        err = infinity<double>();
      }
      if (!(err <= r.measured)) r.measured = err;
    }
  }
  r.passed = r.measured <= r.tolerance;
  r.detail = "all generators, 100 seeds each, shifts in [-10, 10]";
  return r;
}

CriterionResult kantorovich(const SpecTable&)
{
  CriterionResult r;
  r.tolerance = 1e-7;
  double worst_lip = 0.0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> unif(0.1, 2.0);
    MatrixXd w = MatrixXd::Zero(5, 5);
    for (Eigen::Index i = 0; i < 5; ++i) {
      for (Eigen::Index j = i + 1; j < 5; ++j) w(i, j) = w(j, i) = unif(rng);
    }
    const auto space = FiniteMetricSpace::metric_completion(w);
    const DiscreteMeasure mu(dirichlet(rng, 5));
    const DiscreteMeasure nu(dirichlet(rng, 5));
    const TransportPlan plan = w1_primal(space, mu, nu);
    const double cost = (plan.pi.array() * space.dist().array()).sum();
    const KantorovichDual dual = kantorovich_dual(space, mu, nu);
    const double pairing = (mu.weights() - nu.weights()).dot(dual.f);
    const double err = std::max({std::abs(dual.value - cost), std::abs(pairing - cost), std::abs(plan.cost - cost)});
    if (!(err <= r.measured)) r.measured = err;
    worst_lip = std::max(worst_lip, lipschitz_norm(space, dual.f) - 1.0);
  }
  r.passed = r.measured <= r.tolerance && worst_lip <= 1e-9;
  r.detail = "30 shortest-path 5-point spaces; Lipschitz excess " + sci(std::max(worst_lip, 0.0)) + " (tol 1e-9)";
  return r;
}

CriterionResult my_duality(const SpecTable& specs)
{
  CriterionResult r;
  r.tolerance = 1e-3;
  const auto t0 = std::chrono::steady_clock::now();
  int unconverged = 0;
  for (Generator g : {Generator::kl, Generator::chi2, Generator::jensen_shannon, Generator::trivial}) {
    const Spec& spec = specs(g);
    for (double alpha : {1.0, 2.0}) {
      for (double lambda : {0.5, 2.0}) {
        const auto params = MYParams::with_lambda(lambda, alpha);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
          const Instance I = planar_instance(seed, 5);
          double err;
          try {
            const MYResult p = my_primal(spec, I.space, I.mu, I.nu, params);
            const MYResult d = my_dual(spec, I.space, I.mu, I.nu, params);
            err = rel(d.value, p.value);
            unconverged += !p.converged || !d.converged;
          } catch (const std::exception&) {
            err = infinity<double>();
          }
          if (!(err <= r.measured)) r.measured = err;
        }
      }
    }
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.passed = r.measured <= r.tolerance && r.seconds <= 600.0;
  r.detail = "|primal - dual| / (1 + value) over kl, chi2, jensen_shannon, trivial x alpha {1, 2} x lambda {0.5, 2} "
             "x 20 seeds; " +
             std::to_string(unconverged) + " unconverged runs; limit 600 s";
  return r;
}

CriterionResult structure(const SpecTable& specs)
{
  CriterionResult r;
  r.tolerance = 0.02;
  const Spec& trivial = specs(Generator::trivial);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance I = planar_instance(seed, 5);
    for (double lambda : {0.5, 0.7, 2.0}) {
      double err;
      try {
        const MYResult d = my_dual(trivial, I.space, I.mu, I.nu, MYParams::with_lambda(lambda, 2.0));
        const double target = 2.0 * lambda * wasserstein1(I.space, I.mu, I.nu);
        err = std::abs(lipschitz_norm(I.space, *d.f_star) - target) / target;
      } catch (const std::exception&) {
        err = infinity<double>();
      }
      if (!(err <= r.measured)) r.measured = err;
    }
  }

  int converged = 0;
  int passed = 0;
  int failed = 0;
  for (Generator g : {Generator::kl, Generator::reverse_kl, Generator::chi2, Generator::squared_hellinger,
                      Generator::jensen_shannon}) {
    const Spec& spec = specs(g);
    for (double alpha : {1.0, 2.0}) {
      const auto params = MYParams::with_lambda(1.0, alpha);
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Instance I = planar_instance(seed, 4);
        try {
          const MYResult p = my_primal(spec, I.space, I.mu, I.nu, params);
          const MYResult d = my_dual(spec, I.space, I.mu, I.nu, params);
          if (!p.converged || !d.converged) continue;
          ++converged;
          if (check_optimality_structure(spec, I.space, I.mu, I.nu, params, p, d, 1e-2).passed) {
            ++passed;
          } else {
            ++failed;
          }
        } catch (const std::exception&) {
          ++failed;
        }
      }
    }
  }
  r.passed = r.measured <= r.tolerance && failed == 0 && converged > 0;
  r.detail = "trivial alpha = 2: relative |f*|_L vs 2 lambda W1 over 60 runs; structure check (tol 1e-2) passed " +
             std::to_string(passed) + "/" + std::to_string(converged) + " converged runs, " + std::to_string(failed) +
             " failures";
  return r;
}

CriterionResult my_properties(const SpecTable& specs)
{
  CriterionResult r;
  r.tolerance = 1e-8;
  double monotone = 0.0;  // largest decrease when lambda grows
  double sandwich = 0.0;  // largest excess over min(D, lambda W^alpha)
  double lipschitz = 0.0; // largest excess over lambda W1(mu1, mu2)
  int ball_mismatch = 0;
  const std::array<double, 5> lambdas = {0.25, 0.5, 1.0, 2.0, 4.0};

  for (Generator g : {Generator::kl, Generator::chi2}) {
    const Spec& spec = specs(g);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Instance I = planar_instance(seed, 5);
      const double D = exact_divergence(spec, I.mu, I.nu);
      const double W = wasserstein1(I.space, I.mu, I.nu);
      for (double alpha : {1.0, 2.0}) {
        double prev = -infinity<double>();
        for (double lambda : lambdas) {
          double v;
          try {
            v = my_dual(spec, I.space, I.mu, I.nu, MYParams::with_lambda(lambda, alpha)).value;
          } catch (const std::exception&) {
            v = infinity<double>();
          }
          const double cap = std::min(D, lambda * std::pow(W, alpha));
          sandwich = std::max(sandwich, std::isfinite(v) ? v - cap : infinity<double>());
          monotone = std::max(monotone, prev - v);
          prev = v;
        }
      }

      Rng rng(seed + 1000);
      const DiscreteMeasure mu2(dirichlet(rng, 5));
      const double W12 = wasserstein1(I.space, I.mu, mu2);
      for (double lambda : {0.5, 2.0}) {
        const auto params = MYParams::with_lambda(lambda, 1.0);
        double excess;
        try {
          const double v1 = my_dual(spec, I.space, I.mu, I.nu, params).value;
          const double v2 = my_dual(spec, I.space, mu2, I.nu, params).value;
          excess = std::abs(v1 - v2) - lambda * W12;
        } catch (const std::exception&) {
          excess = infinity<double>();
        }
        lipschitz = std::max(lipschitz, excess);
      }
    }
  }

  const Spec& trivial = specs(Generator::trivial);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance I = planar_instance(seed, 5);
    const double W = wasserstein1(I.space, I.mu, I.nu);
    for (double beta : {0.5 * W, W, 1.5 * W}) {
      const double expected = W <= beta ? 0.0 : infinity<double>();
      try {
        const auto params = MYParams::ball(beta);
        const double p = my_primal(trivial, I.space, I.mu, I.nu, params).value;
        const double d = my_dual(trivial, I.space, I.mu, I.nu, params).value;
        ball_mismatch += p != expected || d != expected;
      } catch (const std::exception&) {
        ++ball_mismatch;
      }
    }
  }

  r.measured = std::max(monotone, sandwich);
  r.passed = monotone <= 1e-8 && sandwich <= 1e-8 && lipschitz <= 1e-7 && ball_mismatch == 0;
  r.detail = "20 seeds; lambda-monotonicity defect " + sci(std::max(monotone, 0.0)) + ", sandwich excess " +
             sci(std::max(sandwich, 0.0)) + ", alpha = 1 Lipschitz-in-mu excess " + sci(std::max(lipschitz, 0.0)) +
             " (tol 1e-7), trivial ball 0/inf mismatches " + std::to_string(ball_mismatch);
  return r;
}

CriterionResult gaussian(const SpecTable& specs)
{
  CriterionResult r;
  r.tolerance = 0.05;
  const auto t0 = std::chrono::steady_clock::now();
  const auto params = GaussianParams::with_default_grid(-1.0, 0.3, 0.5, 0.6, 512, 8.0);
  AscentConfig cfg;
  cfg.method = AscentMethod::preconditioned;
  cfg.learning_rate = 1.0;
  cfg.iterations = 2000;
  cfg.gradient_tol = 1e-13;
  cfg.use_quotient = false;

  bool ok = true;
  std::ostringstream detail;
  for (Generator g : newton_generators) {
    const Spec& spec = specs(g);
    double err;
    bool converged = false;
    try {
      const GaussianReport rep = gaussian_experiment(spec, params, cfg);
      err = rep.aligned_sup_error;
      converged = rep.converged;
    } catch (const std::exception&) {
      err = infinity<double>();
    }
    if (g == Generator::jeffreys) {
      detail << " jeffreys=" << sci(err) << (converged ? "" : " (not converged, informational)");
      continue;
    }
    ok = ok && err <= r.tolerance;
    if (!(err <= r.measured)) r.measured = err;
    detail << ' ' << spec.name << '=' << sci(err);
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.passed = ok && r.seconds <= 300.0;
  r.detail = "N(-1, 0.3) vs N(0.5, 0.6), 512 points over 8 sigma, limit 300 s;" + detail.str();
  return r;
}

CriterionResult lambert(const SpecTable&)
{
  CriterionResult r;
  r.tolerance = 1e-12;
  const double lo = 1e-9;
  const double hi = 1e6 + 1.0 / std::numbers::e;
  constexpr int points = 10000;
  for (int k = 0; k < points; ++k) {
    const double offset = lo * std::pow(hi / lo, static_cast<double>(k) / (points - 1));
    const double x = -1.0 / std::numbers::e + offset;
    const double w = lambert_w(x);
    const double err = std::abs(w * std::exp(w) - x) / (1.0 + std::abs(x));
    if (!(err <= r.measured)) r.measured = err;
  }
  r.passed = r.measured <= r.tolerance;
  r.detail = "10^4-point log grid over [-1/e + 1e-9, 1e6], relative to 1 + |x|";
  return r;
}

using CriterionFn = CriterionResult (*)(const SpecTable&);

constexpr std::array<CriterionFn, 10> criterion_fns = {
  categorical, gamma_oracles, implicit_gradients, topicality, kantorovich,
  my_duality,  structure,     my_properties,      gaussian,   lambert,
};

}  // namespace

std::vector<int> select_criteria(const std::string& filter)
{
  std::vector<int> ids;
  if (filter.empty()) {
    for (int i = 1; i <= static_cast<int>(criterion_names.size()); ++i) ids.push_back(i);
    return ids;
  }
  std::istringstream in(filter);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    int id = 0;
    for (std::size_t i = 0; i < criterion_names.size(); ++i) {
      if (tok == criterion_names[i] || tok == std::to_string(i + 1)) id = static_cast<int>(i + 1);
    }
    if (id == 0) {
      std::string names;
      for (auto n : criterion_names) names += (names.empty() ? "" : ", ") + std::string(n);
      throw InputError("unknown criterion '" + tok + "'; valid names: " + names);
    }
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
  }
  return ids;
}

CriterionResult run_criterion(int id, const SuiteOptions& opts)
{
  if (id < 1 || id > static_cast<int>(criterion_fns.size())) throw InputError("criterion id out of range");
  const SpecTable specs(opts);
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r = criterion_fns[static_cast<std::size_t>(id - 1)](specs);
  r.id = id;
  r.name = std::string(criterion_names[static_cast<std::size_t>(id - 1)]);
  if (r.seconds == 0.0) r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(const SuiteOptions& opts)
{
  std::vector<CriterionResult> out;
  for (int id : select_criteria(opts.filter)) out.push_back(run_criterion(id, opts));
  return out;
}

std::string format_result(const CriterionResult& r, bool with_time)
{
  char head[160];
  std::snprintf(head, sizeof head, "[%s] %d %s: worst %.3e (tol %.0e)", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.measured, r.tolerance);
  std::string line = head;
  if (with_time) {
    char t[32];
    std::snprintf(t, sizeof t, ", %.2f s", r.seconds);
    line += t;
  }
  return line + "; " + r.detail;
}

}  // namespace myfdiv
