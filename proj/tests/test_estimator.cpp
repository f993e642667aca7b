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

#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>

#include <cmath>

using namespace myfdiv;
using myfdiv::testing::dirichlet;
using myfdiv::testing::normal;

namespace {

AscentConfig newton_like()
{
  AscentConfig cfg;
  cfg.method = AscentMethod::preconditioned;
  cfg.iterations = 500;
  cfg.gradient_tol = 1e-13;
  return cfg;
}

}  // namespace

TEST_CASE("estimate vanishes for identical measures")
{
  std::mt19937_64 rng(0);
  const VectorXd mu = dirichlet(rng, 10);
  for (Generator g : newton_generators) {
    const auto r = estimate_divergence(get_spec(g), mu, mu);
    CHECK(std::abs(r.estimate) <= 1e-6);
    CHECK(r.f.maxCoeff() - r.f.minCoeff() <= 1e-6);
  }
}

TEST_CASE("categorical pairs are recovered to four decimals")
{
  for (Generator g : newton_generators) {
    const Spec& s = get_spec(g);
    CAPTURE(s.name);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      std::mt19937_64 rng(seed);
      const VectorXd mu = dirichlet(rng, 10);
      const VectorXd nu = dirichlet(rng, 10);
      const double exact = exact_divergence(s, DiscreteMeasure(mu), DiscreteMeasure(nu));
      const auto r = estimate_divergence(s, mu, nu, newton_like());
      CHECK(std::abs(r.estimate - exact) <= (g == Generator::reverse_chi2 ? 1e-2 : 1e-4));
    }
  }
}

TEST_CASE("plain gradient ascent is monotone and stays below the divergence")
{
  std::mt19937_64 rng(2);
  const VectorXd mu = dirichlet(rng, 10);
  const VectorXd nu = dirichlet(rng, 10);
  for (Generator g : {Generator::kl, Generator::jensen_shannon, Generator::squared_hellinger}) {
    const Spec& s = get_spec(g);
    AscentConfig cfg;
    cfg.learning_rate = 0.1;
    cfg.iterations = 300;
    cfg.record_trajectory = true;
    const auto r = estimate_divergence(s, mu, nu, cfg);
    const double exact = exact_divergence(s, DiscreteMeasure(mu), DiscreteMeasure(nu));
    for (std::size_t k = 1; k < r.trajectory.size(); ++k) {
      CHECK(r.trajectory[k] >= r.trajectory[k - 1] - 1e-12);
      CHECK(r.trajectory[k] <= exact + 1e-6);
    }
  }
}

TEST_CASE("the quotient normalization only shifts f")
{
  std::mt19937_64 rng(8);
  const VectorXd mu = dirichlet(rng, 8);
  const VectorXd nu = dirichlet(rng, 8);
  for (AscentMethod m : {AscentMethod::gradient, AscentMethod::preconditioned}) {
    AscentConfig a;
    a.method = m;
    a.learning_rate = m == AscentMethod::gradient ? 0.2 : 1.0;
    a.iterations = 50;
    a.record_trajectory = true;
    a.gradient_tol = 0.0;
    AscentConfig b = a;
    b.use_quotient = false;
    const auto ra = estimate_divergence(get_spec(Generator::chi2), mu, nu, a);
    const auto rb = estimate_divergence(get_spec(Generator::chi2), mu, nu, b);
    const std::size_t common = std::min(ra.trajectory.size(), rb.trajectory.size());
    REQUIRE(common >= 2);
    for (std::size_t k = 0; k < common; ++k) CHECK(std::abs(ra.trajectory[k] - rb.trajectory[k]) <= 1e-10);
    CHECK(std::abs(ra.estimate - rb.estimate) <= 1e-10);
    const VectorXd diff = ra.f - rb.f;
    CHECK(diff.maxCoeff() - diff.minCoeff() <= 1e-9);
    CHECK(ra.f[0] == 0.0);
  }
}

TEST_CASE("mean-deviation form equals the plain objective")
{
  for (Generator g : all_generators) {
    const Spec& s = get_spec(g);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      std::mt19937_64 rng(seed);
      const VectorXd mu = dirichlet(rng, 6);
      const VectorXd nu = dirichlet(rng, 6);
      const VectorXd f = normal(rng, 6, 2.0);
      CHECK(std::abs(variational_objective(s, mu, nu, f) - mean_deviation_objective(s, mu, nu, f)) <= 1e-9);
    }
  }
}

TEST_CASE("ascent errors")
{
  std::mt19937_64 rng(1);
  const VectorXd mu = dirichlet(rng, 4);
  const VectorXd nu = dirichlet(rng, 4);
  CHECK_THROWS_AS(estimate_divergence(get_spec(Generator::trivial), mu, nu), InputError);
  AscentConfig bad;
  bad.learning_rate = 0.0;
  CHECK_THROWS_AS(estimate_divergence(get_spec(Generator::kl), mu, nu, bad), InputError);
  CHECK_THROWS_AS(estimate_divergence(get_spec(Generator::kl), mu, VectorXd(nu.head(3))), InputError);

  AscentConfig wild;
  wild.method = AscentMethod::gradient;
  wild.learning_rate = 1e308;
  wild.iterations = 1000;
  CHECK_THROWS_AS(estimate_divergence(get_spec(Generator::chi2), mu, nu, wild), SolverError);
}

TEST_CASE("Gaussian density ratio")
{
  GaussianParams same;
  same.mu1 = same.mu2 = 0.3;
  same.sigma1 = same.sigma2 = 0.7;
  for (double x : {-2.0, 0.0, 1.5}) CHECK(gaussian_ratio(x, same) == doctest::Approx(1.0).epsilon(1e-15));

  GaussianParams p;
  p.mu1 = 0.0;
  p.mu2 = 1.0;
  p.sigma1 = p.sigma2 = 1.0;
  CHECK(gaussian_ratio(0.0, p) == doctest::Approx(std::exp(0.5)).epsilon(1e-15));
  CHECK(gaussian_ratio(1.0, p) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  CHECK(gaussian_ratio(0.0, p) == doctest::Approx(1.64872).epsilon(1e-5));

  // Against the ratio of densities written out directly.
  GaussianParams q;
  for (double x : {-1.3, 0.1, 0.9}) {
    const double n1 = std::exp(-0.5 * std::pow((x - q.mu1) / q.sigma1, 2)) / q.sigma1;
    const double n2 = std::exp(-0.5 * std::pow((x - q.mu2) / q.sigma2, 2)) / q.sigma2;
    CHECK(gaussian_ratio(x, q) == doctest::Approx(n1 / n2).epsilon(1e-13));
  }

  GaussianParams bad;
  bad.sigma1 = 0.0;
  CHECK_THROWS_AS(gaussian_ratio(0.0, bad), InputError);
}

TEST_CASE("closed-form Gaussian potentials")
{
  GaussianParams same;
  same.mu1 = same.mu2 = 0.0;
  same.sigma1 = same.sigma2 = 1.0;
  CHECK(gaussian_potential_closed_form(get_spec(Generator::kl), 0.7, same) == 0.0);

  GaussianParams p;
  p.mu1 = 0.0;
  p.mu2 = 1.0;
  p.sigma1 = p.sigma2 = 1.0;
  CHECK(gaussian_potential_closed_form(get_spec(Generator::kl), 0.0, p) == doctest::Approx(0.5).epsilon(1e-15));
  const double u = gaussian_ratio(0.4, p);
  CHECK(gaussian_potential_closed_form(get_spec(Generator::reverse_chi2), 0.4, p) ==
        doctest::Approx(1.0 - 1.0 / (u * u)).epsilon(1e-14));
  CHECK_THROWS_AS(gaussian_potential_closed_form(get_spec(Generator::total_variation), 0.0, p), InputError);
}

TEST_CASE("Gaussian grid validation")
{
  GaussianParams p;
  CHECK_NOTHROW(p.validate());
  p.grid_hi = 2.0;
  CHECK_THROWS_AS(p.validate(), InputError);
  CHECK_THROWS_AS(GaussianParams::with_default_grid(0, 1, 0, 1, 512, 3.0), InputError);
  const auto q = GaussianParams::with_default_grid(-1.0, 0.3, 0.5, 0.6);
  CHECK(q.grid_lo == doctest::Approx(-2.2));
  CHECK(q.grid_hi == doctest::Approx(2.9));
}

TEST_CASE("Gaussian experiment")
{
  AscentConfig cfg = newton_like();
  cfg.iterations = 2000;
  cfg.use_quotient = false;

  GaussianParams same = GaussianParams::with_default_grid(0.2, 0.5, 0.2, 0.5, 128);
  const auto flat = gaussian_experiment(get_spec(Generator::kl), same, cfg);
  CHECK(flat.aligned_sup_error <= 1e-3);

  // The reference pair on the default [-2.5, 3] grid.
  const auto kl = gaussian_experiment(get_spec(Generator::kl), GaussianParams{}, cfg);
  CHECK(kl.aligned_sup_error <= 0.05);
  CHECK(kl.converged);
  CHECK(kl.grid.size() == 512);
  CHECK(kl.f_learned.size() == 512);

  CHECK_THROWS_AS(gaussian_experiment(get_spec(Generator::total_variation), GaussianParams{}, cfg), InputError);
}
