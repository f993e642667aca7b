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
#include "myfdiv/moreau_yosida.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace myfdiv;
using myfdiv::testing::dirichlet;
using myfdiv::testing::line;
using myfdiv::testing::random_planar;
using myfdiv::testing::vec;

namespace {

struct Instance
{
  FiniteMetricSpace space;
  DiscreteMeasure mu;
  DiscreteMeasure nu;
};

Instance instance(std::uint64_t seed, Eigen::Index n)
{
  std::mt19937_64 rng(seed);
  auto space = random_planar(rng, n);
  DiscreteMeasure mu(dirichlet(rng, n));
  DiscreteMeasure nu(dirichlet(rng, n));
  return {std::move(space), std::move(mu), std::move(nu)};
}

}  // namespace

TEST_CASE("penalty")
{
  CHECK(penalty(1.0, 2.0, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(penalty(1.0, 1.0, 0.5) == 0.0);
  CHECK(std::isinf(penalty(1.0, 1.0, 1.5)));
  CHECK(penalty(MYParams::ball(0.5), 2.0) == doctest::Approx(1.0));
  // alpha = 3: 2 * 3^(-3/2) * lambda^(-1/2) * L^(3/2)
  CHECK(penalty(0.5, 3.0, 1.7) ==
        doctest::Approx(2.0 * std::pow(3.0, -1.5) * std::pow(0.5, -0.5) * std::pow(1.7, 1.5)).epsilon(1e-13));
  CHECK(penalty(2.0, 2.0, 0.0) == 0.0);
}

TEST_CASE("parameter validation")
{
  MYParams p;
  p.alpha = alpha_infinity;
  p.lambda = 1.0;
  CHECK_THROWS_AS(p.validate(), InputError);
  p.lambda.reset();
  CHECK_THROWS_AS(p.validate(), InputError);
  p.beta = 0.3;
  CHECK_NOTHROW(p.validate());

  MYParams both = MYParams::with_lambda(1.0, 2.0);
  both.beta = 1.0;
  CHECK_THROWS_AS(both.validate(), InputError);
  CHECK_THROWS_AS(MYParams::with_lambda(-1.0, 2.0).validate(), InputError);
  CHECK(MYParams::with_beta(0.5, 2.0).effective_lambda() == doctest::Approx(0.5 * std::pow(0.5, -2.0)));
}

TEST_CASE("identical measures give zero on both paths")
{
  const auto I = instance(1, 4);
  for (Generator g : {Generator::kl, Generator::chi2, Generator::trivial, Generator::total_variation}) {
    const Spec& s = get_spec(g);
    const auto params = MYParams::with_lambda(1.0, 2.0);
    const MYResult p = my_primal(s, I.space, I.nu, I.nu, params);
    const MYResult d = my_dual(s, I.space, I.nu, I.nu, params);
    CHECK(std::abs(p.value) <= 1e-12);
    CHECK(std::abs(d.value) <= 1e-12);
    CHECK(approx_equal(*p.xi_star, I.nu, 1e-9));
    CHECK(d.f_star->isZero());
  }
}

TEST_CASE("trivial generator reduces to lambda W1^alpha")
{
  const Spec& s = get_spec(Generator::trivial);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto I = instance(seed, 5);
    const double W = wasserstein1(I.space, I.mu, I.nu);
    for (double alpha : {1.0, 2.0, 3.0}) {
      const auto params = MYParams::with_lambda(0.8, alpha);
      const MYResult p = my_primal(s, I.space, I.mu, I.nu, params);
      CHECK(p.value == doctest::Approx(0.8 * std::pow(W, alpha)).epsilon(1e-12));
      CHECK(approx_equal(*p.xi_star, I.nu, 0.0));
    }
    const MYResult d = my_dual(s, I.space, I.mu, I.nu, MYParams::with_lambda(1.0, 2.0));
    CHECK(d.value == doctest::Approx(W * W).epsilon(1e-8));
    CHECK(lipschitz_norm(I.space, *d.f_star) == doctest::Approx(2.0 * W).epsilon(1e-6));
  }
}

TEST_CASE("large lambda recovers the divergence")
{
  for (Generator g : {Generator::kl, Generator::chi2, Generator::jensen_shannon, Generator::squared_hellinger}) {
    const Spec& s = get_spec(g);
    CAPTURE(s.name);
    const auto I = instance(7, 4);
    const double D = exact_divergence(s, I.mu, I.nu);
    const auto params = MYParams::with_lambda(1e6, 1.0);
    CHECK(my_primal(s, I.space, I.mu, I.nu, params).value == doctest::Approx(D).epsilon(1e-6));
    CHECK(my_dual(s, I.space, I.mu, I.nu, params).value == doctest::Approx(D).epsilon(1e-6));
  }
}

TEST_CASE("primal and dual agree across generators")
{
  for (Generator g : all_generators) {
    const Spec& s = get_spec(g);
    CAPTURE(s.name);
    const int seeds = g == Generator::total_variation ? 3 : 6;
    for (double alpha : {1.0, 2.0}) {
      for (std::uint64_t seed = 0; seed < static_cast<std::uint64_t>(seeds); ++seed) {
        const auto I = instance(seed, 5);
        const auto params = MYParams::with_lambda(0.9, alpha);
        const MYResult p = my_primal(s, I.space, I.mu, I.nu, params);
        const MYResult d = my_dual(s, I.space, I.mu, I.nu, params);
        CAPTURE(alpha);
        CAPTURE(seed);
        CHECK(std::abs(p.value - d.value) <= 1e-3 * (1.0 + p.value));
        CHECK(p.value >= -1e-12);
        CHECK(my_dual_objective(s, I.space, I.mu, I.nu, params, *d.f_star) == doctest::Approx(d.value).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("beta reparametrization matches the lambda form")
{
  const Spec& s = get_spec(Generator::kl);
  const auto I = instance(3, 5);
  const double beta = 0.7;
  const double lambda = std::pow(beta, -2.0) / 2.0;
  const double a = my_dual(s, I.space, I.mu, I.nu, MYParams::with_beta(beta, 2.0)).value;
  const double b = my_dual(s, I.space, I.mu, I.nu, MYParams::with_lambda(lambda, 2.0)).value;
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("alpha above one approaches the constrained form")
{
  const Spec& s = get_spec(Generator::kl);
  const auto I = instance(2, 5);
  const double v1 = my_dual(s, I.space, I.mu, I.nu, MYParams::with_lambda(1.0, 1.0)).value;
  double prev = infinity<double>();
  for (double eps : {0.4, 0.2, 0.1, 0.05}) {
    const double v = my_dual(s, I.space, I.mu, I.nu, MYParams::with_lambda(1.0, 1.0 + eps)).value;
    const double gap = std::abs(v - v1);
    CHECK(gap < prev);
    prev = gap;
  }
}

TEST_CASE("divergence property")
{
  const Spec& s = get_spec(Generator::jensen_shannon);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto I = instance(seed, 4);
    const auto params = MYParams::with_lambda(1.0, 2.0);
    CHECK(my_dual(s, I.space, I.mu, I.nu, params).value > 1e-8);
    CHECK(my_dual(s, I.space, I.mu, I.mu, params).value <= 1e-8);
  }
}

TEST_CASE("ball form")
{
  const Spec& kl = get_spec(Generator::kl);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto I = instance(seed, 5);
    const double W = wasserstein1(I.space, I.mu, I.nu);
    const MYResult inside = my_dual(kl, I.space, I.mu, I.nu, MYParams::ball(1.1 * W));
    CHECK(std::abs(inside.value) <= 1e-9);
    const auto params = MYParams::ball(0.5 * W);
    const MYResult p = my_primal(kl, I.space, I.mu, I.nu, params);
    const MYResult d = my_dual(kl, I.space, I.mu, I.nu, params);
    CHECK(p.value > 1e-6);
    CHECK(std::abs(p.value - d.value) <= 1e-3 * (1.0 + p.value));
    CHECK(wasserstein1(I.space, I.mu, *p.xi_star) <= 0.5 * W * (1.0 + 1e-6));
  }
}

TEST_CASE("optimality structure")
{
  const Spec& kl = get_spec(Generator::kl);
  const auto I = instance(0, 4);
  auto params = MYParams::with_lambda(1.0, 2.0);
  MYResult p = my_primal(kl, I.space, I.mu, I.nu, params);
  MYResult d = my_dual(kl, I.space, I.mu, I.nu, params);
  const auto rep = check_optimality_structure(kl, I.space, I.mu, I.nu, params, p, d, 1e-2);
  CHECK(rep.passed);
  CHECK(rep.lipschitz == doctest::Approx(2.0 * rep.w1_mu_xi).epsilon(1e-2));

  const Spec& trivial = get_spec(Generator::trivial);
  p = my_primal(trivial, I.space, I.mu, I.nu, params);
  d = my_dual(trivial, I.space, I.mu, I.nu, params);
  CHECK(check_optimality_structure(trivial, I.space, I.mu, I.nu, params, p, d, 1e-2).passed);

  p = my_primal(kl, I.space, I.mu, I.mu, params);
  d = my_dual(kl, I.space, I.mu, I.mu, params);
  CHECK(check_optimality_structure(kl, I.space, I.mu, I.mu, params, p, d, 1e-2).passed);
}

TEST_CASE("dual ascent is a feasible lower bound")
{
  const Spec& kl = get_spec(Generator::kl);
  const auto I = instance(4, 5);
  const auto params = MYParams::with_lambda(1.0, 1.0);
  MYConfig cfg;
  cfg.dual_method = DualMethod::ascent;
  const MYResult a = my_dual(kl, I.space, I.mu, I.nu, params, cfg);
  const MYResult ip = my_dual(kl, I.space, I.mu, I.nu, params);
  CHECK(a.method == "dual-ascent");
  CHECK(lipschitz_norm(I.space, *a.f_star) <= 1.0 + 1e-9);
  CHECK(a.value <= ip.value + 1e-9);
  CHECK(a.value == doctest::Approx(ip.value).epsilon(1e-3));
}

TEST_CASE("alpha below one is primal only")
{
  const Spec& kl = get_spec(Generator::kl);
  const auto I = instance(1, 4);
  const auto params = MYParams::with_lambda(1.0, 0.5);
  const MYResult p = my_primal(kl, I.space, I.mu, I.nu, params);
  CHECK(p.experimental);
  CHECK_THROWS_AS(my_dual(kl, I.space, I.mu, I.nu, params), InputError);
}

TEST_CASE("input checks")
{
  const Spec& kl = get_spec(Generator::kl);
  const auto I = instance(1, 4);
  const DiscreteMeasure short_mu(vec({0.5, 0.5}));
  CHECK_THROWS_AS(my_primal(kl, I.space, short_mu, I.nu, MYParams::with_lambda(1.0, 1.0)), InputError);
  CHECK_THROWS_AS(my_dual(kl, line({0.0, 1.0}), short_mu, DiscreteMeasure(vec({0.2, 0.7})),
                          MYParams::with_lambda(1.0, 1.0)),
                  InputError);
}
