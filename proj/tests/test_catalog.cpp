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
#include "myfdiv/catalog.hpp"
#include "myfdiv/lambert_w.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace myfdiv;

namespace {

// Interior sample points of dom phi_plus*.
std::vector<double> conj_samples(const Spec& s)
{
  std::vector<double> ys;
  const double top = s.has_finite_slope() ? s.phi_prime_inf : 3.0;
  for (double y = -2.9; y < top - 0.05; y += 0.173) ys.push_back(y);
  return ys;
}

}  // namespace

TEST_CASE("catalog lookup by name")
{
  for (Generator g : all_generators) CHECK(get_spec(to_string(g)).id == g);
  CHECK_THROWS_AS(get_spec("unknown"), InputError);
  try {
    get_spec("unknown");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("jensen_shannon") != std::string::npos);
  }
}

TEST_CASE("catalog reference values")
{
  CHECK(get_spec(Generator::kl).phi_plus_conj(0.0) == 0.0);
  CHECK(get_spec(Generator::total_variation).phi_prime_inf == 1.0);
  const Spec& js = get_spec(Generator::jensen_shannon);
  CHECK(std::isfinite(js.phi_plus_conj(std::numbers::ln2 - 1e-9)));
  CHECK(std::isinf(js.phi_plus_conj(std::numbers::ln2 + 1e-9)));
  CHECK(js.phi_prime_inf == doctest::Approx(std::numbers::ln2));

  for (Generator g : {Generator::kl, Generator::chi2, Generator::jeffreys}) CHECK(std::isinf(get_spec(g).phi_prime_inf));
  for (Generator g : {Generator::reverse_kl, Generator::reverse_chi2, Generator::squared_hellinger,
                      Generator::triangular}) {
    CHECK(get_spec(g).phi_prime_inf == 1.0);
  }
  CHECK(get_spec(Generator::kl).closed_form_gamma != nullptr);
  CHECK(get_spec(Generator::total_variation).closed_form_gamma != nullptr);
  CHECK_FALSE(get_spec(Generator::total_variation).newton_applicable);
}

TEST_CASE("phi_plus vanishes at one, is convex and +inf for negative arguments")
{
  for (Generator g : all_generators) {
    const Spec& s = get_spec(g);
    if (s.is_trivial()) continue;
    CAPTURE(s.name);
    CHECK(std::abs(s.phi_plus(1.0)) <= 1e-15);
    CHECK(std::isinf(s.phi_plus(-0.5)));
    for (double a = 0.05; a < 6.0; a += 0.37) {
      for (double b = a + 0.1; b < 8.0; b += 0.91) {
        CHECK(s.phi_plus(0.5 * (a + b)) <= 0.5 * (s.phi_plus(a) + s.phi_plus(b)) + 1e-13);
      }
    }
  }
}

TEST_CASE("phi_plus at zero uses the lower-semicontinuous limits")
{
  CHECK(get_spec(Generator::kl).phi_plus(0.0) == 1.0);
  CHECK(std::isinf(get_spec(Generator::reverse_kl).phi_plus(0.0)));
  CHECK(std::isinf(get_spec(Generator::reverse_chi2).phi_plus(0.0)));
  CHECK(get_spec(Generator::chi2).phi_plus(0.0) == 1.0);
  CHECK(get_spec(Generator::squared_hellinger).phi_plus(0.0) == 1.0);
  CHECK(get_spec(Generator::jensen_shannon).phi_plus(0.0) == doctest::Approx(std::numbers::ln2));
  CHECK(std::isinf(get_spec(Generator::jeffreys).phi_plus(0.0)));
  CHECK(get_spec(Generator::triangular).phi_plus(0.0) == 1.0);
}

TEST_CASE("conjugate derivatives match finite differences")
{
  for (Generator g : newton_generators) {
    const Spec& s = get_spec(g);
    CAPTURE(s.name);
    for (double y : conj_samples(s)) {
      if ((g == Generator::chi2 && std::abs(y + 2.0) < 0.01) || (g == Generator::triangular && std::abs(y + 3.0) < 0.01)) {
        continue;
      }
      CAPTURE(y);
      const double h = 1e-6;
      const double d1 = (s.phi_plus_conj(y + h) - s.phi_plus_conj(y - h)) / (2.0 * h);
      const double d2 = (s.phi_plus_conj_d1(y + h) - s.phi_plus_conj_d1(y - h)) / (2.0 * h);
      CHECK(std::abs(s.phi_plus_conj_d1(y) - d1) <= 1e-6 * std::max(1.0, std::abs(d1)));
      CHECK(std::abs(s.phi_plus_conj_d2(y) - d2) <= 1e-6 * std::max(1.0, std::abs(d2)));
      CHECK(s.phi_plus_conj_d1(y) >= 0.0);
    }
  }
}

TEST_CASE("Fenchel-Young inequality with equality at the slope")
{
  for (Generator g : newton_generators) {
    const Spec& s = get_spec(g);
    CAPTURE(s.name);
    for (double x = 0.1; x < 5.0; x += 0.3) {
      for (double y : conj_samples(s)) CHECK(s.phi_plus(x) + s.phi_plus_conj(y) >= x * y - 1e-12);
      if (s.is_legendre()) {
        const double y = s.potential_from_ratio(x);
        CHECK(s.phi_plus(x) + s.phi_plus_conj(y) == doctest::Approx(x * y).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("potential_from_ratio inverts the conjugate derivative")
{
  for (Generator g : all_generators) {
    const Spec& s = get_spec(g);
    if (!s.is_legendre()) continue;
    CAPTURE(s.name);
    for (double u = 0.01; u < 50.0; u *= 1.3) {
      CHECK(s.phi_plus_conj_d1(s.potential_from_ratio(u)) == doctest::Approx(u).epsilon(1e-8));
    }
  }
  CHECK_FALSE(get_spec(Generator::total_variation).is_legendre());
  CHECK_FALSE(get_spec(Generator::trivial).is_legendre());
}

TEST_CASE("potential maps printed for reverse chi2 and squared Hellinger")
{
  for (double u : {0.3, 1.0, 2.5}) {
    CHECK(get_spec(Generator::reverse_chi2).potential_from_ratio(u) == doctest::Approx(1.0 - 1.0 / (u * u)));
    CHECK(get_spec(Generator::squared_hellinger).potential_from_ratio(u) == doctest::Approx(1.0 - 1.0 / std::sqrt(u)));
  }
}

TEST_CASE("Jeffreys conjugate equals x + W + 1/W - 2")
{
  const Spec& s = get_spec(Generator::jeffreys);
  for (double x = -20.0; x < 20.0; x += 0.77) {
    const double w = lambert_w(std::exp(1.0 - x));
    CHECK(s.phi_plus_conj(x) == doctest::Approx(x + w + 1.0 / w - 2.0).epsilon(1e-12));
    CHECK(s.phi_plus_conj_d1(x) == doctest::Approx(1.0 / w).epsilon(1e-12));
    CHECK(s.phi_plus_conj_d2(x) == doctest::Approx(1.0 / w - 1.0 / (w + 1.0)).epsilon(1e-10));
  }
}

TEST_CASE("divergence terms agree with phi_plus on positive pairs")
{
  for (Generator g : all_generators) {
    const Spec& s = get_spec(g);
    if (s.divergence_term == nullptr) continue;
    CAPTURE(s.name);
    for (double mu = 0.05; mu < 1.0; mu += 0.11) {
      for (double nu = 0.07; nu < 1.0; nu += 0.13) {
        CHECK(s.divergence_term(mu, nu) == doctest::Approx(nu * s.phi_plus(mu / nu)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("conjugate is +inf outside its domain")
{
  CHECK(std::isinf(get_spec(Generator::reverse_kl).phi_plus_conj(1.5)));
  CHECK(std::isinf(get_spec(Generator::squared_hellinger).phi_plus_conj(1.0)));
  CHECK(std::isinf(get_spec(Generator::reverse_chi2).phi_plus_conj(2.0)));
  CHECK(std::isinf(get_spec(Generator::total_variation).phi_plus_conj(1.5)));
  CHECK(get_spec(Generator::chi2).phi_plus_conj(-3.0) == -1.0);
  CHECK(get_spec(Generator::triangular).phi_plus_conj(-4.0) == -1.0);
}

TEST_CASE("float instantiation")
{
  const auto& s = get_spec<float>(Generator::kl);
  CHECK(s.phi_plus_conj(0.0f) == 0.0f);
  CHECK(s.phi_plus_conj_d1(0.0f) == 1.0f);
}
