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
#include "myfdiv/lambert_w.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace myfdiv;

TEST_CASE("lambert_w at reference points")
{
  CHECK(lambert_w(0.0) == 0.0);
  CHECK(lambert_w(std::numbers::e) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(lambert_w(-1.0 / std::numbers::e) == doctest::Approx(-1.0).epsilon(1e-7));

  // Omega constant from a long Newton run on w e^w = 1.
  double w = 0.5;
  for (int i = 0; i < 100; ++i) w -= (w * std::exp(w) - 1.0) / (std::exp(w) * (1.0 + w));
  CHECK(std::abs(lambert_w(1.0) - w) <= 1e-12);
  CHECK(std::abs(lambert_w(1.0) - 0.5671432904097838) <= 1e-12);
}

TEST_CASE("lambert_w residual across the domain")
{
  for (double x : {-0.36787944117, -0.3, -0.1, -1e-8, 1e-300, 1e-8, 0.5, 3.0, 1e3, 1e10, 1e100, 1e300}) {
    const double w = lambert_w(x);
    CHECK(w >= -1.0);
    CHECK(std::abs(w * std::exp(w) - x) <= 1e-12 * (1.0 + std::abs(x)) * (x > 1e10 ? 1e3 : 1.0));
  }
}

TEST_CASE("lambert_w principal branch on the negative side")
{
  for (double x = -0.36; x < 0.0; x += 0.03) CHECK(lambert_w(x) > -1.0);
}

TEST_CASE("lambert_w rejects arguments below -1/e")
{
  CHECK_THROWS_AS(lambert_w(-0.4), DomainError);
  CHECK_THROWS_AS(lambert_w(std::nan("")), DomainError);
  CHECK_THROWS_AS(lambert_w_grad(-1.0 / std::numbers::e), DomainError);
}

TEST_CASE("lambert_w_grad")
{
  CHECK(lambert_w_grad(0.0) == 1.0);
  CHECK(lambert_w_grad(std::numbers::e) == doctest::Approx(1.0 / (2.0 * std::numbers::e)).epsilon(1e-13));
  for (double x : {-0.3, -0.1, 0.2, 1.0, 7.0, 100.0}) {
    const double h = 1e-6 * (1.0 + std::abs(x));
    const double fd = (lambert_w(x + h) - lambert_w(x - h)) / (2.0 * h);
    CHECK(std::abs(lambert_w_grad(x) - fd) <= 1e-8 * std::abs(fd));
  }
}

TEST_CASE("lambert_w_exp agrees with lambert_w of exp and survives overflow")
{
  for (double z : {-30.0, -5.0, -1.0, 0.0, 1.0, 5.0, 50.0}) {
    CHECK(lambert_w_exp(z) == doctest::Approx(lambert_w(std::exp(z))).epsilon(1e-13));
  }
  // e^800 overflows; W(e^z) satisfies w + log w = z.
  const double w = lambert_w_exp(800.0);
  CHECK(std::isfinite(w));
  CHECK(std::abs(w + std::log(w) - 800.0) <= 1e-12 * 800.0);
}
