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

#include "myfdiv/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace myfdiv {

namespace detail {

template <typename Scalar>
constexpr Scalar minus_inv_e = -Scalar(1) / std::numbers::e_v<Scalar>;

constexpr int lambert_max_iter = 64;

}  // namespace detail

/**
 * Principal branch of the Lambert W function, the solution w >= -1 of
 * w * exp(w) = x, for x >= -1/e.
 *
 * Halley iterations from log(1 + x) on x >= 0. On [-1/e, 0) the start is the
 * branch-point series in p = sqrt(2 (e x + 1)), since a plain Newton/Halley
 * step from x*e is ill conditioned next to the branch point where the
 * derivative of w e^w vanishes.
 */
template <typename Scalar>
Scalar lambert_w(Scalar x)
{
  using std::abs;
  using std::exp;
  using std::log;
  using std::sqrt;

  if (std::isnan(x) || x < detail::minus_inv_e<Scalar>) {
    throw DomainError("lambert_w: argument below -1/e");
  }
  if (x == Scalar(0)) return Scalar(0);
  if (std::isinf(x)) return x;

  Scalar w;
  if (x >= Scalar(0)) {
    w = log1p(x);
    if (x > Scalar(3)) {
      const Scalar l1 = log(x);
      const Scalar l2 = log(l1);
      w = l1 - l2 + l2 / l1;
    }
  } else {
    const Scalar q = std::max(Scalar(0), std::numbers::e_v<Scalar> * x + Scalar(1));
    const Scalar p = sqrt(Scalar(2) * q);
    if (p == Scalar(0)) return Scalar(-1);
    w = Scalar(-1) + p - p * p / Scalar(3) + Scalar(11) / Scalar(72) * p * p * p;
  }

  for (int it = 0; it < detail::lambert_max_iter; ++it) {
    const Scalar ew = exp(w);
    const Scalar r = w * ew - x;
    const Scalar wp1 = w + Scalar(1);
    if (wp1 == Scalar(0)) break;
    const Scalar denom = ew * wp1 - (w + Scalar(2)) * r / (Scalar(2) * wp1);
    if (denom == Scalar(0)) break;
    const Scalar step = r / denom;
    w -= step;
    if (w < Scalar(-1)) w = Scalar(-1);
    if (abs(step) <= Scalar(1e-15) * (Scalar(1) + abs(w))) break;
  }
  return w;
}

/// dW/dx by implicit differentiation of w e^w = x; equals 1 at x = 0.
template <typename Scalar>
Scalar lambert_w_grad(Scalar x)
{
  if (std::isnan(x) || x <= detail::minus_inv_e<Scalar>) {
    throw DomainError("lambert_w_grad: argument must exceed -1/e");
  }
  if (x == Scalar(0)) return Scalar(1);
  const Scalar w = lambert_w(x);
  return w / (x * (Scalar(1) + w));
}

/**
 * W(exp(z)) for any real z, solved in log space as exp(t) + t = z with
 * W = exp(t). Newton from the right of the root decreases monotonically,
 * and it never forms exp(z), so large z does not overflow.
 */
template <typename Scalar>
Scalar lambert_w_exp(Scalar z)
{
  using std::abs;
  using std::exp;
  using std::log;

  if (std::isnan(z)) return z;
  if (z == infinity<Scalar>()) return z;
  if (z == -infinity<Scalar>()) return Scalar(0);

  Scalar t = z > Scalar(1) ? log(z) : z;
  for (int it = 0; it < 2 * detail::lambert_max_iter; ++it) {
    const Scalar et = exp(t);
    const Scalar step = (et + t - z) / (et + Scalar(1));
    t -= step;
    if (!(step > Scalar(4) * std::numeric_limits<Scalar>::epsilon() * (Scalar(1) + abs(t)))) break;
  }
  return exp(t);
}

}  // namespace myfdiv
