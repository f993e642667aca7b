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

#include "myfdiv/lambert_w.hpp"
#include "myfdiv/types.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>

namespace myfdiv {

enum class Generator
{
  kl,
  reverse_kl,
  chi2,
  reverse_chi2,
  squared_hellinger,
  jensen_shannon,
  jeffreys,
  triangular,
  total_variation,
  trivial,
};

inline constexpr std::array<Generator, 10> all_generators = {
    Generator::kl,
    Generator::reverse_kl,
    Generator::chi2,
    Generator::reverse_chi2,
    Generator::squared_hellinger,
    Generator::jensen_shannon,
    Generator::jeffreys,
    Generator::triangular,
    Generator::total_variation,
    Generator::trivial,
};

/// The eight generators whose conjugate has a nonvanishing second derivative.
inline constexpr std::array<Generator, 8> newton_generators = {
    Generator::kl,
    Generator::reverse_kl,
    Generator::chi2,
    Generator::reverse_chi2,
    Generator::squared_hellinger,
    Generator::jensen_shannon,
    Generator::jeffreys,
    Generator::triangular,
};

constexpr std::string_view to_string(Generator g) noexcept
{
  switch (g) {
    case Generator::kl: return "kl";
    case Generator::reverse_kl: return "reverse_kl";
    case Generator::chi2: return "chi2";
    case Generator::reverse_chi2: return "reverse_chi2";
    case Generator::squared_hellinger: return "squared_hellinger";
    case Generator::jensen_shannon: return "jensen_shannon";
    case Generator::jeffreys: return "jeffreys";
    case Generator::triangular: return "triangular";
    case Generator::total_variation: return "total_variation";
    case Generator::trivial: return "trivial";
  }
  return "";
}

inline std::string generator_list()
{
  std::string out;
  for (auto g : all_generators) {
    if (!out.empty()) out += ", ";
    out += to_string(g);
  }
  return out;
}

inline Generator parse_generator(std::string_view name)
{
  for (auto g : all_generators) {
    if (to_string(g) == name) return g;
  }
  throw InputError("unknown generator '" + std::string(name) + "'; valid generators: " + generator_list());
}

/// Closed interval [lo, hi] holding a subdifferential; lo > hi encodes the empty set.
template <typename Scalar>
using Interval = std::pair<Scalar, Scalar>;

/**
 * One f-divergence generator phi, restricted to the nonnegative half-line
 * (phi_plus), together with its convex conjugate and the derivatives the
 * conjugate solver needs.
 *
 * Values outside a domain are +inf, never an exception. Optional members are
 * null when the generator has no such closed form.
 */
template <typename Scalar>
struct GeneratorSpec
{
  using UnaryFn = Scalar (*)(Scalar);
  using TermFn = Scalar (*)(Scalar mu, Scalar nu);
  using GammaFn = Scalar (*)(const Vector<Scalar>& f, const Vector<Scalar>& nu);
  using SubdiffFn = Interval<Scalar> (*)(Scalar);

  Generator id;
  std::string_view name;

  UnaryFn phi_plus;
  UnaryFn phi_plus_conj;
  UnaryFn phi_plus_conj_d1;
  UnaryFn phi_plus_conj_d2;
  /// Recession slope lim phi(x)/x; +inf when mass singular to nu is infinitely penalized.
  Scalar phi_prime_inf;

  /// Minimizing shift in closed form, taking f and nu over all points.
  GammaFn closed_form_gamma = nullptr;
  /// Contribution of one atom with nu > 0, written directly in (mu, nu).
  TermFn divergence_term = nullptr;
  /// Increasing inverse of phi_plus_conj_d1 on ratios u > 0 (Legendre generators only).
  UnaryFn potential_from_ratio = nullptr;
  SubdiffFn conj_subdifferential = nullptr;

  bool newton_applicable = false;

  bool is_trivial() const noexcept { return id == Generator::trivial; }
  bool is_legendre() const noexcept { return potential_from_ratio != nullptr; }
  bool has_finite_slope() const noexcept { return std::isfinite(phi_prime_inf); }
};

using Spec = GeneratorSpec<double>;

namespace detail {

template <typename S>
constexpr S inf = std::numeric_limits<S>::infinity();

template <typename S>
constexpr S ln2 = std::numbers::ln2_v<S>;

// Default subdifferential of phi_plus_conj for generators differentiable on
// their domain: the singleton {d1(y)}, or empty off the domain.
template <typename S, S (*Conj)(S), S (*D1)(S)>
Interval<S> smooth_subdiff(S y)
{
  if (!std::isfinite(Conj(y))) return {inf<S>, -inf<S>};
  const S d = D1(y);
  return {d, d};
}

// log <nu, exp(f)> over the support of nu, shifted by the max for stability.
template <typename S>
S log_mean_exp(const Vector<S>& f, const Vector<S>& nu)
{
  S fmax = -inf<S>;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    if (nu[i] > S(0)) fmax = std::max(fmax, f[i]);
  }
  S acc = S(0);
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    if (nu[i] > S(0)) acc += nu[i] * std::exp(f[i] - fmax);
  }
  return fmax + std::log(acc);
}

// ---- Kullback-Leibler -------------------------------------------------------

template <typename S>
S kl_phi(S x)
{
  if (x < S(0)) return inf<S>;
  if (x == S(0)) return S(1);
  return x * std::log(x) - x + S(1);
}
template <typename S> S kl_conj(S y) { return std::expm1(y); }
template <typename S> S kl_d1(S y) { return std::exp(y); }
template <typename S> S kl_d2(S y) { return std::exp(y); }
template <typename S> S kl_potential(S u) { return std::log(u); }
template <typename S>
S kl_term(S mu, S nu)
{
  if (mu == S(0)) return nu;
  return mu * std::log(mu / nu) - mu + nu;
}
template <typename S>
S kl_gamma(const Vector<S>& f, const Vector<S>& nu)
{
  return log_mean_exp(f, nu);
}

// ---- reverse Kullback-Leibler -----------------------------------------------

template <typename S>
S rkl_phi(S x)
{
  if (x <= S(0)) return inf<S>;
  return x - S(1) - std::log(x);
}
template <typename S>
S rkl_conj(S y)
{
  if (y > S(1)) return inf<S>;
  return -std::log1p(-y);
}
template <typename S>
S rkl_d1(S y)
{
  if (y >= S(1)) return inf<S>;
  return S(1) / (S(1) - y);
}
template <typename S>
S rkl_d2(S y)
{
  if (y >= S(1)) return inf<S>;
  const S t = S(1) - y;
  return S(1) / (t * t);
}
template <typename S> S rkl_potential(S u) { return (u - S(1)) / u; }
template <typename S>
S rkl_term(S mu, S nu)
{
  if (mu == S(0)) return inf<S>;
  return mu - nu - nu * std::log(mu / nu);
}

// ---- chi-squared ------------------------------------------------------------

template <typename S>
S chi2_phi(S x)
{
  if (x < S(0)) return inf<S>;
  return (x - S(1)) * (x - S(1));
}
template <typename S>
S chi2_conj(S y)
{
  if (y >= S(-2)) return S(0.25) * y * y + y;
  return S(-1);
}
template <typename S>
S chi2_d1(S y)
{
  if (y >= S(-2)) return S(0.5) * y + S(1);
  return S(0);
}
template <typename S>
S chi2_d2(S y)
{
  if (y >= S(-2)) return S(0.5);
  return S(0);
}
template <typename S> S chi2_potential(S u) { return S(2) * u - S(2); }
template <typename S>
S chi2_term(S mu, S nu)
{
  return (mu - nu) * (mu - nu) / nu;
}

// ---- reverse chi-squared ----------------------------------------------------

template <typename S>
S rchi2_phi(S x)
{
  if (x <= S(0)) return inf<S>;
  return S(1) / x + x - S(2);
}
template <typename S>
S rchi2_conj(S y)
{
  if (y > S(1)) return inf<S>;
  return S(2) - S(2) * std::sqrt(S(1) - y);
}
template <typename S>
S rchi2_d1(S y)
{
  if (y >= S(1)) return inf<S>;
  return S(1) / std::sqrt(S(1) - y);
}
template <typename S>
S rchi2_d2(S y)
{
  if (y >= S(1)) return inf<S>;
  const S r = std::sqrt(S(1) - y);
  return S(1) / (S(2) * r * r * r);
}
template <typename S> S rchi2_potential(S u) { return S(1) - S(1) / (u * u); }
template <typename S>
S rchi2_term(S mu, S nu)
{
  if (mu == S(0)) return inf<S>;
  return (mu - nu) * (mu - nu) / mu;
}

// ---- squared Hellinger ------------------------------------------------------

template <typename S>
S hellinger_phi(S x)
{
  if (x < S(0)) return inf<S>;
  const S r = std::sqrt(x) - S(1);
  return r * r;
}
template <typename S>
S hellinger_conj(S y)
{
  if (y >= S(1)) return inf<S>;
  return y / (S(1) - y);
}
template <typename S>
S hellinger_d1(S y)
{
  if (y >= S(1)) return inf<S>;
  const S t = S(1) - y;
  return S(1) / (t * t);
}
template <typename S>
S hellinger_d2(S y)
{
  if (y >= S(1)) return inf<S>;
  const S t = S(1) - y;
  return S(2) / (t * t * t);
}
template <typename S> S hellinger_potential(S u) { return S(1) - S(1) / std::sqrt(u); }
template <typename S>
S hellinger_term(S mu, S nu)
{
  const S r = std::sqrt(mu) - std::sqrt(nu);
  return r * r;
}

// ---- Jensen-Shannon ---------------------------------------------------------

template <typename S>
S js_phi(S x)
{
  if (x < S(0)) return inf<S>;
  if (x == S(0)) return ln2<S>;
  return x * std::log(x) - (x + S(1)) * std::log((x + S(1)) / S(2));
}
template <typename S>
S js_conj(S y)
{
  if (y > ln2<S>) return inf<S>;
  const S t = S(2) - std::exp(y);
  if (t <= S(0)) return inf<S>;
  return -std::log(t);
}
template <typename S>
S js_d1(S y)
{
  const S t = S(2) * std::exp(-y) - S(1);
  if (y > ln2<S> || t <= S(0)) return inf<S>;
  return S(1) / t;
}
template <typename S>
S js_d2(S y)
{
  const S ey = std::exp(y);
  const S t = ey - S(2);
  if (y > ln2<S> || t >= S(0)) return inf<S>;
  return S(2) * ey / (t * t);
}
template <typename S> S js_potential(S u) { return std::log(u) - std::log1p(u) + ln2<S>; }
template <typename S>
S js_term(S mu, S nu)
{
  const S m = mu + nu;
  S out = nu * std::log(S(2) * nu / m);
  if (mu > S(0)) out += mu * std::log(S(2) * mu / m);
  return out;
}

// ---- Jeffreys ---------------------------------------------------------------

template <typename S>
S jeffreys_phi(S x)
{
  if (x <= S(0)) return inf<S>;
  return (x - S(1)) * std::log(x);
}
template <typename S>
S jeffreys_conj(S y)
{
  // y + w = 1 - log w, which avoids cancelling y against w for y << 0.
  const S w = lambert_w_exp(S(1) - y);
  return S(1) / w - std::log(w) - S(1);
}
template <typename S>
S jeffreys_d1(S y)
{
  return S(1) / lambert_w_exp(S(1) - y);
}
template <typename S>
S jeffreys_d2(S y)
{
  const S w = lambert_w_exp(S(1) - y);
  return S(1) / (w * (w + S(1)));
}
template <typename S> S jeffreys_potential(S u) { return std::log(u) - S(1) / u + S(1); }
template <typename S>
S jeffreys_term(S mu, S nu)
{
  if (mu == S(0)) return inf<S>;
  return (mu - nu) * std::log(mu / nu);
}

// ---- triangular discrimination ----------------------------------------------

template <typename S>
S triangular_phi(S x)
{
  if (x < S(0)) return inf<S>;
  return (x - S(1)) * (x - S(1)) / (x + S(1));
}
template <typename S>
S triangular_conj(S y)
{
  if (y < S(-3)) return S(-1);
  if (y > S(1)) return inf<S>;
  const S r = std::sqrt(S(1) - y);
  return (r - S(1)) * (r - S(3));
}
template <typename S>
S triangular_d1(S y)
{
  if (y < S(-3)) return S(0);
  if (y >= S(1)) return inf<S>;
  return S(2) / std::sqrt(S(1) - y) - S(1);
}
template <typename S>
S triangular_d2(S y)
{
  if (y < S(-3)) return S(0);
  if (y >= S(1)) return inf<S>;
  const S r = std::sqrt(S(1) - y);
  return S(1) / (r * r * r);
}
template <typename S>
S triangular_potential(S u)
{
  return (u - S(1)) * (u + S(3)) / ((u + S(1)) * (u + S(1)));
}
template <typename S>
S triangular_term(S mu, S nu)
{
  return (mu - nu) * (mu - nu) / (mu + nu);
}

// ---- total variation --------------------------------------------------------

template <typename S>
S tv_phi(S x)
{
  if (x < S(0)) return inf<S>;
  return std::abs(x - S(1));
}
template <typename S>
S tv_conj(S y)
{
  if (y < S(-1)) return S(-1);
  if (y > S(1)) return inf<S>;
  return y;
}
template <typename S>
S tv_d1(S y)
{
  if (y < S(-1)) return S(0);
  if (y > S(1)) return inf<S>;
  return S(1);
}
template <typename S>
S tv_d2(S y)
{
  if (y > S(1)) return inf<S>;
  return S(0);
}
template <typename S>
Interval<S> tv_subdiff(S y)
{
  if (y < S(-1)) return {S(0), S(0)};
  if (y == S(-1)) return {S(0), S(1)};
  if (y < S(1)) return {S(1), S(1)};
  if (y == S(1)) return {S(1), inf<S>};
  return {inf<S>, -inf<S>};
}
template <typename S>
S tv_term(S mu, S nu)
{
  return std::abs(mu - nu);
}
template <typename S>
S tv_gamma(const Vector<S>& f, const Vector<S>&)
{
  return f.maxCoeff() - S(1);
}

// ---- trivial (indicator of {1}) ---------------------------------------------

template <typename S>
S trivial_phi(S x)
{
  return x == S(1) ? S(0) : inf<S>;
}
template <typename S> S trivial_conj(S y) { return y; }
template <typename S> S trivial_d1(S) { return S(1); }
template <typename S> S trivial_d2(S) { return S(0); }
template <typename S>
Interval<S> trivial_subdiff(S)
{
  return {S(1), S(1)};
}

template <typename S>
GeneratorSpec<S> make_spec(Generator g)
{
  GeneratorSpec<S> s{};
  s.id = g;
  s.name = to_string(g);
  switch (g) {
    case Generator::kl:
      s.phi_plus = kl_phi<S>;
      s.phi_plus_conj = kl_conj<S>;
      s.phi_plus_conj_d1 = kl_d1<S>;
      s.phi_plus_conj_d2 = kl_d2<S>;
      s.phi_prime_inf = inf<S>;
      s.closed_form_gamma = kl_gamma<S>;
      s.divergence_term = kl_term<S>;
      s.potential_from_ratio = kl_potential<S>;
      s.conj_subdifferential = smooth_subdiff<S, kl_conj<S>, kl_d1<S>>;
      s.newton_applicable = true;
      break;
    case Generator::reverse_kl:
      s.phi_plus = rkl_phi<S>;
      s.phi_plus_conj = rkl_conj<S>;
      s.phi_plus_conj_d1 = rkl_d1<S>;
      s.phi_plus_conj_d2 = rkl_d2<S>;
      s.phi_prime_inf = S(1);
      s.divergence_term = rkl_term<S>;
      s.potential_from_ratio = rkl_potential<S>;
      s.conj_subdifferential = smooth_subdiff<S, rkl_conj<S>, rkl_d1<S>>;
      s.newton_applicable = true;
      break;
    case Generator::chi2:
      s.phi_plus = chi2_phi<S>;
      s.phi_plus_conj = chi2_conj<S>;
      s.phi_plus_conj_d1 = chi2_d1<S>;
      s.phi_plus_conj_d2 = chi2_d2<S>;
      s.phi_prime_inf = inf<S>;
      s.divergence_term = chi2_term<S>;
      s.potential_from_ratio = chi2_potential<S>;
      s.conj_subdifferential = smooth_subdiff<S, chi2_conj<S>, chi2_d1<S>>;
      s.newton_applicable = true;
      break;
    case Generator::reverse_chi2:
      s.phi_plus = rchi2_phi<S>;
      s.phi_plus_conj = rchi2_conj<S>;
      s.phi_plus_conj_d1 = rchi2_d1<S>;
      s.phi_plus_conj_d2 = rchi2_d2<S>;
      s.phi_prime_inf = S(1);
      s.divergence_term = rchi2_term<S>;
      s.potential_from_ratio = rchi2_potential<S>;
      s.conj_subdifferential = smooth_subdiff<S, rchi2_conj<S>, rchi2_d1<S>>;
      s.newton_applicable = true;
      break;
    case Generator::squared_hellinger:
      s.phi_plus = hellinger_phi<S>;
      s.phi_plus_conj = hellinger_conj<S>;
      s.phi_plus_conj_d1 = hellinger_d1<S>;
      s.phi_plus_conj_d2 = hellinger_d2<S>;
      s.phi_prime_inf = S(1);
      s.divergence_term = hellinger_term<S>;
      s.potential_from_ratio = hellinger_potential<S>;
      s.conj_subdifferential = smooth_subdiff<S, hellinger_conj<S>, hellinger_d1<S>>;
      s.newton_applicable = true;
      break;
    case Generator::jensen_shannon:
      s.phi_plus = js_phi<S>;
      s.phi_plus_conj = js_conj<S>;
      s.phi_plus_conj_d1 = js_d1<S>;
      s.phi_plus_conj_d2 = js_d2<S>;
      s.phi_prime_inf = ln2<S>;
      s.divergence_term = js_term<S>;
      s.potential_from_ratio = js_potential<S>;
      s.conj_subdifferential = smooth_subdiff<S, js_conj<S>, js_d1<S>>;
      s.newton_applicable = true;
      break;
    case Generator::jeffreys:
      s.phi_plus = jeffreys_phi<S>;
      s.phi_plus_conj = jeffreys_conj<S>;
      s.phi_plus_conj_d1 = jeffreys_d1<S>;
      s.phi_plus_conj_d2 = jeffreys_d2<S>;
      s.phi_prime_inf = inf<S>;
      s.divergence_term = jeffreys_term<S>;
      s.potential_from_ratio = jeffreys_potential<S>;
      s.conj_subdifferential = smooth_subdiff<S, jeffreys_conj<S>, jeffreys_d1<S>>;
      s.newton_applicable = true;
      break;
    case Generator::triangular:
      s.phi_plus = triangular_phi<S>;
      s.phi_plus_conj = triangular_conj<S>;
      s.phi_plus_conj_d1 = triangular_d1<S>;
      s.phi_plus_conj_d2 = triangular_d2<S>;
      s.phi_prime_inf = S(1);
      s.divergence_term = triangular_term<S>;
      s.potential_from_ratio = triangular_potential<S>;
      s.conj_subdifferential = smooth_subdiff<S, triangular_conj<S>, triangular_d1<S>>;
      s.newton_applicable = true;
      break;
    case Generator::total_variation:
      s.phi_plus = tv_phi<S>;
      s.phi_plus_conj = tv_conj<S>;
      s.phi_plus_conj_d1 = tv_d1<S>;
      s.phi_plus_conj_d2 = tv_d2<S>;
      s.phi_prime_inf = S(1);
      s.closed_form_gamma = tv_gamma<S>;
      s.divergence_term = tv_term<S>;
      s.conj_subdifferential = tv_subdiff<S>;
      s.newton_applicable = false;
      break;
    case Generator::trivial:
      s.phi_plus = trivial_phi<S>;
      s.phi_plus_conj = trivial_conj<S>;
      s.phi_plus_conj_d1 = trivial_d1<S>;
      s.phi_plus_conj_d2 = trivial_d2<S>;
      s.phi_prime_inf = inf<S>;
      s.conj_subdifferential = trivial_subdiff<S>;
      s.newton_applicable = false;
      break;
  }
  return s;
}

}  // namespace detail

template <typename Scalar = double>
const GeneratorSpec<Scalar>& get_spec(Generator g)
{
  static const std::array<GeneratorSpec<Scalar>, all_generators.size()> table = [] {
    std::array<GeneratorSpec<Scalar>, all_generators.size()> t{};
    for (std::size_t i = 0; i < all_generators.size(); ++i) {
      t[i] = detail::make_spec<Scalar>(all_generators[i]);
    }
    return t;
  }();
  return table[static_cast<std::size_t>(g)];
}

template <typename Scalar = double>
const GeneratorSpec<Scalar>& get_spec(std::string_view name)
{
  return get_spec<Scalar>(parse_generator(name));
}

}  // namespace myfdiv
