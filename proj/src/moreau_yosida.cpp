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

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace myfdiv {

MYParams MYParams::with_lambda(double lambda, double alpha)
{
  MYParams p;
  p.lambda = lambda;
  p.alpha = alpha;
  return p;
}

MYParams MYParams::with_beta(double beta, double alpha)
{
  MYParams p;
  p.beta = beta;
  p.alpha = alpha;
  return p;
}

double MYParams::effective_lambda() const
{
  if (is_ball()) throw InputError("moreau-yosida: lambda is not defined for alpha = inf");
  if (lambda) return *lambda;
  if (!beta) throw InputError("moreau-yosida: one of lambda and beta is required");
  return std::pow(*beta, -alpha) / alpha;
}

void MYParams::validate() const
{
  if (std::isnan(alpha) || !(alpha > 0.0)) throw InputError("moreau-yosida: alpha must be positive");
  auto positive = [](const std::optional<double>& v) { return v && std::isfinite(*v) && *v > 0.0; };
  if (is_ball()) {
    if (lambda) throw InputError("moreau-yosida: alpha = inf takes beta, not lambda");
    if (!positive(beta)) throw InputError("moreau-yosida: alpha = inf requires beta > 0");
    return;
  }
  if (lambda.has_value() == beta.has_value()) {
    throw InputError("moreau-yosida: give exactly one of lambda and beta");
  }
  if (lambda && !positive(lambda)) throw InputError("moreau-yosida: lambda must be positive and finite");
  if (beta && !positive(beta)) throw InputError("moreau-yosida: beta must be positive and finite");
}

double penalty(double lambda, double alpha, double L)
{
  if (!(lambda > 0.0) || !(alpha >= 1.0) || std::isinf(alpha)) {
    throw InputError("penalty: requires lambda > 0 and 1 <= alpha < inf");
  }
  if (L < 0.0) throw InputError("penalty: L must be nonnegative");
  if (alpha == 1.0) return L <= lambda * (1.0 + 1e-12) ? 0.0 : infinity<double>();
  if (L == 0.0) return 0.0;
  const double q = alpha / (alpha - 1.0);
  return std::exp(std::log(alpha - 1.0) + alpha / (1.0 - alpha) * std::log(alpha) +
                  std::log(lambda) / (1.0 - alpha) + q * std::log(L));
}

double penalty(const MYParams& params, double L)
{
  if (params.is_ball()) return *params.beta * L;
  return penalty(params.effective_lambda(), params.alpha, L);
}

namespace {

void check_inputs(const FiniteMetricSpace& space, const DiscreteMeasure& mu, const DiscreteMeasure& nu)
{
  if (mu.size() != space.size() || nu.size() != space.size()) {
    throw InputError("moreau-yosida: measures and space have different sizes");
  }
  if (!mu.is_probability() || !nu.is_probability()) {
    throw InputError("moreau-yosida: inputs must be probability measures");
  }
}

// Slope of phi_plus at a ratio u >= 0.
double phi_plus_slope(const Spec& spec, double u)
{
  if (spec.is_legendre()) {
    return std::max(spec.potential_from_ratio(std::max(u, 1e-300)), -1e12);
  }
  // total variation
  if (u > 1.0) return 1.0;
  if (u < 1.0) return -1.0;
  return 0.0;
}

// Euclidean projection of x onto {y >= 0, sum y = mass}.
void project_simplex(Eigen::Ref<VectorXd> x, double mass)
{
  std::vector<double> s(x.data(), x.data() + x.size());
  std::sort(s.begin(), s.end(), std::greater<>());
  double cum = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    cum += s[k];
    const double t = (cum - mass) / static_cast<double>(k + 1);
    if (s[k] - t > 0.0) theta = t;
  }
  x = (x.array() - theta).cwiseMax(0.0);
}

struct CouplingProblem
{
  const Spec& spec;
  std::vector<Eigen::Index> rows;  // supp mu
  std::vector<Eigen::Index> cols;  // points that may receive mass
  VectorXd a;                      // mu on rows
  VectorXd b;                      // nu on cols
  MatrixXd D;
  double lambda;
  double alpha;

  double value(const MatrixXd& P) const
  {
    const VectorXd xi = P.colwise().sum().transpose();
    double total = 0.0;
    for (Eigen::Index j = 0; j < xi.size(); ++j) {
      total += b[j] > 0.0 ? b[j] * spec.phi_plus(std::max(xi[j], 0.0) / b[j]) : spec.phi_prime_inf * xi[j];
    }
    const double c = D.cwiseProduct(P).sum();
    total += lambda * (alpha == 1.0 ? c : std::pow(std::max(c, 0.0), alpha));
    return std::isfinite(total) ? total : infinity<double>();
  }

  MatrixXd gradient(const MatrixXd& P) const
  {
    const VectorXd xi = P.colwise().sum().transpose();
    VectorXd g(xi.size());
    for (Eigen::Index j = 0; j < xi.size(); ++j) {
      g[j] = b[j] > 0.0 ? phi_plus_slope(spec, xi[j] / b[j]) : spec.phi_prime_inf;
    }
    const double c = std::max(D.cwiseProduct(P).sum(), 1e-300);
    const double scale = alpha == 1.0 ? lambda : lambda * alpha * std::pow(c, alpha - 1.0);
    MatrixXd G = scale * D;
    G.rowwise() += g.transpose();
    return G;
  }

  void project(MatrixXd& P) const
  {
    for (Eigen::Index r = 0; r < P.rows(); ++r) {
      VectorXd row = P.row(r).transpose();
      project_simplex(row, a[r]);
      P.row(r) = row.transpose();
    }
  }

  // <G, P> - min over feasible Q of <G, Q>; bounds the suboptimality of P.
  double frank_wolfe_gap(const MatrixXd& P, const MatrixXd& G) const
  {
    double gap = G.cwiseProduct(P).sum();
    for (Eigen::Index r = 0; r < P.rows(); ++r) gap -= a[r] * G.row(r).minCoeff();
    return gap;
  }
};

struct CouplingSolution
{
  VectorXd xi;  // over all points
  double objective = 0.0;
  double gap = 0.0;
  int iterations = 0;
};

// FISTA with backtracking and restart over couplings with first marginal mu.
CouplingSolution solve_couplings(const Spec& spec, const FiniteMetricSpace& space, const DiscreteMeasure& mu,
                                 const DiscreteMeasure& nu, double lambda, double alpha, const MYConfig& cfg)
{
  const Eigen::Index n = space.size();
  CouplingProblem prob{spec, {}, {}, {}, {}, {}, lambda, alpha};
  for (Eigen::Index i = 0; i < n; ++i) {
    if (mu[i] > 0.0) prob.rows.push_back(i);
    if (nu[i] > 0.0 || spec.has_finite_slope()) prob.cols.push_back(i);
  }
  const auto m = static_cast<Eigen::Index>(prob.rows.size());
  const auto k = static_cast<Eigen::Index>(prob.cols.size());
  prob.a.resize(m);
  prob.b.resize(k);
  prob.D.resize(m, k);
  for (Eigen::Index r = 0; r < m; ++r) prob.a[r] = mu[prob.rows[r]];
  for (Eigen::Index j = 0; j < k; ++j) prob.b[j] = nu[prob.cols[j]];
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index j = 0; j < k; ++j) prob.D(r, j) = space(prob.rows[r], prob.cols[j]);
  }

  // Independent coupling mu x nu: xi = nu, finite objective.
  MatrixXd x = prob.a * prob.b.transpose() / prob.b.sum();
  double fx = prob.value(x);
  MatrixXd y = x;
  double t = 1.0;
  double L = 1.0;

  CouplingSolution out;
  int it = 0;
  for (; it < cfg.primal_iterations; ++it) {
    const MatrixXd Gy = prob.gradient(y);
    const double fy = prob.value(y);
    L = std::max(L * 0.8, 1e-12);
    MatrixXd z;
    double fz = infinity<double>();
    for (int bt = 0; bt < 200; ++bt) {
      z = y - Gy / L;
      prob.project(z);
      fz = prob.value(z);
      const MatrixXd step = z - y;
      if (fz <= fy + Gy.cwiseProduct(step).sum() + 0.5 * L * step.squaredNorm() + 1e-15 * std::abs(fy)) break;
      L *= 2.0;
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    if (fz <= fx) {
      y = z + ((t - 1.0) / t_next) * (z - x);
      x = std::move(z);
      fx = fz;
      t = t_next;
    } else {
      y = x;
      t = 1.0;
    }
    if (it % 10 == 9) {
      out.gap = prob.frank_wolfe_gap(x, prob.gradient(x));
      if (out.gap <= cfg.primal_tol * (1.0 + std::abs(fx))) {
        ++it;
        break;
      }
    }
  }
  out.gap = prob.frank_wolfe_gap(x, prob.gradient(x));
  out.iterations = it;
  out.objective = fx;
  out.xi = VectorXd::Zero(n);
  const VectorXd cs = x.colwise().sum().transpose();
  for (Eigen::Index j = 0; j < k; ++j) out.xi[prob.cols[j]] = std::max(cs[j], 0.0);
  out.xi /= out.xi.sum();
  return out;
}

double polished_value(const Spec& spec, const FiniteMetricSpace& space, const DiscreteMeasure& mu,
                      const DiscreteMeasure& nu, const DiscreteMeasure& xi, double lambda, double alpha)
{
  return exact_divergence(spec, xi, nu) + lambda * std::pow(wasserstein1(space, mu, xi), alpha);
}

MYResult primal_ball(const Spec& spec, const FiniteMetricSpace& space, const DiscreteMeasure& mu,
                     const DiscreteMeasure& nu, double beta, const MYConfig& cfg)
{
  MYResult out;
  out.method = "primal-ball-bisection";
  const double w0 = wasserstein1(space, mu, nu);
  if (w0 <= beta) {
    out.value = 0.0;
    out.xi_star = nu;
    out.converged = true;
    return out;
  }

  struct Point
  {
    VectorXd xi;
    double w;
  };
  int iterations = 0;
  auto solve_at = [&](double t) {
    const CouplingSolution s = solve_couplings(spec, space, mu, nu, t, 1.0, cfg);
    iterations += s.iterations;
    const DiscreteMeasure xi(s.xi);
    return Point{s.xi, wasserstein1(space, mu, xi)};
  };

  Point lo{nu.weights(), w0};
  double t_lo = 0.0;
  double t_hi = 1.0;
  Point hi = solve_at(t_hi);
  while (hi.w > beta && t_hi < 1e9) {
    t_lo = t_hi;
    lo = hi;
    t_hi *= 4.0;
    hi = solve_at(t_hi);
  }
  out.iterations = iterations;
  if (hi.w > beta) {
    // No finite-divergence measure reaches the ball.
    out.value = infinity<double>();
    out.converged = false;
    return out;
  }
  for (int b = 0; b < cfg.ball_bisections && t_hi - t_lo > 1e-14 * t_hi; ++b) {
    const double t = t_lo > 0.0 ? std::sqrt(t_lo * t_hi) : 0.5 * t_hi;
    Point p = solve_at(t);
    if (p.w > beta) {
      t_lo = t;
      lo = std::move(p);
    } else {
      t_hi = t;
      hi = std::move(p);
    }
  }
  out.iterations = iterations;

  // W1(mu, .) is convex, so the mixture stays inside the ball.
  const double theta = lo.w > hi.w ? (lo.w - beta) / (lo.w - hi.w) : 1.0;
  VectorXd mix = theta * hi.xi + (1.0 - theta) * lo.xi;
  mix /= mix.sum();
  const DiscreteMeasure xi_hi(hi.xi);
  const DiscreteMeasure xi_mix(mix);
  const double v_hi = exact_divergence(spec, xi_hi, nu);
  const double w_mix = wasserstein1(space, mu, xi_mix);
  const double v_mix = w_mix <= beta * (1.0 + 1e-12) ? exact_divergence(spec, xi_mix, nu) : infinity<double>();
  if (v_mix < v_hi) {
    out.value = v_mix;
    out.xi_star = xi_mix;
  } else {
    out.value = v_hi;
    out.xi_star = xi_hi;
  }
  out.gap_estimate = std::abs(v_hi - v_mix);
  out.converged = std::isfinite(out.value);
  return out;
}

}  // namespace

MYResult my_primal(const Spec& spec, const FiniteMetricSpace& space, const DiscreteMeasure& mu,
                   const DiscreteMeasure& nu, const MYParams& params, const MYConfig& cfg)
{
  params.validate();
  check_inputs(space, mu, nu);

  if (spec.is_trivial()) {
    MYResult out;
    out.method = "closed-form";
    out.xi_star = nu;
    out.converged = true;
    const double w = wasserstein1(space, mu, nu);
    if (params.is_ball()) {
      out.value = w <= *params.beta ? 0.0 : infinity<double>();
    } else {
      out.value = params.effective_lambda() * std::pow(w, params.alpha);
    }
    return out;
  }
  if (params.is_ball()) return primal_ball(spec, space, mu, nu, *params.beta, cfg);

  const double lambda = params.effective_lambda();
  const CouplingSolution s = solve_couplings(spec, space, mu, nu, lambda, params.alpha, cfg);
  MYResult out;
  out.method = "primal-fista";
  out.experimental = params.alpha < 1.0;
  out.xi_star = DiscreteMeasure(s.xi);
  out.value = polished_value(spec, space, mu, nu, *out.xi_star, lambda, params.alpha);
  out.iterations = s.iterations;
  out.gap_estimate = s.gap;
  out.converged = s.gap <= 1e-6 * (1.0 + std::abs(out.value));
  return out;
}

double my_dual_objective(const Spec& spec, const FiniteMetricSpace& space, const DiscreteMeasure& mu,
                         const DiscreteMeasure& nu, const MYParams& params, const Potential& f,
                         const SolverConfig& cfg)
{
  params.validate();
  check_inputs(space, mu, nu);
  if (f.size() != space.size()) throw InputError("my_dual_objective: potential has the wrong length");
  const double pen = penalty(params, lipschitz_norm(space, f));
  if (std::isinf(pen)) return -infinity<double>();
  return mu.weights().dot(f) - conjugate_value(spec, f, nu.weights(), cfg) - pen;
}

namespace {

// Maximizes a concave objective over the open polyhedron {x : A x < b} by
// following the log-barrier central path, t -> 10 t.
struct BarrierProblem
{
  Eigen::Index dim = 0;
  MatrixXd A;
  VectorXd b;
  std::function<double(const VectorXd&)> value;
  // Gradient and negated Hessian of the objective.
  std::function<void(const VectorXd&, VectorXd&, MatrixXd&)> derivatives;
};

struct BarrierResult
{
  VectorXd x;
  int iterations = 0;
  double gap = 0.0;
  bool converged = false;
  bool unbounded = false;
};

BarrierResult barrier_maximize(const BarrierProblem& prob, VectorXd x, double tol)
{
  const double m = static_cast<double>(prob.A.rows());
  auto slack = [&](const VectorXd& z) -> VectorXd { return prob.b - prob.A * z; };
  auto merit = [&](const VectorXd& z, double t) {
    const VectorXd s = slack(z);
    if ((s.array() <= 0.0).any()) return -infinity<double>();
    return prob.value(z) + s.array().log().sum() / t;
  };

  BarrierResult out;
  double t = 1.0;
  double G = prob.value(x);
  for (int outer = 0; outer < 40; ++outer) {
    for (int inner = 0; inner < 200; ++inner) {
      ++out.iterations;
      VectorXd grad(prob.dim);
      MatrixXd H(prob.dim, prob.dim);
      prob.derivatives(x, grad, H);
      const VectorXd inv = slack(x).cwiseInverse();
      grad.noalias() -= prob.A.transpose() * inv / t;
      H.noalias() += prob.A.transpose() * inv.cwiseAbs2().asDiagonal() * prob.A / t;

      const Eigen::LDLT<MatrixXd> ldlt(H);
      const VectorXd dx = ldlt.solve(grad);
      const double decrement = grad.dot(dx);
      if (!std::isfinite(decrement)) throw SolverError("my_dual: Newton system is singular", out.iterations, 0.0);
      if (decrement / 2.0 <= 1e-13 * (1.0 + std::abs(G))) break;

      const double base = merit(x, t);
      double step = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, step *= 0.5) {
        const VectorXd xn = x + step * dx;
        const double v = merit(xn, t);
        if (std::isfinite(v) && v >= base + 0.25 * step * decrement) {
          x = xn;
          moved = true;
          break;
        }
      }
      if (!moved) break;
      if (x.cwiseAbs().maxCoeff() > 1e12) break;
    }
    G = prob.value(x);
    if (x.cwiseAbs().maxCoeff() > 1e12) {
      out.unbounded = true;
      break;
    }
    if (m / t <= tol * (1.0 + std::abs(G))) {
      out.converged = true;
      break;
    }
    t *= 10.0;
  }
  out.x = std::move(x);
  out.gap = m / t;
  return out;
}

// Variables: f_1, ..., f_{n-1} (f_0 = 0), then `extra` generator-specific
// entries, then L unless it is pinned to lambda (alpha = 1). Rows
// f_i - f_j - L d(i, j) <= 0 for every ordered pair.
struct DualLayout
{
  Eigen::Index n = 0;
  Eigen::Index extra = 0;
  bool free_L = false;
  double pinned_L = 0.0;

  Eigen::Index dim() const { return n - 1 + extra + (free_L ? 1 : 0); }
  Eigen::Index L_index() const { return n - 1 + extra; }

  Potential potential(const VectorXd& x) const
  {
    Potential f = Potential::Zero(n);
    f.tail(n - 1) = x.head(n - 1);
    return f;
  }
  double L(const VectorXd& x) const { return free_L ? x[L_index()] : pinned_L; }

  void lipschitz_rows(const FiniteMetricSpace& space, MatrixXd& A, VectorXd& b, Eigen::Index row0) const
  {
    Eigen::Index r = row0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (i == j) continue;
        if (i > 0) A(r, i - 1) += 1.0;
        if (j > 0) A(r, j - 1) -= 1.0;
        if (free_L) {
          A(r, L_index()) = -space(i, j);
        } else {
          b[r] = pinned_L * space(i, j);
        }
        ++r;
      }
    }
  }
};

MYResult dual_interior_point(const Spec& spec, const FiniteMetricSpace& space, const DiscreteMeasure& mu,
                             const DiscreteMeasure& nu, const MYParams& params, const MYConfig& cfg)
{
  const Eigen::Index n = space.size();
  const VectorXd& a = mu.weights();
  const VectorXd& w = nu.weights();
  const bool tv = spec.id == Generator::total_variation;

  std::vector<Eigen::Index> charged;  // points carrying an epigraph variable (total variation)
  if (tv) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (w[i] > 0.0) charged.push_back(i);
    }
  }
  DualLayout lay;
  lay.n = n;
  lay.extra = tv ? 1 + static_cast<Eigen::Index>(charged.size()) : 0;
  lay.free_L = params.alpha != 1.0;
  lay.pinned_L = lay.free_L ? 0.0 : params.effective_lambda();
  const Eigen::Index p = lay.dim();
  const Eigen::Index iL = lay.L_index();

  auto pen = [&](double L, int order) {
    if (!lay.free_L) return 0.0;
    if (params.is_ball()) return order == 0 ? *params.beta * L : (order == 1 ? *params.beta : 0.0);
    const double q = params.alpha / (params.alpha - 1.0);
    const double P = penalty(params, L);
    if (order == 0) return P;
    if (order == 1) return q * P / L;
    return q * (q - 1.0) * P / (L * L);
  };

  const Eigen::Index lip_rows = n * (n - 1);
  const Eigen::Index rows = lip_rows + (tv ? n + 2 * static_cast<Eigen::Index>(charged.size()) : 0) +
                            (lay.free_L ? 1 : 0);
  BarrierProblem prob;
  prob.dim = p;
  prob.A = MatrixXd::Zero(rows, p);
  prob.b = VectorXd::Zero(rows);
  lay.lipschitz_rows(space, prob.A, prob.b, 0);
  Eigen::Index r = lip_rows;
  if (tv) {
    // x = [f, gamma, t, L]: D*(f) = min gamma + sum_i nu_i t_i over t_i >= f_i - gamma,
    // t_i >= -1 and f_i - gamma <= 1.
    const Eigen::Index ig = n - 1;
    for (Eigen::Index i = 0; i < n; ++i, ++r) {
      if (i > 0) prob.A(r, i - 1) = 1.0;
      prob.A(r, ig) = -1.0;
      prob.b[r] = 1.0;
    }
    for (std::size_t k = 0; k < charged.size(); ++k) {
      const Eigen::Index i = charged[k];
      const Eigen::Index it = ig + 1 + static_cast<Eigen::Index>(k);
      if (i > 0) prob.A(r, i - 1) = 1.0;
      prob.A(r, ig) = -1.0;
      prob.A(r, it) = -1.0;
      ++r;
      prob.A(r, it) = -1.0;
      prob.b[r] = 1.0;
      ++r;
    }
  }
  if (lay.free_L) prob.A(r, iL) = -1.0;  // L > 0

  if (tv) {
    prob.value = [&](const VectorXd& x) {
      double v = a.dot(lay.potential(x)) - x[n - 1] - pen(lay.L(x), 0);
      for (std::size_t k = 0; k < charged.size(); ++k) v -= w[charged[k]] * x[n + static_cast<Eigen::Index>(k)];
      return v;
    };
    prob.derivatives = [&](const VectorXd& x, VectorXd& grad, MatrixXd& H) {
      grad.setZero();
      H.setZero();
      grad.head(n - 1) = a.tail(n - 1);
      grad[n - 1] = -1.0;
      for (std::size_t k = 0; k < charged.size(); ++k) grad[n + static_cast<Eigen::Index>(k)] = -w[charged[k]];
      if (lay.free_L) {
        grad[iL] = -pen(lay.L(x), 1);
        H(iL, iL) = pen(lay.L(x), 2);
      }
    };
  } else {
    prob.value = [&](const VectorXd& x) {
      const Potential f = lay.potential(x);
      return a.dot(f) - conjugate_value(spec, f, w, cfg.conjugate) - pen(lay.L(x), 0);
    };
    prob.derivatives = [&](const VectorXd& x, VectorXd& grad, MatrixXd& H) {
      const Potential f = lay.potential(x);
      const auto ev = evaluate_conjugate(spec, f, w, cfg.conjugate);
      const MatrixXd HD = conjugate_hessian(spec, f, w, cfg.conjugate);
      grad.setZero();
      H.setZero();
      grad.head(n - 1) = (a - ev.grad).tail(n - 1);
      H.topLeftCorner(n - 1, n - 1) = HD.bottomRightCorner(n - 1, n - 1);
      if (lay.free_L) {
        grad[iL] = -pen(lay.L(x), 1);
        H(iL, iL) = pen(lay.L(x), 2);
      }
    };
  }

  // Strictly feasible start: f = 0, gamma = -1/2, t = 3/2, L = 1.
  VectorXd x0 = VectorXd::Zero(p);
  if (tv) {
    x0[n - 1] = -0.5;
    x0.segment(n, static_cast<Eigen::Index>(charged.size())).setConstant(1.5);
  }
  if (lay.free_L) x0[iL] = 1.0;

  const BarrierResult res = barrier_maximize(prob, x0, cfg.dual_tol);
  MYResult out;
  out.method = "dual-interior-point";
  out.iterations = res.iterations;
  out.f_star = lay.potential(res.x);
  out.gap_estimate = res.gap;
  if (res.unbounded) {
    out.value = infinity<double>();
    return out;
  }
  out.value = my_dual_objective(spec, space, mu, nu, params, *out.f_star, cfg.conjugate);
  out.converged = res.converged;
  return out;
}

MYResult dual_ascent(const Spec& spec, const FiniteMetricSpace& space, const DiscreteMeasure& mu,
                     const DiscreteMeasure& nu, const MYParams& params, const MYConfig& cfg)
{
  const Eigen::Index n = space.size();
  Potential f = Potential::Zero(n);
  Potential best_f = f;
  double best = my_dual_objective(spec, space, mu, nu, params, f, cfg.conjugate);
  const double lambda = params.alpha == 1.0 ? params.effective_lambda() : 0.0;
  int it = 0;
  for (; it < cfg.ascent_iterations; ++it) {
    const auto ev = evaluate_conjugate(spec, f, nu.weights(), cfg.conjugate);
    VectorXd grad = mu.weights() - ev.grad;
    if (params.alpha != 1.0) {
      const double L = lipschitz_norm(space, f);
      if (L > 0.0) {
        const auto [i, j] = lipschitz_argmax(space, f);
        double slope;
        if (params.is_ball()) {
          slope = *params.beta;
        } else {
          slope = params.alpha / (params.alpha - 1.0) * penalty(params, L) / L;
        }
        grad[i] -= slope / space(i, j);
        grad[j] += slope / space(i, j);
      }
    }
    f += cfg.learning_rate * grad;
    if (params.alpha == 1.0) f = pasch_hausdorff_envelope(space, f, lambda);
    f.array() -= f[0];
    if (!f.allFinite()) break;
    const double v = my_dual_objective(spec, space, mu, nu, params, f, cfg.conjugate);
    if (v > best) {
      best = v;
      best_f = f;
    }
  }
  MYResult out;
  out.method = "dual-ascent";
  out.value = best;
  out.f_star = best_f;
  out.iterations = it;
  out.converged = std::isfinite(best) && it == cfg.ascent_iterations;
  return out;
}

}  // namespace

MYResult my_dual(const Spec& spec, const FiniteMetricSpace& space, const DiscreteMeasure& mu,
                 const DiscreteMeasure& nu, const MYParams& params, const MYConfig& cfg)
{
  params.validate();
  check_inputs(space, mu, nu);
  if (params.alpha < 1.0) throw InputError("my_dual: the dual form requires alpha >= 1");

  const Eigen::Index n = space.size();
  if (n == 1 || mu.weights() == nu.weights()) {
    MYResult out;
    out.method = "identical";
    out.f_star = Potential::Zero(n);
    out.converged = true;
    return out;
  }
  if (spec.is_trivial() && params.is_ball()) {
    MYResult out;
    out.method = "closed-form";
    const KantorovichDual k = kantorovich_dual(space, mu, nu);
    const bool inside = wasserstein1(space, mu, nu) <= *params.beta;
    out.value = inside ? 0.0 : infinity<double>();
    out.f_star = inside ? Potential::Zero(n) : k.f;
    out.converged = true;
    return out;
  }

  DualMethod method = cfg.dual_method;
  if (method == DualMethod::automatic) {
    method = DualMethod::interior_point;
  }
  return method == DualMethod::interior_point ? dual_interior_point(spec, space, mu, nu, params, cfg)
                                              : dual_ascent(spec, space, mu, nu, params, cfg);
}

StructureReport check_optimality_structure(const Spec& spec, const FiniteMetricSpace& space,
                                           const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                           const MYParams& params, const MYResult& primal, const MYResult& dual,
                                           double tol)
{
  if (!primal.xi_star || !dual.f_star) {
    throw InputError("check_optimality_structure: needs a primal minimizer and a dual potential");
  }
  const DiscreteMeasure& xi = *primal.xi_star;
  const Potential& f = *dual.f_star;
  auto close = [tol](double a, double b) { return std::abs(a - b) <= tol * (1.0 + std::abs(b)); };

  StructureReport rep;
  rep.w1_mu_xi = wasserstein1(space, mu, xi);
  rep.lipschitz = lipschitz_norm(space, f);
  if (params.is_ball()) {
    rep.expected_lipschitz = rep.lipschitz;
    rep.lipschitz_ok = rep.w1_mu_xi <= *params.beta + tol * (1.0 + *params.beta);
  } else if (params.alpha == 1.0) {
    const double lambda = params.effective_lambda();
    rep.expected_lipschitz = lambda;
    rep.lipschitz_ok = rep.lipschitz <= lambda * (1.0 + tol) && (rep.w1_mu_xi <= tol || close(rep.lipschitz, lambda));
  } else {
    rep.expected_lipschitz =
        params.alpha * params.effective_lambda() * std::pow(rep.w1_mu_xi, params.alpha - 1.0);
    rep.lipschitz_ok = close(rep.lipschitz, rep.expected_lipschitz);
  }
  rep.csiszar = check_csiszar_potential(spec, xi.weights(), nu.weights(), f, tol);
  rep.transport_lhs = (mu.weights() - xi.weights()).dot(f);
  rep.transport_rhs = rep.lipschitz * rep.w1_mu_xi;
  rep.transport_ok = close(rep.transport_lhs, rep.transport_rhs);
  rep.passed = rep.lipschitz_ok && rep.csiszar.ok && rep.transport_ok;
  return rep;
}

}  // namespace myfdiv
