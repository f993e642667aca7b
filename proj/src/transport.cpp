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
#include "myfdiv/transport.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace myfdiv {

namespace {

struct Cell
{
  int row;
  int col;
  double flow;
};

struct TransportSolution
{
  std::vector<Cell> basis;
  VectorXd u;  // row duals
  VectorXd v;  // column duals, u_i + v_j <= C(i, j)
};

// Duals of the basic cells, u_i + v_j = C(i, j) on the spanning tree, rooted at u_0 = 0.
void basis_duals(const std::vector<Cell>& basis, const MatrixXd& C, int m, int k, VectorXd& u, VectorXd& v,
                 std::vector<std::vector<std::pair<int, int>>>& adj)
{
  for (auto& a : adj) a.clear();
  for (int e = 0; e < static_cast<int>(basis.size()); ++e) {
    adj[basis[e].row].push_back({m + basis[e].col, e});
    adj[m + basis[e].col].push_back({basis[e].row, e});
  }
  std::vector<char> seen(m + k, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  u[0] = 0.0;
  while (!stack.empty()) {
    const int node = stack.back();
    stack.pop_back();
    for (auto [next, e] : adj[node]) {
      if (seen[next]) continue;
      seen[next] = 1;
      const Cell& cell = basis[e];
      if (next >= m) {
        v[cell.col] = C(cell.row, cell.col) - u[cell.row];
      } else {
        u[cell.row] = C(cell.row, cell.col) - v[cell.col];
      }
      stack.push_back(next);
    }
  }
}

// Basic cells on the tree path from column node (m + col) to row node `row`, in that order.
std::vector<int> tree_path(const std::vector<std::vector<std::pair<int, int>>>& adj, int m, int row, int col)
{
  const int nodes = static_cast<int>(adj.size());
  std::vector<int> parent_edge(nodes, -1);
  std::vector<int> parent(nodes, -1);
  std::vector<int> queue{row};
  parent[row] = row;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const int node = queue[h];
    for (auto [next, e] : adj[node]) {
      if (parent[next] != -1) continue;
      parent[next] = node;
      parent_edge[next] = e;
      queue.push_back(next);
    }
  }
  std::vector<int> path;
  for (int node = m + col; node != row; node = parent[node]) {
    if (parent[node] == -1) throw SolverError("transport: basis is not a spanning tree", 0, 0.0);
    path.push_back(parent_edge[node]);
  }
  return path;
}

TransportSolution solve_transport(const VectorXd& supply, const VectorXd& demand, const MatrixXd& C)
{
  const int m = static_cast<int>(supply.size());
  const int k = static_cast<int>(demand.size());

  // North-west corner start: a staircase spanning tree with m + k - 1 cells.
  TransportSolution sol;
  VectorXd ra = supply;
  VectorXd rb = demand;
  for (int i = 0, j = 0;;) {
    const double x = std::max(0.0, std::min(ra[i], rb[j]));
    sol.basis.push_back({i, j, x});
    ra[i] -= x;
    rb[j] -= x;
    if (i == m - 1 && j == k - 1) break;
    if (i == m - 1) {
      ++j;
    } else if (j == k - 1) {
      ++i;
    } else if (ra[i] <= rb[j]) {
      ++i;
    } else {
      ++j;
    }
  }

  sol.u = VectorXd::Zero(m);
  sol.v = VectorXd::Zero(k);
  std::vector<std::vector<std::pair<int, int>>> adj(m + k);

  const double eps = 1e-12 * std::max(1.0, C.cwiseAbs().maxCoeff());
  const double flow_eps = 1e-15 * std::max(1.0, supply.sum());
  const long max_pivots = 50L * m * k + 1000;
  bool bland = false;
  int degenerate_streak = 0;

  for (long pivot = 0;; ++pivot) {
    if (pivot > max_pivots) throw SolverError("transport: pivot limit reached", static_cast<int>(pivot), 0.0);
    basis_duals(sol.basis, C, m, k, sol.u, sol.v, adj);

    int enter_r = -1;
    int enter_c = -1;
    double best = -eps;
    for (int i = 0; i < m && !(bland && enter_r >= 0); ++i) {
      for (int j = 0; j < k; ++j) {
        const double reduced = C(i, j) - sol.u[i] - sol.v[j];
        if (reduced < best) {
          enter_r = i;
          enter_c = j;
          if (bland) break;
          best = reduced;
        }
      }
    }
    if (enter_r < 0) break;

    const std::vector<int> path = tree_path(adj, m, enter_r, enter_c);
    // Cells alternate -, +, -, ... starting next to the entering column; the path has odd length.
    int leave = -1;
    double theta = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < path.size(); p += 2) {
      const Cell& cell = sol.basis[path[p]];
      const bool better = cell.flow < theta ||
                          (bland && cell.flow == theta &&
                           cell.row * k + cell.col < sol.basis[leave].row * k + sol.basis[leave].col);
      if (better) {
        theta = cell.flow;
        leave = path[p];
      }
    }
    for (std::size_t p = 0; p < path.size(); ++p) {
      Cell& cell = sol.basis[path[p]];
      cell.flow += (p % 2 == 0) ? -theta : theta;
      if (cell.flow < 0.0) cell.flow = 0.0;
    }
    sol.basis[leave] = {enter_r, enter_c, theta};

    degenerate_streak = theta <= flow_eps ? degenerate_streak + 1 : 0;
    if (degenerate_streak > m + k) bland = true;
  }
  return sol;
}

std::vector<Eigen::Index> support(const DiscreteMeasure& m)
{
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    if (m[i] > 0.0) idx.push_back(i);
  }
  return idx;
}

struct SupportLP
{
  std::vector<Eigen::Index> rows;
  std::vector<Eigen::Index> cols;
  TransportSolution sol;
};

SupportLP solve_on_supports(const FiniteMetricSpace& space, const DiscreteMeasure& mu, const DiscreteMeasure& nu)
{
  if (mu.size() != space.size() || nu.size() != space.size()) {
    throw InputError("transport: measures and space have different sizes");
  }
  const double sa = mu.mass();
  const double sb = nu.mass();
  if (!(sa > 0.0) || std::abs(sa - sb) > 1e-9 * std::max(1.0, sa)) {
    throw InputError("transport: marginals must carry equal positive mass");
  }
  SupportLP lp;
  lp.rows = support(mu);
  lp.cols = support(nu);
  const auto m = static_cast<Eigen::Index>(lp.rows.size());
  const auto k = static_cast<Eigen::Index>(lp.cols.size());
  VectorXd a(m), b(k);
  MatrixXd C(m, k);
  for (Eigen::Index i = 0; i < m; ++i) a[i] = mu[lp.rows[i]];
  for (Eigen::Index j = 0; j < k; ++j) b[j] = nu[lp.cols[j]];
  b *= sa / sb;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) C(i, j) = space(lp.rows[i], lp.cols[j]);
  }
  lp.sol = solve_transport(a, b, C);
  return lp;
}

}  // namespace

TransportPlan w1_primal(const FiniteMetricSpace& space, const DiscreteMeasure& mu, const DiscreteMeasure& nu)
{
  const SupportLP lp = solve_on_supports(space, mu, nu);
  const Eigen::Index n = space.size();
  TransportPlan plan;
  plan.pi = MatrixXd::Zero(n, n);
  for (const Cell& cell : lp.sol.basis) {
    const Eigen::Index i = lp.rows[cell.row];
    const Eigen::Index j = lp.cols[cell.col];
    plan.pi(i, j) += cell.flow;
    plan.cost += cell.flow * space(i, j);
  }
  return plan;
}

double wasserstein1(const FiniteMetricSpace& space, const DiscreteMeasure& mu, const DiscreteMeasure& nu)
{
  return w1_primal(space, mu, nu).cost;
}

double lipschitz_norm(const FiniteMetricSpace& space, const Potential& f)
{
  if (f.size() != space.size()) throw InputError("lipschitz_norm: size mismatch");
  double best = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    for (Eigen::Index j = i + 1; j < f.size(); ++j) best = std::max(best, std::abs(f[i] - f[j]) / space(i, j));
  }
  return best;
}

std::pair<Eigen::Index, Eigen::Index> lipschitz_argmax(const FiniteMetricSpace& space, const Potential& f)
{
  std::pair<Eigen::Index, Eigen::Index> best{0, 0};
  double value = -1.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    for (Eigen::Index j = 0; j < f.size(); ++j) {
      if (i == j || f[i] < f[j]) continue;
      const double q = (f[i] - f[j]) / space(i, j);
      if (q > value) {
        value = q;
        best = {i, j};
      }
    }
  }
  return best;
}

Potential pasch_hausdorff_envelope(const FiniteMetricSpace& space, const Potential& f, double L)
{
  const Eigen::Index n = f.size();
  Potential g(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double best = f[i];
    for (Eigen::Index j = 0; j < n; ++j) best = std::min(best, f[j] + L * space(i, j));
    g[i] = best;
  }
  return g;
}

KantorovichDual kantorovich_dual(const FiniteMetricSpace& space, const DiscreteMeasure& mu, const DiscreteMeasure& nu)
{
  const Eigen::Index n = space.size();
  KantorovichDual out;
  if (mu.size() == n && nu.size() == n && mu.weights() == nu.weights()) {
    out.f = Potential::Zero(n);
    return out;
  }
  const SupportLP lp = solve_on_supports(space, mu, nu);

  out.f.resize(n);
  for (Eigen::Index x = 0; x < n; ++x) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < lp.cols.size(); ++j) {
      best = std::min(best, space(x, lp.cols[j]) - lp.sol.v[static_cast<Eigen::Index>(j)]);
    }
    out.f[x] = best;
  }
  out.f.array() -= out.f[0];
  out.value = (mu.weights() - nu.weights()).dot(out.f);
  return out;
}

}  // namespace myfdiv
