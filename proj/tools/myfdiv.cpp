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
//
// myfdiv: command-line front end.
//
//   myfdiv divergence --phi kl --mu a.json --nu b.json
//   myfdiv conjugate  --phi jeffreys --f 0.1,-0.3,0.7 --nu-weights 0.2,0.3,0.5
//   myfdiv my         --phi chi2 --mu a.json --nu b.json --alpha 2 --lambda 0.5
//   myfdiv gaussian   --phi reverse_kl --format csv --out potential.csv
//   myfdiv selftest   --filter gaussian
//
// Exit codes: 0 success, 1 selftest failure, 2 bad input, 3 solver failure.

#include "myfdiv/conjugate.hpp"
#include "myfdiv/estimator.hpp"
#include "myfdiv/io.hpp"
#include "myfdiv/moreau_yosida.hpp"
#include "myfdiv/transport.hpp"
#include "myfdiv/validation.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

using namespace myfdiv;

namespace {

constexpr int exit_input = 2;
constexpr int exit_solver = 3;

struct Common
{
  std::string phi;
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, Common& c, bool csv_allowed = true)
{
  cmd->add_option("--phi", c.phi, "Generator name")->required();
  cmd->add_option("--out", c.out, "Output file (default stdout)");
  cmd->add_option("--seed", c.seed, "Seed recorded with the run")->capture_default_str();
  auto* fmt = cmd->add_option("--format", c.format, "Output format")->capture_default_str();
  if (csv_allowed) {
    fmt->check(CLI::IsMember({"json", "csv"}));
  } else {
    fmt->check(CLI::IsMember({"json"}));
  }
}

std::string render(const Json& j, const std::string& format)
{
  return format == "csv" ? flat_csv(j) : j.dump(2) + "\n";
}

double parse_alpha(const std::string& s)
{
  if (s == "inf" || s == "infinity" || s == "Inf") return alpha_infinity;
  try {
    std::size_t used = 0;
    const double a = std::stod(s, &used);
    if (used == s.size()) return a;
  } catch (const std::exception&) {
  }
  throw InputError("cannot parse alpha '" + s + "'");
}

AscentMethod parse_ascent(const std::string& s)
{
  return s == "gradient" ? AscentMethod::gradient : AscentMethod::preconditioned;
}

Json result_json(const MYResult& r)
{
  Json j = Json::object();
  j["value"] = json_number(r.value);
  j["method"] = r.method;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["gap_estimate"] = json_number(r.gap_estimate);
  j["experimental"] = r.experimental;
  return j;
}

// ---------------------------------------------------------------------------

struct DivergenceArgs
{
  Common common;
  std::string mu, nu;
  std::string method = "preconditioned";
  double tol = 1e-13;
  int iters = 2000;
  double lr = 1.0;
};

int cmd_divergence(const DivergenceArgs& a)
{
  const Spec& spec = get_spec(a.common.phi);
  const MeasureFile mu = read_measure_file(a.mu);
  const MeasureFile nu = read_measure_file(a.nu);
  if (!(mu.space == nu.space)) throw InputError("--mu and --nu must live on the same space");

  Json j = Json::object();
  j["generator"] = std::string(spec.name);
  const double exact = exact_divergence(spec, mu.measure, nu.measure);
  j["exact"] = json_number(exact);
  if (spec.is_trivial()) {
    j["estimate"] = nullptr;
    j["gap"] = nullptr;
  } else {
    AscentConfig cfg;
    cfg.method = parse_ascent(a.method);
    cfg.learning_rate = a.lr;
    cfg.iterations = a.iters;
    cfg.gradient_tol = a.tol;
    cfg.seed = a.common.seed;
    const EstimateResult est = estimate_divergence(spec, mu.measure.weights(), nu.measure.weights(), cfg);
    j["estimate"] = json_number(est.estimate);
    j["gap"] = json_number(exact - est.estimate);
    j["iterations"] = est.iterations;
    j["gradient_norm"] = json_number(est.gradient_norm);
    j["f"] = json_vector(est.f);
  }
  j["seed"] = a.common.seed;
  write_output(a.common.out, render(j, a.common.format));
  return 0;
}

struct ConjugateArgs
{
  Common common;
  std::string f;
  std::string nu;
  std::string nu_weights;
  double tol = 1e-12;
  int iters = 100;
};

int cmd_conjugate(const ConjugateArgs& a)
{
  const Spec& spec = get_spec(a.common.phi);
  const VectorXd f = parse_vector(a.f);
  if (a.nu.empty() == a.nu_weights.empty()) throw InputError("give exactly one of --nu and --nu-weights");
  const VectorXd nu = a.nu.empty() ? parse_vector(a.nu_weights) : read_measure_file(a.nu).measure.weights();

  SolverConfig cfg;
  cfg.tol = a.tol;
  cfg.max_iter = a.iters;
  const auto ev = evaluate_conjugate(spec, f, nu, cfg);

  Json j = Json::object();
  j["generator"] = std::string(spec.name);
  j["solver"] = ev.gamma.closed_form ? "closed-form" : "newton";
  j["gamma"] = json_number(ev.gamma.gamma);
  j["value"] = json_number(ev.value);
  j["grad"] = json_vector(ev.grad);
  j["gamma_grad"] = json_vector(ev.gamma.grad);
  j["iterations"] = ev.gamma.iterations;
  j["converged"] = ev.gamma.converged;
  j["bound_active"] = ev.gamma.bound_active;
  if (spec.closed_form_gamma != nullptr && spec.newton_applicable) {
    SolverConfig newton = cfg;
    newton.prefer_closed_form = false;
    const auto sol = solve_gamma(spec, f, nu, newton);
    j["gamma_newton"] = json_number(sol.gamma);
    j["closed_form_diff"] = json_number(std::abs(sol.gamma - ev.gamma.gamma));
  }
  write_output(a.common.out, render(j, a.common.format));
  return 0;
}

struct MYArgs
{
  Common common;
  std::string mu, nu;
  std::string alpha = "1";
  std::optional<double> lambda, beta;
  std::string method = "auto";
  double tol = 1e-10;
  int iters = 5000;
  double lr = 0.05;
  double structure_tol = 1e-2;
};

int cmd_my(const MYArgs& a)
{
  const Spec& spec = get_spec(a.common.phi);
  const MeasureFile mu = read_measure_file(a.mu);
  const MeasureFile nu = read_measure_file(a.nu);
  if (!(mu.space == nu.space)) throw InputError("--mu and --nu must live on the same space");

  MYParams params;
  params.alpha = parse_alpha(a.alpha);
  params.lambda = a.lambda;
  params.beta = a.beta;
  params.validate();

  MYConfig cfg;
  cfg.primal_iterations = a.iters;
  cfg.ascent_iterations = a.iters;
  cfg.primal_tol = a.tol;
  cfg.dual_tol = a.tol;
  cfg.learning_rate = a.lr;
  cfg.seed = a.common.seed;
  cfg.dual_method = a.method == "interior-point" ? DualMethod::interior_point
                    : a.method == "ascent"       ? DualMethod::ascent
                                                 : DualMethod::automatic;

  const MYResult p = my_primal(spec, mu.space, mu.measure, nu.measure, params, cfg);
  const MYResult d = my_dual(spec, mu.space, mu.measure, nu.measure, params, cfg);

  Json j = Json::object();
  j["generator"] = std::string(spec.name);
  j["alpha"] = json_number(params.alpha);
  j["lambda"] = a.lambda ? json_number(*a.lambda) : Json(nullptr);
  j["beta"] = a.beta ? json_number(*a.beta) : Json(nullptr);
  j["w1"] = json_number(wasserstein1(mu.space, mu.measure, nu.measure));
  j["divergence"] = json_number(exact_divergence(spec, mu.measure, nu.measure));
  j["primal"] = result_json(p);
  j["dual"] = result_json(d);
  const bool both_finite = std::isfinite(p.value) && std::isfinite(d.value);
  j["gap"] = both_finite ? json_number(std::abs(p.value - d.value)) : Json(p.value == d.value ? Json(0.0) : "inf");
  if (both_finite && p.xi_star && d.f_star) {
    const StructureReport s =
      check_optimality_structure(spec, mu.space, mu.measure, nu.measure, params, p, d, a.structure_tol);
    Json sj = Json::object();
    sj["lipschitz"] = json_number(s.lipschitz);
    sj["expected_lipschitz"] = json_number(s.expected_lipschitz);
    sj["w1_mu_xi"] = json_number(s.w1_mu_xi);
    sj["lipschitz_ok"] = s.lipschitz_ok;
    sj["csiszar_ok"] = s.csiszar.ok;
    sj["csiszar_violation"] = json_number(s.csiszar.max_violation);
    sj["transport_lhs"] = json_number(s.transport_lhs);
    sj["transport_rhs"] = json_number(s.transport_rhs);
    sj["transport_ok"] = s.transport_ok;
    sj["passed"] = s.passed;
    j["structure"] = std::move(sj);
  } else {
    j["structure"] = nullptr;
  }
  j["xi_star"] = p.xi_star ? json_vector(p.xi_star->weights()) : Json(nullptr);
  j["f_star"] = d.f_star ? json_vector(*d.f_star) : Json(nullptr);
  j["seed"] = a.common.seed;
  write_output(a.common.out, render(j, a.common.format));
  return 0;
}

struct GaussianArgs
{
  Common common;
  double mu1 = -1.0, sigma1 = 0.3, mu2 = 0.5, sigma2 = 0.6;
  int grid_n = 512;
  double coverage = 8.0;
  std::optional<double> grid_lo, grid_hi;
  std::string method = "preconditioned";
  bool quotient = false;
  double tol = 1e-13;
  int iters = 2000;
  double lr = 1.0;
};

int cmd_gaussian(const GaussianArgs& a)
{
  const Spec& spec = get_spec(a.common.phi);
  GaussianParams p = GaussianParams::with_default_grid(a.mu1, a.sigma1, a.mu2, a.sigma2, a.grid_n, a.coverage);
  if (a.grid_lo) p.grid_lo = *a.grid_lo;
  if (a.grid_hi) p.grid_hi = *a.grid_hi;

  AscentConfig cfg;
  cfg.method = parse_ascent(a.method);
  cfg.learning_rate = a.lr;
  cfg.iterations = a.iters;
  cfg.gradient_tol = a.tol;
  cfg.use_quotient = a.quotient;
  cfg.seed = a.common.seed;
  const GaussianReport rep = gaussian_experiment(spec, p, cfg);

  if (a.common.format == "csv") {
    write_output(a.common.out, to_csv(rep));
  } else {
    Json j = Json::object();
    j["generator"] = std::string(spec.name);
    j["grid_lo"] = p.grid_lo;
    j["grid_hi"] = p.grid_hi;
    j["grid_n"] = p.grid_n;
    const Json body = to_json(rep);
    for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = *it;
    write_output(a.common.out, j.dump(2) + "\n");
  }
  return 0;
}

struct SelftestArgs
{
  std::string filter;
  std::string inject;
  std::string format = "text";
  std::string out;
  bool timings = false;
};

int cmd_selftest(const SelftestArgs& a)
{
  SuiteOptions opts;
  opts.filter = a.filter;
  if (!a.inject.empty()) opts.inject_fault = parse_generator(a.inject);
  const auto ids = select_criteria(opts.filter);

  bool all = true;
  std::string text;
  Json arr = Json::array();
  for (int id : ids) {
    const CriterionResult r = run_criterion(id, opts);
    all = all && r.passed;
    if (a.format == "json") {
      Json j = Json::object();
      j["id"] = r.id;
      j["name"] = r.name;
      j["passed"] = r.passed;
      j["measured"] = json_number(r.measured);
      j["tolerance"] = r.tolerance;
      if (a.timings) j["seconds"] = r.seconds;
      j["detail"] = r.detail;
      arr.push_back(std::move(j));
    } else {
      text += format_result(r, a.timings) + "\n";
    }
  }
  if (a.format == "json") {
    Json j = Json::object();
    j["passed"] = all;
    j["criteria"] = std::move(arr);
    write_output(a.out, j.dump(2) + "\n");
  } else {
    text += all ? "selftest: all selected criteria passed\n" : "selftest: FAILED\n";
    write_output(a.out, text);
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"f-divergences, tight conjugates and Moreau-Yosida approximations on finite spaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "myfdiv 1.0.0");

  DivergenceArgs div;
  auto* c_div = app.add_subcommand("divergence", "Exact divergence and its variational estimate");
  add_common(c_div, div.common);
  c_div->add_option("--mu", div.mu, "Measure file for mu")->required()->check(CLI::ExistingFile);
  c_div->add_option("--nu", div.nu, "Measure file for nu")->required()->check(CLI::ExistingFile);
  c_div->add_option("--method", div.method, "Ascent method")
    ->check(CLI::IsMember({"gradient", "preconditioned"}))
    ->capture_default_str();
  c_div->add_option("--tol", div.tol, "Stop when the sup-norm of the gradient falls below this")
    ->capture_default_str();
  c_div->add_option("--iters", div.iters, "Ascent iterations")->capture_default_str();
  c_div->add_option("--lr", div.lr, "Learning rate")->capture_default_str();

  ConjugateArgs conj;
  auto* c_conj = app.add_subcommand("conjugate", "Tight conjugate, optimal shift and gradient");
  add_common(c_conj, conj.common);
  c_conj->add_option("--f", conj.f, "Potential values, comma separated")->required();
  c_conj->add_option("--nu", conj.nu, "Measure file for nu")->check(CLI::ExistingFile);
  c_conj->add_option("--nu-weights", conj.nu_weights, "Weights of nu, comma separated");
  c_conj->add_option("--tol", conj.tol, "Newton step tolerance")->capture_default_str();
  c_conj->add_option("--iters", conj.iters, "Newton iteration cap")->capture_default_str();

  MYArgs my;
  auto* c_my = app.add_subcommand("my", "Moreau-Yosida approximation, primal and dual");
  add_common(c_my, my.common);
  c_my->add_option("--mu", my.mu, "Measure file for mu")->required()->check(CLI::ExistingFile);
  c_my->add_option("--nu", my.nu, "Measure file for nu")->required()->check(CLI::ExistingFile);
  c_my->add_option("--alpha", my.alpha, "Exponent >= 1, or inf for the ball form")->capture_default_str();
  c_my->add_option("--lambda", my.lambda, "Penalty weight");
  c_my->add_option("--beta", my.beta, "Ball radius, or the lambda = beta^-alpha / alpha reparametrization");
  c_my->add_option("--method", my.method, "Dual method")
    ->check(CLI::IsMember({"auto", "interior-point", "ascent"}))
    ->capture_default_str();
  c_my->add_option("--tol", my.tol, "Primal and dual tolerance")->capture_default_str();
  c_my->add_option("--iters", my.iters, "Primal and ascent iteration budgets")->capture_default_str();
  c_my->add_option("--lr", my.lr, "Dual ascent learning rate")->capture_default_str();
  c_my->add_option("--structure-tol", my.structure_tol, "Tolerance of the structure report")->capture_default_str();

  GaussianArgs gs;
  auto* c_gs = app.add_subcommand("gaussian", "Potential recovery between two discretized Gaussians");
  add_common(c_gs, gs.common);
  c_gs->add_option("--mu1", gs.mu1)->capture_default_str();
  c_gs->add_option("--sigma1", gs.sigma1)->capture_default_str();
  c_gs->add_option("--mu2", gs.mu2)->capture_default_str();
  c_gs->add_option("--sigma2", gs.sigma2)->capture_default_str();
  c_gs->add_option("--grid-n", gs.grid_n)->capture_default_str();
  c_gs->add_option("--coverage", gs.coverage, "Grid half-width in sigmas (>= 4)")->capture_default_str();
  c_gs->add_option("--grid-lo", gs.grid_lo, "Override the lower grid end");
  c_gs->add_option("--grid-hi", gs.grid_hi, "Override the upper grid end");
  c_gs->add_option("--method", gs.method, "Ascent method")
    ->check(CLI::IsMember({"gradient", "preconditioned"}))
    ->capture_default_str();
  c_gs->add_flag("--quotient", gs.quotient, "Pin f[0] = 0 after every step");
  c_gs->add_option("--tol", gs.tol, "Gradient sup-norm stopping tolerance")->capture_default_str();
  c_gs->add_option("--iters", gs.iters, "Ascent iterations")->capture_default_str();
  c_gs->add_option("--lr", gs.lr, "Learning rate")->capture_default_str();

  SelftestArgs st;
  auto* c_st = app.add_subcommand("selftest", "Run the acceptance suite");
  c_st->add_option("--filter", st.filter, "Comma-separated criterion names or numbers");
  c_st->add_option("--inject", st.inject, "Perturb phi_plus of this generator");
  c_st->add_option("--format", st.format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  c_st->add_option("--out", st.out, "Output file (default stdout)");
  c_st->add_flag("--timings", st.timings, "Include wall-clock times");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_input;
  }

  try {
    if (*c_div) return cmd_divergence(div);
    if (*c_conj) return cmd_conjugate(conj);
    if (*c_my) return cmd_my(my);
    if (*c_gs) return cmd_gaussian(gs);
    if (*c_st) return cmd_selftest(st);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << " (iterations " << e.iterations() << ", residual " << e.residual()
              << ")\n";
    return exit_solver;
  }
  return exit_input;
}
