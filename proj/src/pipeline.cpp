#include "lssem/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lssem {

Mode parse_mode(std::string_view name) {
  if (name == "p") return Mode::p;
  if (name == "hp") return Mode::hp;
  throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

std::string_view to_string(Mode mode) { return mode == Mode::p ? "p" : "hp"; }

int elements_for(Mode mode, int W, double cn) {
  if (mode == Mode::p) return 1;
  if (!(cn > 0.0)) throw std::invalid_argument("cn must be positive");
  return std::max(1, static_cast<int>(std::lround(cn * W)));
}

namespace {

QuadratureRule rule_for(const SolveOptions& o) {
  const int q = o.quad_order > 0 ? o.quad_order : 2 * o.W + 2;
  return gll_rule(q);
}

}  // namespace

SolveResult solve(const Problem& problem, const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (options.W < 0) throw std::invalid_argument("W must be non-negative");

  const Mesh mesh = Mesh::uniform(problem.left, problem.right, options.N);
  const QuadratureRule rule = rule_for(options);
  const LeastSquaresOperator op(problem, mesh, options.W, rule, options.basis);
  const BlockPreconditioner precond(mesh, problem.eps, options.W, rule, options.basis,
                                    options.precond);

  StoppingRule stop = options.stop;
  stop.W = options.W;
  const Eigen::VectorXd rhs = op.rhs();
  PcgResult run = pcg([&](const Eigen::VectorXd& u) { return op.apply_normal(u); },
                      [&](const Eigen::VectorXd& r) { return precond.apply_inverse(r); }, rhs,
                      Eigen::VectorXd::Zero(op.dim()), stop);

  SolveResult out{mesh, SemSolution(options.W, options.N, options.basis, std::move(run.x)),
                  std::move(run.report), 0.0, std::nullopt, 0.0};
  out.functional = op.functional_value(out.solution);
  if (problem.has_exact()) out.rel_error_pct = relative_error(out.solution, problem, mesh);
  out.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

ExtremeEigenvalues condition_estimate(const Problem& problem, const SolveOptions& options,
                                      int lanczos_steps, std::uint64_t seed) {
  const Mesh mesh = Mesh::uniform(problem.left, problem.right, options.N);
  const QuadratureRule rule = rule_for(options);
  const LeastSquaresOperator op(problem, mesh, options.W, rule, options.basis);
  const BlockPreconditioner precond(mesh, problem.eps, options.W, rule, options.basis,
                                    options.precond);
  return estimate_extremes([&](const Eigen::VectorXd& u) { return op.apply_normal(u); },
                           [&](const Eigen::VectorXd& r) { return precond.apply_inverse(r); },
                           op.dim(), lanczos_steps, seed);
}

}  // namespace lssem
