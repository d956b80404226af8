#include "lssem/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/LU>

namespace lssem {

std::vector<Jet> eval_solution(const SemSolution& sol, const Mesh& mesh,
                               std::span<const double> xs) {
  if (mesh.num_elements() != sol.N) {
    throw std::invalid_argument("eval_solution: mesh and solution disagree on N");
  }
  std::vector<Jet> out;
  out.reserve(xs.size());
  std::vector<Jet> phi;
  for (double x : xs) {
    const int l = mesh.locate(x);
    const double xi = std::clamp(mesh.to_reference(l, x), -1.0, 1.0);
    const double s = 2.0 / mesh.width(l);
    basis_eval_all(sol.basis, sol.W, xi, phi);
    const auto c = sol.element(l);
    Jet u;
    for (int i = 0; i <= sol.W; ++i) {
      u.value += c[i] * phi[i].value;
      u.d1 += c[i] * phi[i].d1;
      u.d2 += c[i] * phi[i].d2;
    }
    u.d1 *= s;
    u.d2 *= s * s;
    out.push_back(u);
  }
  return out;
}

namespace {

double weighted_square(const Jet& g, double eps2) {
  return g.value * g.value + eps2 * g.d1 * g.d1 + eps2 * eps2 * g.d2 * g.d2;
}

// Physical jets of element l of sol at every node of the rule.
std::vector<Jet> element_jets(const SemSolution& sol, const EvalMatrices& ev, int l, double h) {
  const Eigen::VectorXd c = sol.element(l);
  const Eigen::VectorXd v = ev.D0 * c;
  const Eigen::VectorXd d1 = ev.D1 * c;
  const Eigen::VectorXd d2 = ev.D2 * c;
  const double s = 2.0 / h;
  std::vector<Jet> out(static_cast<std::size_t>(v.size()));
  for (Eigen::Index j = 0; j < v.size(); ++j) out[j] = {v[j], s * d1[j], s * s * d2[j]};
  return out;
}

}  // namespace

double weighted_h2_norm(const std::function<Jet(double)>& g, double eps, const Mesh& mesh,
                        const QuadratureRule& rule) {
  const double eps2 = eps * eps;
  double sum = 0.0;
  for (int l = 0; l < mesh.num_elements(); ++l) {
    const double jac = mesh.jacobian(l);
    double local = 0.0;
    for (int j = 0; j < rule.order(); ++j) {
      local += rule.weights[j] * weighted_square(g(mesh.to_physical(l, rule.nodes[j])), eps2);
    }
    sum += jac * local;
  }
  return std::sqrt(sum);
}

double weighted_h2_norm(const SemSolution& sol, double eps, const Mesh& mesh,
                        const QuadratureRule& rule) {
  if (mesh.num_elements() != sol.N) {
    throw std::invalid_argument("weighted_h2_norm: mesh and solution disagree on N");
  }
  const EvalMatrices ev = eval_matrices(sol.W, rule, sol.basis);
  const double eps2 = eps * eps;
  double sum = 0.0;
  for (int l = 0; l < sol.N; ++l) {
    const auto jets = element_jets(sol, ev, l, mesh.width(l));
    double local = 0.0;
    for (int j = 0; j < rule.order(); ++j) local += rule.weights[j] * weighted_square(jets[j], eps2);
    sum += mesh.jacobian(l) * local;
  }
  return std::sqrt(sum);
}

double relative_error(const SemSolution& sol, const Problem& problem, const Mesh& mesh,
                      std::optional<QuadratureRule> rule) {
  if (!problem.has_exact()) {
    throw std::invalid_argument("relative_error: problem has no exact solution");
  }
  if (mesh.num_elements() != sol.N) {
    throw std::invalid_argument("relative_error: mesh and solution disagree on N");
  }
  const QuadratureRule r = rule ? *rule : gll_rule(std::max(kErrorQuadOrder, 2 * sol.W + 2));
  const EvalMatrices ev = eval_matrices(sol.W, r, sol.basis);
  const double eps2 = problem.eps * problem.eps;
  double num = 0.0;
  double den = 0.0;
  for (int l = 0; l < sol.N; ++l) {
    const auto jets = element_jets(sol, ev, l, mesh.width(l));
    double ln = 0.0;
    double ld = 0.0;
    for (int j = 0; j < r.order(); ++j) {
      const Jet u = problem.exact(mesh.to_physical(l, r.nodes[j]));
      const Jet e{jets[j].value - u.value, jets[j].d1 - u.d1, jets[j].d2 - u.d2};
      ln += r.weights[j] * weighted_square(e, eps2);
      ld += r.weights[j] * weighted_square(u, eps2);
    }
    num += mesh.jacobian(l) * ln;
    den += mesh.jacobian(l) * ld;
  }
  if (!(den > 0.0)) throw std::domain_error("relative_error: exact solution has zero norm");
  return 100.0 * std::sqrt(num / den);
}

SemSolution interpolate(const Mesh& mesh, int W, BasisKind basis,
                        const std::function<double(double)>& fn) {
  SemSolution sol(W, mesh.num_elements(), basis);
  if (W == 0) {
    for (int l = 0; l < sol.N; ++l) sol.element(l)[0] = fn(mesh.to_physical(l, 0.0));
    return sol;
  }
  const QuadratureRule nodes = gll_rule(W + 1);
  const EvalMatrices ev = eval_matrices(W, nodes, basis);
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(ev.D0);
  Eigen::VectorXd samples(W + 1);
  for (int l = 0; l < sol.N; ++l) {
    for (int j = 0; j <= W; ++j) samples[j] = fn(mesh.to_physical(l, nodes.nodes[j]));
    sol.element(l) = lu.solve(samples);
  }
  return sol;
}

}  // namespace lssem
