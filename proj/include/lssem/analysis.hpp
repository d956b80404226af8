#ifndef LSSEM_ANALYSIS_HPP
#define LSSEM_ANALYSIS_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lssem/assembly.hpp"
#include "lssem/basis.hpp"
#include "lssem/mesh.hpp"
#include "lssem/problem.hpp"

namespace lssem {

/// Default per-element rule for errors against closed-form solutions.
inline constexpr int kErrorQuadOrder = 64;

/// Values and physical derivatives of a spectral element function at xs.
/// Points on interior breakpoints use the left element.
std::vector<Jet> eval_solution(const SemSolution& sol, const Mesh& mesh,
                               std::span<const double> xs);

/// sqrt(|g|^2 + eps^2 |g'|^2 + eps^4 |g''|^2) over the mesh, one copy of
/// the rule per element.
double weighted_h2_norm(const std::function<Jet(double)>& g, double eps, const Mesh& mesh,
                        const QuadratureRule& rule);
double weighted_h2_norm(const SemSolution& sol, double eps, const Mesh& mesh,
                        const QuadratureRule& rule);

/// 100 |u_sem - u_exact|_{2,eps} / |u_exact|_{2,eps}. The error rule
/// defaults to max(64, 2W + 2) GLL nodes per element. Throws
/// std::invalid_argument when the problem has no exact solution.
double relative_error(const SemSolution& sol, const Problem& problem, const Mesh& mesh,
                      std::optional<QuadratureRule> rule = std::nullopt);

/// Elementwise interpolation of fn at W+1 GLL points: exact for
/// polynomials of degree <= W.
SemSolution interpolate(const Mesh& mesh, int W, BasisKind basis,
                        const std::function<double(double)>& fn);

/// One row of a convergence study.
struct ConvergenceRecord {
  std::string example;
  std::string mode;  // "p" or "hp"
  double eps = 0.0;
  int W = 0;
  int N = 1;
  int dof = 0;
  double rel_error_pct = 0.0;
  int pcg_iterations = 0;
  bool converged = false;
  double wall_time_seconds = 0.0;
  std::optional<double> kappa;
};

}  // namespace lssem

#endif  // LSSEM_ANALYSIS_HPP
