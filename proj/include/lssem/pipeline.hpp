#ifndef LSSEM_PIPELINE_HPP
#define LSSEM_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string_view>

#include "lssem/analysis.hpp"
#include "lssem/assembly.hpp"
#include "lssem/preconditioner.hpp"
#include "lssem/problem.hpp"
#include "lssem/solver.hpp"

namespace lssem {

enum class Mode { p, hp };

Mode parse_mode(std::string_view name);
std::string_view to_string(Mode mode);

/// p: one element. hp: N = max(1, round(cn * W)).
int elements_for(Mode mode, int W, double cn = 1.0);

struct SolveOptions {
  int W = 8;
  int N = 1;
  BasisKind basis = BasisKind::legendre;
  PrecondKind precond = PrecondKind::block;
  StoppingRule stop;  // stop.W is overwritten with W for the paper rule
  int quad_order = 0;  // 0 selects 2W + 2
};

struct SolveResult {
  Mesh mesh;
  SemSolution solution;
  PcgReport report;
  double functional = 0.0;
  std::optional<double> rel_error_pct;
  double wall_time_seconds = 0.0;
};

/// Builds the uniform mesh, operator and preconditioner, runs PCG from
/// x0 = 0, and evaluates the functional and (if known) the relative error.
SolveResult solve(const Problem& problem, const SolveOptions& options);

/// Extreme eigenvalue estimate of the preconditioned normal operator.
ExtremeEigenvalues condition_estimate(const Problem& problem, const SolveOptions& options,
                                      int lanczos_steps = 100, std::uint64_t seed = 12345);

}  // namespace lssem

#endif  // LSSEM_PIPELINE_HPP
