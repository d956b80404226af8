#ifndef LSSEM_SOLVER_HPP
#define LSSEM_SOLVER_HPP

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace lssem {

using LinearMap = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

enum class StopKind { relative_tolerance, paper_rule };
enum class StopReason { tolerance, paper_criterion, max_iters };

std::string_view to_string(StopReason reason);

/// relative_tolerance: stop once <z,r> <= mu^2 <z_0,r_0>.
/// paper_rule: stop once |r|_2 <= C sqrt(ln W) / W (W >= 2).
/// max_iters = 0 means 20 * dim.
struct StoppingRule {
  StopKind kind = StopKind::relative_tolerance;
  double mu = 1e-14;
  double C = 1.0;
  int W = 2;
  int max_iters = 0;

  static StoppingRule relative(double mu, int max_iters = 0);
  static StoppingRule paper(double C, int W, int max_iters = 0);

  /// Residual 2-norm bound of the paper rule.
  double paper_bound() const;
};

struct PcgReport {
  int iterations = 0;
  double final_resid_2norm = 0.0;
  double final_precond_inner = 0.0;
  bool converged = false;
  StopReason stop_reason = StopReason::max_iters;
  // Entry 0 is the initial residual; entry k follows iteration k.
  std::vector<double> resid_history;
  std::vector<double> precond_inner_history;
};

struct PcgResult {
  Eigen::VectorXd x;
  PcgReport report;
};

/// Preconditioned conjugate gradients for A x = rhs with SPD preconditioner
/// M (apply_minv computes M^{-1} r). Residuals are updated by recurrence.
/// Throws std::invalid_argument for a bad rule and std::runtime_error when
/// the iteration produces non-finite values.
PcgResult pcg(const LinearMap& apply_a, const LinearMap& apply_minv,
              const Eigen::VectorXd& rhs, const Eigen::VectorXd& x0,
              const StoppingRule& stop);

struct ExtremeEigenvalues {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double kappa = 0.0;
  int lanczos_steps = 0;
};

/// Extreme Ritz values of M^{-1} A by Lanczos in the M inner product, with
/// full reorthogonalisation. On early breakdown the run restarts from a
/// fresh random vector (at most three times) and Ritz values are pooled.
ExtremeEigenvalues estimate_extremes(const LinearMap& apply_a, const LinearMap& apply_minv,
                                     int dim, int iters = 100, std::uint64_t seed = 12345);

}  // namespace lssem

#endif  // LSSEM_SOLVER_HPP
