#ifndef LSSEM_CLI_HPP
#define LSSEM_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "lssem/analysis.hpp"
#include "lssem/pipeline.hpp"

namespace lssem::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNoConvergence = 2;

/// Bad flags or flag combinations; maps to exit status 1.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string example = "example3";
  std::vector<double> eps = {0.1};
  std::vector<int> W = {8};
  Mode mode = Mode::p;
  double cn = 1.0;
  BasisKind basis = BasisKind::legendre;
  PrecondKind precond = PrecondKind::block;
  std::string stop = "tol";  // "tol" or "paper"
  double tol = 1e-14;
  double C = 1.0;
  int max_iters = 0;
  int quad_order = 0;
  std::uint64_t seed = 12345;
  std::string svg;
  bool timing = false;  // adds wall_time_seconds to study rows
  bool kappa = false;   // adds a condition estimate to study rows

  // --example manufactured: exact solution sum_k poly[k] x^k
  std::vector<double> poly;
  double convection = 0.0;
  double reaction = 1.0;
  double left = 0.0;
  double right = 1.0;
};

/// Throws UsageError on empty or non-increasing sweeps, eps outside (0, 1],
/// cn <= 0, an unknown stop rule, or a negative order.
void validate(const RunConfig& cfg);

Problem make_problem(const RunConfig& cfg, double eps);
SolveOptions make_options(const RunConfig& cfg, int W);

/// Comma-separated lists; an empty string yields an empty list. Throws
/// UsageError on a malformed entry.
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

/// Fixed 17-significant-digit formatting used in every CSV cell.
std::string format_double(double v);

/// Solves one instance (first eps, first W). Writes x,u_sem,u_exact,
/// pointwise_error samples to csv and one summary line to log.
int cmd_solve(const RunConfig& cfg, std::ostream& csv, std::ostream& log);

/// One ConvergenceRecord row per (eps, W), eps-major. Writes cfg.svg when set.
int cmd_study(const RunConfig& cfg, std::ostream& csv, std::ostream& log);

/// epsilon,W,N,... kappa rows per (eps, W).
int cmd_condnum(const RunConfig& cfg, std::ostream& csv, std::ostream& log);

std::vector<ConvergenceRecord> run_study(const RunConfig& cfg);
void write_study_csv(const std::vector<ConvergenceRecord>& rows, bool timing, bool kappa,
                     std::ostream& os);
/// Semi-log plot of rel_error_pct against W, one polyline per eps.
void write_svg(const std::vector<ConvergenceRecord>& rows, std::ostream& os);

}  // namespace lssem::cli

#endif  // LSSEM_CLI_HPP
