#ifndef LSSEM_PROBLEM_HPP
#define LSSEM_PROBLEM_HPP

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lssem/basis.hpp"

namespace lssem {

/// -eps^2 u'' + convection u' + reaction u = f on (left, right),
/// u(left) = alpha, u(right) = beta.
struct Problem {
  std::string name;
  double eps = 1.0;
  double convection = 0.0;
  double reaction = 1.0;
  double left = 0.0;
  double right = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  std::function<double(double)> forcing;
  /// Exact solution with its first two derivatives, when known.
  std::function<Jet(double)> exact;

  bool has_exact() const { return static_cast<bool>(exact); }

  /// L applied to the exact solution at x.
  double apply_operator(const Jet& u) const {
    return -eps * eps * u.d2 + convection * u.d1 + reaction * u.value;
  }
};

inline constexpr std::string_view kBuiltinNames[] = {"example1", "example2", "example3",
                                                     "example4"};

/// The four benchmark boundary-layer problems. Exact solutions are written
/// with non-positive exponents only, so they stay finite for tiny eps.
/// Throws std::invalid_argument for an unknown name or eps outside (0, 1].
Problem builtin(std::string_view name, double eps);

/// Problem whose exact solution is the polynomial sum_k coeffs[k] x^k.
Problem manufactured(std::vector<double> coeffs, double eps, double convection,
                     double reaction, double left, double right);

}  // namespace lssem

#endif  // LSSEM_PROBLEM_HPP
