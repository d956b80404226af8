#ifndef LSSEM_BASIS_HPP
#define LSSEM_BASIS_HPP

#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace lssem {

/// Polynomial basis used for the per-element coefficient vectors.
enum class BasisKind { legendre, monomial };

BasisKind parse_basis(std::string_view name);
std::string_view to_string(BasisKind kind);

/// Value and first two derivatives of a scalar function at one point.
struct Jet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// P_n and its first two derivatives at xi, |xi| <= 1.
Jet legendre_eval(int n, double xi);

/// Fills out[0..n] with the jets of P_0..P_n at xi.
void legendre_eval_all(int n, double xi, std::vector<Jet>& out);

/// Jets of the W+1 basis functions of the given kind at xi.
void basis_eval_all(BasisKind kind, int W, double xi, std::vector<Jet>& out);

/// Gauss-Lobatto-Legendre rule on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int order() const { return static_cast<int>(nodes.size()); }
  /// Highest monomial degree integrated exactly (2q - 3).
  int exactness() const { return 2 * order() - 3; }
};

/// q-point GLL rule. Interior nodes are the roots of P'_{q-1}.
/// Throws std::invalid_argument for q < 2 and std::runtime_error if the
/// root iteration fails to converge.
QuadratureRule gll_rule(int q);

/// Values and reference derivatives of each basis function at each node of
/// a rule: (D0 c)_j = u(xi_j), (D1 c)_j = u'(xi_j), (D2 c)_j = u''(xi_j).
struct EvalMatrices {
  int W = 0;
  BasisKind basis = BasisKind::legendre;
  Eigen::MatrixXd D0;
  Eigen::MatrixXd D1;
  Eigen::MatrixXd D2;
};

EvalMatrices eval_matrices(int W, const QuadratureRule& rule, BasisKind basis);

}  // namespace lssem

#endif  // LSSEM_BASIS_HPP
