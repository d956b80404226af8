#ifndef LSSEM_ASSEMBLY_HPP
#define LSSEM_ASSEMBLY_HPP

#include <vector>

#include <Eigen/Dense>

#include "lssem/basis.hpp"
#include "lssem/mesh.hpp"
#include "lssem/problem.hpp"

namespace lssem {

/// Per-element polynomial coefficients, stored element-major in one flat
/// vector: coeffs[l * (W + 1) + i] multiplies basis function i on element l.
struct SemSolution {
  int W = 0;
  int N = 1;
  BasisKind basis = BasisKind::legendre;
  Eigen::VectorXd coeffs;

  SemSolution() = default;
  SemSolution(int W_, int N_, BasisKind basis_)
      : W(W_), N(N_), basis(basis_), coeffs(Eigen::VectorXd::Zero(N_ * (W_ + 1))) {}
  SemSolution(int W_, int N_, BasisKind basis_, Eigen::VectorXd c)
      : W(W_), N(N_), basis(basis_), coeffs(std::move(c)) {}

  int dim() const { return N * (W + 1); }
  auto element(int l) { return coeffs.segment(l * (W + 1), W + 1); }
  auto element(int l) const { return coeffs.segment(l * (W + 1), W + 1); }
};

/// Components of the least-squares residual A u - b.
struct ResidualVector {
  Eigen::MatrixXd pde;    // N x q, quadrature-weighted PDE residual samples
  Eigen::MatrixXd jumps;  // (N-1) x 2, value and physical-derivative jumps
  Eigen::Vector2d bnd = Eigen::Vector2d::Zero();  // u(a) - alpha, u(b) - beta

  double squared_norm() const {
    return pde.squaredNorm() + jumps.squaredNorm() + bnd.squaredNorm();
  }
  Eigen::VectorXd flatten() const;
};

/// The discrete residual map bound to one (problem, mesh, W, rule, basis).
///
/// Rows of A, in order: the N*q PDE rows sqrt(w_j h_l/2) (L u_l)(x_lj),
/// then for every interior breakpoint the value jump and the physical
/// derivative jump, then the two boundary values. The data vector b carries
/// the matching forcing samples and boundary values and zeros in the jump
/// rows, so the functional is |A u - b|^2 and its minimiser solves
/// A^T A u = A^T b.
class LeastSquaresOperator {
 public:
  /// Throws std::invalid_argument when the rule has fewer than 2W+2 nodes
  /// or the mesh does not cover the problem domain.
  LeastSquaresOperator(const Problem& problem, const Mesh& mesh, int W,
                       const QuadratureRule& rule, BasisKind basis = BasisKind::legendre);

  int W() const { return W_; }
  int num_elements() const { return N_; }
  int dim() const { return N_ * (W_ + 1); }
  int num_rows() const { return N_ * q_ + 2 * (N_ - 1) + 2; }
  BasisKind basis() const { return basis_; }
  const Mesh& mesh() const { return mesh_; }
  const QuadratureRule& rule() const { return rule_; }
  const EvalMatrices& eval() const { return eval_; }

  /// A u (no data).
  Eigen::VectorXd apply(const Eigen::VectorXd& u) const;
  /// A^T r for r of length num_rows().
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& r) const;
  /// A^T A u, matrix-free.
  Eigen::VectorXd apply_normal(const Eigen::VectorXd& u) const;
  /// The data vector b.
  const Eigen::VectorXd& data() const { return data_; }
  /// A^T b.
  Eigen::VectorXd rhs() const { return apply_transpose(data_); }

  ResidualVector residual(const SemSolution& sol) const;
  double functional_value(const SemSolution& sol) const {
    return residual(sol).squared_norm();
  }

  /// Explicit A, for testing and spectral probes. Refuses dim() > 2000.
  Eigen::MatrixXd dense_matrix() const;

 private:
  void check_dim(const Eigen::VectorXd& u) const;

  Mesh mesh_;
  QuadratureRule rule_;
  EvalMatrices eval_;
  BasisKind basis_;
  int W_;
  int N_;
  int q_;
  // Per element: sqrt(w_j h_l / 2) * (L restricted to the element), q x (W+1).
  std::vector<Eigen::MatrixXd> local_;
  // Endpoint rows: values at xi = -1, +1 and physical derivatives there.
  Eigen::RowVectorXd value_left_;
  Eigen::RowVectorXd value_right_;
  Eigen::RowVectorXd dref_left_;
  Eigen::RowVectorXd dref_right_;
  std::vector<double> inv_jac_;  // 2 / h_l
  Eigen::VectorXd data_;
};

ResidualVector residual(const SemSolution& sol, const Problem& problem, const Mesh& mesh,
                        const QuadratureRule& rule);
double functional_value(const SemSolution& sol, const Problem& problem, const Mesh& mesh,
                        const QuadratureRule& rule);

}  // namespace lssem

#endif  // LSSEM_ASSEMBLY_HPP
