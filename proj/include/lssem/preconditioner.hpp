#ifndef LSSEM_PRECONDITIONER_HPP
#define LSSEM_PRECONDITIONER_HPP

#include <string_view>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "lssem/basis.hpp"
#include "lssem/mesh.hpp"

namespace lssem {

enum class PrecondKind { block, jacobi, identity };

PrecondKind parse_precond(std::string_view name);
std::string_view to_string(PrecondKind kind);

/// Element-local form M = sum_l eps^4 |u_l''|^2 + |u_l|^2. Jump and boundary
/// terms are left out, so M is block diagonal with one (W+1)x(W+1) SPD
/// block per element.
///
/// The jacobi kind keeps only diag(M); identity ignores M altogether and is
/// there for comparisons.
class BlockPreconditioner {
 public:
  /// Throws std::invalid_argument if the rule cannot integrate degree-2W
  /// products exactly, std::runtime_error if a block fails to factorise.
  BlockPreconditioner(const Mesh& mesh, double eps, int W, const QuadratureRule& rule,
                      BasisKind basis = BasisKind::legendre,
                      PrecondKind kind = PrecondKind::block);

  PrecondKind kind() const { return kind_; }
  int dim() const { return N_ * (W_ + 1); }
  const Eigen::MatrixXd& block(int l) const { return blocks_[l]; }

  /// M u with the assembled blocks (regardless of kind).
  Eigen::VectorXd apply(const Eigen::VectorXd& u) const;
  /// z with M z = r for block, diag(M) z = r for jacobi, z = r for identity.
  Eigen::VectorXd apply_inverse(const Eigen::VectorXd& r) const;

 private:
  void check_dim(const Eigen::VectorXd& v) const;

  PrecondKind kind_;
  int W_;
  int N_;
  std::vector<Eigen::MatrixXd> blocks_;
  std::vector<Eigen::LLT<Eigen::MatrixXd>> factors_;
  Eigen::VectorXd inv_diag_;
};

}  // namespace lssem

#endif  // LSSEM_PRECONDITIONER_HPP
