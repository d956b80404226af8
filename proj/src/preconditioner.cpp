#include "lssem/preconditioner.hpp"

#include <stdexcept>
#include <string>

namespace lssem {

PrecondKind parse_precond(std::string_view name) {
  if (name == "block") return PrecondKind::block;
  if (name == "jacobi") return PrecondKind::jacobi;
  if (name == "identity") return PrecondKind::identity;
  throw std::invalid_argument("unknown preconditioner '" + std::string(name) + "'");
}

std::string_view to_string(PrecondKind kind) {
  switch (kind) {
    case PrecondKind::block: return "block";
    case PrecondKind::jacobi: return "jacobi";
    case PrecondKind::identity: return "identity";
  }
  return "block";
}

BlockPreconditioner::BlockPreconditioner(const Mesh& mesh, double eps, int W,
                                         const QuadratureRule& rule, BasisKind basis,
                                         PrecondKind kind)
    : kind_(kind), W_(W), N_(mesh.num_elements()) {
  if (W < 0) throw std::invalid_argument("BlockPreconditioner: negative order");
  if (rule.exactness() < 2 * W) {
    throw std::invalid_argument("BlockPreconditioner: rule not exact for degree 2W");
  }
  if (eps < 0.0) throw std::invalid_argument("BlockPreconditioner: negative eps");

  const EvalMatrices ev = eval_matrices(W, rule, basis);
  const Eigen::Map<const Eigen::VectorXd> w(rule.weights.data(), rule.order());
  // Reference-element Gram matrices; the Jacobian factors are applied per element.
  const Eigen::MatrixXd mass = ev.D0.transpose() * w.asDiagonal() * ev.D0;
  const Eigen::MatrixXd stiff2 = ev.D2.transpose() * w.asDiagonal() * ev.D2;
  const double eps4 = eps * eps * eps * eps;

  blocks_.reserve(N_);
  factors_.reserve(N_);
  inv_diag_.resize(dim());
  for (int l = 0; l < N_; ++l) {
    const double h = mesh.width(l);
    const double s = 2.0 / h;
    Eigen::MatrixXd M = (0.5 * h) * mass + (eps4 * s * s * s) * stiff2;
    M = 0.5 * (M + M.transpose());
    Eigen::LLT<Eigen::MatrixXd> llt(M);
    if (llt.info() != Eigen::Success) {
      throw std::runtime_error("BlockPreconditioner: block " + std::to_string(l) +
                               " is not positive definite");
    }
    inv_diag_.segment(l * (W + 1), W + 1) = M.diagonal().cwiseInverse();
    blocks_.push_back(std::move(M));
    factors_.push_back(std::move(llt));
  }
}

void BlockPreconditioner::check_dim(const Eigen::VectorXd& v) const {
  if (v.size() != dim()) throw std::invalid_argument("BlockPreconditioner: dimension mismatch");
}

Eigen::VectorXd BlockPreconditioner::apply(const Eigen::VectorXd& u) const {
  check_dim(u);
  const int nc = W_ + 1;
  Eigen::VectorXd y(dim());
  for (int l = 0; l < N_; ++l) {
    y.segment(l * nc, nc).noalias() = blocks_[l] * u.segment(l * nc, nc);
  }
  return y;
}

Eigen::VectorXd BlockPreconditioner::apply_inverse(const Eigen::VectorXd& r) const {
  check_dim(r);
  switch (kind_) {
    case PrecondKind::identity:
      return r;
    case PrecondKind::jacobi:
      return r.cwiseProduct(inv_diag_);
    case PrecondKind::block:
      break;
  }
  const int nc = W_ + 1;
  Eigen::VectorXd z(dim());
  for (int l = 0; l < N_; ++l) {
    z.segment(l * nc, nc) = factors_[l].solve(r.segment(l * nc, nc));
  }
  return z;
}

}  // namespace lssem
