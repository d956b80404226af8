#include "lssem/assembly.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lssem {

Eigen::VectorXd ResidualVector::flatten() const {
  const Eigen::Index n_pde = pde.size();
  const Eigen::Index n_jump = jumps.size();
  Eigen::VectorXd out(n_pde + n_jump + 2);
  Eigen::Index k = 0;
  for (Eigen::Index l = 0; l < pde.rows(); ++l) {
    for (Eigen::Index j = 0; j < pde.cols(); ++j) out[k++] = pde(l, j);
  }
  for (Eigen::Index l = 0; l < jumps.rows(); ++l) {
    out[k++] = jumps(l, 0);
    out[k++] = jumps(l, 1);
  }
  out[k++] = bnd[0];
  out[k++] = bnd[1];
  return out;
}

LeastSquaresOperator::LeastSquaresOperator(const Problem& problem, const Mesh& mesh, int W,
                                           const QuadratureRule& rule, BasisKind basis)
    : mesh_(mesh),
      rule_(rule),
      basis_(basis),
      W_(W),
      N_(mesh.num_elements()),
      q_(rule.order()) {
  if (W < 0) throw std::invalid_argument("LeastSquaresOperator: negative order");
  if (q_ < 2 * W + 2) {
    throw std::invalid_argument("quadrature rule has " + std::to_string(q_) +
                                " nodes; need at least 2W+2 = " + std::to_string(2 * W + 2));
  }
  const double span = problem.right - problem.left;
  if (std::abs(mesh.left() - problem.left) > 1e-12 * span ||
      std::abs(mesh.right() - problem.right) > 1e-12 * span) {
    throw std::invalid_argument("mesh does not cover the problem domain");
  }
  if (!problem.forcing) throw std::invalid_argument("problem has no forcing term");

  eval_ = eval_matrices(W, rule, basis);
  // GLL rules contain both endpoints as first and last node.
  value_left_ = eval_.D0.row(0);
  value_right_ = eval_.D0.row(q_ - 1);
  dref_left_ = eval_.D1.row(0);
  dref_right_ = eval_.D1.row(q_ - 1);

  const double eps2 = problem.eps * problem.eps;
  local_.reserve(N_);
  inv_jac_.resize(N_);
  data_ = Eigen::VectorXd::Zero(num_rows());
  for (int l = 0; l < N_; ++l) {
    const double h = mesh.width(l);
    const double s = 2.0 / h;
    inv_jac_[l] = s;
    Eigen::MatrixXd op = (-eps2 * s * s) * eval_.D2 + (problem.convection * s) * eval_.D1 +
                         problem.reaction * eval_.D0;
    for (int j = 0; j < q_; ++j) {
      const double sw = std::sqrt(rule.weights[j] * 0.5 * h);
      op.row(j) *= sw;
      data_[l * q_ + j] = sw * problem.forcing(mesh.to_physical(l, rule.nodes[j]));
    }
    local_.push_back(std::move(op));
  }
  data_[num_rows() - 2] = problem.alpha;
  data_[num_rows() - 1] = problem.beta;
}

void LeastSquaresOperator::check_dim(const Eigen::VectorXd& u) const {
  if (u.size() != dim()) {
    throw std::invalid_argument("dimension mismatch: got " + std::to_string(u.size()) +
                                ", expected " + std::to_string(dim()));
  }
}

Eigen::VectorXd LeastSquaresOperator::apply(const Eigen::VectorXd& u) const {
  check_dim(u);
  const int nc = W_ + 1;
  Eigen::VectorXd r(num_rows());
  for (int l = 0; l < N_; ++l) {
    r.segment(l * q_, q_).noalias() = local_[l] * u.segment(l * nc, nc);
  }
  Eigen::Index row = static_cast<Eigen::Index>(N_) * q_;
  for (int k = 0; k + 1 < N_; ++k) {
    const auto ul = u.segment(k * nc, nc);
    const auto ur = u.segment((k + 1) * nc, nc);
    r[row++] = value_right_.dot(ul) - value_left_.dot(ur);
    r[row++] = inv_jac_[k] * dref_right_.dot(ul) - inv_jac_[k + 1] * dref_left_.dot(ur);
  }
  r[row++] = value_left_.dot(u.segment(0, nc));
  r[row++] = value_right_.dot(u.segment((N_ - 1) * nc, nc));
  return r;
}

Eigen::VectorXd LeastSquaresOperator::apply_transpose(const Eigen::VectorXd& r) const {
  if (r.size() != num_rows()) {
    throw std::invalid_argument("apply_transpose: dimension mismatch");
  }
  const int nc = W_ + 1;
  Eigen::VectorXd y(dim());
  for (int l = 0; l < N_; ++l) {
    y.segment(l * nc, nc).noalias() = local_[l].transpose() * r.segment(l * q_, q_);
  }
  Eigen::Index row = static_cast<Eigen::Index>(N_) * q_;
  for (int k = 0; k + 1 < N_; ++k) {
    const double rv = r[row++];
    const double rd = r[row++];
    y.segment(k * nc, nc) += rv * value_right_.transpose() +
                             (rd * inv_jac_[k]) * dref_right_.transpose();
    y.segment((k + 1) * nc, nc) -= rv * value_left_.transpose() +
                                   (rd * inv_jac_[k + 1]) * dref_left_.transpose();
  }
  y.segment(0, nc) += r[row++] * value_left_.transpose();
  y.segment((N_ - 1) * nc, nc) += r[row++] * value_right_.transpose();
  return y;
}

Eigen::VectorXd LeastSquaresOperator::apply_normal(const Eigen::VectorXd& u) const {
  return apply_transpose(apply(u));
}

ResidualVector LeastSquaresOperator::residual(const SemSolution& sol) const {
  if (sol.W != W_ || sol.N != N_ || sol.basis != basis_) {
    throw std::invalid_argument("residual: solution does not match the operator layout");
  }
  const Eigen::VectorXd r = apply(sol.coeffs) - data_;
  ResidualVector out;
  out.pde.resize(N_, q_);
  for (int l = 0; l < N_; ++l) out.pde.row(l) = r.segment(l * q_, q_).transpose();
  out.jumps.resize(N_ - 1, 2);
  Eigen::Index row = static_cast<Eigen::Index>(N_) * q_;
  for (int k = 0; k + 1 < N_; ++k) {
    out.jumps(k, 0) = r[row++];
    out.jumps(k, 1) = r[row++];
  }
  out.bnd = {r[row], r[row + 1]};
  return out;
}

Eigen::MatrixXd LeastSquaresOperator::dense_matrix() const {
  if (dim() > 2000) throw std::length_error("dense_matrix: operator too large");
  Eigen::MatrixXd A(num_rows(), dim());
  Eigen::VectorXd e = Eigen::VectorXd::Zero(dim());
  for (int i = 0; i < dim(); ++i) {
    e[i] = 1.0;
    A.col(i) = apply(e);
    e[i] = 0.0;
  }
  return A;
}

ResidualVector residual(const SemSolution& sol, const Problem& problem, const Mesh& mesh,
                        const QuadratureRule& rule) {
  return LeastSquaresOperator(problem, mesh, sol.W, rule, sol.basis).residual(sol);
}

double functional_value(const SemSolution& sol, const Problem& problem, const Mesh& mesh,
                        const QuadratureRule& rule) {
  return residual(sol, problem, mesh, rule).squared_norm();
}

}  // namespace lssem
