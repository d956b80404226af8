#include "lssem/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace lssem {

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::tolerance: return "tolerance";
    case StopReason::paper_criterion: return "paper_criterion";
    case StopReason::max_iters: return "max_iters";
  }
  return "max_iters";
}

StoppingRule StoppingRule::relative(double mu, int max_iters) {
  StoppingRule s;
  s.kind = StopKind::relative_tolerance;
  s.mu = mu;
  s.max_iters = max_iters;
  return s;
}

StoppingRule StoppingRule::paper(double C, int W, int max_iters) {
  StoppingRule s;
  s.kind = StopKind::paper_rule;
  s.C = C;
  s.W = W;
  s.max_iters = max_iters;
  return s;
}

double StoppingRule::paper_bound() const {
  return C * std::sqrt(std::log(static_cast<double>(W))) / W;
}

namespace {

void validate(const StoppingRule& stop) {
  if (stop.max_iters < 0) throw std::invalid_argument("max_iters must be >= 0");
  if (stop.kind == StopKind::relative_tolerance && !(stop.mu > 0.0)) {
    throw std::invalid_argument("relative tolerance must be positive");
  }
  if (stop.kind == StopKind::paper_rule) {
    if (!(stop.C > 0.0)) throw std::invalid_argument("paper rule constant C must be positive");
    if (stop.W < 2) throw std::invalid_argument("paper rule needs W >= 2");
  }
}

}  // namespace

PcgResult pcg(const LinearMap& apply_a, const LinearMap& apply_minv,
              const Eigen::VectorXd& rhs, const Eigen::VectorXd& x0,
              const StoppingRule& stop) {
  validate(stop);
  if (x0.size() != rhs.size()) throw std::invalid_argument("pcg: x0 and rhs differ in size");
  const auto n = static_cast<int>(rhs.size());
  const int max_iters = stop.max_iters > 0 ? stop.max_iters : std::max(1, 20 * n);

  PcgResult out;
  PcgReport& rep = out.report;
  Eigen::VectorXd& x = out.x;
  x = x0;
  Eigen::VectorXd r = rhs - apply_a(x);
  Eigen::VectorXd z = apply_minv(r);
  double rz = r.dot(z);
  const double rz0 = rz;
  const double mu2 = stop.mu * stop.mu;
  const double paper_bound = stop.kind == StopKind::paper_rule ? stop.paper_bound() : 0.0;

  auto record = [&](double rnorm) {
    rep.resid_history.push_back(rnorm);
    rep.precond_inner_history.push_back(rz);
    rep.final_resid_2norm = rnorm;
    rep.final_precond_inner = rz;
  };
  auto satisfied = [&](double rnorm) {
    if (stop.kind == StopKind::paper_rule) {
      if (rnorm <= paper_bound) {
        rep.stop_reason = StopReason::paper_criterion;
        return true;
      }
      return false;
    }
    if (rz <= mu2 * rz0) {
      rep.stop_reason = StopReason::tolerance;
      return true;
    }
    return false;
  };

  double rnorm = r.norm();
  record(rnorm);
  if (rz0 == 0.0) {
    rep.stop_reason = stop.kind == StopKind::paper_rule ? StopReason::paper_criterion
                                                        : StopReason::tolerance;
    rep.converged = true;
    return out;
  }
  if (satisfied(rnorm)) {
    rep.converged = true;
    return out;
  }

  Eigen::VectorXd p = z;
  for (int k = 1; k <= max_iters; ++k) {
    const Eigen::VectorXd q = apply_a(p);
    const double pq = p.dot(q);
    if (!std::isfinite(pq)) {
      throw std::runtime_error("pcg: non-finite value at iteration " + std::to_string(k));
    }
    if (pq <= 0.0) break;  // operator not positive on the search direction
    const double alpha = rz / pq;
    x.noalias() += alpha * p;
    r.noalias() -= alpha * q;
    z = apply_minv(r);
    const double rz_new = r.dot(z);
    if (!std::isfinite(rz_new)) {
      throw std::runtime_error("pcg: non-finite residual at iteration " + std::to_string(k));
    }
    const double beta = rz_new / rz;
    rz = rz_new;
    rnorm = r.norm();
    rep.iterations = k;
    record(rnorm);
    if (satisfied(rnorm) || rz == 0.0) {
      if (rep.stop_reason == StopReason::max_iters) {
        rep.stop_reason = stop.kind == StopKind::paper_rule ? StopReason::paper_criterion
                                                            : StopReason::tolerance;
      }
      rep.converged = true;
      return out;
    }
    p = z + beta * p;
  }
  rep.converged = false;
  rep.stop_reason = StopReason::max_iters;
  return out;
}

ExtremeEigenvalues estimate_extremes(const LinearMap& apply_a, const LinearMap& apply_minv,
                                     int dim, int iters, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("estimate_extremes: empty operator");
  if (iters < 10) throw std::invalid_argument("estimate_extremes: need at least 10 steps");
  const int steps = std::min(iters, dim);
  constexpr int kMaxRestarts = 3;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  ExtremeEigenvalues est;
  est.lambda_min = std::numeric_limits<double>::infinity();
  est.lambda_max = -std::numeric_limits<double>::infinity();

  for (int attempt = 0; attempt <= kMaxRestarts; ++attempt) {
    Eigen::VectorXd r(dim);
    for (int i = 0; i < dim; ++i) r[i] = unit(rng);

    // Columns of V are M-orthonormal Lanczos vectors, MV holds M V.
    Eigen::MatrixXd V(dim, steps);
    Eigen::MatrixXd MV(dim, steps);
    std::vector<double> alpha;
    std::vector<double> beta;  // beta[j] couples steps j and j+1

    Eigen::VectorXd z = apply_minv(r);
    double b = std::sqrt(r.dot(z));
    V.col(0) = z / b;
    MV.col(0) = r / b;

    bool breakdown = false;
    for (int j = 0; j < steps; ++j) {
      Eigen::VectorXd w = apply_a(V.col(j));
      const double a = V.col(j).dot(w);
      alpha.push_back(a);
      w -= a * MV.col(j);
      if (j > 0) w -= beta[j - 1] * MV.col(j - 1);
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i <= j; ++i) w -= V.col(i).dot(w) * MV.col(i);
      }
      if (j + 1 == steps) break;
      z = apply_minv(w);
      const double b2 = w.dot(z);
      double scale = 0.0;
      for (double v : alpha) scale = std::max(scale, std::abs(v));
      if (!(b2 > 0.0) || std::sqrt(b2) <= 1e-12 * scale) {
        breakdown = true;
        break;
      }
      b = std::sqrt(b2);
      beta.push_back(b);
      V.col(j + 1) = z / b;
      MV.col(j + 1) = w / b;
    }

    const auto k = static_cast<Eigen::Index>(alpha.size());
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), k);
    Eigen::VectorXd sub = Eigen::VectorXd::Zero(std::max<Eigen::Index>(k - 1, 0));
    for (Eigen::Index i = 0; i + 1 < k; ++i) sub[i] = beta[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& ritz = tri.eigenvalues();
    est.lambda_min = std::min(est.lambda_min, ritz.minCoeff());
    est.lambda_max = std::max(est.lambda_max, ritz.maxCoeff());
    est.lanczos_steps += static_cast<int>(k);

    if (!breakdown || k >= dim) break;
  }
  est.kappa = est.lambda_max / est.lambda_min;
  return est;
}

}  // namespace lssem
