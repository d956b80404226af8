// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "lssem/analysis.hpp"
#include "lssem/pipeline.hpp"
#include "test_support.hpp"

using namespace lssem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      if (failures_++ < 5) std::cout << "    failed: " << what << '\n';
    }
  }
  void note(const std::string& s) { notes_ << (notes_.tellp() > 0 ? "; " : "") << s; }
  Outcome outcome() const { return {pass_, notes_.str()}; }

 private:
  bool pass_ = true;
  int failures_ = 0;
  std::ostringstream notes_;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double rel_error_at(const Problem& p, int W, int N, StoppingRule stop = {}) {
  SolveOptions o;
  o.W = W;
  o.N = N;
  o.stop = stop;
  const SolveResult r = solve(p, o);
  return *r.rel_error_pct;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double r_squared(const std::vector<double>& x, const std::vector<double>& y) {
  const double b = slope(x, y);
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  const double a = my - b * mx;
  double ss_res = 0, ss_tot = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    ss_res += std::pow(y[i] - (a + b * x[i]), 2);
    ss_tot += std::pow(y[i] - my, 2);
  }
  return 1.0 - ss_res / ss_tot;
}

// 1: property suite
Outcome properties(Checker& c) {
  for (int q = 2; q <= 20; ++q) {
    const QuadratureRule r = gll_rule(q);
    double wsum = 0;
    for (double w : r.weights) wsum += w;
    c.expect(std::abs(wsum - 2.0) <= 1e-13, "GLL weight sum q=" + std::to_string(q));
    for (int k = 0; k <= 2 * q - 3; ++k) {
      double m = 0;
      for (int j = 0; j < q; ++j) m += r.weights[j] * std::pow(r.nodes[j], k);
      const double exact = (k % 2) ? 0.0 : 2.0 / (k + 1);
      c.expect(std::abs(m - exact) <= 1e-11, "GLL exactness q=" + std::to_string(q));
    }
  }
  {
    const QuadratureRule r = gll_rule(21);
    for (int i = 0; i <= 19; ++i)
      for (int k = 0; k + i <= r.exactness(); ++k) {
        if (k > 19) break;
        double s = 0;
        for (int j = 0; j < r.order(); ++j)
          s += r.weights[j] * legendre_eval(i, r.nodes[j]).value *
               legendre_eval(k, r.nodes[j]).value;
        c.expect(std::abs(s - (i == k ? 2.0 / (2 * i + 1) : 0.0)) <= 1e-13,
                 "Legendre orthogonality");
      }
  }
  std::mt19937_64 rng(101);
  {
    const Mesh m({-3.0, -1.0, 0.5, 0.6, 2.0});
    std::uniform_real_distribution<double> xi(-1.0, 1.0);
    for (int t = 0; t < 100; ++t) {
      const int l = static_cast<int>(rng() % 4);
      const double s = xi(rng);
      c.expect(std::abs(m.to_reference(l, m.to_physical(l, s)) - s) <= 1e-14,
               "affine map round trip");
    }
  }
  {
    Problem p;
    p.eps = 0.1;
    p.convection = 1.0;
    p.reaction = 1.0;
    p.forcing = [](double) { return 0.0; };
    const LeastSquaresOperator op(p, Mesh::uniform(0.0, 1.0, 2), 3, gll_rule(8));
    const Eigen::MatrixXd A = testing::dense_ls_matrix(0.1, 1.0, 1.0, 0.0, 1.0, 2, 3);
    const Eigen::MatrixXd AtA = A.transpose() * A;
    Eigen::MatrixXd applied(op.dim(), op.dim());
    for (int k = 0; k < op.dim(); ++k)
      applied.col(k) = op.apply_normal(Eigen::VectorXd::Unit(op.dim(), k));
    c.expect((applied - AtA).cwiseAbs().maxCoeff() <= 1e-10 * AtA.cwiseAbs().maxCoeff(),
             "A^T A vs dense oracle");
    c.expect((applied - applied.transpose()).cwiseAbs().maxCoeff() <=
                 1e-12 * applied.cwiseAbs().maxCoeff(),
             "A^T A symmetry");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(applied);
    c.expect(es.eigenvalues().minCoeff() >= -1e-10 * es.eigenvalues().maxCoeff(),
             "A^T A positive semidefinite");
  }
  {
    const Mesh mesh = Mesh::uniform(-1.0, 1.0, 4);
    const BlockPreconditioner M(mesh, 0.01, 8, gll_rule(18));
    for (int l = 0; l < 4; ++l) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M.block(l));
      c.expect(es.eigenvalues().minCoeff() > 0.0, "preconditioner block SPD");
    }
    for (int t = 0; t < 10; ++t) {
      const Eigen::VectorXd u = testing::random_vector(M.dim(), rng);
      c.expect((M.apply_inverse(M.apply(u)) - u).norm() <= 1e-11 * u.norm(),
               "preconditioner round trip");
    }
  }
  for (int d : {4, 17, 30}) {
    Eigen::MatrixXd B(d, d);
    for (int k = 0; k < d; ++k) B.col(k) = testing::random_vector(d, rng);
    const Eigen::MatrixXd A = B * B.transpose() + d * Eigen::MatrixXd::Identity(d, d);
    const Eigen::VectorXd b = testing::random_vector(d, rng);
    const PcgResult r = pcg([&](const Eigen::VectorXd& v) -> Eigen::VectorXd { return A * v; },
                            [](const Eigen::VectorXd& v) -> Eigen::VectorXd { return v; }, b,
                            Eigen::VectorXd::Zero(d), StoppingRule::relative(1e-14));
    c.expect(r.report.iterations <= d + 5 && (A * r.x - b).norm() <= 1e-10 * b.norm(),
             "PCG finite termination d=" + std::to_string(d));
  }
  {
    const Problem p = builtin("example4", 0.2);
    const LeastSquaresOperator op(p, Mesh::uniform(-1.0, 1.0, 3), 5, gll_rule(12));
    const Eigen::VectorXd u = testing::random_vector(op.dim(), rng);
    const Eigen::VectorXd grad = 2.0 * (op.apply_normal(u) - op.rhs());
    auto J = [&](const Eigen::VectorXd& v) {
      return op.functional_value(SemSolution(5, 3, BasisKind::legendre, v));
    };
    for (int t = 0; t < 10; ++t) {
      const Eigen::VectorXd d = testing::random_vector(op.dim(), rng);
      const double h = 1e-6;
      const double fd = (J(u + h * d) - J(u - h * d)) / (2 * h);
      c.expect(std::abs(fd - grad.dot(d)) <= 1e-5 * std::abs(grad.dot(d)),
               "gradient vs finite difference");
    }
  }
  double worst = 0.0;
  for (auto [N, W] : {std::pair{1, 4}, std::pair{4, 4}, std::pair{8, 6}}) {
    std::vector<double> coeffs(W + 1);
    for (int k = 0; k <= W; ++k) coeffs[k] = 1.0 / (k + 1) * ((k % 2) ? -1.0 : 1.0);
    for (double eps : {1.0, 0.5, 0.1}) {
      const Problem p = manufactured(coeffs, eps, 1.0, 1.0, 0.0, 1.0);
      const double e = rel_error_at(p, W, N);
      worst = std::max(worst, e);
      c.expect(e <= 1e-8, "manufactured N=" + std::to_string(N) + " W=" +
                              std::to_string(W) + " eps=" + sci(eps) + " err=" + sci(e));
    }
  }
  c.note("worst manufactured rel_error_pct=" + sci(worst));
  return c.outcome();
}

// 2: example1, p, eps = 0.1
Outcome example1_resolved(Checker& c) {
  const Problem p = builtin("example1", 0.1);
  std::vector<double> errs;
  for (int W = 4; W <= 20; W += 2) errs.push_back(rel_error_at(p, W, 1));
  const double decades = std::log10(errs.front()) - std::log10(errs.back());
  c.expect(errs.front() >= 1e-1, "error at W=4 >= 1e-1");
  c.expect(errs.back() <= 1e-3, "error at W=20 <= 1e-3");
  c.expect(decades >= 4.0, "at least 4 decades of decrease");
  c.note("W=4: " + sci(errs.front()) + "%, W=20: " + sci(errs.back()) +
         "%, decades=" + sci(decades));
  return c.outcome();
}

// 3: example1, p, eps = 1e-3 and 1e-4
Outcome example1_unresolved(Checker& c) {
  for (double eps : {1e-3, 1e-4}) {
    const double e = rel_error_at(builtin("example1", eps), 40, 1);
    c.expect(e >= 1e-3, "eps=" + sci(eps) + " error >= 1e-3");
    c.note("eps=" + sci(eps) + ": " + sci(e) + "%");
  }
  return c.outcome();
}

// 4: example2, hp, N = W
Outcome example2_hp(Checker& c) {
  const Problem p = builtin("example2", 0.1);
  std::vector<double> Ws, logs;
  std::string trail;
  for (int W : {8, 16, 24, 32}) {
    const double e = rel_error_at(p, W, W);
    Ws.push_back(W);
    logs.push_back(std::log10(e));
    trail += (trail.empty() ? "" : ", ") + std::string("W=") + std::to_string(W) + ": " + sci(e);
  }
  const double r2 = r_squared(Ws, logs);
  c.expect(std::pow(10.0, logs.back()) <= 1e-8, "error at W=32 <= 1e-8");
  c.expect(r2 >= 0.9, "straight-line fit R^2 >= 0.9 (got " + sci(r2) + ")");
  c.note(trail + "; R^2=" + sci(r2));
  return c.outcome();
}

// 5: example3, p, eps = 0.1
Outcome example3_p(Checker& c) {
  const Problem p = builtin("example3", 0.1);
  std::vector<int> Ws;
  std::vector<double> errs;
  for (int W = 14; W <= 40; W += 2) {
    Ws.push_back(W);
    errs.push_back(rel_error_at(p, W, 1));
  }
  // Machine floor of the pipeline: the smallest error reached once the
  // error has stopped decreasing (the tail of the sweep).
  const double floor_level = *std::min_element(errs.end() - 4, errs.end());
  const double target = std::max(1e-10, floor_level);
  c.expect(errs.back() <= target, "error at W=40 <= max(1e-10, floor)");

  // Shape: second differences of log10(error) on the pre-floor part of the
  // sweep (error above 1e-10 %).
  std::vector<double> logs;
  for (size_t i = 0; i < errs.size() && errs[i] > 1e-10; ++i) logs.push_back(std::log10(errs[i]));
  c.expect(logs.size() >= 4, "at least 4 pre-floor points");
  double worst = -1e300;
  for (size_t i = 1; i + 1 < logs.size(); ++i) {
    const double d2 = logs[i + 1] - 2 * logs[i] + logs[i - 1];
    worst = std::max(worst, d2);
    c.expect(d2 < 0.0, "second difference at W=" + std::to_string(Ws[i]));
  }
  c.note("W=40: " + sci(errs.back()) + "%, floor=" + sci(floor_level) + "%, pre-floor points=" +
         std::to_string(logs.size()) + ", max second difference=" + sci(worst));
  return c.outcome();
}

// 6: example4, hp, N = W
Outcome example4_hp(Checker& c) {
  for (auto [eps, W] : {std::pair{0.1, 32}, std::pair{0.01, 40}}) {
    const double e = rel_error_at(builtin("example4", eps), W, W);
    c.expect(e <= 1e-8, "eps=" + sci(eps) + " W=" + std::to_string(W));
    c.note("eps=" + sci(eps) + " W=" + std::to_string(W) + ": " + sci(e) + "%");
  }
  return c.outcome();
}

// 7: condition number scaling
Outcome kappa_scaling(Checker& c) {
  std::vector<double> le, lk;
  SolveOptions o;
  o.W = 8;
  o.N = 4;
  std::string trail;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    const double k = condition_estimate(builtin("example3", eps), o).kappa;
    le.push_back(std::log10(eps));
    lk.push_back(std::log10(k));
    trail += (trail.empty() ? "" : ", ") + std::string("eps=") + sci(eps) + ": " + sci(k);
  }
  const double s = slope(le, lk);
  c.expect(s >= -2.6 && s <= -1.4, "log-log slope in [-2.6, -1.4]");
  const double k8 = std::pow(10.0, lk[0]);
  o.W = 16;
  const double k16 = condition_estimate(builtin("example3", 0.1), o).kappa;
  c.expect(k16 / k8 <= 3.0, "kappa(W=16)/kappa(W=8) <= 3");
  c.note(trail + "; slope=" + sci(s) + "; kappa(16)/kappa(8)=" + sci(k16 / k8));
  return c.outcome();
}

// 8: preconditioner effectiveness
Outcome preconditioner_effect(Checker& c) {
  const Problem p = builtin("example3", 0.01);
  SolveOptions o;
  o.W = 16;
  o.N = 8;
  const int block = solve(p, o).report.iterations;
  o.precond = PrecondKind::identity;
  const int identity = solve(p, o).report.iterations;
  c.expect(block < 0.5 * identity, "block iterations < 50% of identity");
  c.note("block=" + std::to_string(block) + " identity=" + std::to_string(identity));
  return c.outcome();
}

// 9: paper stopping rule
Outcome paper_stop(Checker& c) {
  const Problem p = builtin("example1", 0.1);
  SolveOptions o;
  o.W = 16;
  const SolveResult tight = solve(p, o);
  o.stop = StoppingRule::paper(1.0, 16);
  const SolveResult loose = solve(p, o);
  const double bound = std::sqrt(std::log(16.0)) / 16.0;
  c.expect(loose.report.converged && loose.report.final_resid_2norm <= bound,
           "terminates with |R| <= sqrt(ln W)/W");
  const double ratio = *loose.rel_error_pct / *tight.rel_error_pct;
  c.expect(ratio <= 100.0, "error within factor 100 of the mu=1e-14 run (ratio " + sci(ratio) + ")");
  c.note("iterations=" + std::to_string(loose.report.iterations) + " |R|=" +
         sci(loose.report.final_resid_2norm) + " bound=" + sci(bound) + " |R0|=" +
         sci(loose.report.resid_history.front()) + " err=" + sci(*loose.rel_error_pct) +
         "% vs " + sci(*tight.rel_error_pct) + "%");
  return c.outcome();
}

// 10: determinism of the CLI output for the runs behind criteria 2-7
Outcome determinism(Checker& c) {
  const std::vector<std::string> runs = {
      "study --example example1 --mode p --epsilon 0.1 --W 4,6,8,10,12,14,16,18,20",
      "study --example example1 --mode p --epsilon 0.0001,0.001 --W 40",
      "study --example example2 --mode hp --epsilon 0.1 --W 8,16,24,32",
      "study --example example3 --mode p --epsilon 0.1 --W 14,16,18,20,22,24,26,28,30,32,34,36,38,40",
      "study --example example4 --mode hp --epsilon 0.01,0.1 --W 32,40",
      "condnum --example example3 --mode hp --cn 0.5 --epsilon 0.001,0.01,0.1 --W 8",
      "condnum --example example3 --mode hp --cn 0.25 --epsilon 0.1 --W 16",
  };
  const auto dir = std::filesystem::temp_directory_path() / "lssem_acceptance";
  std::filesystem::create_directories(dir);
  auto slurp = [](const std::filesystem::path& f) {
    std::ifstream in(f, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  int identical = 0;
  for (size_t i = 0; i < runs.size(); ++i) {
    std::string out[2];
    for (int rep = 0; rep < 2; ++rep) {
      const auto file = dir / ("run" + std::to_string(i) + "_" + std::to_string(rep) + ".csv");
      const std::string cmd = std::string(LSSEM_CLI_PATH) + " " + runs[i] + " --out " +
                              file.string() + " >/dev/null 2>&1";
      const int status = std::system(cmd.c_str());
      c.expect(WIFEXITED(status) && WEXITSTATUS(status) == 0, "exit status of: " + runs[i]);
      out[rep] = slurp(file);
    }
    const bool same = !out[0].empty() && out[0] == out[1];
    identical += same;
    c.expect(same, "byte-identical CSV for: " + runs[i]);
  }
  std::filesystem::remove_all(dir);
  c.note(std::to_string(identical) + "/" + std::to_string(runs.size()) + " runs identical");
  return c.outcome();
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;  // 0: no stated runtime bound
    std::function<Outcome(Checker&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "property suite", 60, properties},
      {2, "example1 p-version eps=0.1 resolves the layer", 10, example1_resolved},
      {3, "example1 p-version eps=1e-3,1e-4 saturates", 30, example1_unresolved},
      {4, "example2 hp-version exponential decay", 120, example2_hp},
      {5, "example3 p-version super-exponential decay", 20, example3_p},
      {6, "example4 hp-version accuracy", 180, example4_hp},
      {7, "condition number scaling", 60, kappa_scaling},
      {8, "block preconditioner effectiveness", 0, preconditioner_effect},
      {9, "paper stopping rule reaches discretization accuracy", 0, paper_stop},
      {10, "deterministic CLI output", 0, determinism},
  };

  int failed = 0;
  for (const auto& cr : criteria) {
    Checker checker;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run(checker);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cr.budget_s > 0 && secs > cr.budget_s) {
      o.pass = false;
      o.detail += "; over runtime budget of " + sci(cr.budget_s) + " s";
    }
    if (!o.pass) ++failed;
    std::printf("[%s] criterion %d: %s (%.2f s) -- %s\n", o.pass ? "PASS" : "FAIL", cr.id,
                cr.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
