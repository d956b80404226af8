#include "lssem/basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lssem {

BasisKind parse_basis(std::string_view name) {
  if (name == "legendre") return BasisKind::legendre;
  if (name == "monomial") return BasisKind::monomial;
  throw std::invalid_argument("unknown basis '" + std::string(name) + "'");
}

std::string_view to_string(BasisKind kind) {
  return kind == BasisKind::legendre ? "legendre" : "monomial";
}

namespace {

// Closed forms at xi = +-1, where the Bonnet-based derivative formulas
// degenerate to 0/0.
Jet legendre_endpoint(int n, double sign) {
  const double dn = n;
  const double even = (n % 2 == 0) ? 1.0 : sign;
  const double odd = (n % 2 == 0) ? sign : 1.0;
  return {even, odd * dn * (dn + 1.0) / 2.0,
          even * (dn - 1.0) * dn * (dn + 1.0) * (dn + 2.0) / 8.0};
}

}  // namespace

void legendre_eval_all(int n, double xi, std::vector<Jet>& out) {
  out.resize(static_cast<std::size_t>(n) + 1);
  if (xi == 1.0 || xi == -1.0) {
    for (int k = 0; k <= n; ++k) out[k] = legendre_endpoint(k, xi);
    return;
  }
  out[0] = {1.0, 0.0, 0.0};
  if (n == 0) return;
  out[1] = {xi, 1.0, 0.0};
  for (int k = 1; k < n; ++k) {
    const double tk1 = 2.0 * k + 1.0;
    Jet& next = out[k + 1];
    next.value = (tk1 * xi * out[k].value - k * out[k - 1].value) / (k + 1.0);
    // P'_{k+1} - P'_{k-1} = (2k+1) P_k, differentiated once more for P''.
    next.d1 = out[k - 1].d1 + tk1 * out[k].value;
    next.d2 = out[k - 1].d2 + tk1 * out[k].d1;
  }
}

Jet legendre_eval(int n, double xi) {
  if (n < 0) throw std::invalid_argument("legendre_eval: negative degree");
  std::vector<Jet> all;
  legendre_eval_all(n, xi, all);
  return all.back();
}

void basis_eval_all(BasisKind kind, int W, double xi, std::vector<Jet>& out) {
  if (kind == BasisKind::legendre) {
    legendre_eval_all(W, xi, out);
    return;
  }
  out.assign(static_cast<std::size_t>(W) + 1, Jet{});
  // xi^i, i xi^(i-1), i(i-1) xi^(i-2) built from running powers.
  double p0 = 1.0, p1 = 0.0, p2 = 0.0;  // xi^i, xi^(i-1), xi^(i-2)
  for (int i = 0; i <= W; ++i) {
    out[i] = {p0, i * p1, i * (i - 1.0) * p2};
    p2 = p1;
    p1 = p0;
    p0 *= xi;
  }
}

QuadratureRule gll_rule(int q) {
  if (q < 2) throw std::invalid_argument("gll_rule: need at least 2 nodes");
  const int n = q - 1;
  QuadratureRule rule;
  rule.nodes.assign(q, 0.0);
  rule.weights.assign(q, 0.0);
  rule.nodes.front() = -1.0;
  rule.nodes.back() = 1.0;

  constexpr int kMaxNewton = 100;
  std::vector<Jet> jets;
  // Roots come in +-pairs; solve the left half and mirror.
  for (int i = 1; i < q / 2; ++i) {
    double x = -std::cos(std::numbers::pi * i / n);
    bool converged = false;
    for (int it = 0; it < kMaxNewton; ++it) {
      legendre_eval_all(n, x, jets);
      const double f = jets[n].d1;
      const double df = jets[n].d2;
      const double step = f / df;
      x -= step;
      if (std::abs(f) <= 1e-15 || std::abs(step) <= 1e-16) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw std::runtime_error("gll_rule: Newton iteration did not converge for q=" +
                               std::to_string(q));
    }
    rule.nodes[i] = x;
    rule.nodes[q - 1 - i] = -x;
  }
  // odd q: the middle node is exactly zero (already initialised)

  const double scale = 2.0 / (static_cast<double>(q) * n);
  for (int i = 0; i < q; ++i) {
    const double p = legendre_eval(n, rule.nodes[i]).value;
    rule.weights[i] = scale / (p * p);
  }
  return rule;
}

EvalMatrices eval_matrices(int W, const QuadratureRule& rule, BasisKind basis) {
  if (W < 0) throw std::invalid_argument("eval_matrices: negative order");
  const int q = rule.order();
  EvalMatrices m;
  m.W = W;
  m.basis = basis;
  m.D0.resize(q, W + 1);
  m.D1.resize(q, W + 1);
  m.D2.resize(q, W + 1);
  std::vector<Jet> jets;
  for (int j = 0; j < q; ++j) {
    basis_eval_all(basis, W, rule.nodes[j], jets);
    for (int i = 0; i <= W; ++i) {
      m.D0(j, i) = jets[i].value;
      m.D1(j, i) = jets[i].d1;
      m.D2(j, i) = jets[i].d2;
    }
  }
  return m;
}

}  // namespace lssem
