#include "lssem/problem.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lssem {

namespace {

Problem example1(double eps) {
  // Layer at x = 0 on (0, 1).
  const double e = std::numbers::e;
  const double tail = std::exp(-1.0 / eps);
  Problem p;
  p.left = 0.0;
  p.right = 1.0;
  p.forcing = [eps, e, tail](double x) {
    return (1.0 - eps * eps) * std::exp(x) - x * (e + tail) - 2.0 * (1.0 - x);
  };
  p.exact = [eps, e, tail](double x) {
    const double layer = std::exp(-x / eps);
    const double ex = std::exp(x);
    return Jet{layer + ex - x * (e + tail) - 2.0 * (1.0 - x),
               -layer / eps + ex - (e + tail) + 2.0, layer / (eps * eps) + ex};
  };
  return p;
}

Problem example2(double eps) {
  // sinh((x+1)/eps)/sinh(2/eps) - (x+1)/2, layer at x = 1.
  const double denom = 1.0 - std::exp(-4.0 / eps);
  Problem p;
  p.left = -1.0;
  p.right = 1.0;
  p.forcing = [](double x) { return -0.5 * (x + 1.0); };
  p.exact = [eps, denom](double x) {
    const double ep = std::exp((x - 1.0) / eps);
    const double em = std::exp(-(x + 3.0) / eps);
    const double s = (ep - em) / denom;
    const double c = (ep + em) / denom;
    return Jet{s - 0.5 * (x + 1.0), c / eps - 0.5, s / (eps * eps)};
  };
  return p;
}

Problem example3(double eps) {
  // 1 - cosh(x/eps)/cosh(1/eps), layers at both ends.
  const double denom = 1.0 + std::exp(-2.0 / eps);
  Problem p;
  p.left = -1.0;
  p.right = 1.0;
  p.forcing = [](double) { return 1.0; };
  p.exact = [eps, denom](double x) {
    const double ep = std::exp((x - 1.0) / eps);
    const double em = std::exp(-(x + 1.0) / eps);
    const double c = (ep + em) / denom;
    const double s = (ep - em) / denom;
    return Jet{1.0 - c, -s / eps, -c / (eps * eps)};
  };
  return p;
}

Problem example4(double eps) {
  // (e^{(x+1)/eps} - 1)/(e^{2/eps} - 1) - (x+1)/2 under -eps^2 u'' + u'.
  // The exponential part is not annihilated by this operator (its layer
  // scale is eps, not eps^2), so f is L applied to the exact solution and
  // reduces to -1/2 only at eps = 1.
  const double tail = std::exp(-2.0 / eps);
  const double denom = 1.0 - tail;
  Problem p;
  p.left = -1.0;
  p.right = 1.0;
  p.convection = 1.0;
  p.reaction = 0.0;
  p.forcing = [eps, denom](double x) {
    return (1.0 / eps - 1.0) * std::exp((x - 1.0) / eps) / denom - 0.5;
  };
  p.exact = [eps, tail, denom](double x) {
    const double ep = std::exp((x - 1.0) / eps);
    return Jet{(ep - tail) / denom - 0.5 * (x + 1.0), ep / (eps * denom) - 0.5,
               ep / (eps * eps * denom)};
  };
  return p;
}

}  // namespace

Problem builtin(std::string_view name, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1]");
  }
  Problem p;
  if (name == "example1") {
    p = example1(eps);
  } else if (name == "example2") {
    p = example2(eps);
  } else if (name == "example3") {
    p = example3(eps);
  } else if (name == "example4") {
    p = example4(eps);
  } else {
    throw std::invalid_argument("unknown example '" + std::string(name) + "'");
  }
  p.name = std::string(name);
  p.eps = eps;
  p.alpha = 0.0;
  p.beta = 0.0;
  return p;
}

Problem manufactured(std::vector<double> coeffs, double eps, double convection,
                     double reaction, double left, double right) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  if (!(eps > 0.0)) throw std::invalid_argument("manufactured: eps must be positive");
  if (!(left < right)) throw std::invalid_argument("manufactured: need left < right");

  auto eval = [c = coeffs](double x) {
    Jet u;
    // Horner for p, p', p'' together.
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      u.d2 = u.d2 * x + 2.0 * u.d1;
      u.d1 = u.d1 * x + u.value;
      u.value = u.value * x + *it;
    }
    return u;
  };

  Problem p;
  p.name = "manufactured";
  p.eps = eps;
  p.convection = convection;
  p.reaction = reaction;
  p.left = left;
  p.right = right;
  p.alpha = eval(left).value;
  p.beta = eval(right).value;
  p.exact = eval;
  p.forcing = [eval, eps, convection, reaction](double x) {
    const Jet u = eval(x);
    return -eps * eps * u.d2 + convection * u.d1 + reaction * u.value;
  };
  return p;
}

}  // namespace lssem
