#include "lssem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lssem {

Mesh::Mesh(std::vector<double> breakpoints) : breakpoints_(std::move(breakpoints)) {
  if (breakpoints_.size() < 2) {
    throw std::invalid_argument("Mesh: need at least one element");
  }
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] > breakpoints_[i - 1])) {
      throw std::invalid_argument("Mesh: breakpoints must be strictly increasing");
    }
  }
  for (double x : breakpoints_) {
    if (!std::isfinite(x)) throw std::invalid_argument("Mesh: non-finite breakpoint");
  }
}

Mesh Mesh::uniform(double a, double b, int n_elements) {
  if (!(a < b)) throw std::invalid_argument("Mesh::uniform: need a < b");
  if (n_elements < 1) throw std::invalid_argument("Mesh::uniform: need N >= 1");
  std::vector<double> x(static_cast<std::size_t>(n_elements) + 1);
  const double h = (b - a) / n_elements;
  for (int l = 0; l <= n_elements; ++l) x[l] = a + l * h;
  x.back() = b;
  return Mesh(std::move(x));
}

void Mesh::check_index(int l) const {
  if (l < 0 || l >= num_elements()) {
    throw std::out_of_range("Mesh: element index " + std::to_string(l) + " out of range");
  }
}

double Mesh::width(int l) const {
  check_index(l);
  return breakpoints_[l + 1] - breakpoints_[l];
}

double Mesh::to_physical(int l, double xi) const {
  check_index(l);
  return 0.5 * (1.0 - xi) * breakpoints_[l] + 0.5 * (1.0 + xi) * breakpoints_[l + 1];
}

double Mesh::to_reference(int l, double x) const {
  check_index(l);
  const double lo = breakpoints_[l];
  const double hi = breakpoints_[l + 1];
  return (2.0 * x - lo - hi) / (hi - lo);
}

int Mesh::locate(double x) const {
  if (!(x >= left() && x <= right())) {
    throw std::out_of_range("Mesh::locate: point outside the domain");
  }
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x);
  const auto idx = static_cast<int>(it - breakpoints_.begin());
  return std::max(idx - 1, 0);
}

}  // namespace lssem
