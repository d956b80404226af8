#ifndef LSSEM_MESH_HPP
#define LSSEM_MESH_HPP

#include <vector>

namespace lssem {

/// Ordered breakpoints a = x_0 < x_1 < ... < x_N = b. Elements are indexed
/// 0..N-1 here; element l spans (x_l, x_{l+1}).
class Mesh {
 public:
  /// Arbitrary strictly increasing breakpoints (at least two).
  explicit Mesh(std::vector<double> breakpoints);

  static Mesh uniform(double a, double b, int n_elements);

  int num_elements() const { return static_cast<int>(breakpoints_.size()) - 1; }
  double left() const { return breakpoints_.front(); }
  double right() const { return breakpoints_.back(); }
  const std::vector<double>& breakpoints() const { return breakpoints_; }

  double width(int l) const;
  /// dx/dxi = h_l / 2.
  double jacobian(int l) const { return 0.5 * width(l); }

  double to_physical(int l, double xi) const;
  double to_reference(int l, double x) const;

  /// Element containing x; a breakpoint shared by two elements belongs to
  /// the left one. Throws std::out_of_range outside [a, b].
  int locate(double x) const;

 private:
  void check_index(int l) const;

  std::vector<double> breakpoints_;
};

}  // namespace lssem

#endif  // LSSEM_MESH_HPP
