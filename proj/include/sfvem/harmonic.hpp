#pragma once

#include <vector>

#include "sfvem/geometry.hpp"
#include "sfvem/poly2.hpp"

namespace sfvem {

/// Local coordinates xhat = (x - center) / scale.
struct ScaledFrame {
  Point center = Point::Zero();
  double scale = 1.0;

  ScaledFrame() = default;
  ScaledFrame(Point c, double s);

  Point to_local(const Point& p) const { return (p - center) / scale; }
};

/// Harmonic polynomials of degree 1..ell+1 on a scaled frame:
///
///   h_{2k-1} = Re(zhat^k),  h_{2k} = Im(zhat^k),  k = 1..ell+1,
///
/// with zhat = ((x - x_E) + i (y - y_E)) / h_E. Stored 0-based, so entry
/// 2(k-1) is the real part and 2(k-1)+1 the imaginary part of zhat^k. The
/// basis spans grad H_{ell+1} without the zero-mean constraint, which does not
/// affect any gradient computed from it.
class HarmonicBasis {
 public:
  HarmonicBasis(ScaledFrame frame, int ell);

  const ScaledFrame& frame() const { return frame_; }
  int ell() const { return ell_; }
  int size() const { return 2 * ell_ + 2; }

  /// Values h_i(p), computed with the recurrence zhat^k = zhat^{k-1} zhat.
  void values(const Point& p, std::vector<double>& out) const;
  std::vector<double> values(const Point& p) const;

  /// Physical gradients: grad Re(zhat^k) = (k/h)(Re zhat^{k-1}, -Im zhat^{k-1}),
  /// grad Im(zhat^k) = (k/h)(Im zhat^{k-1}, Re zhat^{k-1}).
  void gradients(const Point& p, std::vector<Vec2>& out) const;
  std::vector<Vec2> gradients(const Point& p) const;

  /// Coefficient expansion of h_i in the local variables (xhat, yhat).
  Poly2 expansion(int i) const;

 private:
  ScaledFrame frame_;
  int ell_;
};

}  // namespace sfvem
