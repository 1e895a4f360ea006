#pragma once

#include <vector>

namespace sfvem {

/// Bivariate polynomial sum c_ab (x - x0)^a (y - y0)^b stored densely up to a
/// total degree. The expansion origin (x0, y0) defaults to zero; expanding
/// about the middle of the evaluation region avoids the cancellation that
/// high-degree monomials suffer far from the origin. Arithmetic requires
/// matching origins (the zero polynomial adopts any origin).
class Poly2 {
 public:
  Poly2() = default;
  explicit Poly2(int degree, double x0 = 0.0, double y0 = 0.0);

  static Poly2 constant(double c, double x0 = 0.0, double y0 = 0.0);
  /// The coordinate functions x and y expanded about (x0, y0).
  static Poly2 x(double x0 = 0.0, double y0 = 0.0);
  static Poly2 y(double x0 = 0.0, double y0 = 0.0);
  static Poly2 monomial(int a, int b, double c = 1.0);

  double origin_x() const { return x0_; }
  double origin_y() const { return y0_; }

  /// Storage degree; may exceed the effective degree after cancellation.
  int capacity() const { return degree_; }
  /// Highest total degree with a non-zero coefficient (-1 for the zero polynomial).
  int degree() const;

  double coeff(int a, int b) const;
  void set(int a, int b, double c);
  void add(int a, int b, double c);

  double operator()(double x, double y) const;

  Poly2 dx() const;
  Poly2 dy() const;
  Poly2 laplacian() const { return dx().dx() + dy().dy(); }
  /// p(y, x)
  Poly2 swap_xy() const;

  Poly2& operator+=(const Poly2& o);
  Poly2& operator-=(const Poly2& o);
  Poly2& operator*=(double s);

  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator-(Poly2 a) { return a *= -1.0; }
  friend Poly2 operator+(Poly2 a, double c) { return a += constant(c, a.x0_, a.y0_); }
  friend Poly2 operator+(double c, Poly2 a) { return a += constant(c, a.x0_, a.y0_); }
  friend Poly2 operator-(double c, const Poly2& a) { return constant(c, a.x0_, a.y0_) - a; }
  friend Poly2 operator*(Poly2 a, double s) { return a *= s; }
  friend Poly2 operator*(double s, Poly2 a) { return a *= s; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b);

  bool is_zero() const { return degree() < 0; }

 private:
  static int index(int a, int b) { return (a + b) * (a + b + 1) / 2 + b; }
  void grow(int degree);
  void match_origin(const Poly2& o);

  int degree_ = -1;
  double x0_ = 0.0;
  double y0_ = 0.0;
  std::vector<double> c_;
};

}  // namespace sfvem
