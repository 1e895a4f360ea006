#include "sfvem/poly2.hpp"

#include <algorithm>
#include <stdexcept>

namespace sfvem {

Poly2::Poly2(int degree, double x0, double y0)
    : degree_(degree), x0_(x0), y0_(y0), c_(static_cast<std::size_t>((degree + 1) * (degree + 2) / 2), 0.0) {
  if (degree < -1) throw std::invalid_argument("negative polynomial degree");
}

Poly2 Poly2::constant(double c, double x0, double y0) {
  Poly2 p(0, x0, y0);
  p.c_[0] = c;
  return p;
}

Poly2 Poly2::x(double x0, double y0) {
  Poly2 p(1, x0, y0);
  p.set(0, 0, x0);
  p.set(1, 0, 1.0);
  return p;
}

Poly2 Poly2::y(double x0, double y0) {
  Poly2 p(1, x0, y0);
  p.set(0, 0, y0);
  p.set(0, 1, 1.0);
  return p;
}

void Poly2::match_origin(const Poly2& o) {
  if (o.x0_ == x0_ && o.y0_ == y0_) return;
  if (o.is_zero()) return;
  if (is_zero()) {
    x0_ = o.x0_;
    y0_ = o.y0_;
    return;
  }
  throw std::invalid_argument("polynomials expanded about different origins");
}

Poly2 Poly2::monomial(int a, int b, double c) {
  if (a < 0 || b < 0) throw std::invalid_argument("negative monomial exponent");
  Poly2 p(a + b);
  p.set(a, b, c);
  return p;
}

int Poly2::degree() const {
  for (int d = degree_; d >= 0; --d)
    for (int b = 0; b <= d; ++b)
      if (c_[index(d - b, b)] != 0.0) return d;
  return -1;
}

double Poly2::coeff(int a, int b) const {
  if (a < 0 || b < 0 || a + b > degree_) return 0.0;
  return c_[index(a, b)];
}

void Poly2::grow(int degree) {
  if (degree <= degree_) return;
  std::vector<double> c(static_cast<std::size_t>((degree + 1) * (degree + 2) / 2), 0.0);
  std::copy(c_.begin(), c_.end(), c.begin());  // index() is degree-independent
  c_ = std::move(c);
  degree_ = degree;
}

void Poly2::set(int a, int b, double c) {
  grow(a + b);
  c_[index(a, b)] = c;
}

void Poly2::add(int a, int b, double c) {
  grow(a + b);
  c_[index(a, b)] += c;
}

double Poly2::operator()(double x, double y) const {
  if (degree_ < 0) return 0.0;
  x -= x0_;
  y -= y0_;
  double xp[64];
  double yp[64];
  std::vector<double> xs, ys;
  double* px = xp;
  double* py = yp;
  if (degree_ >= 64) {
    xs.resize(degree_ + 1);
    ys.resize(degree_ + 1);
    px = xs.data();
    py = ys.data();
  }
  px[0] = py[0] = 1.0;
  for (int k = 1; k <= degree_; ++k) {
    px[k] = px[k - 1] * x;
    py[k] = py[k - 1] * y;
  }
  double s = 0.0;
  std::size_t i = 0;
  for (int d = 0; d <= degree_; ++d)
    for (int b = 0; b <= d; ++b, ++i) s += c_[i] * px[d - b] * py[b];
  return s;
}

Poly2 Poly2::dx() const {
  Poly2 r(std::max(degree_ - 1, -1), x0_, y0_);
  for (int d = 1; d <= degree_; ++d)
    for (int b = 0; b < d; ++b) r.c_[index(d - b - 1, b)] = (d - b) * c_[index(d - b, b)];
  return r;
}

Poly2 Poly2::dy() const {
  Poly2 r(std::max(degree_ - 1, -1), x0_, y0_);
  for (int d = 1; d <= degree_; ++d)
    for (int b = 1; b <= d; ++b) r.c_[index(d - b, b - 1)] = b * c_[index(d - b, b)];
  return r;
}

Poly2 Poly2::swap_xy() const {
  Poly2 r(degree_, y0_, x0_);
  for (int d = 0; d <= degree_; ++d)
    for (int b = 0; b <= d; ++b) r.c_[index(b, d - b)] = c_[index(d - b, b)];
  return r;
}

Poly2& Poly2::operator+=(const Poly2& o) {
  match_origin(o);
  grow(o.degree_);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Poly2& Poly2::operator-=(const Poly2& o) {
  match_origin(o);
  grow(o.degree_);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Poly2& Poly2::operator*=(double s) {
  for (double& c : c_) c *= s;
  return *this;
}

Poly2 operator*(const Poly2& p, const Poly2& q) {
  if (p.is_zero() || q.is_zero()) return Poly2();
  if (p.x0_ != q.x0_ || p.y0_ != q.y0_) throw std::invalid_argument("polynomials expanded about different origins");
  Poly2 r(p.degree_ + q.degree_, p.x0_, p.y0_);
  for (int d1 = 0; d1 <= p.degree_; ++d1)
    for (int b1 = 0; b1 <= d1; ++b1) {
      const double c1 = p.c_[Poly2::index(d1 - b1, b1)];
      if (c1 == 0.0) continue;
      for (int d2 = 0; d2 <= q.degree_; ++d2)
        for (int b2 = 0; b2 <= d2; ++b2)
          r.c_[Poly2::index(d1 - b1 + d2 - b2, b1 + b2)] += c1 * q.c_[Poly2::index(d2 - b2, b2)];
    }
  return r;
}

}  // namespace sfvem
