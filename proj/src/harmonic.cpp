#include "sfvem/harmonic.hpp"

#include <complex>
#include <stdexcept>

namespace sfvem {

ScaledFrame::ScaledFrame(Point c, double s) : center(std::move(c)), scale(s) {
  if (!(s > 0.0)) throw std::invalid_argument("frame scale must be positive");
}

HarmonicBasis::HarmonicBasis(ScaledFrame frame, int ell) : frame_(std::move(frame)), ell_(ell) {
  if (ell < 0) throw std::invalid_argument("harmonic degree parameter must be >= 0");
}

void HarmonicBasis::values(const Point& p, std::vector<double>& out) const {
  const Point q = frame_.to_local(p);
  const std::complex<double> z(q.x(), q.y());
  out.resize(size());
  std::complex<double> zk = 1.0;
  for (int k = 1; k <= ell_ + 1; ++k) {
    zk *= z;
    out[2 * (k - 1)] = zk.real();
    out[2 * (k - 1) + 1] = zk.imag();
  }
}

std::vector<double> HarmonicBasis::values(const Point& p) const {
  std::vector<double> out;
  values(p, out);
  return out;
}

void HarmonicBasis::gradients(const Point& p, std::vector<Vec2>& out) const {
  const Point q = frame_.to_local(p);
  const std::complex<double> z(q.x(), q.y());
  const double inv_h = 1.0 / frame_.scale;
  out.resize(size());
  std::complex<double> zkm1 = 1.0;
  for (int k = 1; k <= ell_ + 1; ++k) {
    const double s = k * inv_h;
    out[2 * (k - 1)] = Vec2(s * zkm1.real(), -s * zkm1.imag());
    out[2 * (k - 1) + 1] = Vec2(s * zkm1.imag(), s * zkm1.real());
    zkm1 *= z;
  }
}

std::vector<Vec2> HarmonicBasis::gradients(const Point& p) const {
  std::vector<Vec2> out;
  gradients(p, out);
  return out;
}

Poly2 HarmonicBasis::expansion(int i) const {
  if (i < 0 || i >= size()) throw std::out_of_range("harmonic basis index");
  const int k = i / 2 + 1;
  const bool imaginary = (i % 2) == 1;
  // (x + iy)^k = sum_j C(k,j) x^{k-j} (iy)^j; i^j is real for even j.
  Poly2 p(k);
  double binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    if (j > 0) binom = binom * (k - j + 1) / j;
    const bool real_term = (j % 2) == 0;
    if (real_term == imaginary) continue;
    const int sign = ((j / 2) % 2 == 0) ? 1 : -1;
    p.set(k - j, j, sign * binom);
  }
  return p;
}

}  // namespace sfvem
