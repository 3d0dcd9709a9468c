#pragma once

#include <array>
#include <cmath>

namespace dklt::detail {

// Truncated Taylor series in s about a point; c[k] is the k-th coefficient.
template <int K>
struct Jet {
  std::array<double, K> c{};

  static Jet variable(double at) {
    Jet j;
    j.c[0] = at;
    if (K > 1) j.c[1] = 1.0;
    return j;
  }
  static Jet constant(double v) {
    Jet j;
    j.c[0] = v;
    return j;
  }
  // k-th derivative at the expansion point.
  double derivative(int k) const {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return c[k] * f;
  }

  friend Jet operator+(Jet a, const Jet& b) {
    for (int k = 0; k < K; ++k) a.c[k] += b.c[k];
    return a;
  }
  friend Jet operator-(Jet a, const Jet& b) {
    for (int k = 0; k < K; ++k) a.c[k] -= b.c[k];
    return a;
  }
  friend Jet operator*(double s, Jet a) {
    for (auto& v : a.c) v *= s;
    return a;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k < K; ++k)
      for (int i = 0; i <= k; ++i) r.c[k] += a.c[i] * b.c[k - i];
    return r;
  }
};

// exp of a jet: r' = a' r.
template <int K>
Jet<K> exp(const Jet<K>& a) {
  Jet<K> r;
  r.c[0] = std::exp(a.c[0]);
  for (int k = 1; k < K; ++k) {
    double s = 0.0;
    for (int i = 1; i <= k; ++i) s += i * a.c[i] * r.c[k - i];
    r.c[k] = s / k;
  }
  return r;
}

// sin and cos together: s' = a' c, c' = -a' s.
template <int K>
void sincos(const Jet<K>& a, Jet<K>& s, Jet<K>& c) {
  s = Jet<K>{};
  c = Jet<K>{};
  s.c[0] = std::sin(a.c[0]);
  c.c[0] = std::cos(a.c[0]);
  for (int k = 1; k < K; ++k) {
    double ss = 0.0, cc = 0.0;
    for (int i = 1; i <= k; ++i) {
      ss += i * a.c[i] * c.c[k - i];
      cc -= i * a.c[i] * s.c[k - i];
    }
    s.c[k] = ss / k;
    c.c[k] = cc / k;
  }
}

template <int K>
void sinhcosh(const Jet<K>& a, Jet<K>& s, Jet<K>& c) {
  Jet<K> ep = exp(a), em = exp(-1.0 * a);
  s = 0.5 * (ep - em);
  c = 0.5 * (ep + em);
}

}  // namespace dklt::detail
