#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace aniso {

inline double sqr(double x) { return x * x; }

// sign(x) * |x|^a, the odd power used by p-Laplacian fluxes and Robin data.
inline double sgnpow(double x, double a) {
  if (x == 0.0) return 0.0;
  return x > 0 ? std::pow(x, a) : -std::pow(-x, a);
}

// Golden-section minimization of f on [lo, hi]; f unimodal on the bracket.
template <class F>
double golden_min(F&& f, double lo, double hi, double tol) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - gr * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + gr * (b - a); fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Locale-independent fixed formatting for CSV/JSON payloads.
inline std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace aniso
