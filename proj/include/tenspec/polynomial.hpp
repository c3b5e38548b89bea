#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "tenspec/errors.hpp"

namespace tenspec {

/// Coefficients ascending: p[0] + p[1] z + ... + p[deg] z^deg.
using Poly = std::vector<std::complex<double>>;

inline std::complex<double> poly_eval(const Poly& p, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * z + p[k];
  return acc;
}

inline Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return {0.0};
  Poly d(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = p[k] * static_cast<double>(k);
  return d;
}

inline Poly poly_add(const Poly& a, const Poly& b) {
  Poly s(std::max(a.size(), b.size()), 0.0);
  for (std::size_t k = 0; k < a.size(); ++k) s[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) s[k] += b[k];
  return s;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  Poly m(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) m[i + j] += a[i] * b[j];
  }
  return m;
}

/// Magnitude of the evaluation of sum |p_k| |z|^k; the natural scale for
/// judging whether p(z) is "zero" in floating point.
inline double poly_eval_scale(const Poly& p, std::complex<double> z) {
  double az = std::abs(z), s = 0.0, pw = 1.0;
  for (const auto& c : p) {
    s += std::abs(c) * pw;
    pw *= az;
  }
  return s;
}

/// All roots of p, found simultaneously (Aberth-Ehrlich, Gauss-Seidel
/// sweeps). Stops when every iterate is stationary or sits on a numerical
/// zero of p; repeated roots settle into the usual eps^(1/mult) cluster.
inline std::vector<std::complex<double>> aberth_roots(Poly p, int max_sweeps = 500) {
  while (p.size() > 1 && std::abs(p.back()) == 0.0) p.pop_back();
  if (p.size() <= 1) {
    throw convergence_error("polynomial has no determinate roots (degenerate leading coefficients)");
  }
  const std::size_t deg = p.size() - 1;
  for (auto& c : p) c /= p[deg];

  double radius = 0.0;
  for (std::size_t k = 0; k < deg; ++k) radius = std::max(radius, std::abs(p[k]));
  radius = 1.0 + radius;

  std::vector<std::complex<double>> z(deg);
  for (std::size_t i = 0; i < deg; ++i) {
    double th = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(deg) + 0.37;
    z[i] = radius * std::complex<double>(std::cos(th), std::sin(th));
  }

  const Poly dp = poly_derivative(p);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool settled = true;
    for (std::size_t i = 0; i < deg; ++i) {
      const std::complex<double> pv = poly_eval(p, z[i]);
      if (std::abs(pv) <= 1e-14 * poly_eval_scale(p, z[i])) continue;
      std::complex<double> pd = poly_eval(dp, z[i]);
      if (pd == 0.0) {
        z[i] += 1e-6 * (1.0 + std::abs(z[i]));
        settled = false;
        continue;
      }
      const std::complex<double> ratio = pv / pd;
      std::complex<double> sum = 0.0;
      for (std::size_t j = 0; j < deg; ++j) {
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      }
      const std::complex<double> denom = 1.0 - ratio * sum;
      const std::complex<double> delta = (denom == 0.0) ? ratio : ratio / denom;
      z[i] -= delta;
      if (std::abs(delta) > 1e-13 * (1.0 + std::abs(z[i]))) settled = false;
    }
    if (settled) return z;
  }
  throw convergence_error("root finder failed to settle in " +
                          std::to_string(max_sweeps) + " sweeps");
}

/// A few guarded Newton steps; a step is kept only if it reduces |p|.
inline std::complex<double> newton_polish(const Poly& p, std::complex<double> z, int steps = 5) {
  const Poly dp = poly_derivative(p);
  for (int s = 0; s < steps; ++s) {
    const std::complex<double> pv = poly_eval(p, z);
    if (pv == 0.0) break;
    const std::complex<double> pd = poly_eval(dp, z);
    if (std::abs(pd) == 0.0) break;
    const std::complex<double> cand = z - pv / pd;
    if (std::abs(poly_eval(p, cand)) < std::abs(pv)) {
      z = cand;
    } else {
      break;
    }
  }
  return z;
}

/// Monic characteristic polynomial det(zI - M) of a dense n*n matrix
/// (row-major), by the Faddeev-LeVerrier trace recursion.
inline Poly characteristic_polynomial(const std::vector<std::complex<double>>& m, int n) {
  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<std::complex<double>> nk(nn * nn, 0.0), mn(nn * nn);
  Poly c(nn + 1, 0.0);
  c[nn] = 1.0;  // coefficient of z^n
  std::complex<double> ck = 1.0;
  for (std::size_t k = 1; k <= nn; ++k) {
    // nk <- m*nk + ck*I
    for (std::size_t i = 0; i < nn; ++i) {
      for (std::size_t j = 0; j < nn; ++j) {
        std::complex<double> s = (i == j) ? ck : 0.0;
        for (std::size_t t = 0; t < nn; ++t) s += m[i * nn + t] * nk[t * nn + j];
        mn[i * nn + j] = s;
      }
    }
    nk.swap(mn);
    std::complex<double> tr = 0.0;
    for (std::size_t i = 0; i < nn; ++i) {
      std::complex<double> s = 0.0;
      for (std::size_t t = 0; t < nn; ++t) s += m[i * nn + t] * nk[t * nn + i];
      tr += s;
    }
    ck = -tr / static_cast<double>(k);
    c[nn - k] = ck;
  }
  return c;
}

}  // namespace tenspec
