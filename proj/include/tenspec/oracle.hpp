#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tenspec/errors.hpp"
#include "tenspec/polynomial.hpp"
#include "tenspec/product.hpp"
#include "tenspec/scalar.hpp"
#include "tenspec/tensor.hpp"

namespace tenspec {

inline constexpr double default_oracle_tol = 1e-10;
inline constexpr int default_oracle_max_iter = 10'000;

struct EigenEstimate {
  double rho = 0.0;
  std::vector<double> x;               // positive eigenvector estimate
  double residual = 0.0;               // max_i |(Ax)_i - rho x_i^{m-1}|
  double cw_lower = 0.0, cw_upper = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<std::pair<double, double>> history;  // per-iteration quotient interval
};

/// Spectral radius of a nonnegative tensor by shifted power iteration:
///   x <- ((A+I)x)^{[1/(m-1)]}, normalized to sup-norm one.
/// The shift keeps iterates strictly positive ((A+I)x = Ax + x^{[m-1]}) and
/// repairs primitivity. At each iterate the quotient interval
///   [min_i, max_i] of (Ax)_i / x_i^{m-1}
/// brackets rho; the iteration stops when its width drops below tol relative
/// to the interval's magnitude and reports the midpoint. On hitting max_iter
/// the best interval is returned with converged = false rather than an error.
template <class Scalar>
EigenEstimate power_rho(const Tensor<Scalar>& a, double tol = default_oracle_tol,
                        int max_iter = default_oracle_max_iter) {
  if (!a.nonneg()) throw precondition_error("tensor is not nonnegative");
  if (a.order() < 2) throw precondition_error("spectral radius iteration requires order >= 2");
  if (!(tol > 0.0)) throw precondition_error("tolerance must be positive");

  const int n = a.dim();
  const int m = a.order();
  const double inv_exp = 1.0 / static_cast<double>(m - 1);
  std::mt19937 jitter_rng(12345);
  int restarts = 0;

  std::vector<double> x(static_cast<std::size_t>(n), 1.0);
  EigenEstimate est;
  for (int it = 1; it <= max_iter; ++it) {
    std::vector<double> ax = apply_vector(a, std::span<const double>(x));
    double lo = 0.0, hi = 0.0;
    bool first = true, bad = false;
    for (int i = 0; i < n; ++i) {
      const double xp = std::pow(x[static_cast<std::size_t>(i)], m - 1);
      const double q = ax[static_cast<std::size_t>(i)] / xp;
      if (!std::isfinite(q)) {
        bad = true;
        break;
      }
      if (first) {
        lo = hi = q;
        first = false;
      } else {
        lo = std::min(lo, q);
        hi = std::max(hi, q);
      }
    }
    if (bad) throw convergence_error("iteration produced non-finite values");

    est.iterations = it;
    est.cw_lower = lo;
    est.cw_upper = hi;
    est.rho = 0.5 * (lo + hi);
    est.history.emplace_back(lo, hi);
    est.x = x;
    // Relative width: an absolute test can never pass once rho is large
    // enough that the quotients' ulp spacing exceeds tol.
    if (hi - lo < tol * std::max(1.0, hi)) {
      est.converged = true;
      break;
    }

    // next iterate from the shifted map
    std::vector<double> y(static_cast<std::size_t>(n));
    double ymax = 0.0;
    for (int i = 0; i < n; ++i) {
      const double shifted =
          ax[static_cast<std::size_t>(i)] + std::pow(x[static_cast<std::size_t>(i)], m - 1);
      if (!std::isfinite(shifted)) throw convergence_error("iteration produced non-finite values");
      y[static_cast<std::size_t>(i)] = std::pow(shifted, inv_exp);
      ymax = std::max(ymax, y[static_cast<std::size_t>(i)]);
    }
    bool zero = (ymax == 0.0);
    if (!zero) {
      for (double& v : y) {
        v /= ymax;
        if (v <= 0.0) zero = true;
      }
    }
    if (zero) {
      if (++restarts > 3) {
        throw convergence_error("iterate developed a zero component; cannot proceed");
      }
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (double& v : x) v = 1.0 + 1e-3 * u(jitter_rng);
      continue;
    }
    x = std::move(y);
  }

  // residual at the reported pair
  std::vector<double> ax = apply_vector(a, std::span<const double>(est.x));
  double res = 0.0;
  for (int i = 0; i < n; ++i) {
    const double xp = std::pow(est.x[static_cast<std::size_t>(i)], m - 1);
    res = std::max(res, std::abs(ax[static_cast<std::size_t>(i)] - est.rho * xp));
  }
  est.residual = res;
  return est;
}

struct SpectrumList {
  std::vector<std::complex<double>> eigenvalues;
  std::vector<double> residuals;  // |p(lambda)| per root
};

namespace detail {

inline std::vector<std::complex<double>> polished_roots(const Poly& p) {
  std::vector<std::complex<double>> roots = aberth_roots(p);
  for (auto& z : roots) z = newton_polish(p, z);
  return roots;
}

}  // namespace detail

/// All n eigenvalues of an order-2 tensor (a matrix), n <= 8: monic
/// characteristic polynomial by the trace recursion, roots by simultaneous
/// iteration, each polished and checked against |p(z)| <= 1e-7 ||M||.
template <class Scalar>
SpectrumList matrix_spectrum(const Tensor<Scalar>& t) {
  if (t.order() != 2) throw precondition_error("matrix spectrum requires an order-2 tensor");
  const int n = t.dim();
  if (n > 8) throw precondition_error("matrix spectrum limited to dimension 8");

  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<std::complex<double>> m(nn * nn, 0.0);
  t.for_each_nonzero([&](std::span<const std::uint32_t> idx, Scalar v) {
    m[idx[0] * nn + idx[1]] = to_complex(v);
  });
  double norm = 0.0;  // max row sum
  for (std::size_t i = 0; i < nn; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < nn; ++j) s += std::abs(m[i * nn + j]);
    norm = std::max(norm, s);
  }

  const Poly p = characteristic_polynomial(m, n);
  SpectrumList out;
  out.eigenvalues = detail::polished_roots(p);
  for (const auto& z : out.eigenvalues) {
    const double r = std::abs(poly_eval(p, z));
    if (r > 1e-7 * std::max(norm, 1e-30)) {
      throw convergence_error("eigenvalue residual exceeds bound");
    }
    out.residuals.push_back(r);
  }
  return out;
}

/// The four eigenvalues of an order-3 dimension-2 tensor. Eliminating
/// t = x2/x1 between
///   p1(t) = a111 + (a112+a121) t + a122 t^2 - lambda
///   p2(t) = a211 + (a212+a221) t + a222 t^2 - lambda t^2
/// via the Sylvester resultant (formal degrees 2,2) gives a monic quartic
/// in lambda. The x1 = 0 branch (lambda = a222 with x = (0,1), possible
/// only when a122 = 0) is already a root of the quartic then; it is checked
/// rather than assumed.
template <class Scalar>
SpectrumList small_tensor_spectrum(const Tensor<Scalar>& t) {
  if (t.order() != 3 || t.dim() != 2) {
    throw precondition_error("resultant spectrum requires order 3, dimension 2");
  }
  auto e = [&](std::uint32_t i, std::uint32_t j, std::uint32_t k) {
    const std::uint32_t idx[3] = {i, j, k};
    return to_complex(t.at(std::span<const std::uint32_t>(idx, 3)));
  };
  using C = std::complex<double>;
  const C a111 = e(0, 0, 0), a112 = e(0, 0, 1), a121 = e(0, 1, 0), a122 = e(0, 1, 1);
  const C a211 = e(1, 0, 0), a212 = e(1, 0, 1), a221 = e(1, 1, 0), a222 = e(1, 1, 1);

  // Sylvester matrix entries as polynomials in lambda (ascending coeffs)
  const Poly zero = {0.0};
  const Poly c2 = {a122}, c1 = {a112 + a121}, c0 = {a111, -1.0};
  const Poly d2 = {a222, -1.0}, d1 = {a212 + a221}, d0 = {a211};
  const Poly s[4][4] = {
      {c2, c1, c0, zero},
      {zero, c2, c1, c0},
      {d2, d1, d0, zero},
      {zero, d2, d1, d0},
  };

  // Leibniz over the 24 permutations; entries are degree <= 1 so the
  // determinant is the degree-4 characteristic polynomial.
  Poly det = {0.0};
  int perm[4] = {0, 1, 2, 3};
  do {
    int inv = 0;
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        if (perm[i] > perm[j]) ++inv;
      }
    }
    Poly term = {(inv % 2 == 0) ? 1.0 : -1.0};
    for (int i = 0; i < 4; ++i) term = poly_mul(term, s[i][perm[i]]);
    det = poly_add(det, term);
  } while (std::next_permutation(perm, perm + 4));

  if (det.size() != 5 || std::abs(det[4] - 1.0) > 1e-9) {
    throw convergence_error("resultant is degenerate (non-monic characteristic polynomial)");
  }
  det[4] = 1.0;

  // Residuals are judged relative to the coefficient size. A scale built
  // from |c_k||z|^k would vanish with z at a root at the origin (constant
  // term zero), making the test impossible to satisfy there.
  double coeff_norm = 0.0;
  for (const auto& c : det) coeff_norm = std::max(coeff_norm, std::abs(c));

  SpectrumList out;
  out.eigenvalues = detail::polished_roots(det);
  for (const auto& z : out.eigenvalues) {
    const double r = std::abs(poly_eval(det, z));
    const double zs = std::max(1.0, std::abs(z));
    if (r > 1e-7 * coeff_norm * zs * zs * zs * zs) {
      throw convergence_error("eigenvalue residual exceeds bound");
    }
    out.residuals.push_back(r);
  }
  if (std::abs(a122) == 0.0) {
    // x1 = 0 eigenpair exists; a222 must appear among the roots
    double best = std::numeric_limits<double>::infinity();
    for (const auto& z : out.eigenvalues) best = std::min(best, std::abs(z - a222));
    if (best > 1e-6 * (1.0 + std::abs(a222))) {
      throw convergence_error("x1 = 0 eigenvalue missing from resultant roots");
    }
  }
  return out;
}

}  // namespace tenspec
