#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tenspec/digraph.hpp"
#include "tenspec/errors.hpp"
#include "tenspec/oracle.hpp"
#include "tenspec/product.hpp"
#include "tenspec/scalar.hpp"
#include "tenspec/tensor.hpp"

namespace tenspec {

struct BoundInterval {
  double lower = 0.0;
  double upper = 0.0;
  std::string method;
  int witness_low = 1;   // 1-based row attaining the lower endpoint
  int witness_high = 1;  // 1-based row attaining the upper endpoint
  std::optional<Fraction> lower_fraction;
  std::optional<Fraction> upper_fraction;
};

namespace detail {

inline void require_finite_interval(const BoundInterval& b) {
  if (!std::isfinite(b.lower) || !std::isfinite(b.upper)) {
    throw resource_limit_error("bound overflows the double range");
  }
}

template <class Scalar>
void require_nonneg(const Tensor<Scalar>& t, const char* name) {
  if (!t.nonneg()) {
    throw precondition_error(std::string(name) + " is not nonnegative");
  }
}

inline int arg_min(const std::vector<double>& v) {
  int w = 0;
  for (int i = 1; i < static_cast<int>(v.size()); ++i) {
    if (v[static_cast<std::size_t>(i)] < v[static_cast<std::size_t>(w)]) w = i;
  }
  return w;
}

inline int arg_max(const std::vector<double>& v) {
  int w = 0;
  for (int i = 1; i < static_cast<int>(v.size()); ++i) {
    if (v[static_cast<std::size_t>(i)] > v[static_cast<std::size_t>(w)]) w = i;
  }
  return w;
}

inline double int_pow(double base, int e) {
  double p = 1.0;
  for (int t = 0; t < e; ++t) p *= base;
  return p;
}

}  // namespace detail

/// r(A) <= rho(A) <= R(A) for nonnegative A.
template <class Scalar>
BoundInterval rowsum_bounds(const Tensor<Scalar>& a) {
  detail::require_nonneg(a, "A");
  const RowSumProfile r = row_sums(a);
  BoundInterval b;
  b.method = "rowsum";
  b.lower = r.min;
  b.upper = r.max;
  b.witness_low = detail::arg_min(r.values) + 1;
  b.witness_high = detail::arg_max(r.values) + 1;
  detail::require_finite_interval(b);
  return b;
}

/// min_i r_i(AB)/r_i(B)^{m-1} <= rho(A) <= max_i of the same, for
/// nonnegative A, B with every r_i(B) positive. The numerators come from
/// the row-sum propagation rule, so AB is never formed.
template <class SA, class SB>
BoundInterval minc_bounds(const Tensor<SA>& a, const Tensor<SB>& b) {
  detail::require_nonneg(a, "A");
  detail::require_nonneg(b, "B");
  if (a.dim() != b.dim()) {
    throw validation_error("product factors must share the same dimension");
  }
  const int m = a.order();
  const RowSumProfile rb = row_sums(b);
  for (int i = 0; i < b.dim(); ++i) {
    if (rb.values[static_cast<std::size_t>(i)] == 0.0) {
      throw precondition_error("r_" + std::to_string(i + 1) + "(B) = 0");
    }
  }
  const RowSumProfile rab = product_row_sums(a, rb.values);
  std::vector<double> q(rb.values.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    q[i] = rab.values[i] / detail::int_pow(rb.values[i], m - 1);
  }
  BoundInterval out;
  out.method = "minc";
  out.witness_low = detail::arg_min(q) + 1;
  out.witness_high = detail::arg_max(q) + 1;
  out.lower = q[static_cast<std::size_t>(out.witness_low - 1)];
  out.upper = q[static_cast<std::size_t>(out.witness_high - 1)];
  detail::require_finite_interval(out);
  return out;
}

/// minc_bounds(A, A), with exact fractions attached when every entry of A
/// is an integer so the endpoints can be checked without rounding.
template <class Scalar>
BoundInterval minc_self(const Tensor<Scalar>& a) {
  detail::require_nonneg(a, "A");
  const int m = a.order();
  const RowSumProfile ra = row_sums(a);
  for (int i = 0; i < a.dim(); ++i) {
    if (ra.values[static_cast<std::size_t>(i)] == 0.0) {
      throw precondition_error("r_" + std::to_string(i + 1) + "(A) = 0");
    }
  }
  BoundInterval out = minc_bounds(a, a);

  bool integral = true;
  a.for_each_nonzero([&](std::span<const std::uint32_t>, Scalar v) {
    if (!is_exact_integer(abs_value(v))) integral = false;
  });
  if (integral) {
    const RowSumProfile ra2 = product_row_sums(a, ra.values);
    auto fraction_at = [&](int row) -> std::optional<Fraction> {
      const double num = ra2.values[static_cast<std::size_t>(row)];
      const double den = detail::int_pow(ra.values[static_cast<std::size_t>(row)], m - 1);
      if (is_exact_integer(num) && is_exact_integer(den)) {
        return Fraction{static_cast<long long>(num), static_cast<long long>(den)};
      }
      return std::nullopt;
    };
    out.lower_fraction = fraction_at(out.witness_low - 1);
    out.upper_fraction = fraction_at(out.witness_high - 1);
  }
  return out;
}

/// min/max_i r_i(A^{k+1})/r_i(A^k)^{m-1}. Row sums of the powers follow the
/// propagation recursion r(A^{j+1}) = P_A(r(A^j)), which is homogeneous of
/// degree m-1 in its argument, so each step is renormalized and the
/// quotient is unchanged; the powers themselves are never formed.
template <class Scalar>
BoundInterval minc_power(const Tensor<Scalar>& a, int k) {
  detail::require_nonneg(a, "A");
  if (k < 1) throw precondition_error("power index must be >= 1");
  const int m = a.order();
  if (m < 2) throw precondition_error("left product factor must have order >= 2");
  RowSumProfile v = row_sums(a);
  for (int i = 0; i < a.dim(); ++i) {
    if (v.values[static_cast<std::size_t>(i)] == 0.0) {
      throw precondition_error("r_" + std::to_string(i + 1) + "(A) = 0");
    }
  }
  auto normalize = [](RowSumProfile& p) {
    for (double& x : p.values) x /= p.max;
    p.min /= p.max;
    p.max = 1.0;
  };
  normalize(v);
  for (int j = 1; j < k; ++j) {
    v = product_row_sums(a, v.values);
    for (int i = 0; i < a.dim(); ++i) {
      if (v.values[static_cast<std::size_t>(i)] == 0.0) {
        throw precondition_error("r_" + std::to_string(i + 1) +
                                 "(A^" + std::to_string(j + 1) + ") = 0");
      }
    }
    normalize(v);
  }
  const RowSumProfile w = product_row_sums(a, v.values);
  std::vector<double> q(v.values.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    q[i] = w.values[i] / detail::int_pow(v.values[i], m - 1);
  }
  BoundInterval out;
  out.method = "minc-power";
  out.witness_low = detail::arg_min(q) + 1;
  out.witness_high = detail::arg_max(q) + 1;
  out.lower = q[static_cast<std::size_t>(out.witness_low - 1)];
  out.upper = q[static_cast<std::size_t>(out.witness_high - 1)];
  detail::require_finite_interval(out);
  return out;
}

/// r(A) r(B)^{m-1} <= rho(AB) <= R(A) R(B)^{m-1} for nonnegative factors.
template <class SA, class SB>
BoundInterval product_rho_bounds(const Tensor<SA>& a, const Tensor<SB>& b) {
  detail::require_nonneg(a, "A");
  detail::require_nonneg(b, "B");
  product_shape(a, b);  // validates dimensions and order
  const int m = a.order();
  const RowSumProfile ra = row_sums(a);
  const RowSumProfile rb = row_sums(b);
  BoundInterval out;
  out.method = "product";
  out.lower = ra.min * detail::int_pow(rb.min, m - 1);
  out.upper = ra.max * detail::int_pow(rb.max, m - 1);
  out.witness_low = detail::arg_min(ra.values) + 1;
  out.witness_high = detail::arg_max(ra.values) + 1;
  detail::require_finite_interval(out);
  return out;
}

/// rho(A^k) enclosure from Cor. 4.2: [r^{mu_k}, R^{mu_k}] when A is
/// nonnegative, [0, R^{mu_k}] otherwise (only the upper bound survives).
template <class Scalar>
BoundInterval power_rho_bounds(const Tensor<Scalar>& a, int k) {
  if (k < 1) throw precondition_error("power index must be >= 1");
  if (a.order() < 2) throw precondition_error("tensor power requires order >= 2");
  const long long mu = mu_exponent(a.order(), k);
  const RowSumProfile r = row_sums(a);
  BoundInterval out;
  out.method = "power";
  out.upper = std::pow(r.max, static_cast<double>(mu));
  out.lower = a.nonneg() ? std::pow(r.min, static_cast<double>(mu)) : 0.0;
  out.witness_low = detail::arg_min(r.values) + 1;
  out.witness_high = detail::arg_max(r.values) + 1;
  detail::require_finite_interval(out);
  return out;
}

struct CWCertificate {
  Tensor<double> b;  // order k, r_i(b) = x_i
  BoundInterval interval;
  double gap = 0.0;
  EigenEstimate oracle;
};

/// Constructive side of the sharpness statement: with x the Perron vector
/// estimate, the order-k tensor with all row mass on b_{i 1..1} = x_i has
/// r_i(B) = x_i, and the quotient interval of minc_bounds(A, B) collapses
/// onto rho as x converges. The gap therefore certifies the oracle.
template <class Scalar>
CWCertificate cw_certificate(const Tensor<Scalar>& a, int k,
                             double tol = default_oracle_tol,
                             int max_iter = default_oracle_max_iter) {
  detail::require_nonneg(a, "A");
  if (k < 1) throw precondition_error("certificate order must be >= 1");
  if (!weakly_irreducible_standard(a)) {
    throw precondition_error("tensor is not weakly irreducible");
  }
  EigenEstimate est = power_rho(a, tol, max_iter);
  if (!est.converged) {
    throw convergence_error("spectral radius iteration did not converge");
  }
  const int n = a.dim();
  std::vector<std::uint32_t> idx(static_cast<std::size_t>(n) * k);
  std::vector<double> val(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    idx[static_cast<std::size_t>(i) * k] = static_cast<std::uint32_t>(i);
    for (int p = 1; p < k; ++p) idx[static_cast<std::size_t>(i) * k + p] = 0;
    val[static_cast<std::size_t>(i)] = est.x[static_cast<std::size_t>(i)];
  }
  CWCertificate cert{Tensor<double>::sparse(k, n, std::move(idx), std::move(val)),
                     BoundInterval{}, 0.0, std::move(est)};
  cert.interval = minc_bounds(a, cert.b);
  cert.gap = cert.interval.upper - cert.interval.lower;
  return cert;
}

}  // namespace tenspec
