#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tenspec/errors.hpp"
#include "tenspec/scalar.hpp"
#include "tenspec/tensor.hpp"

namespace tenspec {

/// Default cap on stored entries of a materialized product or power.
inline constexpr std::size_t default_entry_cap = 10'000'000;

struct ProductShape {
  int left_order = 0;
  int right_order = 0;
  int order = 0;  // (left_order - 1)(right_order - 1) + 1
  int dim = 0;
  bool dense_fits = false;       // dim^order within the dense storage limit
  std::size_t dense_entries = 0; // valid when dense_fits
};

/// Shape of AB: order (m-1)(k-1)+1, same dimension. The left factor must
/// have order >= 2; the right factor may be any order down to 1 (a vector).
template <class SA, class SB>
ProductShape product_shape(const Tensor<SA>& a, const Tensor<SB>& b) {
  if (a.dim() != b.dim()) {
    throw validation_error("product factors must share the same dimension");
  }
  if (a.order() < 2) {
    throw precondition_error("left product factor must have order >= 2");
  }
  ProductShape s;
  s.left_order = a.order();
  s.right_order = b.order();
  s.dim = a.dim();
  const long long m = a.order(), k = b.order();
  const long long ord = (m - 1) * (k - 1) + 1;
  if (ord > std::numeric_limits<int>::max()) {
    throw resource_limit_error("product order overflows");
  }
  s.order = static_cast<int>(ord);
  std::size_t total = 0;
  s.dense_fits = Tensor<SA>::pow_within(s.dim, s.order, Tensor<SA>::dense_limit, total);
  s.dense_entries = s.dense_fits ? total : 0;
  return s;
}

namespace detail {

// Rows of the right factor: for row j, the (k-1)-digit tails and values of
// every nonzero whose first index is j.
template <class S>
struct RowTable {
  std::size_t tail_len = 0;
  std::vector<std::vector<std::uint32_t>> tails; // per row, flat tails
  std::vector<std::vector<S>> vals;

  template <class SB>
  explicit RowTable(const Tensor<SB>& b)
      : tail_len(static_cast<std::size_t>(b.order() - 1)),
        tails(static_cast<std::size_t>(b.dim())),
        vals(static_cast<std::size_t>(b.dim())) {
    b.for_each_nonzero([&](std::span<const std::uint32_t> idx, SB v) {
      auto& t = tails[idx[0]];
      t.insert(t.end(), idx.begin() + 1, idx.end());
      vals[idx[0]].push_back(static_cast<S>(v));
    });
  }

  std::size_t row_size(std::uint32_t j) const { return vals[j].size(); }
  std::span<const std::uint32_t> tail(std::uint32_t j, std::size_t e) const {
    return {tails[j].data() + e * tail_len, tail_len};
  }
};

}  // namespace detail

/// General tensor product AB. Entries:
///   c_{i a_1 ... a_{m-1}} = sum_{i_2..i_m} a_{i i_2..i_m} b_{i_2 a_1} ... b_{i_m a_{m-1}}
/// where each a_t ranges over (k-1)-digit tuples. The result is dense when
/// it fits the dense storage limit, sparse otherwise; either way its stored
/// entry count must stay within entry_cap.
template <class SA, class SB>
Tensor<common_scalar_t<SA, SB>> general_product(const Tensor<SA>& a,
                                                const Tensor<SB>& b,
                                                std::size_t entry_cap = default_entry_cap) {
  using CS = common_scalar_t<SA, SB>;
  const ProductShape shape = product_shape(a, b);
  const int n = shape.dim;
  const int m = a.order();
  const std::size_t tail_len = static_cast<std::size_t>(b.order() - 1);
  const std::size_t slots = static_cast<std::size_t>(m - 1);

  detail::RowTable<CS> rows(b);

  if (shape.dense_fits) {
    if (shape.dense_entries > entry_cap) {
      throw resource_limit_error(
          "product holds " + std::to_string(shape.dense_entries) +
          " entries, above the configured cap of " + std::to_string(entry_cap));
    }
    // Digit p of the result index carries weight n^(order-1-p).
    std::vector<std::size_t> weight(static_cast<std::size_t>(shape.order));
    weight.back() = 1;
    for (std::size_t p = weight.size() - 1; p-- > 0;) {
      weight[p] = weight[p + 1] * static_cast<std::size_t>(n);
    }
    std::vector<CS> flat(shape.dense_entries, CS{});
    std::vector<std::size_t> choice(slots), offs(slots);
    std::vector<CS> partial(slots + 1);
    a.for_each_nonzero([&](std::span<const std::uint32_t> idx, SA av) {
      for (std::size_t t = 0; t < slots; ++t) {
        if (rows.row_size(idx[t + 1]) == 0) return;
      }
      const std::size_t base = static_cast<std::size_t>(idx[0]) * weight[0];
      std::fill(choice.begin(), choice.end(), 0u);
      partial[0] = static_cast<CS>(av);
      // running products and offsets, recomputed from slot `from` on
      std::size_t from = 0;
      for (;;) {
        for (std::size_t t = from; t < slots; ++t) {
          const std::uint32_t row = idx[t + 1];
          partial[t + 1] = partial[t] * rows.vals[row][choice[t]];
          std::size_t off = 0;
          auto tl = rows.tail(row, choice[t]);
          for (std::size_t s = 0; s < tail_len; ++s) {
            off += static_cast<std::size_t>(tl[s]) * weight[1 + t * tail_len + s];
          }
          offs[t] = off;
        }
        std::size_t pos = base;
        for (std::size_t t = 0; t < slots; ++t) pos += offs[t];
        flat[pos] += partial[slots];
        // advance odometer, last slot fastest
        std::size_t t = slots;
        while (t-- > 0) {
          if (++choice[t] < rows.row_size(idx[t + 1])) break;
          choice[t] = 0;
          if (t == 0) return;
        }
        from = t;
      }
    });
    return Tensor<CS>::dense(shape.order, n, std::move(flat));
  }

  // Sparse accumulation keyed by the full result index.
  std::map<std::vector<std::uint32_t>, CS> acc;
  std::vector<std::uint32_t> key(static_cast<std::size_t>(shape.order));
  std::vector<std::size_t> choice(slots);
  std::vector<CS> partial(slots + 1);
  a.for_each_nonzero([&](std::span<const std::uint32_t> idx, SA av) {
    for (std::size_t t = 0; t < slots; ++t) {
      if (rows.row_size(idx[t + 1]) == 0) return;
    }
    key[0] = idx[0];
    std::fill(choice.begin(), choice.end(), 0u);
    partial[0] = static_cast<CS>(av);
    std::size_t from = 0;
    for (;;) {
      for (std::size_t t = from; t < slots; ++t) {
        const std::uint32_t row = idx[t + 1];
        partial[t + 1] = partial[t] * rows.vals[row][choice[t]];
        auto tl = rows.tail(row, choice[t]);
        std::copy(tl.begin(), tl.end(), key.begin() + 1 + t * tail_len);
      }
      acc[key] += partial[slots];
      if (acc.size() > entry_cap) {
        throw resource_limit_error(
            "product exceeds the configured entry cap of " + std::to_string(entry_cap));
      }
      std::size_t t = slots;
      while (t-- > 0) {
        if (++choice[t] < rows.row_size(idx[t + 1])) break;
        choice[t] = 0;
        if (t == 0) return;
      }
      from = t;
    }
  });
  std::vector<std::uint32_t> sidx;
  sidx.reserve(acc.size() * static_cast<std::size_t>(shape.order));
  std::vector<CS> sval;
  sval.reserve(acc.size());
  for (auto& [k, v] : acc) {
    sidx.insert(sidx.end(), k.begin(), k.end());
    sval.push_back(v);
  }
  return Tensor<CS>::sparse(shape.order, n, std::move(sidx), std::move(sval));
}

/// (A x^{m-1})_i = sum a_{i i_2..i_m} x_{i_2} ... x_{i_m}; the product with
/// an order-1 right factor, without materializing anything.
template <class Scalar, class V>
std::vector<V> apply_vector(const Tensor<Scalar>& a, std::span<const V> x) {
  if (static_cast<int>(x.size()) != a.dim()) {
    throw precondition_error("vector length does not match tensor dimension");
  }
  if (a.order() < 2) {
    throw precondition_error("left product factor must have order >= 2");
  }
  std::vector<V> out(x.size(), V{});
  a.for_each_nonzero([&](std::span<const std::uint32_t> idx, Scalar v) {
    V term = static_cast<V>(v);
    for (std::size_t t = 1; t < idx.size(); ++t) term *= x[idx[t]];
    out[idx[0]] += term;
  });
  return out;
}

template <class Scalar, class V>
std::vector<V> apply_vector(const Tensor<Scalar>& a, const std::vector<V>& x) {
  return apply_vector(a, std::span<const V>(x));
}

/// A^1 = A, A^{j+1} = A(A^j). Order of A^k is (m-1)^k + 1.
template <class Scalar>
Tensor<Scalar> tensor_power(const Tensor<Scalar>& a, int k,
                            std::size_t entry_cap = default_entry_cap) {
  if (k < 1) throw precondition_error("tensor power requires exponent >= 1");
  if (a.order() < 2) throw precondition_error("tensor power requires order >= 2");
  Tensor<Scalar> p = a;
  for (int j = 1; j < k; ++j) p = general_product(a, p, entry_cap);
  return p;
}

/// Row sums of AB for nonnegative A given the row sums of a nonnegative B:
///   r_i(AB) = sum a_{i i_2..i_m} r_{i_2}(B) ... r_{i_m}(B).
/// Nothing is materialized, so this scales to powers far past the cap.
template <class Scalar>
RowSumProfile product_row_sums(const Tensor<Scalar>& a, const std::vector<double>& rb) {
  if (!a.nonneg()) {
    throw precondition_error("row-sum propagation requires a nonnegative left factor");
  }
  if (a.order() < 2) {
    throw precondition_error("left product factor must have order >= 2");
  }
  if (static_cast<int>(rb.size()) != a.dim()) {
    throw precondition_error("row-sum vector length does not match tensor dimension");
  }
  std::vector<double> r(rb.size(), 0.0);
  a.for_each_nonzero([&](std::span<const std::uint32_t> idx, Scalar v) {
    double term = abs_value(v);
    for (std::size_t t = 1; t < idx.size(); ++t) term *= rb[idx[t]];
    r[idx[0]] += term;
  });
  return finalize_profile(std::move(r));
}

template <class SA, class SB>
RowSumProfile product_row_sums(const Tensor<SA>& a, const Tensor<SB>& b) {
  if (!b.nonneg()) {
    throw precondition_error("row-sum propagation requires a nonnegative right factor");
  }
  if (a.dim() != b.dim()) {
    throw validation_error("product factors must share the same dimension");
  }
  return product_row_sums(a, row_sums(b).values);
}

/// For arbitrary (possibly complex) factors only the bound survives:
///   r_i(AB) <= r_i(A) R(B)^{m-1}.
inline RowSumProfile product_row_sum_bound(const RowSumProfile& ra, double rb_max, int m) {
  std::vector<double> bound(ra.values.size());
  double pw = 1.0;
  for (int t = 1; t < m; ++t) pw *= rb_max;
  for (std::size_t i = 0; i < bound.size(); ++i) bound[i] = ra.values[i] * pw;
  return finalize_profile(std::move(bound));
}

template <class SA, class SB>
RowSumProfile product_row_sum_bound(const Tensor<SA>& a, const Tensor<SB>& b) {
  if (a.dim() != b.dim()) {
    throw validation_error("product factors must share the same dimension");
  }
  if (a.order() < 2) {
    throw precondition_error("left product factor must have order >= 2");
  }
  return product_row_sum_bound(row_sums(a), row_sums(b).max, a.order());
}

/// b_{i i_2..i_m} = a_{i i_2..i_m} d_{i_2} ... d_{i_m} / d_i^{m-1} for a
/// positive vector d. Preserves the spectrum (substitute x -> D^{-1} x).
template <class Scalar>
Tensor<Scalar> diagonal_similarity(const Tensor<Scalar>& a, const std::vector<double>& d) {
  if (static_cast<int>(d.size()) != a.dim()) {
    throw precondition_error("scaling vector length does not match tensor dimension");
  }
  for (double v : d) {
    if (!(v > 0.0)) throw precondition_error("scaling vector must be strictly positive");
  }
  const int m = a.order();
  std::vector<double> dpow(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    double p = 1.0;
    for (int t = 1; t < m; ++t) p *= d[i];
    dpow[i] = p;
  }
  auto scale = [&](std::span<const std::uint32_t> idx, Scalar v) {
    double f = 1.0 / dpow[idx[0]];
    for (std::size_t t = 1; t < idx.size(); ++t) f *= d[idx[t]];
    return v * f;
  };
  if (a.is_dense()) {
    std::vector<Scalar> flat = a.dense_values();
    a.for_each_nonzero([&](std::span<const std::uint32_t> idx, Scalar v) {
      std::size_t pos = 0;
      for (std::uint32_t dg : idx) pos = pos * a.dim() + dg;
      flat[pos] = scale(idx, v);
    });
    return Tensor<Scalar>::dense(m, a.dim(), std::move(flat));
  }
  std::vector<std::uint32_t> sidx;
  std::vector<Scalar> sval;
  a.for_each_nonzero([&](std::span<const std::uint32_t> idx, Scalar v) {
    sidx.insert(sidx.end(), idx.begin(), idx.end());
    sval.push_back(scale(idx, v));
  });
  return Tensor<Scalar>::sparse(m, a.dim(), std::move(sidx), std::move(sval));
}

/// mu_k = sum_{t=0}^{k-1} (m-1)^t, the row-sum exponent picked up by the
/// k-th power; equals ((m-1)^k - 1)/(m-2) for m > 2 and k for m = 2.
inline long long mu_exponent(int m, int k) {
  if (m < 2) throw precondition_error("mu exponent requires order >= 2");
  if (k < 0) throw precondition_error("mu exponent requires k >= 0");
  const long long maxv = std::numeric_limits<long long>::max();
  long long sum = 0, pw = 1;
  for (int t = 0; t < k; ++t) {
    if (sum > maxv - pw) throw resource_limit_error("mu exponent overflows 64-bit range");
    sum += pw;
    if (t + 1 < k) {
      if (pw > maxv / (m - 1)) throw resource_limit_error("mu exponent overflows 64-bit range");
      pw *= (m - 1);
    }
  }
  return sum;
}

}  // namespace tenspec
