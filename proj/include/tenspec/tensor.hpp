#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tenspec/errors.hpp"
#include "tenspec/scalar.hpp"

namespace tenspec {

/// Order-m dimension-n multiway array over real or complex doubles.
///
/// Indices are 0-based everywhere inside the library; the JSON layer is the
/// only place that speaks the 1-based external convention. Dense storage is
/// a flat row-major array (first index slowest), so dense iteration order
/// coincides with the lexicographic order of sparse storage and both
/// representations sum in the same order.
template <class Scalar>
class Tensor {
  static_assert(std::is_same_v<Scalar, double> ||
                    std::is_same_v<Scalar, std::complex<double>>,
                "Tensor supports double and std::complex<double>");

public:
  using scalar_type = Scalar;

  enum class Storage { dense, sparse };

  /// Largest entry count a dense tensor may hold. Larger tensors must be
  /// sparse so that high-order products are never materialized by accident.
  static constexpr std::size_t dense_limit = 1'000'000;

  Tensor() = default;

  /// entries are flat row-major, size must equal dim^order.
  static Tensor dense(int order, int dim, std::vector<Scalar> entries) {
    check_shape(order, dim);
    std::size_t total = 0;
    if (!pow_within(dim, order, dense_limit, total)) {
      throw resource_limit_error(
          "dense tensor of order " + std::to_string(order) + " dimension " +
          std::to_string(dim) + " exceeds the dense storage limit (" +
          std::to_string(dense_limit) + " entries); use sparse storage");
    }
    if (entries.size() != total) {
      throw validation_error("dense entry count " + std::to_string(entries.size()) +
                             " does not match dim^order = " + std::to_string(total));
    }
    Tensor t;
    t.order_ = order;
    t.dim_ = dim;
    t.storage_ = Storage::dense;
    t.values_ = std::move(entries);
    t.nonneg_ = compute_nonneg(t.values_);
    return t;
  }

  /// indices: nnz * order digits, 0-based; sorted lexicographically here.
  static Tensor sparse(int order, int dim, std::vector<std::uint32_t> indices,
                       std::vector<Scalar> values) {
    check_shape(order, dim);
    const std::size_t m = static_cast<std::size_t>(order);
    if (values.size() * m != indices.size()) {
      throw validation_error("sparse index array length does not match value count");
    }
    for (std::uint32_t d : indices) {
      if (d >= static_cast<std::uint32_t>(dim)) {
        throw validation_error("index out of range: component " +
                               std::to_string(d + 1) + " with dim " +
                               std::to_string(dim));
      }
    }
    const std::size_t nnz = values.size();
    std::vector<std::uint32_t> perm(nnz);
    std::iota(perm.begin(), perm.end(), 0u);
    std::sort(perm.begin(), perm.end(), [&](std::uint32_t a, std::uint32_t b) {
      return std::lexicographical_compare(
          indices.begin() + a * m, indices.begin() + (a + 1) * m,
          indices.begin() + b * m, indices.begin() + (b + 1) * m);
    });
    Tensor t;
    t.order_ = order;
    t.dim_ = dim;
    t.storage_ = Storage::sparse;
    t.indices_.resize(indices.size());
    t.values_.resize(nnz);
    for (std::size_t r = 0; r < nnz; ++r) {
      std::copy_n(indices.begin() + perm[r] * m, m, t.indices_.begin() + r * m);
      t.values_[r] = values[perm[r]];
    }
    for (std::size_t r = 1; r < nnz; ++r) {
      if (std::equal(t.indices_.begin() + (r - 1) * m, t.indices_.begin() + r * m,
                     t.indices_.begin() + r * m)) {
        throw validation_error("duplicate sparse index at stored entry " +
                               std::to_string(r));
      }
    }
    t.nonneg_ = compute_nonneg(t.values_);
    return t;
  }

  static Tensor zeros(int order, int dim) {
    check_shape(order, dim);
    std::size_t total = 0;
    if (pow_within(dim, order, dense_limit, total)) {
      return dense(order, dim, std::vector<Scalar>(total, Scalar{}));
    }
    return sparse(order, dim, {}, {});
  }

  /// Diagonal entries one, all others zero. Stored sparse (n entries).
  static Tensor identity(int order, int dim) {
    check_shape(order, dim);
    std::vector<std::uint32_t> idx(static_cast<std::size_t>(order) * dim);
    std::vector<Scalar> val(dim, Scalar(1));
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < order; ++j) idx[static_cast<std::size_t>(i) * order + j] = i;
    }
    return sparse(order, dim, std::move(idx), std::move(val));
  }

  int order() const { return order_; }
  int dim() const { return dim_; }
  Storage storage() const { return storage_; }
  bool is_dense() const { return storage_ == Storage::dense; }

  /// All entries real and >= 0.
  bool nonneg() const { return nonneg_; }

  /// Dense: dim^order. Sparse: number of stored entries.
  std::size_t stored_count() const {
    return is_dense() ? values_.size() : values_.size();
  }

  std::size_t nonzero_count() const {
    std::size_t c = 0;
    for (const Scalar& v : values_) {
      if (v != Scalar{}) ++c;
    }
    return c;
  }

  /// 0-based lookup; index.size() must equal order().
  Scalar at(std::span<const std::uint32_t> index) const {
    if (static_cast<int>(index.size()) != order_) {
      throw precondition_error("index tuple length does not match tensor order");
    }
    if (is_dense()) {
      std::size_t flat = 0;
      for (std::uint32_t d : index) flat = flat * dim_ + d;
      return values_[flat];
    }
    const std::size_t m = static_cast<std::size_t>(order_);
    std::size_t lo = 0, hi = values_.size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (std::lexicographical_compare(indices_.begin() + mid * m,
                                       indices_.begin() + (mid + 1) * m,
                                       index.begin(), index.end())) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    if (lo < values_.size() &&
        std::equal(index.begin(), index.end(), indices_.begin() + lo * m)) {
      return values_[lo];
    }
    return Scalar{};
  }

  /// Calls f(index_span, value) for every nonzero entry in lexicographic
  /// order. Stored zeros (sparse) and zero cells (dense) are skipped.
  template <class F>
  void for_each_nonzero(F&& f) const {
    const std::size_t m = static_cast<std::size_t>(order_);
    if (is_dense()) {
      std::vector<std::uint32_t> idx(m, 0);
      for (const Scalar& v : values_) {
        if (v != Scalar{}) f(std::span<const std::uint32_t>(idx), v);
        // odometer, last digit fastest
        for (std::size_t j = m; j-- > 0;) {
          if (++idx[j] < static_cast<std::uint32_t>(dim_)) break;
          idx[j] = 0;
        }
      }
    } else {
      for (std::size_t r = 0; r < values_.size(); ++r) {
        if (values_[r] != Scalar{}) {
          f(std::span<const std::uint32_t>(indices_.data() + r * m, m), values_[r]);
        }
      }
    }
  }

  Tensor to_sparse() const {
    if (!is_dense()) return *this;
    const std::size_t m = static_cast<std::size_t>(order_);
    std::vector<std::uint32_t> idx;
    std::vector<Scalar> val;
    for_each_nonzero([&](std::span<const std::uint32_t> i, Scalar v) {
      idx.insert(idx.end(), i.begin(), i.end());
      val.push_back(v);
    });
    (void)m;
    return sparse(order_, dim_, std::move(idx), std::move(val));
  }

  Tensor to_dense() const {
    if (is_dense()) return *this;
    std::size_t total = 0;
    if (!pow_within(dim_, order_, dense_limit, total)) {
      throw resource_limit_error("tensor exceeds the dense storage limit");
    }
    std::vector<Scalar> flat(total, Scalar{});
    for_each_nonzero([&](std::span<const std::uint32_t> i, Scalar v) {
      std::size_t f = 0;
      for (std::uint32_t d : i) f = f * dim_ + d;
      flat[f] = v;
    });
    return dense(order_, dim_, std::move(flat));
  }

  const std::vector<Scalar>& dense_values() const { return values_; }
  const std::vector<std::uint32_t>& sparse_indices() const { return indices_; }
  const std::vector<Scalar>& sparse_values() const { return values_; }

  /// out = dim^order when it fits below limit; returns false (out saturated)
  /// otherwise. Handles overflow of the power itself.
  static bool pow_within(int dim, int order, std::size_t limit, std::size_t& out) {
    std::size_t p = 1;
    for (int i = 0; i < order; ++i) {
      if (p > limit / static_cast<std::size_t>(dim)) {
        out = std::numeric_limits<std::size_t>::max();
        return false;
      }
      p *= static_cast<std::size_t>(dim);
    }
    out = p;
    return p <= limit;
  }

private:
  static void check_shape(int order, int dim) {
    if (order < 1) throw validation_error("tensor order must be >= 1");
    if (dim < 1) throw validation_error("tensor dimension must be >= 1");
  }

  static bool compute_nonneg(const std::vector<Scalar>& vals) {
    for (const Scalar& v : vals) {
      if constexpr (is_complex_v<Scalar>) {
        if (v.imag() != 0.0 || v.real() < 0.0) return false;
      } else {
        if (v < 0.0) return false;
      }
    }
    return true;
  }

  int order_ = 1;
  int dim_ = 1;
  Storage storage_ = Storage::dense;
  std::vector<std::uint32_t> indices_;  // sparse only: nnz * order digits
  std::vector<Scalar> values_;          // dense: dim^order; sparse: nnz
  bool nonneg_ = true;
};

using TensorR = Tensor<double>;
using TensorC = Tensor<std::complex<double>>;

/// Row-sum functional r_i = sum of |entries| with first index i, plus its
/// extremes r = min_i r_i and R = max_i r_i.
struct RowSumProfile {
  std::vector<double> values;
  double min = 0.0;
  double max = 0.0;
};

inline RowSumProfile finalize_profile(std::vector<double> v) {
  RowSumProfile p;
  p.values = std::move(v);
  auto [lo, hi] = std::minmax_element(p.values.begin(), p.values.end());
  p.min = *lo;
  p.max = *hi;
  return p;
}

template <class Scalar>
RowSumProfile row_sums(const Tensor<Scalar>& a) {
  std::vector<double> r(static_cast<std::size_t>(a.dim()), 0.0);
  a.for_each_nonzero([&](std::span<const std::uint32_t> idx, Scalar v) {
    r[idx[0]] += abs_value(v);
  });
  return finalize_profile(std::move(r));
}

/// Diagonal entries a_{i i ... i}, i = 1..n.
template <class Scalar>
std::vector<Scalar> diagonal(const Tensor<Scalar>& a) {
  std::vector<Scalar> d(static_cast<std::size_t>(a.dim()));
  std::vector<std::uint32_t> idx(static_cast<std::size_t>(a.order()));
  for (int i = 0; i < a.dim(); ++i) {
    std::fill(idx.begin(), idx.end(), static_cast<std::uint32_t>(i));
    d[static_cast<std::size_t>(i)] = a.at(idx);
  }
  return d;
}

}  // namespace tenspec
