// Shared test helpers: brute-force reference implementations that trade speed
// for obviousness, plus seeded random tensor generators. Everything here is
// deliberately independent of the library's clever paths (no row tables, no
// sparsity shortcuts) so the two sides can check each other.
#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "tenspec/tenspec.hpp"

namespace ref {

using tenspec::Tensor;

// Calls f on every index tuple of the given length with digits in {0,..,n-1},
// in lexicographic order.
template <class F>
void for_all_tuples(int len, int n, F&& f) {
  std::vector<std::uint32_t> idx(static_cast<std::size_t>(len), 0);
  while (true) {
    f(std::span<const std::uint32_t>(idx));
    int p = len - 1;
    while (p >= 0 && static_cast<int>(++idx[static_cast<std::size_t>(p)]) == n) {
      idx[static_cast<std::size_t>(p)] = 0;
      --p;
    }
    if (p < 0) break;
  }
}

inline std::size_t flat_index(std::span<const std::uint32_t> idx, int n) {
  std::size_t pos = 0;
  for (std::uint32_t d : idx) pos = pos * static_cast<std::size_t>(n) + d;
  return pos;
}

// Product by direct summation over every output tuple and every contraction
// tuple. Exponential in the orders; only use on tiny shapes.
template <class SA, class SB>
Tensor<tenspec::common_scalar_t<SA, SB>> naive_product(const Tensor<SA>& a,
                                                       const Tensor<SB>& b) {
  using CS = tenspec::common_scalar_t<SA, SB>;
  const tenspec::ProductShape shape = tenspec::product_shape(a, b);
  const int n = shape.dim;
  const int m = a.order();
  const int tail = b.order() - 1;
  std::vector<CS> flat(shape.dense_entries, CS{});
  std::size_t pos = 0;
  for_all_tuples(shape.order, n, [&](std::span<const std::uint32_t> out) {
    CS sum{};
    for_all_tuples(m - 1, n, [&](std::span<const std::uint32_t> contraction) {
      std::vector<std::uint32_t> ai;
      ai.reserve(static_cast<std::size_t>(m));
      ai.push_back(out[0]);
      ai.insert(ai.end(), contraction.begin(), contraction.end());
      CS term = CS(a.at(ai));
      if (term == CS{}) return;
      for (int t = 0; t < m - 1; ++t) {
        std::vector<std::uint32_t> bi;
        bi.reserve(static_cast<std::size_t>(tail) + 1);
        bi.push_back(contraction[static_cast<std::size_t>(t)]);
        for (int d = 0; d < tail; ++d) {
          bi.push_back(out[1 + static_cast<std::size_t>(t) * tail + d]);
        }
        term *= CS(b.at(bi));
      }
      sum += term;
    });
    flat[pos++] = sum;
  });
  return Tensor<CS>::dense(shape.order, n, std::move(flat));
}

template <class S>
std::vector<double> naive_row_sums(const Tensor<S>& t) {
  std::vector<double> r(static_cast<std::size_t>(t.dim()), 0.0);
  for_all_tuples(t.order(), t.dim(), [&](std::span<const std::uint32_t> idx) {
    r[idx[0]] += tenspec::abs_value(t.at(idx));
  });
  return r;
}

template <class S>
tenspec::Digraph naive_digraph(const Tensor<S>& t) {
  std::vector<std::pair<int, int>> arcs;
  for_all_tuples(t.order(), t.dim(), [&](std::span<const std::uint32_t> idx) {
    if (tenspec::abs_value(t.at(idx)) == 0.0) return;
    bool all_same = true;
    for (std::uint32_t d : idx) all_same = all_same && d == idx[0];
    if (all_same) return;
    for (std::size_t p = 1; p < idx.size(); ++p) {
      arcs.emplace_back(static_cast<int>(idx[0]), static_cast<int>(idx[p]));
    }
  });
  return tenspec::Digraph::from_arcs(t.dim(), arcs);
}

// Every elementary circuit by depth-first search restricted to vertices at
// least the start vertex, so each circuit appears once, minimal vertex first.
inline std::vector<tenspec::Circuit> brute_circuits(const tenspec::Digraph& g) {
  std::vector<tenspec::Circuit> out;
  std::vector<int> path;
  std::vector<char> on_path(static_cast<std::size_t>(g.n), 0);
  auto dfs = [&](auto&& self, int start, int v) -> void {
    path.push_back(v);
    on_path[static_cast<std::size_t>(v)] = 1;
    for (int w : g.adj[static_cast<std::size_t>(v)]) {
      if (w == start) {
        out.push_back(path);
      } else if (w > start && !on_path[static_cast<std::size_t>(w)]) {
        self(self, start, w);
      }
    }
    path.pop_back();
    on_path[static_cast<std::size_t>(v)] = 0;
  };
  for (int s = 0; s < g.n; ++s) dfs(dfs, s, s);
  std::sort(out.begin(), out.end());
  return out;
}

// Strongly connected components by pairwise reachability.
inline std::vector<std::vector<int>> brute_sccs(const tenspec::Digraph& g) {
  const std::size_t n = static_cast<std::size_t>(g.n);
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (std::size_t v = 0; v < n; ++v) {
    for (int w : g.adj[v]) reach[v][static_cast<std::size_t>(w)] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (reach[i][k] && reach[k][j]) reach[i][j] = 1;
      }
    }
  }
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> groups;
  for (std::size_t i = 0; i < n; ++i) {
    if (comp[i] >= 0) continue;
    groups.emplace_back();
    comp[i] = static_cast<int>(groups.size()) - 1;
    groups.back().push_back(static_cast<int>(i));
    for (std::size_t j = i + 1; j < n; ++j) {
      if (comp[j] < 0 && reach[i][j] && reach[j][i]) {
        comp[j] = comp[i];
        groups.back().push_back(static_cast<int>(j));
      }
    }
  }
  return groups;
}

// 4x4 determinant of the linearized quadratic system at a fixed lambda,
// evaluated numerically by cofactor expansion. Cross-checks the symbolic
// resultant construction inside the library.
template <class S>
std::complex<double> sylvester_det_at(const Tensor<S>& t, std::complex<double> lam) {
  using C = std::complex<double>;
  auto e = [&](std::uint32_t i, std::uint32_t j, std::uint32_t k) {
    const std::uint32_t idx[3] = {i, j, k};
    return tenspec::to_complex(t.at(idx));
  };
  const C c2 = e(0, 1, 1);
  const C c1 = e(0, 0, 1) + e(0, 1, 0);
  const C c0 = e(0, 0, 0) - lam;
  const C d2 = e(1, 1, 1) - lam;
  const C d1 = e(1, 0, 1) + e(1, 1, 0);
  const C d0 = e(1, 0, 0);
  const C m[4][4] = {{c2, c1, c0, 0.0},
                     {0.0, c2, c1, c0},
                     {d2, d1, d0, 0.0},
                     {0.0, d2, d1, d0}};
  auto det3 = [&](int r0, int r1, int r2, int k0, int k1, int k2) {
    return m[r0][k0] * (m[r1][k1] * m[r2][k2] - m[r1][k2] * m[r2][k1]) -
           m[r0][k1] * (m[r1][k0] * m[r2][k2] - m[r1][k2] * m[r2][k0]) +
           m[r0][k2] * (m[r1][k0] * m[r2][k1] - m[r1][k1] * m[r2][k0]);
  };
  return m[0][0] * det3(1, 2, 3, 1, 2, 3) - m[0][1] * det3(1, 2, 3, 0, 2, 3) +
         m[0][2] * det3(1, 2, 3, 0, 1, 3) - m[0][3] * det3(1, 2, 3, 0, 1, 2);
}

// Determinant and trace of a square matrix tensor, for validating the
// characteristic polynomial solver against Vieta's identities.
template <class S>
std::complex<double> matrix_det(const Tensor<S>& t) {
  const std::size_t n = static_cast<std::size_t>(t.dim());
  std::vector<std::complex<double>> a(n * n);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      const std::uint32_t idx[2] = {i, j};
      a[i * n + j] = tenspec::to_complex(t.at(idx));
    }
  }
  std::complex<double> det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    }
    if (std::abs(a[piv * n + c]) == 0.0) return 0.0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[c * n + j]);
      det = -det;
    }
    det *= a[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const std::complex<double> f = a[r * n + c] / a[c * n + c];
      for (std::size_t j = c; j < n; ++j) a[r * n + j] -= f * a[c * n + j];
    }
  }
  return det;
}

template <class S>
std::complex<double> matrix_trace(const Tensor<S>& t) {
  std::complex<double> tr = 0.0;
  for (std::uint32_t i = 0; i < static_cast<std::uint32_t>(t.dim()); ++i) {
    const std::uint32_t idx[2] = {i, i};
    tr += tenspec::to_complex(t.at(idx));
  }
  return tr;
}

// ---- seeded generators -----------------------------------------------------

struct Gen {
  std::mt19937 rng;
  explicit Gen(std::uint32_t seed) : rng(seed) {}

  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }
  double sym() { return std::uniform_real_distribution<double>(-1.0, 1.0)(rng); }
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  Tensor<double> nonneg(int m, int n, double zero_prob = 0.0, bool sparse_storage = false) {
    std::size_t count = 1;
    for (int p = 0; p < m; ++p) count *= static_cast<std::size_t>(n);
    std::vector<double> flat(count);
    for (double& v : flat) v = unit() < zero_prob ? 0.0 : 0.05 + 1.95 * unit();
    auto t = Tensor<double>::dense(m, n, std::move(flat));
    return sparse_storage ? t.to_sparse() : t;
  }

  Tensor<double> signed_tensor(int m, int n, double zero_prob = 0.0) {
    std::size_t count = 1;
    for (int p = 0; p < m; ++p) count *= static_cast<std::size_t>(n);
    std::vector<double> flat(count);
    for (double& v : flat) v = unit() < zero_prob ? 0.0 : sym();
    return Tensor<double>::dense(m, n, std::move(flat));
  }

  Tensor<std::complex<double>> complex_tensor(int m, int n, double zero_prob = 0.0) {
    std::size_t count = 1;
    for (int p = 0; p < m; ++p) count *= static_cast<std::size_t>(n);
    std::vector<std::complex<double>> flat(count);
    for (auto& v : flat) {
      v = unit() < zero_prob ? std::complex<double>{} : std::complex<double>(sym(), sym());
    }
    return Tensor<std::complex<double>>::dense(m, n, std::move(flat));
  }

  // Rejection-samples a sparse nonnegative tensor until its representation
  // digraph is strongly connected; falls back to planting a cycle.
  Tensor<double> weakly_irreducible(int m, int n, double zero_prob = 0.5) {
    for (int tries = 0; tries < 64; ++tries) {
      auto t = nonneg(m, n, zero_prob);
      if (tenspec::weakly_irreducible_standard(t)) return t;
    }
    auto t = nonneg(m, n, zero_prob);
    std::vector<double> flat(t.dense_values().begin(), t.dense_values().end());
    for (int i = 0; i < n; ++i) {
      std::vector<std::uint32_t> idx(static_cast<std::size_t>(m),
                                     static_cast<std::uint32_t>((i + 1) % n));
      idx[0] = static_cast<std::uint32_t>(i);
      flat[flat_index(idx, n)] = 1.0;
    }
    return Tensor<double>::dense(m, n, std::move(flat));
  }
};

inline Tensor<double> example_tensor() {
  return Tensor<double>::dense(3, 2, {3, 1, 2, 1, 0, 4, 2, 3});
}

}  // namespace ref
