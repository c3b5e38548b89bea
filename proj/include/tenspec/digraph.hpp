#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tenspec/errors.hpp"
#include "tenspec/product.hpp"
#include "tenspec/tensor.hpp"

namespace tenspec {

inline constexpr std::size_t default_circuit_cap = 100'000;

/// Vertices 0..n-1, adjacency lists sorted and deduplicated. Self-loops
/// allowed.
struct Digraph {
  int n = 0;
  std::vector<std::vector<int>> adj;

  static Digraph from_arcs(int n, const std::vector<std::pair<int, int>>& arcs) {
    Digraph g;
    g.n = n;
    g.adj.assign(static_cast<std::size_t>(n), {});
    for (auto [i, j] : arcs) g.adj[static_cast<std::size_t>(i)].push_back(j);
    for (auto& row : g.adj) {
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return g;
  }

  bool has_arc(int i, int j) const {
    const auto& row = adj[static_cast<std::size_t>(i)];
    return std::binary_search(row.begin(), row.end(), j);
  }

  std::size_t arc_count() const {
    std::size_t c = 0;
    for (const auto& row : adj) c += row.size();
    return c;
  }

  friend bool operator==(const Digraph&, const Digraph&) = default;
};

/// Tarjan, iterative so deep paths cannot overflow the call stack.
struct SccResult {
  std::vector<int> comp;  // component id per vertex
  std::vector<int> size;  // vertices per component
  int count = 0;
};

inline SccResult strongly_connected_components(const Digraph& g) {
  const int n = g.n;
  SccResult r;
  r.comp.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<int> stack;
  int next_index = 0;

  struct Frame {
    int v;
    std::size_t edge;
  };
  std::vector<Frame> call;

  for (int root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] != -1) continue;
    call.push_back({root, 0});
    while (!call.empty()) {
      auto& [v, e] = call.back();
      if (e == 0) {
        index[static_cast<std::size_t>(v)] = low[static_cast<std::size_t>(v)] = next_index++;
        stack.push_back(v);
        on_stack[static_cast<std::size_t>(v)] = true;
      }
      const auto& row = g.adj[static_cast<std::size_t>(v)];
      if (e < row.size()) {
        int w = row[e++];
        if (index[static_cast<std::size_t>(w)] == -1) {
          call.push_back({w, 0});
        } else if (on_stack[static_cast<std::size_t>(w)]) {
          low[static_cast<std::size_t>(v)] =
              std::min(low[static_cast<std::size_t>(v)], index[static_cast<std::size_t>(w)]);
        }
      } else {
        if (low[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
          int sz = 0;
          for (;;) {
            int w = stack.back();
            stack.pop_back();
            on_stack[static_cast<std::size_t>(w)] = false;
            r.comp[static_cast<std::size_t>(w)] = r.count;
            ++sz;
            if (w == v) break;
          }
          r.size.push_back(sz);
          ++r.count;
        }
        int child = v;
        call.pop_back();
        if (!call.empty()) {
          int p = call.back().v;
          low[static_cast<std::size_t>(p)] =
              std::min(low[static_cast<std::size_t>(p)], low[static_cast<std::size_t>(child)]);
        }
      }
    }
  }
  return r;
}

inline bool strongly_connected(const Digraph& g) {
  if (g.n <= 1) return true;
  return strongly_connected_components(g).count == 1;
}

/// Every vertex lies on some circuit: it carries a self-loop or sits in a
/// strongly connected component with at least two vertices.
inline bool is_weakly_connected(const Digraph& g) {
  SccResult scc = strongly_connected_components(g);
  for (int v = 0; v < g.n; ++v) {
    if (g.has_arc(v, v)) continue;
    if (scc.size[static_cast<std::size_t>(scc.comp[static_cast<std::size_t>(v)])] >= 2) continue;
    return false;
  }
  return true;
}

using Circuit = std::vector<int>;  // distinct vertices, minimal vertex first

namespace detail {

// Johnson's elementary-circuit search on the self-loop-free part of g.
class CircuitEnumerator {
public:
  CircuitEnumerator(const Digraph& g, std::size_t cap, std::vector<Circuit>& out)
      : n_(g.n), cap_(cap), out_(out) {
    adj_.assign(static_cast<std::size_t>(n_), {});
    for (int v = 0; v < n_; ++v) {
      for (int w : g.adj[static_cast<std::size_t>(v)]) {
        if (w != v) adj_[static_cast<std::size_t>(v)].push_back(w);
      }
    }
    blocked_.assign(static_cast<std::size_t>(n_), false);
    blocked_by_.assign(static_cast<std::size_t>(n_), {});
  }

  void run() {
    for (int s = 0; s < n_; ++s) {
      // SCC of the subgraph induced on {s..n-1}, restricted to s's component
      scc_of_suffix(s);
      if (comp_size_ < 2) continue;
      root_ = s;
      for (int v = s; v < n_; ++v) {
        if (in_comp_[static_cast<std::size_t>(v)]) {
          blocked_[static_cast<std::size_t>(v)] = false;
          blocked_by_[static_cast<std::size_t>(v)].clear();
        }
      }
      circuit(s);
    }
  }

private:
  void scc_of_suffix(int s) {
    Digraph sub;
    sub.n = n_;
    sub.adj.assign(static_cast<std::size_t>(n_), {});
    for (int v = s; v < n_; ++v) {
      for (int w : adj_[static_cast<std::size_t>(v)]) {
        if (w >= s) sub.adj[static_cast<std::size_t>(v)].push_back(w);
      }
    }
    SccResult scc = strongly_connected_components(sub);
    int comp = scc.comp[static_cast<std::size_t>(s)];
    in_comp_.assign(static_cast<std::size_t>(n_), false);
    comp_size_ = 0;
    for (int v = s; v < n_; ++v) {
      if (scc.comp[static_cast<std::size_t>(v)] == comp) {
        in_comp_[static_cast<std::size_t>(v)] = true;
        ++comp_size_;
      }
    }
  }

  bool circuit(int v) {
    bool found = false;
    path_.push_back(v);
    blocked_[static_cast<std::size_t>(v)] = true;
    for (int w : adj_[static_cast<std::size_t>(v)]) {
      if (!in_comp_[static_cast<std::size_t>(w)] || w < root_) continue;
      if (w == root_) {
        if (out_.size() >= cap_) {
          throw resource_limit_error("circuit count exceeds the cap of " +
                                     std::to_string(cap_));
        }
        out_.push_back(path_);
        found = true;
      } else if (!blocked_[static_cast<std::size_t>(w)]) {
        if (circuit(w)) found = true;
      }
    }
    if (found) {
      unblock(v);
    } else {
      for (int w : adj_[static_cast<std::size_t>(v)]) {
        if (!in_comp_[static_cast<std::size_t>(w)] || w < root_) continue;
        auto& b = blocked_by_[static_cast<std::size_t>(w)];
        if (std::find(b.begin(), b.end(), v) == b.end()) b.push_back(v);
      }
    }
    path_.pop_back();
    return found;
  }

  void unblock(int v) {
    blocked_[static_cast<std::size_t>(v)] = false;
    auto pending = std::move(blocked_by_[static_cast<std::size_t>(v)]);
    blocked_by_[static_cast<std::size_t>(v)].clear();
    for (int w : pending) {
      if (blocked_[static_cast<std::size_t>(w)]) unblock(w);
    }
  }

  int n_;
  std::size_t cap_;
  std::vector<Circuit>& out_;
  std::vector<std::vector<int>> adj_;
  std::vector<bool> blocked_, in_comp_;
  std::vector<std::vector<int>> blocked_by_;
  std::vector<int> path_;
  int root_ = 0;
  int comp_size_ = 0;
};

}  // namespace detail

/// All elementary circuits, self-loops first, each emitted once with its
/// minimal vertex leading. Throws when more than cap circuits exist.
inline std::vector<Circuit> enumerate_circuits(const Digraph& g,
                                               std::size_t cap = default_circuit_cap) {
  if (cap == 0) throw precondition_error("circuit cap must be positive");
  std::vector<Circuit> out;
  for (int v = 0; v < g.n; ++v) {
    if (g.has_arc(v, v)) {
      if (out.size() >= cap) {
        throw resource_limit_error("circuit count exceeds the cap of " + std::to_string(cap));
      }
      out.push_back({v});
    }
  }
  detail::CircuitEnumerator(g, cap, out).run();
  return out;
}

/// Arc (i,j) when some nonzero entry a_{i i_2..i_m} has j among i_2..i_m
/// and the tuple is not the all-i diagonal one.
template <class Scalar>
Digraph build_digraph(const Tensor<Scalar>& t) {
  std::vector<std::pair<int, int>> arcs;
  if (t.order() >= 2) {
    t.for_each_nonzero([&](std::span<const std::uint32_t> idx, Scalar) {
      const std::uint32_t i = idx[0];
      bool all_i = true;
      for (std::size_t p = 1; p < idx.size(); ++p) {
        if (idx[p] != i) {
          all_i = false;
          break;
        }
      }
      if (all_i) return;
      for (std::size_t p = 1; p < idx.size(); ++p) {
        arcs.emplace_back(static_cast<int>(i), static_cast<int>(idx[p]));
      }
    });
  }
  return Digraph::from_arcs(t.dim(), arcs);
}

struct ProductDigraph {
  Digraph graph;
  /// True when the arc set is exactly the digraph of the materialized
  /// product. For tensors where cancellation can hide entries the graph is
  /// a superset, which still yields valid (conservative) inclusion sets.
  bool exact = true;
};

namespace detail {

// Per-row nonzero pattern of the right factor, reduced to what the arc
// test needs: which digits appear in tails, which appear in non-constant
// tails, and which constant tails exist.
struct RowPattern {
  std::vector<bool> nonempty;
  std::vector<std::vector<bool>> digits;     // digits[r][d]
  std::vector<std::vector<bool>> nc_digits;  // digits of non-constant tails
  std::vector<bool> has_nc;                  // row has a non-constant tail
  std::vector<std::vector<bool>> const_tail; // const_tail[r][c]: tail (c,..,c) present
  std::vector<int> const_count;

  template <class S>
  explicit RowPattern(const Tensor<S>& b) {
    const std::size_t n = static_cast<std::size_t>(b.dim());
    nonempty.assign(n, false);
    digits.assign(n, std::vector<bool>(n, false));
    nc_digits.assign(n, std::vector<bool>(n, false));
    has_nc.assign(n, false);
    const_tail.assign(n, std::vector<bool>(n, false));
    const_count.assign(n, 0);
    b.for_each_nonzero([&](std::span<const std::uint32_t> idx, S) {
      const std::size_t r = idx[0];
      nonempty[r] = true;
      bool constant = true;
      for (std::size_t p = 2; p < idx.size(); ++p) {
        if (idx[p] != idx[1]) {
          constant = false;
          break;
        }
      }
      for (std::size_t p = 1; p < idx.size(); ++p) {
        digits[r][idx[p]] = true;
        if (!constant) nc_digits[r][idx[p]] = true;
      }
      if (constant) {
        if (!const_tail[r][idx[1]]) {
          const_tail[r][idx[1]] = true;
          ++const_count[r];
        }
      } else {
        has_nc[r] = true;
      }
    });
  }

  bool has_tail_not_all(std::size_t r, std::uint32_t i) const {
    if (has_nc[r]) return true;
    if (const_count[r] >= 2) return true;
    return const_count[r] == 1 && !const_tail[r][i];
  }
};

}  // namespace detail

/// Digraph of AB without materializing AB. For nonnegative factors the arc
/// set is exact: an entry of AB is nonzero exactly when one positive
/// summand exists. Otherwise the support pattern only bounds the arcs from
/// above; the product is materialized when it fits, and the superset is
/// returned (flagged) when it does not.
template <class SA, class SB>
ProductDigraph product_digraph(const Tensor<SA>& a, const Tensor<SB>& b,
                               std::size_t entry_cap = default_entry_cap) {
  const ProductShape shape = product_shape(a, b);
  const bool pattern_exact = a.nonneg() && b.nonneg();
  if (!pattern_exact && shape.dense_fits && shape.dense_entries <= entry_cap) {
    return {build_digraph(general_product(a, b, entry_cap)), true};
  }

  ProductDigraph out;
  out.exact = pattern_exact;
  if (shape.order < 2) {
    out.graph = Digraph::from_arcs(shape.dim, {});
    return out;
  }

  const detail::RowPattern rows(b);
  const std::size_t slots = static_cast<std::size_t>(a.order() - 1);
  std::vector<std::pair<int, int>> arcs;
  a.for_each_nonzero([&](std::span<const std::uint32_t> idx, SA) {
    const std::uint32_t i = idx[0];
    for (std::size_t t = 1; t <= slots; ++t) {
      if (!rows.nonempty[idx[t]]) return;
    }
    for (std::size_t t = 1; t <= slots; ++t) {
      const auto& dg = rows.digits[idx[t]];
      for (int j = 0; j < shape.dim; ++j) {
        if (dg[static_cast<std::size_t>(j)] && static_cast<std::uint32_t>(j) != i) {
          arcs.emplace_back(static_cast<int>(i), j);
        }
      }
    }
    // self-loop: some tuple contains digit i yet is not the all-i tuple.
    // Either one tail does both, or one slot supplies i and another slot a
    // tail that is not constant i.
    bool loop = false;
    for (std::size_t t = 1; t <= slots && !loop; ++t) {
      if (rows.nc_digits[idx[t]][i]) loop = true;
    }
    for (std::size_t t = 1; t <= slots && !loop; ++t) {
      if (!rows.digits[idx[t]][i]) continue;
      for (std::size_t s = 1; s <= slots; ++s) {
        if (s != t && rows.has_tail_not_all(idx[s], i)) {
          loop = true;
          break;
        }
      }
    }
    if (loop) arcs.emplace_back(static_cast<int>(i), static_cast<int>(i));
  });
  out.graph = Digraph::from_arcs(shape.dim, arcs);
  return out;
}

/// Strong connectivity of the representation digraph; the usual notion and
/// the one the iterative spectral oracle's convergence theory relies on.
template <class Scalar>
bool weakly_irreducible_standard(const Tensor<Scalar>& t) {
  return strongly_connected(build_digraph(t));
}

/// Literal subset form: every nonempty proper index set I admits a nonzero
/// entry rooted in I whose remaining indices all lie outside I. Stronger
/// than the standard form; exposed for comparison, not used by the oracles.
template <class Scalar>
bool weakly_irreducible_paper(const Tensor<Scalar>& t) {
  const int n = t.dim();
  if (n == 1) return true;
  if (n > 20) {
    throw resource_limit_error("subset-form irreducibility check limited to dimension 20");
  }
  struct Entry {
    std::uint32_t root;
    std::uint32_t tail_mask;
  };
  std::vector<Entry> pattern;
  t.for_each_nonzero([&](std::span<const std::uint32_t> idx, Scalar) {
    std::uint32_t mask = 0;
    for (std::size_t p = 1; p < idx.size(); ++p) mask |= (1u << idx[p]);
    pattern.push_back({idx[0], mask});
  });
  const std::uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1u);
  for (std::uint32_t I = 1; I < full; ++I) {
    bool ok = false;
    for (const Entry& e : pattern) {
      if ((I >> e.root) & 1u) {
        if ((e.tail_mask & I) == 0) {
          ok = true;
          break;
        }
      }
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace tenspec
