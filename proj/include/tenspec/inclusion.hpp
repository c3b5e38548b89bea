#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "tenspec/digraph.hpp"
#include "tenspec/errors.hpp"
#include "tenspec/product.hpp"
#include "tenspec/scalar.hpp"
#include "tenspec/tensor.hpp"

namespace tenspec {

inline constexpr double membership_slack = 1e-9;

struct Disk {
  std::complex<double> center;
  double radius = 0.0;
  int row = 1;  // 1-based
};

struct CircuitRegion {
  Circuit circuit;  // 0-based vertices
  std::vector<std::complex<double>> centers;
  std::vector<double> radii;
};

namespace detail {

struct InclusionData {
  std::vector<std::complex<double>> centers;
  std::vector<double> radii;
};

// Diagonal entries of AB without forming AB: the entry at (i, i, ..., i) is
//   sum_{i_2..i_m} a_{i i_2..i_m} b_{i_2 i..i} ... b_{i_m i..i},
// and the disk radius is r_i(A) R(B)^{m-1} - |that entry|, nonnegative up
// to rounding because r_i(A) R(B)^{m-1} >= r_i(AB) >= |diagonal|.
template <class SA, class SB>
InclusionData inclusion_data(const Tensor<SA>& a, const Tensor<SB>& b) {
  product_shape(a, b);  // validates
  const int n = a.dim();
  const int m = a.order();
  const int k = b.order();

  // p[j*n + i] = b_{j i .. i}
  std::vector<std::complex<double>> p(static_cast<std::size_t>(n) * n);
  std::vector<std::uint32_t> idx(static_cast<std::size_t>(k));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      idx[0] = static_cast<std::uint32_t>(j);
      for (int q = 1; q < k; ++q) idx[static_cast<std::size_t>(q)] = static_cast<std::uint32_t>(i);
      p[static_cast<std::size_t>(j) * n + i] = to_complex(b.at(idx));
    }
  }

  std::vector<std::complex<double>> centers(static_cast<std::size_t>(n), 0.0);
  a.for_each_nonzero([&](std::span<const std::uint32_t> ai, SA v) {
    const std::uint32_t i = ai[0];
    std::complex<double> term = to_complex(v);
    for (std::size_t t = 1; t < ai.size(); ++t) {
      term *= p[static_cast<std::size_t>(ai[t]) * n + i];
    }
    centers[i] += term;
  });

  const RowSumProfile ra = row_sums(a);
  const double rb_max = row_sums(b).max;
  double pw = 1.0;
  for (int t = 1; t < m; ++t) pw *= rb_max;

  InclusionData out;
  out.centers = std::move(centers);
  out.radii.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double cap = ra.values[static_cast<std::size_t>(i)] * pw;
    double rad = cap - std::abs(out.centers[static_cast<std::size_t>(i)]);
    if (rad < 0.0) {
      if (rad < -membership_slack * (1.0 + cap)) {
        throw error("disk radius invariant violated at row " + std::to_string(i + 1));
      }
      rad = 0.0;
    }
    out.radii[static_cast<std::size_t>(i)] = rad;
  }
  return out;
}

}  // namespace detail

/// The n disks |z - c_{i..i}| <= r_i(A) R(B)^{m-1} - |c_{i..i}| whose union
/// contains every eigenvalue of AB.
template <class SA, class SB>
std::vector<Disk> gershgorin_regions(const Tensor<SA>& a, const Tensor<SB>& b) {
  auto data = detail::inclusion_data(a, b);
  std::vector<Disk> disks(data.centers.size());
  for (std::size_t i = 0; i < disks.size(); ++i) {
    disks[i] = Disk{data.centers[i], data.radii[i], static_cast<int>(i) + 1};
  }
  return disks;
}

/// One region per circuit of the product digraph; membership of z means
/// prod_{i in circuit} |z - c_{i..i}| <= prod radii. The union refines the
/// disk union while still covering the spectrum, provided every vertex lies
/// on a circuit.
template <class SA, class SB>
std::vector<CircuitRegion> brualdi_regions(const Tensor<SA>& a, const Tensor<SB>& b,
                                           std::size_t circuit_cap = default_circuit_cap,
                                           std::size_t entry_cap = default_entry_cap) {
  auto data = detail::inclusion_data(a, b);
  const int n = a.dim();
  if (n == 1) {
    return {CircuitRegion{{0}, {data.centers[0]}, {data.radii[0]}}};
  }
  const Digraph g = product_digraph(a, b, entry_cap).graph;
  if (n > 12 && g.arc_count() > static_cast<std::size_t>(n) * n / 2) {
    throw resource_limit_error("digraph too dense for circuit enumeration above dimension 12");
  }
  for (int v = 0; v < n; ++v) {
    bool ok = g.has_arc(v, v);
    if (!ok) {
      const SccResult scc = strongly_connected_components(g);
      ok = scc.size[static_cast<std::size_t>(scc.comp[static_cast<std::size_t>(v)])] >= 2;
    }
    if (!ok) {
      throw precondition_error("vertex " + std::to_string(v + 1) + " lies on no circuit");
    }
  }
  std::vector<CircuitRegion> out;
  for (Circuit& c : enumerate_circuits(g, circuit_cap)) {
    CircuitRegion r;
    r.centers.reserve(c.size());
    r.radii.reserve(c.size());
    for (int v : c) {
      r.centers.push_back(data.centers[static_cast<std::size_t>(v)]);
      r.radii.push_back(data.radii[static_cast<std::size_t>(v)]);
    }
    r.circuit = std::move(c);
    out.push_back(std::move(r));
  }
  return out;
}

inline bool region_contains(const std::vector<Disk>& disks, std::complex<double> z,
                            double slack = membership_slack) {
  for (const Disk& d : disks) {
    if (std::abs(z - d.center) <= d.radius + slack) return true;
  }
  return false;
}

inline bool region_contains(const std::vector<CircuitRegion>& regions, std::complex<double> z,
                            double slack = membership_slack) {
  for (const CircuitRegion& r : regions) {
    double lhs = 1.0, rhs = 1.0;
    for (std::size_t i = 0; i < r.centers.size(); ++i) {
      lhs *= std::abs(z - r.centers[i]);
      rhs *= r.radii[i];
    }
    if (lhs <= rhs + slack) return true;
  }
  return false;
}

struct ContainmentReport {
  bool contained = true;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::complex<double> worst = 0.0;
  double worst_excess = 0.0;  // distance of the worst violator beyond G
};

/// Samples the bounding box of the disk union on an nx * ny grid and checks
/// that every point inside the circuit-region union is inside the disk
/// union. Membership of the inner set is evaluated without slack so the
/// slack on the outer set absorbs rounding, never manufactures violations.
template <class SA, class SB>
ContainmentReport check_containment_B_in_G(const Tensor<SA>& a, const Tensor<SB>& b,
                                           int nx = 200, int ny = 200,
                                           std::size_t circuit_cap = default_circuit_cap) {
  if (nx < 1 || ny < 1) throw precondition_error("grid must have at least one point per axis");
  const std::vector<Disk> disks = gershgorin_regions(a, b);
  const std::vector<CircuitRegion> regions = brualdi_regions(a, b, circuit_cap);

  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
  bool first = true;
  for (const Disk& d : disks) {
    const double cx = d.center.real(), cy = d.center.imag();
    if (first) {
      x0 = cx - d.radius;
      x1 = cx + d.radius;
      y0 = cy - d.radius;
      y1 = cy + d.radius;
      first = false;
    } else {
      x0 = std::min(x0, cx - d.radius);
      x1 = std::max(x1, cx + d.radius);
      y0 = std::min(y0, cy - d.radius);
      y1 = std::max(y1, cy + d.radius);
    }
  }

  ContainmentReport rep;
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const double fx = (nx == 1) ? 0.5 : static_cast<double>(ix) / (nx - 1);
      const double fy = (ny == 1) ? 0.5 : static_cast<double>(iy) / (ny - 1);
      const std::complex<double> z(x0 + fx * (x1 - x0), y0 + fy * (y1 - y0));
      ++rep.checked;
      if (!region_contains(regions, z, 0.0)) continue;
      if (region_contains(disks, z)) continue;
      ++rep.violations;
      double excess = std::numeric_limits<double>::infinity();
      for (const Disk& d : disks) {
        excess = std::min(excess, std::abs(z - d.center) - d.radius);
      }
      if (excess > rep.worst_excess) {
        rep.worst_excess = excess;
        rep.worst = z;
      }
    }
  }
  rep.contained = rep.violations == 0;
  return rep;
}

}  // namespace tenspec
