// Eigenvalue inclusion regions for the same [3,2] example against the
// identity matrix: disks, circuits of the product digraph, and the exact
// four eigenvalues from the resultant oracle.

#include <cstdio>

#include "tenspec/tenspec.hpp"

int main() {
  using namespace tenspec;

  const Tensor<double> a = Tensor<double>::dense(3, 2, {3, 1, 2, 1, 0, 4, 2, 3});
  const Tensor<double> id = Tensor<double>::identity(2, 2);

  const auto disks = gershgorin_regions(a, id);
  for (const Disk& d : disks) {
    std::printf("disk %d: center %g%+gi  radius %g\n", d.row, d.center.real(), d.center.imag(),
                d.radius);
  }

  const auto regions = brualdi_regions(a, id);
  for (const CircuitRegion& r : regions) {
    std::printf("circuit (");
    for (std::size_t i = 0; i < r.circuit.size(); ++i) {
      std::printf("%s%d", i ? " " : "", r.circuit[i] + 1);
    }
    std::printf("): radii product %g\n",
                [&] {
                  double p = 1.0;
                  for (double x : r.radii) p *= x;
                  return p;
                }());
  }

  const SpectrumList spec = small_tensor_spectrum(a);
  for (const auto& z : spec.eigenvalues) {
    std::printf("eigenvalue %10.6f%+10.6fi  in disks: %s  in circuit union: %s\n", z.real(),
                z.imag(), region_contains(disks, z) ? "yes" : "no",
                region_contains(regions, z) ? "yes" : "no");
  }

  const ContainmentReport rep = check_containment_B_in_G(a, id);
  std::printf("circuit union inside disk union on %zux%zu samples: %s\n",
              static_cast<std::size_t>(200), static_cast<std::size_t>(200),
              rep.contained ? "yes" : "no");
  return 0;
}
