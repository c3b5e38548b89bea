// Walks the running example: a [3,2] tensor whose spectral radius gets
// squeezed by successively sharper row-sum machinery.

#include <cstdio>

#include "tenspec/tenspec.hpp"

int main() {
  using namespace tenspec;

  // a111=3 a112=1 a121=2 a122=1 ; a211=0 a212=4 a221=2 a222=3
  const Tensor<double> a = Tensor<double>::dense(3, 2, {3, 1, 2, 1, 0, 4, 2, 3});

  const RowSumProfile r = row_sums(a);
  std::printf("row sums            r = (%g, %g)\n", r.values[0], r.values[1]);

  const BoundInterval plain = rowsum_bounds(a);
  std::printf("row-sum enclosure     [%.10g, %.10g]\n", plain.lower, plain.upper);

  const BoundInterval minc = minc_self(a);
  std::printf("quotient enclosure    [%.10g, %.10g]", minc.lower, minc.upper);
  if (minc.lower_fraction && minc.upper_fraction) {
    std::printf("  = [%s, %s]", minc.lower_fraction->str().c_str(),
                minc.upper_fraction->str().c_str());
  }
  std::printf("\n");

  for (int k = 2; k <= 4; ++k) {
    const BoundInterval p = minc_power(a, k);
    std::printf("power-%d quotients     [%.10g, %.10g]\n", k, p.lower, p.upper);
  }

  const EigenEstimate est = power_rho(a);
  std::printf("iterated rho          %.12g  (%d iterations, converged=%s)\n", est.rho,
              est.iterations, est.converged ? "yes" : "no");

  const CWCertificate cert = cw_certificate(a, 3, 1e-12);
  std::printf("certificate order 3   [%.12g, %.12g]  gap %.3g\n", cert.interval.lower,
              cert.interval.upper, cert.gap);
  return 0;
}
