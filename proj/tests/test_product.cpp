#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <vector>

#include "support.hpp"
#include "tenspec/tenspec.hpp"

using namespace tenspec;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

template <class S>
void check_close(const Tensor<S>& got, const Tensor<S>& want, double tol = 1e-12) {
  REQUIRE(got.order() == want.order());
  REQUIRE(got.dim() == want.dim());
  ref::for_all_tuples(got.order(), got.dim(), [&](std::span<const std::uint32_t> idx) {
    const double diff = abs_value(S(got.at(idx) - want.at(idx)));
    const double scale = 1.0 + abs_value(want.at(idx));
    CHECK(diff <= tol * scale);
  });
}

}  // namespace

TEST_CASE("product shape follows the order composition rule") {
  auto t3 = Tensor<double>::zeros(3, 2);
  auto t2 = Tensor<double>::zeros(2, 2);
  CHECK(product_shape(t3, t2).order == 3);
  CHECK(product_shape(t3, t3).order == 5);
  CHECK(product_shape(t2, t2).order == 2);
  CHECK(product_shape(t2, t3).order == 3);
  CHECK(product_shape(t3, t2).left_order == 3);
  CHECK(product_shape(t3, t2).right_order == 2);

  CHECK_THROWS_AS(product_shape(t3, Tensor<double>::zeros(2, 3)), validation_error);
  CHECK_THROWS_AS(product_shape(Tensor<double>::zeros(1, 2), t2), precondition_error);
}

TEST_CASE("general product matches brute-force contraction") {
  ref::Gen gen(404);
  for (int trial = 0; trial < 24; ++trial) {
    const int m = gen.pick(2, 3);
    const int k = gen.pick(2, 3);
    const int n = gen.pick(2, 3);
    const bool sparse_left = trial % 2 == 0;
    SECTION("real pair " + std::to_string(trial)) {
      auto a = gen.nonneg(m, n, 0.35, sparse_left);
      auto b = gen.signed_tensor(k, n, 0.35);
      check_close(general_product(a, b), ref::naive_product(a, b));
    }
    SECTION("complex pair " + std::to_string(trial)) {
      auto a = gen.complex_tensor(m, n, 0.35);
      auto b = gen.complex_tensor(k, n, 0.35);
      check_close(general_product(a, b), ref::naive_product(a, b));
    }
    SECTION("mixed scalars promote " + std::to_string(trial)) {
      auto a = gen.signed_tensor(m, n, 0.35);
      auto b = gen.complex_tensor(k, n, 0.35);
      auto ab = general_product(a, b);
      static_assert(
          std::is_same_v<typename decltype(ab)::scalar_type, std::complex<double>>);
      check_close(ab, ref::naive_product(a, b));
    }
  }
}

TEST_CASE("identity matrix is a two-sided unit for the product") {
  ref::Gen gen(505);
  for (int m : {2, 3, 4}) {
    auto a = gen.signed_tensor(m, 3, 0.3);
    auto id = Tensor<double>::identity(2, 3);
    check_close(general_product(a, id), a);
    if (m == 2) check_close(general_product(id, a), a);
  }
  auto b = gen.signed_tensor(3, 3, 0.3);
  check_close(general_product(Tensor<double>::identity(2, 3), b), b);
}

TEST_CASE("order-one right factor reduces to vector application") {
  ref::Gen gen(606);
  auto a = gen.signed_tensor(3, 3, 0.2);
  std::vector<double> x{0.7, -1.3, 2.1};
  auto xt = Tensor<double>::dense(1, 3, x);
  auto prod = general_product(a, xt);
  REQUIRE(prod.order() == 1);
  const auto applied = apply_vector(a, x);
  for (std::uint32_t i = 0; i < 3; ++i) {
    const std::uint32_t idx[1] = {i};
    CHECK_THAT(prod.at(idx), WithinRel(applied[i], 1e-13) || WithinAbs(applied[i], 1e-13));
  }
}

TEST_CASE("tensor power agrees with repeated products") {
  ref::Gen gen(707);
  auto a = gen.nonneg(3, 2, 0.2);
  check_close(tensor_power(a, 1), a);
  check_close(tensor_power(a, 2), general_product(a, a));
  check_close(tensor_power(a, 3), general_product(a, general_product(a, a)), 1e-11);
  CHECK_THROWS_AS(tensor_power(a, 0), precondition_error);
}

TEST_CASE("row-sum propagation equals materialized row sums") {
  ref::Gen gen(808);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = gen.pick(2, 3);
    const int k = gen.pick(2, 3);
    const int n = gen.pick(2, 4);
    auto a = gen.nonneg(m, n, 0.3, trial % 2 == 0);
    auto b = gen.nonneg(k, n, 0.3);
    const auto fast = product_row_sums(a, b);
    const auto direct = row_sums(general_product(a, b));
    REQUIRE(fast.values.size() == direct.values.size());
    for (std::size_t i = 0; i < fast.values.size(); ++i) {
      CHECK_THAT(fast.values[i],
                 WithinRel(direct.values[i], 1e-12) || WithinAbs(direct.values[i], 1e-12));
    }
  }
}

TEST_CASE("row-sum propagation on the example is exact") {
  auto a = ref::example_tensor();
  CHECK(product_row_sums(a, a).values == std::vector<double>{417.0, 621.0});
  CHECK(row_sums(general_product(a, a)).values == std::vector<double>{417.0, 621.0});
}

TEST_CASE("row-sum propagation requires nonnegativity") {
  auto neg = Tensor<double>::dense(2, 2, {1, -1, 0, 1});
  auto pos = ref::example_tensor();
  CHECK_THROWS_AS(product_row_sums(neg, neg), precondition_error);
  CHECK_THROWS_AS(product_row_sums(pos, neg), precondition_error);
}

TEST_CASE("product row-sum bound dominates the true row sums") {
  ref::Gen gen(909);
  for (int trial = 0; trial < 16; ++trial) {
    const int m = gen.pick(2, 3);
    const int k = gen.pick(2, 3);
    const int n = gen.pick(2, 4);
    SECTION("nonneg " + std::to_string(trial)) {
      auto a = gen.nonneg(m, n, 0.3);
      auto b = gen.nonneg(k, n, 0.3);
      const auto bound = product_row_sum_bound(a, b);
      const auto exact = product_row_sums(a, b);
      for (std::size_t i = 0; i < bound.values.size(); ++i) {
        CHECK(bound.values[i] >= exact.values[i] - 1e-9 * (1.0 + exact.values[i]));
      }
    }
    SECTION("complex " + std::to_string(trial)) {
      auto a = gen.complex_tensor(m, n, 0.3);
      auto b = gen.complex_tensor(k, n, 0.3);
      const auto bound = product_row_sum_bound(a, b);
      const auto exact = row_sums(general_product(a, b));
      for (std::size_t i = 0; i < bound.values.size(); ++i) {
        CHECK(bound.values[i] >= exact.values[i] - 1e-9 * (1.0 + exact.values[i]));
      }
    }
  }
}

TEST_CASE("apply_vector matches the product definition") {
  ref::Gen gen(111);
  auto a = gen.signed_tensor(3, 3, 0.2);
  std::vector<double> x{1.0, 1.0, 1.0};
  const auto ax = apply_vector(a, x);
  const auto rs = row_sums(a);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::abs(ax[i]) <= rs.values[i] + 1e-12);
  }
  auto nn = gen.nonneg(3, 3, 0.2);
  const auto ones = apply_vector(nn, x);
  const auto sums = row_sums(nn);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK_THAT(ones[i], WithinRel(sums.values[i], 1e-13));
  }
}

TEST_CASE("entry cap interrupts oversized materializations") {
  ref::Gen gen(222);
  auto a = gen.nonneg(3, 3, 0.0);
  CHECK_THROWS_AS(general_product(a, a, 10), resource_limit_error);
  auto sp = gen.nonneg(3, 3, 0.6, true);
  CHECK_THROWS_AS(general_product(sp, sp, 2), resource_limit_error);
}

TEST_CASE("diagonal similarity preserves pattern and rescales entries") {
  ref::Gen gen(333);
  auto a = gen.nonneg(3, 3, 0.3);
  std::vector<double> d{0.5, 2.0, 1.25};
  auto b = diagonal_similarity(a, d);
  REQUIRE(b.order() == a.order());
  ref::for_all_tuples(3, 3, [&](std::span<const std::uint32_t> idx) {
    double factor = 1.0 / (d[idx[0]] * d[idx[0]]);
    for (std::size_t p = 1; p < idx.size(); ++p) factor *= d[idx[p]];
    CHECK_THAT(b.at(idx), WithinRel(a.at(idx) * factor, 1e-13) ||
                              WithinAbs(a.at(idx) * factor, 1e-13));
  });
  CHECK_FALSE(diagonal_similarity(a.to_sparse(), d).is_dense());
  CHECK_THROWS_AS(diagonal_similarity(a, std::vector<double>{1.0, 0.0, 1.0}),
                  precondition_error);
}

TEST_CASE("power exponent sequence") {
  CHECK(mu_exponent(2, 1) == 1);
  CHECK(mu_exponent(2, 5) == 5);
  CHECK(mu_exponent(3, 1) == 1);
  CHECK(mu_exponent(3, 2) == 3);
  CHECK(mu_exponent(3, 3) == 7);
  CHECK(mu_exponent(4, 3) == 13);
  CHECK(mu_exponent(5, 2) == 5);
  CHECK_THROWS_AS(mu_exponent(3, 200), resource_limit_error);
  CHECK_THROWS_AS(mu_exponent(1, 2), precondition_error);
}
