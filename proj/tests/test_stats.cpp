#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "corraudit/error.hpp"
#include "corraudit/reference_data.hpp"
#include "corraudit/stats.hpp"
#include "test_support.hpp"

using namespace corraudit;
using Eigen::VectorXd;

namespace {

VectorXd vec(std::initializer_list<double> v) {
  VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

}  // namespace

TEST_SUITE("stats_kernel") {
  TEST_CASE("mean") {
    CHECK(mean(vec({1, 2, 3})) == 2.0);
    CHECK(mean(VectorXd::Constant(10, 0.1)) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK_THROWS_AS(mean(VectorXd()), NumericError);

    const auto mtcars = load_embedded("mtcars");
    const double disp = mean(column(mtcars, "disp"));
    CHECK(std::round(disp * 10) / 10 == doctest::Approx(230.7));
  }

  TEST_CASE("mean of a constant column is that constant") {
    for (double c : {0.1, 1.0 / 3.0, 123456.789, -7e-300}) {
      CHECK(mean(VectorXd::Constant(37, c)) == c);
    }
  }

  TEST_CASE("compensated sum recovers cancelled terms") {
    CHECK(compensated_sum(vec({1e16, 1.0, -1e16})) == 1.0);
    CHECK(compensated_sum(vec({1.0, 1e100, 1.0, -1e100})) == 2.0);
  }

  TEST_CASE("mean agrees with extended-precision brute force") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      const auto v = testing_support::random_vector(rng, 1 + trial, -1e6, 1e6);
      CHECK(testing_support::rel_err(mean(v), testing_support::naive_mean(v)) <= 1e-12);
    }
  }

  TEST_CASE("covariance_terms") {
    auto t = covariance_terms(vec({1, 2, 3}), vec({2, 4, 6}));
    CHECK(t.sxy == 4.0);
    CHECK(t.sxx == 2.0);
    CHECK(t.syy == 8.0);

    t = covariance_terms(vec({5, 5}), vec({5, 5}));
    CHECK(t.sxy == 0.0);
    CHECK(t.sxx == 0.0);
    CHECK(t.syy == 0.0);

    t = covariance_terms(vec({1, 2, 3}), vec({1, 3, 2}));
    CHECK(t.sxy == 1.0);
    CHECK(t.sxx == 2.0);
    CHECK(t.syy == 2.0);

    CHECK_THROWS_AS(covariance_terms(vec({1, 2}), vec({1, 2, 3})), DataError);
    CHECK_THROWS_AS(covariance_terms(vec({1}), vec({1})), DataError);
  }

  TEST_CASE("pearson_r examples") {
    CHECK(pearson_r(vec({1, 2, 3}), vec({2, 4, 6})).r == 1.0);
    CHECK(pearson_r(vec({1, 2, 3}), vec({6, 4, 2})).r == -1.0);
    CHECK(pearson_r(vec({1, 2, 3}), vec({1, 3, 2})).r == doctest::Approx(0.5).epsilon(1e-15));

    const auto mtcars = load_embedded("mtcars");
    const auto mpg = column(mtcars, "mpg");
    const auto disp = pearson_r(column(mtcars, "disp"), mpg, "disp", "mpg");
    const auto hp = pearson_r(column(mtcars, "hp"), mpg, "hp", "mpg");
    CHECK(std::round(disp.r * 100) / 100 == doctest::Approx(-0.85));
    CHECK(std::round(hp.r * 100) / 100 == doctest::Approx(-0.78));
    CHECK(disp.n == 32);
    CHECK(disp.x_label == "disp");
  }

  TEST_CASE("pearson_r rejects constant variables") {
    CHECK_THROWS_WITH_AS(pearson_r(vec({1, 1, 1}), vec({1, 2, 3}), "c", "y"),
                         "correlation undefined for constant variable 'c'", NumericError);
    CHECK_THROWS_AS(pearson_r(vec({1, 2, 3}), vec({4, 4, 4})), NumericError);
  }

  TEST_CASE("pearson_r properties on random data") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> scale(-5.0, 5.0);
    for (int trial = 0; trial < 500; ++trial) {
      const Eigen::Index n = 2 + trial % 60;
      const auto x = testing_support::random_vector(rng, n);
      const auto y = testing_support::random_vector(rng, n);
      const double r = pearson_r(x, y).r;
      CHECK(r >= -1.0);
      CHECK(r <= 1.0);
      CHECK(pearson_r(y, x).r == doctest::Approx(r).epsilon(1e-14));
      CHECK(pearson_r(x, x).r == doctest::Approx(1.0).epsilon(1e-14));

      double a = scale(rng);
      if (std::abs(a) < 1e-3) a = 1.0;
      const double b = scale(rng) * 10;
      const VectorXd ax = (a * x.array() + b).matrix();
      const double expected = (a > 0 ? 1.0 : -1.0) * r;
      CHECK(std::abs(pearson_r(ax, y).r - expected) <= 1e-12);
    }
  }

  TEST_CASE("pearson_r matches the naive formula in extended precision") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
      const auto p = testing_support::random_pair(rng, 3 + trial % 50);
      CHECK(testing_support::rel_err(pearson_r(p.x, p.y).r,
                                     testing_support::naive_pearson(p.x, p.y)) <= 1e-12);
    }
  }

  TEST_CASE("kernels accept expressions and other scalars") {
    Eigen::MatrixXd m(3, 2);
    m << 1, 2, 2, 4, 3, 6;
    CHECK(pearson_r(m.col(0), m.col(1)).r == 1.0);
    Eigen::Matrix<long double, 3, 1> x{1, 2, 3}, y{1, 3, 2};
    CHECK(static_cast<double>(pearson_r(x, y).r) == doctest::Approx(0.5));
  }

  TEST_CASE("variances") {
    const auto v = vec({2, 4, 4, 4, 5, 5, 7, 9});
    CHECK(variance_pop(v) == 4.0);
    CHECK(variance_sample(v) == doctest::Approx(32.0 / 7.0));
    CHECK_THROWS_AS(variance_sample(vec({1})), NumericError);
  }
}
