#include <doctest.h>

#include <cmath>
#include <random>

#include "raregt/measures.hpp"
#include "raregt/series.hpp"

using namespace raregt;

namespace {

std::vector<RegimeBounds> test_bounds() {
  std::vector<RegimeBounds> out = {validate_profile(counterexample_profile()), validate_profile(uniform_profile()),
                                   validate_profile(skew_profile())};
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> lo(0.05, 2.0), width(0.0, 3.0);
  for (int i = 0; i < 5; ++i) {
    const double l = lo(rng);
    out.push_back(RegimeBounds::from_range(l, l + width(rng)));
  }
  return out;
}

}  // namespace

TEST_CASE("factorial_ratio is exact below the switchover and continuous across it") {
  CHECK(factorial_ratio(0, 0) == 1.0);
  CHECK(factorial_ratio(3, 2) == 20.0);
  CHECK(factorial_ratio(0, 20) == 2432902008176640000.0);
  CHECK(factorial_ratio(10, 10) == 670442572800.0);
  // 21! / 1! via the log-gamma path.
  CHECK(factorial_ratio(1, 20) == doctest::Approx(51090942171709440000.0).epsilon(1e-12));
  CHECK(factorial_ratio(15, 10) == doctest::Approx(factorial_ratio(15, 5) * factorial_ratio(20, 5)).epsilon(1e-12));
}

TEST_CASE("binomial coefficients") {
  CHECK(binomial(5, 0) == 1.0);
  CHECK(binomial(5, 2) == 10.0);
  CHECK(binomial(5, 6) == 0.0);
  CHECK(binomial(62, 31) == 465428353255261088.0);
  CHECK(binomial(80, 40) == doctest::Approx(1.0750720873334668e23).epsilon(1e-10));
}

TEST_CASE("series term matches the defining expression") {
  const SeriesCoefficients s(2, 4, 0.375);
  // term(3, 2) = (-3/8)^{-2} * C(3,2) * 4!/2! / 3 = (64/9) * 3 * 12 / 3
  CHECK(s.term(3, 2) == doctest::Approx(64.0 / 9.0 * 12.0));
  CHECK(s.term(1, 1) == doctest::Approx(-(8.0 / 3.0) * 3.0));
  CHECK_THROWS_AS(SeriesCoefficients(0, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SeriesCoefficients(0, 1, 0.0), std::invalid_argument);
}

TEST_CASE("property: binomial collapse") {
  // sum_l C(m,l) (-c)^{m-l} x^l = (x - c)^m on a 10^4-point grid.
  for (const auto& b : test_bounds()) {
    for (std::uint64_t m = 1; m <= 10; ++m) {
      double worst = 0.0;
      for (int i = 0; i < 10'000; ++i) {
        const double x = b.c_lo + (b.c_hi - b.c_lo) * i / 9'999.0;
        double sum = 0.0;
        for (std::uint64_t l = 0; l <= m; ++l) {
          sum += binomial(m, l) * std::pow(-b.c_bar, static_cast<double>(m - l)) * std::pow(x, static_cast<double>(l));
        }
        const double exact = std::pow(x - b.c_bar, static_cast<double>(m));
        const double scale = std::max(1.0, std::pow(x + b.c_bar, static_cast<double>(m)));
        worst = std::max(worst, std::abs(sum - exact) / scale);
      }
      CHECK(worst <= 1e-12);
    }
  }
}

TEST_CASE("property: coefficient table collapses to (1 - x/c)^m / m in the Poisson basis") {
  // sum_l term(m,l) x^l k!/(k+l)! = (1 - x/c)^m / m.
  for (const auto& b : test_bounds()) {
    for (std::uint64_t k = 0; k <= 6; ++k) {
      const SeriesCoefficients s(k, 8, b.c_bar);
      for (std::uint64_t m = 1; m <= 8; ++m) {
        for (int i = 0; i <= 50; ++i) {
          const double x = b.c_lo + (b.c_hi - b.c_lo) * i / 50.0;
          double sum = 0.0;
          for (std::uint64_t l = 0; l <= m; ++l) {
            sum += s.term(m, l) * std::pow(x, static_cast<double>(l)) / factorial_ratio(k, l);
          }
          CHECK(sum == doctest::Approx(std::pow(1.0 - x / b.c_bar, static_cast<double>(m)) / m).epsilon(1e-10).scale(1.0));
        }
      }
    }
  }
}

TEST_CASE("property: truncated log series stays within its bound") {
  for (const auto& b : test_bounds()) {
    const double r = (b.c_hi - b.c_lo) / (b.c_hi + b.c_lo);
    for (std::uint64_t M = 1; M <= 12; ++M) {
      double sup = 0.0;
      for (int i = 0; i < 10'000; ++i) {
        const double x = b.c_lo + (b.c_hi - b.c_lo) * i / 9'999.0;
        double series = 0.0, power = 1.0;
        for (std::uint64_t m = 1; m <= M; ++m) {
          power *= 1.0 - x / b.c_bar;
          series += power / static_cast<double>(m);
        }
        sup = std::max(sup, std::abs(std::log(x / b.c_bar) + series));
      }
      const double bound = b.c_bar / b.c_lo * std::pow(r, static_cast<double>(M + 1));
      CHECK(sup <= bound + 1e-15);
    }
  }
}
