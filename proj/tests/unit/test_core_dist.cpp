#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "longrun/core_dist.hpp"
#include "longrun/errors.hpp"
#include "oracles.hpp"

using namespace longrun;

TEST_CASE("BernoulliModel derived constants") {
  const BernoulliModel m(0.3);
  CHECK(m.q() == 1.0 - 0.3);
  CHECK(m.lambda_p() == -std::log(0.3));
  CHECK(m.lambda_p() > 0.0);
  CHECK_THROWS_AS(BernoulliModel(0.0), InvalidArgument);
  CHECK_THROWS_AS(BernoulliModel(1.0), InvalidArgument);
  CHECK_THROWS_AS(BernoulliModel(std::nan("")), InvalidArgument);
}

TEST_CASE("nominal value") {
  CHECK(nominal_value(1024, BernoulliModel(0.5)) == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(nominal_value(1, BernoulliModel(0.3)) == 0.0);
  // ln(200) / ln(1/0.95), evaluated with mpmath at 30 digits
  CHECK(nominal_value(200, BernoulliModel(0.95)) ==
        doctest::Approx(103.29454229467465).epsilon(1e-14));
}

TEST_CASE("longest_run scanner") {
  CHECK(longest_run({}) == 0);
  const std::vector<std::uint8_t> s{1, 1, 0, 1, 1, 1, 0};
  CHECK(longest_run(s) == 3);
  const std::vector<std::uint8_t> ones(37, 1);
  CHECK(longest_run(ones) == 37);
  const std::vector<std::uint8_t> zeros(5, 0);
  CHECK(longest_run(zeros) == 0);
}

TEST_CASE("longest_run is superadditive under concatenation") {
  std::mt19937_64 rng(7);
  std::bernoulli_distribution coin(0.6);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::uint8_t> a(rng() % 40), b(rng() % 40);
    for (auto& x : a) x = coin(rng);
    for (auto& x : b) x = coin(rng);
    std::vector<std::uint8_t> ab(a);
    ab.insert(ab.end(), b.begin(), b.end());
    CHECK(longest_run(ab) >= std::max(longest_run(a), longest_run(b)));
  }
}

TEST_CASE("log_prob_no_run small cases") {
  const BernoulliModel half(0.5);
  CHECK(log_prob_no_run(3, 2, half) == doctest::Approx(std::log(5.0 / 8.0)).epsilon(1e-15));
  CHECK(log_prob_no_run(3, 4, half) == 0.0);
  for (double p : {0.1, 0.5, 0.95}) {
    const BernoulliModel m(p);
    CHECK(log_prob_no_run(57, 1, m) == doctest::Approx(57 * std::log1p(-p)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(log_prob_no_run(0, 1, half), InvalidArgument);
  CHECK_THROWS_AS(log_prob_no_run(5, 0, half), InvalidArgument);
}

TEST_CASE("single-query cap") {
  NumericConfig cfg;
  cfg.max_n_single = 100;
  CHECK_THROWS_AS(log_prob_no_run(101, 3, BernoulliModel(0.5), cfg), ResourceError);
  cfg.max_n_distribution = 10;
  CHECK_THROWS_AS(distribution(11, BernoulliModel(0.5), cfg), ResourceError);
}

TEST_CASE("distribution matches enumeration") {
  for (double p : {0.25, 0.5, 0.8, 0.95}) {
    for (unsigned n = 1; n <= 12; ++n) {
      const auto exact = oracle::enumerate_pmf(n, p);
      const auto d = distribution(n, BernoulliModel(p));
      for (unsigned k = 0; k <= n; ++k) {
        REQUIRE(std::abs(d.pmf(k) - exact[k]) <= 1e-12);
      }
    }
  }
  const auto d3 = distribution(3, BernoulliModel(0.5));
  CHECK(d3.pmf(0) == doctest::Approx(0.125));
  CHECK(d3.pmf(1) == doctest::Approx(0.5));
  CHECK(d3.pmf(2) == doctest::Approx(0.25));
  CHECK(d3.pmf(3) == doctest::Approx(0.125));
  const auto d1 = distribution(1, BernoulliModel(0.3));
  CHECK(d1.pmf(0) == doctest::Approx(0.7));
  CHECK(d1.pmf(1) == doctest::Approx(0.3));
}

TEST_CASE("distribution invariants") {
  for (double p : {0.25, 0.5, 0.8, 0.95}) {
    for (std::uint64_t n : {1u, 2u, 17u, 300u, 5000u}) {
      const auto d = distribution(n, BernoulliModel(p));
      const auto cdf = d.log_cdf();
      REQUIRE(cdf.size() == n + 2);
      CHECK(cdf[0] == -INFINITY);
      CHECK(cdf[n + 1] == 0.0);
      double total = 0.0;
      for (std::uint64_t k = 0; k <= n; ++k) total += d.pmf(k);
      CHECK(std::abs(total - 1.0) <= 1e-10);
      for (std::uint64_t k = 1; k <= n + 1; ++k) CHECK(cdf[k] >= cdf[k - 1]);
    }
  }
}

TEST_CASE("log_prob_no_run is monotone in k and n") {
  for (double p : {0.25, 0.5, 0.95}) {
    const BernoulliModel m(p);
    for (std::uint64_t k = 1; k <= 12; ++k) {
      double prev = 0.0;
      for (std::uint64_t n = 1; n <= 200; ++n) {
        const double v = log_prob_no_run(n, k, m);
        CHECK(v <= prev + 1e-14);
        prev = v;
      }
    }
    for (std::uint64_t n : {10u, 150u, 999u}) {
      double prev = -INFINITY;
      for (std::uint64_t k = 1; k <= n + 1; ++k) {
        const double v = log_prob_no_run(n, k, m);
        CHECK(v >= prev - 1e-14);
        prev = v;
      }
    }
  }
}

TEST_CASE("tail bounds") {
  const BernoulliModel half(0.5);
  const auto b = tail_bounds(3, 2, half);
  CHECK(b.log_lower == doctest::Approx(std::log(0.5625)));
  CHECK(b.log_upper == doctest::Approx(std::log(0.765625)));
  for (double p : {0.2, 0.7}) {
    const BernoulliModel m(p);
    CHECK(tail_bounds(40, 1, m).log_lower ==
          doctest::Approx(log_prob_no_run(40, 1, m)).epsilon(1e-14));
    const auto edge = tail_bounds(9, 9, m);
    CHECK(edge.log_lower == doctest::Approx(std::log(1 - std::pow(p, 9))));
    CHECK(edge.log_upper == doctest::Approx(std::log(1 - (1 - p) * std::pow(p, 9))));
  }
  CHECK_THROWS_AS(tail_bounds(3, 4, half), InvalidArgument);
  CHECK_THROWS_AS(tail_bounds(3, 0, half), InvalidArgument);
}

TEST_CASE("sandwich holds on a small grid") {
  for (double p : {0.25, 0.5, 0.8, 0.95}) {
    const BernoulliModel m(p);
    for (std::uint64_t n = 1; n <= 120; ++n) {
      for (std::uint64_t k = 1; k <= n; ++k) {
        const double v = log_prob_no_run(n, k, m);
        const auto b = tail_bounds(n, k, m);
        REQUIRE(v >= b.log_lower - 1e-12);
        REQUIRE(v <= b.log_upper + 1e-12);
      }
    }
  }
}

TEST_CASE("upper tail stays accurate past double underflow of p^k") {
  const BernoulliModel half(0.5);
  // all-success event: ln P(L(n) >= n) = n ln p
  CHECK(log_prob_run_at_least(5000, 5000, half) ==
        doctest::Approx(5000 * std::log(0.5)).epsilon(1e-14));
  CHECK(log_prob_run_at_least(5000, 0, half) == 0.0);
  CHECK(log_prob_run_at_least(5000, 5001, half) == -INFINITY);
  const auto t = log_tails(1000, 600, half);
  CHECK(t.log_at_least == doctest::Approx(600 * std::log(0.5) + std::log1p(0.5 * 400)));
}

TEST_CASE("moments") {
  const auto d1 = distribution(1, BernoulliModel(0.37));
  CHECK(moment(d1, 1) == doctest::Approx(0.37));
  const auto d3 = distribution(3, BernoulliModel(0.5));
  CHECK(moment(d3, 1) == doctest::Approx(11.0 / 8.0).epsilon(1e-14));
  CHECK(moment(d3, 2) == doctest::Approx((4.0 + 8.0 + 9.0) / 8.0).epsilon(1e-14));
  CHECK_THROWS_AS(moment(d3, 0), InvalidArgument);
}

TEST_CASE("asymptotic mean") {
  const BernoulliModel half(0.5);
  const double g = euler_gamma / std::log(2.0);
  CHECK(mean_asymptotic(1024, half) == doctest::Approx(10.0 - 1.0 + g - 0.5).epsilon(1e-14));
  CHECK(mean_asymptotic(2, half) == doctest::Approx(1.0 - 1.0 + g - 0.5).epsilon(1e-14));
  CHECK_THROWS_AS(mean_asymptotic(1, half), InvalidArgument);
  const auto d = distribution(100000, half);
  CHECK(std::abs(moment(d, 1) - mean_asymptotic(100000, half)) <= 0.1);
}

TEST_CASE("complement bounds bracket the upper tail, including past underflow") {
  for (double p : {0.25, 0.5, 0.95}) {
    const BernoulliModel m(p);
    for (std::uint64_t n : {10u, 333u, 4000u}) {
      for (std::uint64_t k = 1; k <= n; k += 1 + k / 3) {
        const auto b = tail_bounds_at_least(n, k, m);
        const double v = log_prob_run_at_least(n, k, m);
        CHECK(b.log_lower <= b.log_upper);
        CHECK(v >= b.log_lower - 1e-12 * std::abs(v));
        CHECK(v <= b.log_upper + 1e-12 * std::abs(v));
        CHECK(std::isfinite(b.log_lower));
      }
    }
  }
}
