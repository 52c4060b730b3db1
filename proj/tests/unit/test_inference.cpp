#include <doctest.h>

#include <cmath>
#include <random>

#include "longrun/config.hpp"
#include "longrun/errors.hpp"
#include "longrun/inference.hpp"

using namespace longrun;

namespace {

struct Cell {
  double lower;
  double upper;
};

void check_cell(const ConfidenceInterval& ci, Cell expected) {
  CHECK(std::abs(round_4dp(ci.lower) - expected.lower) <= 1e-4 + 1e-12);
  CHECK(std::abs(round_4dp(ci.upper) - expected.upper) <= 1e-4 + 1e-12);
}

}  // namespace

TEST_CASE("point estimate of the run length") {
  CHECK(estimate_run_length({100, 0, 0.5}) ==
        doctest::Approx(1.5 - euler_gamma / std::log(2.0)).epsilon(1e-14));
  const double lam = -std::log(0.965);
  const double expected = 51.0 - (std::log(0.035) / lam + euler_gamma / lam - 0.5);
  CHECK(estimate_run_length({200, 51, 0.965}) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(estimate_run_length({200, 51, 0.965}) == doctest::Approx(51.0 + 78.4).epsilon(1e-3));
  CHECK_THROWS_AS(estimate_run_length({10, 3, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(estimate_run_length({10, 3, 0.0}), InvalidArgument);
}

TEST_CASE("longest-run interval") {
  const auto ci = lr_interval(1000, 100.0, 0.05);
  CHECK(ci.lower == doctest::Approx(std::exp(-(std::log(1000.0) - std::log(0.025)) / 100.0)));
  CHECK(ci.upper ==
        doctest::Approx(std::exp(-(std::log(1000.0) - std::log(-std::log(0.025))) / 100.0)));
  CHECK(ci.lower < ci.upper);
  CHECK_THROWS_AS(lr_interval(3, 10.0, 0.05), InvalidArgument);
  CHECK_THROWS_AS(lr_interval(100, 0.0, 0.05), InvalidArgument);
  CHECK_THROWS_AS(lr_interval(100, -1.0, 0.05), InvalidArgument);
  // the first published longest-run cell corresponds to an observed run of 51
  check_cell(interval(IntervalMethod::longest_run, 193, 200, 0.05, 51), {0.9329, 0.9696});

  double prev_lo = 0.0, prev_hi = 0.0;
  for (double l_hat = 1.0; l_hat < 500.0; l_hat *= 1.5) {
    const auto c = lr_interval(200, l_hat, 0.05);
    CHECK(c.lower > prev_lo);
    CHECK(c.upper > prev_hi);
    CHECK(0.0 < c.lower);
    CHECK(c.upper < 1.0);
    prev_lo = c.lower;
    prev_hi = c.upper;
  }
  prev_lo = 1.0, prev_hi = 1.0;
  for (std::uint64_t n = 4; n < 1000000; n *= 3) {
    const auto c = lr_interval(n, 30.0, 0.05);
    CHECK(c.lower < prev_lo);
    CHECK(c.upper < prev_hi);
    prev_lo = c.lower;
    prev_hi = c.upper;
  }
}

TEST_CASE("binomial intervals: published anchors") {
  check_cell(wilson_interval(193, 200, 0.05), {0.9295, 0.9829});
  check_cell(wilson_interval(190, 200, 0.05), {0.9104, 0.9726});
  check_cell(clopper_pearson_interval(193, 200, 0.05), {0.9292, 0.9858});
  check_cell(clopper_pearson_interval(196, 200, 0.05), {0.9496, 0.9945});
  check_cell(normal_interval(995, 1000, 0.05), {0.9906, 0.9994});
  check_cell(normal_interval(996, 1000, 0.05), {0.9921, 0.9999});
  CHECK(clopper_pearson_interval(0, 30, 0.05).lower == 0.0);
  CHECK(clopper_pearson_interval(30, 30, 0.05).upper == 1.0);
  CHECK_THROWS_AS(normal_interval(0, 30, 0.05), InvalidArgument);
  CHECK_THROWS_AS(normal_interval(30, 30, 0.05), InvalidArgument);
  const auto degenerate = wilson_interval(50, 100, 1.0 - 1e-15);
  CHECK(degenerate.lower == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(degenerate.upper == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("table reproduction covers every published cell") {
  const std::vector<Cell> t1_ws = {{0.9295, 0.9829}, {0.9042, 0.9690}, {0.9231, 0.9796},
                                   {0.9104, 0.9726}, {0.9361, 0.9862}, {0.9497, 0.9922},
                                   {0.9568, 0.9949}, {0.9361, 0.9862}, {0.9497, 0.9922},
                                   {0.9428, 0.9893}};
  const std::vector<Cell> t1_cp = {{0.9292, 0.9858}, {0.9037, 0.9722}, {0.9227, 0.9826},
                                   {0.9100, 0.9758}, {0.9358, 0.9889}, {0.9496, 0.9945},
                                   {0.9568, 0.9969}, {0.9358, 0.9889}, {0.9496, 0.9945},
                                   {0.9426, 0.9918}};
  const std::vector<Cell> t2_n = {{0.9906, 0.9994}, {0.9892, 0.9988}, {0.9906, 0.9994},
                                  {0.9921, 0.9999}, {0.9921, 0.9999}};
  const std::vector<Cell> t2_ws = {{0.9883, 0.9979}, {0.9870, 0.9972}, {0.9883, 0.9979},
                                   {0.9898, 0.9984}, {0.9898, 0.9984}};
  const std::vector<Cell> t2_cp = {{0.9884, 0.9984}, {0.9870, 0.9978}, {0.9884, 0.9984},
                                   {0.9898, 0.9989}, {0.9898, 0.9989}};

  const auto t1 = reproduce_table(1);
  REQUIRE(t1.size() == 20);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(t1[2 * i].ci.method == IntervalMethod::wilson);
    check_cell(t1[2 * i].ci, t1_ws[i]);
    check_cell(t1[2 * i + 1].ci, t1_cp[i]);
  }
  const auto t2 = reproduce_table(2);
  REQUIRE(t2.size() == 15);
  for (std::size_t i = 0; i < 5; ++i) {
    check_cell(t2[3 * i].ci, t2_n[i]);
    check_cell(t2[3 * i + 1].ci, t2_ws[i]);
    check_cell(t2[3 * i + 2].ci, t2_cp[i]);
  }
  CHECK(reproduce_table(1, 51).size() == 30);
  CHECK_THROWS_AS(reproduce_table(3), InvalidArgument);

  const std::string csv = table_csv(t2);
  CHECK(csv.rfind("table_id,block_p,p_hat,n,alpha,method,lower,upper,lower_4dp,upper_4dp\n", 0) ==
        0);
  CHECK(csv.find("2,0.995,0.995,1000,0.05,normal,") != std::string::npos);
}

TEST_CASE("interval invariants over random data") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::uint64_t> n_dist(1, 3000);
  std::uniform_real_distribution<double> a_dist(0.001, 0.5);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::uint64_t n = n_dist(rng);
    const std::uint64_t k = std::uniform_int_distribution<std::uint64_t>(0, n)(rng);
    const double alpha = a_dist(rng);
    const double ph = static_cast<double>(k) / static_cast<double>(n);
    for (IntervalMethod m : {IntervalMethod::wilson, IntervalMethod::clopper_pearson,
                             IntervalMethod::normal}) {
      if (m == IntervalMethod::normal && (k == 0 || k == n)) continue;
      const auto ci = interval(m, k, n, alpha);
      CHECK(0.0 <= ci.lower);
      CHECK(ci.lower <= ci.upper);
      CHECK(ci.upper <= 1.0);
      if (m == IntervalMethod::wilson || (0 < k && k < n)) {
        INFO(to_string(m), " k=", k, " n=", n, " alpha=", alpha, " lo=", ci.lower, " hi=", ci.upper);
        CHECK(ci.contains(ph));
      }
    }
  }
}

TEST_CASE("99% intervals contain 95% intervals") {
  for (std::uint64_t n : {10u, 200u, 1000u}) {
    for (std::uint64_t k = 1; k < n; k += std::max<std::uint64_t>(1, n / 17)) {
      for (IntervalMethod m : {IntervalMethod::wilson, IntervalMethod::clopper_pearson,
                               IntervalMethod::normal, IntervalMethod::longest_run}) {
        const std::uint64_t l_obs = std::min<std::uint64_t>(n, 3 + k / 4);
        ConfidenceInterval wide{}, narrow{};
        try {
          wide = interval(m, k, n, 0.01, l_obs);
          narrow = interval(m, k, n, 0.05, l_obs);
        } catch (const InvalidArgument&) {
          continue;  // LR inapplicable when the bias-corrected run is not positive
        }
        CHECK(wide.lower <= narrow.lower);
        CHECK(wide.upper >= narrow.upper);
      }
    }
  }
}
