#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "partition_bounds/bounds.hpp"

namespace pb = partition_bounds;
using namespace partition_bounds::bounds;

namespace {

pb::BigNat pow_nat(long base, unsigned long e) {
  pb::BigNat r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

// (k^t - 1)/(k - 1) for k >= 2.
pb::BigNat closed_geometric(long k, long t) { return (pow_nat(k, t) - 1) / (k - 1); }

// Reference maximum of the ratio by a dense long-double grid.
long double grid_sup(int n, int points) {
  long double best = n - 1;
  for (int j = 1; j < points; ++j) {
    const long double x = 1.0L + (n - 1.0L) * j / points;
    const long double g = (std::pow(x, n - x) - 1.0L) / (x - 1.0L);
    best = std::max(best, g);
  }
  return best;
}

}  // namespace

TEST(USeq, KnownValues) {
  EXPECT_EQ(u_seq(1), 1);
  EXPECT_EQ(u_seq(2), 2);
  EXPECT_EQ(u_seq(3), 6);
  EXPECT_EQ(u_seq(4), 42);
  EXPECT_EQ(u_seq(5), 1806);
  EXPECT_EQ(u_seq(6), 3263442);
  EXPECT_EQ(u_seq(7), pb::BigNat("10650056950806"));
  EXPECT_THROW(u_seq(0), std::invalid_argument);
}

TEST(USeq, SandwichedBetweenDoubleExponentials) {
  for (int n = 2; n <= 20; ++n) {
    EXPECT_LE(pow_nat(2, 1UL << (n - 2)), u_seq(n)) << n;
    EXPECT_LE(u_seq(n), double_exp(n)) << n;
  }
}

TEST(PhiDiscrete, KnownValues) {
  const long expected[] = {1, 2, 3, 7, 15, 40, 121, 364};
  for (int n = 2; n <= 9; ++n) EXPECT_EQ(phi_discrete(n), expected[n - 2]) << n;
  EXPECT_THROW(phi_discrete(1), std::invalid_argument);
}

TEST(PhiDiscrete, MatchesClosedForm) {
  for (int n = 2; n <= 30; ++n) {
    pb::BigNat best = n - 1;  // k = 1
    for (long k = 2; k < n; ++k) {
      EXPECT_EQ(closed_geometric(k, n - k), geometric_sum(k, n - k));
      best = std::max(best, closed_geometric(k, n - k));
    }
    EXPECT_EQ(phi_discrete(n), best) << n;
  }
}

TEST(PhiDiscrete, BelowNextFactorial) {
  for (int n = 2; n <= 12; ++n) EXPECT_LE(phi_discrete(n + 1), factorial(n)) << n;
}

TEST(PhiContinuous, FloorPlusOneTable) {
  const long expected[] = {2, 3, 4, 8, 17, 42, 122};
  for (int n = 2; n <= 8; ++n) {
    EXPECT_EQ(floor_plus_one(phi_continuous(n)), expected[n - 2]) << n;
  }
}

TEST(PhiContinuous, DominatesIntegerPoints) {
  for (int n = 3; n <= 12; ++n) {
    const double v = phi_continuous(n);
    for (long k = 2; k < n; ++k) EXPECT_GE(v, closed_geometric(k, n - k).get_d()) << n << " " << k;
    EXPECT_LE(phi_discrete(n), floor_plus_one(v)) << n;
  }
  EXPECT_GE(phi_continuous(4), 3.0);
}

TEST(PhiContinuous, AgreesWithDenseGrid) {
  for (int n = 3; n <= 20; ++n) {
    const long double ref = grid_sup(n, 400000);
    const double v = phi_continuous(n);
    EXPECT_GE(v, static_cast<double>(ref) * (1 - 1e-12)) << n;
    EXPECT_NEAR(v / static_cast<double>(ref), 1.0, 1e-8) << n;
  }
}

TEST(LambertW, SpecialPoints) {
  EXPECT_NEAR(lambert_w(std::numbers::e), 1.0, 1e-15);
  EXPECT_EQ(lambert_w(0.0), 0.0);
  EXPECT_NEAR(lambert_w(-1.0 / std::numbers::e), -1.0, 1e-12);
  EXPECT_THROW(lambert_w(-0.5), std::domain_error);
}

TEST(LambertW, ResidualOnLogGrid) {
  const int points = 1000;
  for (int j = 0; j < points; ++j) {
    const double x = std::pow(10.0, -1.0 + 13.0 * j / (points - 1));
    const double w = lambert_w(x);
    EXPECT_LE(std::abs(w * std::exp(w) - x), 1e-12 * std::max(1.0, x)) << x;
  }
}

TEST(LambertW, NegativeBranchRegion) {
  for (double x : {-0.36, -0.3, -0.2, -0.1, -1e-5}) {
    const double w = lambert_w(x);
    EXPECT_NEAR(w * std::exp(w), x, 1e-14) << x;
    EXPECT_GE(w, -1.0);
  }
}

TEST(LambertWSeries, AgreesAsymptotically) {
  EXPECT_NEAR(lambert_w_series(1e8) / lambert_w(1e8), 1.0, 1e-3);
  EXPECT_NEAR(lambert_w_series(1e300) / lambert_w(1e300), 1.0, 1e-9);
  EXPECT_TRUE(std::isfinite(lambert_w_series(2 * std::numbers::e * std::numbers::e)));
  EXPECT_THROW(lambert_w_series(std::numbers::e), std::domain_error);
  EXPECT_THROW(lambert_w_series(1.0), std::domain_error);
}

TEST(LnPhiBounds, BracketsTheSupremum) {
  for (int n : {51, 60, 75, 100, 150, 200}) {
    const auto [lo, hi] = ln_phi_bounds(n);
    const double v = ln_phi_continuous(n + 1);
    EXPECT_LT(lo, v) << n;
    EXPECT_LT(v, hi) << n;
  }
  const auto [lo, hi] = ln_phi_bounds(100);
  EXPECT_NEAR(hi - lo, std::log(std::log(100 * std::numbers::e)) / 100, 1e-12);
  EXPECT_LT(ln_phi_bounds(75).lo, ln_phi_bounds(75).hi);
  EXPECT_THROW(ln_phi_bounds(50), std::invalid_argument);
}

TEST(Factorial, Values) {
  EXPECT_EQ(factorial(0), 1);
  EXPECT_EQ(factorial(5), 120);
  EXPECT_EQ(factorial(7), 5040);
  EXPECT_EQ(factorial(8), 40320);
  EXPECT_EQ(misprinted_factorial(7), 4320);
  EXPECT_EQ(misprinted_factorial(8), 30240);
  EXPECT_FALSE(misprinted_factorial(6));
}

TEST(DoubleExp, Values) {
  EXPECT_EQ(double_exp(1), 1);
  EXPECT_EQ(double_exp(6), 2147483648L);
  EXPECT_EQ(double_exp(7), pb::BigNat("9223372036854775808"));
  EXPECT_EQ(double_exp(8), pow_nat(2, 127));
}

TEST(BoundsTable, Rows) {
  const auto rows = bounds_table(6);
  ASSERT_EQ(rows.size(), 5u);
  const long phi[] = {1, 2, 3, 7, 15}, next[] = {2, 3, 7, 15, 40};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].n, static_cast<int>(i) + 2);
    EXPECT_EQ(rows[i].phi_n, phi[i]);
    EXPECT_EQ(rows[i].phi_n_plus_1, next[i]);
    EXPECT_LE(rows[i].phi_n_plus_1, rows[i].factorial);
    EXPECT_FALSE(rows[i].hbar_n);
  }
  const auto eight = bounds_table(8);
  EXPECT_EQ(*eight[5].u_n, pb::BigNat("10650056950806"));
  EXPECT_FALSE(eight[6].u_n);

  const auto two = bounds_table(2);
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two[0].phi_n, 1);
  EXPECT_EQ(two[0].phi_n_plus_1, 2);
  EXPECT_EQ(two[0].factorial, 2);
  EXPECT_THROW(bounds_table(1), std::invalid_argument);
}

TEST(BoundsTable, HbarProviderFillsColumn) {
  const auto rows = bounds_table(3, [](int n) -> std::optional<HbarCell> {
    if (n == 2) return HbarCell{2, true};
    return std::nullopt;
  });
  ASSERT_TRUE(rows[0].hbar_n);
  EXPECT_EQ(rows[0].hbar_n->value, 2);
  EXPECT_TRUE(rows[0].hbar_n->exact);
  EXPECT_FALSE(rows[1].hbar_n);
}
