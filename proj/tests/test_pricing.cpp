#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "crowdlim/bounds.hpp"
#include "crowdlim/errors.hpp"
#include "crowdlim/pricing.hpp"

using namespace crowdlim;

TEST_CASE("campaign cost") {
  CHECK(campaign_cost({0.0, 3}, 100, 2.0) == 0.0);
  CHECK(campaign_cost({0.05, 3}, 1e4, 1.5) == doctest::Approx(750.0));
  const RateBound rate = kic_rate_threshold(3, 0.3, 0.05);
  REQUIRE(rate.feasible);
  CHECK(campaign_cost({1.0, 3}, 1, rate.value) == doctest::Approx(1.5041127).epsilon(1e-6));
  CHECK_THROWS_AS(campaign_cost({-1.0, 3}, 1, 1), ValidationError);
}

TEST_CASE("approximate price threshold") {
  CHECK(price_threshold(3, 3, 0.07) == doctest::Approx(0.07));
  CHECK(price_threshold(2, 4, 0.10) == doctest::Approx(0.20));
  CHECK(price_threshold(3, 6, 0.09) == doctest::Approx(0.18));
  CHECK_THROWS_AS(price_threshold(1, 4, 0.1), ValidationError);
  CHECK_THROWS_AS(price_threshold(2, 4, 0.0), ValidationError);
  // scale equivariance
  CHECK(price_threshold(3, 5, 0.4) == doctest::Approx(2 * price_threshold(3, 5, 0.2)));
}

TEST_CASE("exact price threshold") {
  CHECK(price_threshold_exact(4, 4, 0.3, 0.05, 0.25) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(price_threshold_exact(3, 4, 0.3, 0.05, 1.0) == doctest::Approx(1.1709805).epsilon(1e-6));
  // thresholds vanish once the target exceeds the spammer error
  CHECK_THROWS_AS(price_threshold_exact(3, 4, 0.3, 0.45, 1.0), ValidationError);
  CHECK_THROWS_AS(price_threshold_exact(3, 4, 0.0, 0.05, 1.0), ValidationError);
  CHECK(price_threshold_exact(3, 5, 0.3, 0.05, 0.4) ==
        doctest::Approx(2 * price_threshold_exact(3, 5, 0.3, 0.05, 0.2)).epsilon(1e-12));
}

TEST_CASE("exact-vs-rule gap shrinks along odd arities and vanishes on even ones") {
  // The spammer error probability is identical for arities 2m and 2m+1, so
  // the k2/k1 rule is exact whenever k1 is even and k2 = k1 + 1. The
  // approximation gap therefore alternates between zero and a strictly
  // shrinking positive value as k grows.
  std::vector<double> gap;
  for (int k = 2; k <= 12; ++k) {
    const double exact = price_threshold_exact(k, k + 1, 0.3, 0.05, 1.0);
    const double rule = price_threshold(k, k + 1, 1.0);
    gap.push_back(std::abs(exact / rule - 1.0));
  }
  for (std::size_t i = 0; i < gap.size(); ++i) {
    const int k1 = 2 + static_cast<int>(i);
    if (k1 % 2 == 0) {
      CHECK(gap[i] < 1e-12);
    } else {
      CHECK(gap[i] > 1e-4);
      if (i + 2 < gap.size()) CHECK(gap[i + 2] < gap[i]);
    }
  }
  // headline convergence: the envelope of the gap shrinks toward zero
  CHECK(gap[1] > gap[3]);  // (3,4) vs (5,6)
  CHECK(gap[3] > gap[5]);  // (5,6) vs (7,8)
  CHECK(gap.back() < gap[1]);
}
