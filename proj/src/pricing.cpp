#include "crowdlim/pricing.hpp"

#include "crowdlim/bounds.hpp"
#include "crowdlim/errors.hpp"

namespace crowdlim {

double campaign_cost(const PriceQuote& price, double n_items, double rate) {
  require(price.price_per_query >= 0.0, "campaign_cost: price must be non-negative");
  require(n_items >= 0.0, "campaign_cost: item count must be non-negative");
  require(rate >= 0.0, "campaign_cost: rate must be non-negative");
  return price.price_per_query * n_items * rate;
}

double price_threshold(int k1, int k2, double price_k1) {
  require(k1 >= 2 && k2 >= 2, "price_threshold: query arities must be >= 2");
  require(price_k1 > 0.0, "price_threshold: reference price must be positive");
  return price_k1 * static_cast<double>(k2) / static_cast<double>(k1);
}

double price_threshold_exact(int k1, int k2, double hammer_prob, double target_error,
                             double price_k1) {
  require(k1 >= 2 && k2 >= 2, "price_threshold_exact: query arities must be >= 2");
  require(price_k1 > 0.0, "price_threshold_exact: reference price must be positive");
  const RateBound r1 = kic_rate_threshold(k1, hammer_prob, target_error);
  const RateBound r2 = kic_rate_threshold(k2, hammer_prob, target_error);
  require(r1.feasible && r2.feasible && r1.value > 0.0 && r2.value > 0.0,
          "price_threshold_exact: rate thresholds must be finite and positive at these parameters");
  return price_k1 * r1.value / r2.value;
}

}  // namespace crowdlim
