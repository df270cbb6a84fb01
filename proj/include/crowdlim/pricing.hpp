#pragma once

namespace crowdlim {

struct PriceQuote {
  double price_per_query = 0.0;  // abstract currency units, >= 0
  int k = 1;                     // query arity the price applies to
};

/// Total campaign cost: price * n_items * rate.
double campaign_cost(const PriceQuote& price, double n_items, double rate);

/// Rule-of-thumb price ceiling for switching from k1-item to k2-item queries
/// at equal budget and fidelity: price_k1 * k2 / k1.
double price_threshold(int k1, int k2, double price_k1);

/// Exact ceiling price_k1 * R1 / R2, with R_i the incidence-code rate
/// threshold at (k_i, q, target_error). Quantifies how far the k2/k1 rule is
/// off, since the spammer error probability also moves (slowly) with k.
double price_threshold_exact(int k1, int k2, double hammer_prob, double target_error,
                             double price_k1);

}  // namespace crowdlim
