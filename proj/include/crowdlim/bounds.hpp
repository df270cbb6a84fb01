#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crowdlim/pmf.hpp"
#include "crowdlim/worker_models.hpp"

namespace crowdlim {

/// Minimum queries per item, or an explicit infeasible marker when the
/// average worker carries no capacity (denominator <= 0 with a positive
/// numerator). Infeasible is a value state, not an exception; serializers
/// write the literal token "inf".
struct RateBound {
  double value = 0.0;
  bool feasible = true;

  static RateBound of(double v) { return RateBound{v, true}; }
  static RateBound infeasible_bound() { return RateBound{0.0, false}; }
};

struct BoundQuery {
  Pmf source;                  // label distribution, N = source.size()
  int response_alphabet = 2;   // M, choices per query
  SkillPopulation population;  // P(epsilon) over worker skill levels
  double target_error = 0.0;   // overall error probability target
};

/// Minimum rate when skill levels are unknown to everyone: the channel term
/// is the capacity of the average worker, log2 M - H_M(E(epsilon)).
RateBound rmin_sl_uk(const BoundQuery& query);

/// Minimum rate when the decoder knows each worker's skill level: the channel
/// term is the average capacity, log2 M - E(H_M(epsilon)).
RateBound rmin_sl_cs(const BoundQuery& query);

/// Minimum rate for a binary uniform dataset with a spammer-hammer pool of
/// hammer probability q and M response choices: (1 - H_b(target)) / (q log2 M)
/// for target <= 0.5, and 0 past that.
RateBound rmin_shc(double hammer_prob, int response_alphabet, double target_error);

/// Rate below which no decoder of a non-adaptive k-item incidence code over
/// SHC(q) reaches the target error: ln(target / eps_spammer(k)) / (k ln(1-q)).
/// Returns 0 once target >= eps_spammer(k). k >= 2.
RateBound kic_rate_threshold(int k, double hammer_prob, double target_error);

struct Figure2Row {
  std::string curve;  // "it-limit" or "kic-k{k}"
  double epsilon_hat = 0.0;
  RateBound rate;
};

struct Figure2Params {
  double hammer_prob = 0.3;
  std::vector<int> k_list{2, 3, 4, 5};
  std::vector<double> error_grid;       // defaults to 0.005..0.495 step 0.005
  std::optional<int> alphabet_override; // M for the it-limit curve

  static Figure2Params defaults();
};

/// Long-format table behind the bound-comparison figure: one it-limit curve
/// (M = 2^(k_max - 1) unless overridden, floored at 2) plus one incidence-code
/// curve per k. k = 1 uses the direct-query form with spammer error 1/2.
std::vector<Figure2Row> figure2_table(const Figure2Params& params);

}  // namespace crowdlim
