#include "crowdlim/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "crowdlim/errors.hpp"
#include "crowdlim/infomath.hpp"
#include "crowdlim/kic.hpp"

namespace crowdlim {

namespace {

void validate_query(const BoundQuery& query) {
  require(query.response_alphabet >= 2, "BoundQuery: response alphabet must be >= 2");
  require(query.target_error >= 0.0 && query.target_error <= 1.0,
          "BoundQuery: target error must lie in [0, 1]");
}

RateBound rate_from(double numerator, double denominator) {
  if (numerator <= 0.0) return RateBound::of(0.0);
  if (denominator <= 0.0) return RateBound::infeasible_bound();
  return RateBound::of(numerator / denominator);
}

// Rate below which an oracle-decoded incidence scheme cannot reach the
// target, given the per-item spammer error probability of the code.
RateBound oracle_threshold(int k, double spammer_error, double hammer_prob, double target_error) {
  if (target_error >= spammer_error) return RateBound::of(0.0);
  if (hammer_prob >= 1.0) return RateBound::of(0.0);
  if (hammer_prob <= 0.0 || target_error <= 0.0) return RateBound::infeasible_bound();
  return RateBound::of(std::log(target_error / spammer_error) /
                       (k * std::log1p(-hammer_prob)));
}

}  // namespace

RateBound rmin_sl_uk(const BoundQuery& query) {
  validate_query(query);
  const double numerator = rate_distortion_hamming(query.source, query.target_error);
  const double denominator =
      msc_capacity_pointwise(query.population.mean_skill(), query.response_alphabet);
  return rate_from(numerator, denominator);
}

RateBound rmin_sl_cs(const BoundQuery& query) {
  validate_query(query);
  const double numerator = rate_distortion_hamming(query.source, query.target_error);
  double mean_entropy = 0.0;
  for (const SkillPopulation::Level& level : query.population.levels()) {
    mean_entropy += level.prob * symmetric_entropy(level.epsilon, query.response_alphabet);
  }
  const double denominator = std::log2(query.response_alphabet) - mean_entropy;
  return rate_from(numerator, denominator);
}

RateBound rmin_shc(double hammer_prob, int response_alphabet, double target_error) {
  require(hammer_prob >= 0.0 && hammer_prob <= 1.0, "rmin_shc: hammer probability must lie in [0, 1]");
  require(response_alphabet >= 2, "rmin_shc: response alphabet must be >= 2");
  require(target_error >= 0.0 && target_error <= 1.0, "rmin_shc: target error must lie in [0, 1]");
  if (target_error > 0.5) return RateBound::of(0.0);
  const double numerator = 1.0 - symmetric_entropy(target_error, 2);
  return rate_from(numerator, hammer_prob * std::log2(response_alphabet));
}

RateBound kic_rate_threshold(int k, double hammer_prob, double target_error) {
  require(k >= 2, "kic_rate_threshold: k must be >= 2");
  require(hammer_prob >= 0.0 && hammer_prob <= 1.0,
          "kic_rate_threshold: hammer probability must lie in [0, 1]");
  require(target_error >= 0.0 && target_error <= 1.0,
          "kic_rate_threshold: target error must lie in [0, 1]");
  return oracle_threshold(k, spammer_error_prob(k), hammer_prob, target_error);
}

Figure2Params Figure2Params::defaults() {
  Figure2Params params;
  for (int i = 1; i <= 99; ++i) params.error_grid.push_back(0.005 * i);
  return params;
}

std::vector<Figure2Row> figure2_table(const Figure2Params& params) {
  require(params.hammer_prob > 0.0 && params.hammer_prob <= 1.0,
          "figure2_table: hammer probability must lie in (0, 1]");
  require(!params.k_list.empty(), "figure2_table: k list must not be empty");
  for (int k : params.k_list) require(k >= 1, "figure2_table: k must be >= 1");
  for (double eps_hat : params.error_grid) {
    require(eps_hat >= 0.0 && eps_hat <= 1.0, "figure2_table: grid error must lie in [0, 1]");
  }

  const int k_max = *std::max_element(params.k_list.begin(), params.k_list.end());
  const int alphabet =
      params.alphabet_override.value_or(std::max(2, k_max >= 2 ? (1 << (k_max - 1)) : 2));

  std::vector<Figure2Row> rows;
  rows.reserve((params.k_list.size() + 1) * params.error_grid.size());
  for (double eps_hat : params.error_grid) {
    rows.push_back({"it-limit", eps_hat, rmin_shc(params.hammer_prob, alphabet, eps_hat)});
  }
  for (int k : params.k_list) {
    // k = 1 is the direct binary query; a spammer's uniform guess errs half
    // the time.
    const double spammer_error = k == 1 ? 0.5 : spammer_error_prob(k);
    for (double eps_hat : params.error_grid) {
      rows.push_back({"kic-k" + std::to_string(k), eps_hat,
                      oracle_threshold(k, spammer_error, params.hammer_prob, eps_hat)});
    }
  }
  return rows;
}

}  // namespace crowdlim
