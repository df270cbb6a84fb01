#include "crowdlim/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "crowdlim/errors.hpp"

namespace crowdlim {

Pmf::Pmf(std::vector<double> probabilities) : probs_(std::move(probabilities)) {
  require(!probs_.empty(), "Pmf: no entries");
  double sum = 0.0;
  for (double p : probs_) {
    require(std::isfinite(p) && p >= 0.0, "Pmf: entries must be finite and non-negative");
    sum += p;
  }
  require(std::abs(sum - 1.0) <= kSumTolerance,
          "Pmf: entries sum to " + std::to_string(sum) + ", expected 1 within 1e-9");
}

Pmf Pmf::uniform(std::size_t n) {
  require(n >= 1, "Pmf::uniform: n must be >= 1");
  return Pmf(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Pmf Pmf::normalized(std::vector<double> weights) {
  require(!weights.empty(), "Pmf::normalized: no entries");
  double sum = 0.0;
  for (double w : weights) {
    require(std::isfinite(w) && w >= 0.0, "Pmf::normalized: weights must be non-negative");
    sum += w;
  }
  require(sum > 0.0, "Pmf::normalized: weights sum to zero");
  for (double& w : weights) w /= sum;
  return Pmf(std::move(weights));
}

double Pmf::max_prob() const { return *std::max_element(probs_.begin(), probs_.end()); }

}  // namespace crowdlim
