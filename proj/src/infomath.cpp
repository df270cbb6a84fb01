#include "crowdlim/infomath.hpp"

#include <cmath>

#include "crowdlim/errors.hpp"

namespace crowdlim {

double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

double entropy(const Pmf& p) {
  double h = 0.0;
  for (double pi : p.probs()) h -= plogp(pi);
  return h;
}

double symmetric_entropy(double epsilon, int n_symbols) {
  require(n_symbols >= 2, "symmetric_entropy: n_symbols must be >= 2");
  require(epsilon >= 0.0 && epsilon <= 1.0, "symmetric_entropy: epsilon must lie in [0, 1]");
  // H(1-e, e/(n-1), ..., e/(n-1)); the n-1 tail terms collapse to one.
  double h = -plogp(1.0 - epsilon);
  if (epsilon > 0.0) h -= epsilon * std::log2(epsilon / (n_symbols - 1));
  return h;
}

double msc_capacity_pointwise(double epsilon, int m_symbols) {
  return std::log2(static_cast<double>(m_symbols)) - symmetric_entropy(epsilon, m_symbols);
}

double rate_distortion_hamming(const Pmf& source, double target_error) {
  require(target_error >= 0.0 && target_error <= 1.0,
          "rate_distortion_hamming: target_error must lie in [0, 1]");
  const auto n = static_cast<int>(source.size());
  if (n < 2) return 0.0;
  const double zero_rate_from = std::min(1.0 - source.max_prob(), 1.0 - 1.0 / n);
  if (target_error > zero_rate_from) return 0.0;
  return entropy(source) - symmetric_entropy(target_error, n);
}

}  // namespace crowdlim
