#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace crowdlim {

/// Discrete probability mass function. Entries must be non-negative and sum
/// to 1 within 1e-9; construction validates and never renormalizes silently.
class Pmf {
 public:
  static constexpr double kSumTolerance = 1e-9;

  explicit Pmf(std::vector<double> probabilities);

  static Pmf uniform(std::size_t n);

  /// Explicit renormalization of non-negative weights with positive sum.
  static Pmf normalized(std::vector<double> weights);

  std::span<const double> probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  double max_prob() const;

  bool operator==(const Pmf& other) const { return probs_ == other.probs_; }

 private:
  std::vector<double> probs_;
};

}  // namespace crowdlim
