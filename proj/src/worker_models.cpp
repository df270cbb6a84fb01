#include "crowdlim/worker_models.hpp"

#include <cmath>

#include "crowdlim/errors.hpp"

namespace crowdlim {

MscChannel::MscChannel(int alphabet_size, double epsilon) : m_(alphabet_size), epsilon_(epsilon) {
  require(m_ >= 2, "MscChannel: alphabet size must be >= 2");
  require(epsilon_ >= 0.0 && epsilon_ <= 1.0, "MscChannel: epsilon must lie in [0, 1]");
}

double MscChannel::transition(int input, int output) const {
  require(input >= 0 && input < m_, "MscChannel::transition: input symbol out of range");
  require(output >= 0 && output < m_, "MscChannel::transition: output symbol out of range");
  return output == input ? 1.0 - epsilon_ : epsilon_ / (m_ - 1);
}

int MscChannel::sample(int input, Rng& rng) const {
  require(input >= 0 && input < m_, "MscChannel::sample: input symbol out of range");
  if (!rng.next_bernoulli(epsilon_)) return input;
  // Uniform over the m-1 wrong symbols.
  const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m_ - 1)));
  return j >= input ? j + 1 : j;
}

ShcChannel::ShcChannel(double hammer_prob, int alphabet_size) : q_(hammer_prob), m_(alphabet_size) {
  require(q_ >= 0.0 && q_ <= 1.0, "ShcChannel: hammer probability must lie in [0, 1]");
  // M = 1 is a degenerate but legal alphabet (a single forced response).
  require(m_ >= 1, "ShcChannel: alphabet size must be >= 1");
}

WorkerState ShcChannel::draw_worker(Rng& rng) const {
  return rng.next_bernoulli(q_) ? WorkerState::Hammer : WorkerState::Spammer;
}

double ShcChannel::transition(WorkerState state, int input, int output) const {
  require(input >= 0 && input < m_, "ShcChannel::transition: input symbol out of range");
  require(output >= 0 && output < m_, "ShcChannel::transition: output symbol out of range");
  if (state == WorkerState::Hammer) return output == input ? 1.0 : 0.0;
  return 1.0 / m_;
}

int ShcChannel::respond(WorkerState state, int input, Rng& rng) const {
  require(input >= 0 && input < m_, "ShcChannel::respond: input symbol out of range");
  if (state == WorkerState::Hammer) return input;
  return static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m_)));
}

SkillPopulation::SkillPopulation(std::vector<Level> levels) : levels_(std::move(levels)) {
  require(!levels_.empty(), "SkillPopulation: no skill levels");
  std::vector<double> probs;
  probs.reserve(levels_.size());
  for (const Level& level : levels_) {
    require(level.epsilon >= 0.0 && level.epsilon <= 1.0,
            "SkillPopulation: skill level must lie in [0, 1]");
    probs.push_back(level.prob);
  }
  Pmf validated(probs);  // enforces the pmf invariants
  cdf_.resize(levels_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    acc += validated[i];
    cdf_[i] = acc;
  }
  cdf_.back() = 1.0;
}

SkillPopulation SkillPopulation::point_mass(double epsilon) {
  return SkillPopulation({Level{epsilon, 1.0}});
}

double SkillPopulation::mean_skill() const {
  double mean = 0.0;
  for (const Level& level : levels_) mean += level.prob * level.epsilon;
  return mean;
}

double SkillPopulation::sample(Rng& rng) const {
  const double u = rng.next_unit();
  for (std::size_t i = 0; i < cdf_.size(); ++i) {
    if (u < cdf_[i]) return levels_[i].epsilon;
  }
  return levels_.back().epsilon;
}

}  // namespace crowdlim
