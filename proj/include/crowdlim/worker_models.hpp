#pragma once

#include <span>
#include <vector>

#include "crowdlim/pmf.hpp"
#include "crowdlim/rng.hpp"

namespace crowdlim {

// Channel types are immutable after construction and safe to share across
// threads; Rng streams are not shareable, each concurrent task owns its own.

enum class WorkerState { Spammer, Hammer };

/// M-ary symmetric channel: a worker answers correctly with probability
/// 1-epsilon and picks any one wrong answer with probability epsilon/(M-1).
class MscChannel {
 public:
  MscChannel(int alphabet_size, double epsilon);

  int alphabet_size() const { return m_; }
  double epsilon() const { return epsilon_; }

  double transition(int input, int output) const;
  int sample(int input, Rng& rng) const;

 private:
  int m_;
  double epsilon_;
};

/// Spammer-hammer channel: a worker is a hammer (answers perfectly) with
/// probability q, otherwise a spammer who picks uniformly among the M valid
/// responses. The state is a worker attribute, drawn once per worker.
class ShcChannel {
 public:
  ShcChannel(double hammer_prob, int alphabet_size);

  double hammer_prob() const { return q_; }
  int alphabet_size() const { return m_; }

  WorkerState draw_worker(Rng& rng) const;
  double transition(WorkerState state, int input, int output) const;
  int respond(WorkerState state, int input, Rng& rng) const;

 private:
  double q_;
  int m_;
};

/// Discrete distribution over worker skill levels epsilon.
class SkillPopulation {
 public:
  struct Level {
    double epsilon;
    double prob;
  };

  explicit SkillPopulation(std::vector<Level> levels);
  static SkillPopulation point_mass(double epsilon);

  std::span<const Level> levels() const { return levels_; }
  std::size_t size() const { return levels_.size(); }

  /// E(epsilon).
  double mean_skill() const;

  double sample(Rng& rng) const;

 private:
  std::vector<Level> levels_;
  std::vector<double> cdf_;
};

}  // namespace crowdlim
