#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "crowdlim/kic.hpp"
#include "crowdlim/pmf.hpp"
#include "crowdlim/rng.hpp"
#include "crowdlim/worker_models.hpp"

namespace crowdlim {

struct SourceModel {
  Pmf pmf;

  static SourceModel uniform(int n_labels) { return SourceModel{Pmf::uniform(static_cast<std::size_t>(n_labels))}; }
  int n_labels() const { return static_cast<int>(pmf.size()); }
};

struct WorkerModel {
  enum class Kind { Shc, MscPopulation };

  Kind kind = Kind::Shc;
  double hammer_prob = 0.0;                // SHC only
  std::optional<SkillPopulation> population;  // MSC only

  static WorkerModel shc(double q) { return WorkerModel{Kind::Shc, q, std::nullopt}; }
  static WorkerModel msc(SkillPopulation pop) {
    return WorkerModel{Kind::MscPopulation, 0.0, std::move(pop)};
  }
};

enum class DecoderKind { Oracle, MajorityVote };

struct SimConfig {
  std::size_t n_items = 0;
  SourceModel source = SourceModel::uniform(2);
  int code_k = 1;            // items per query
  int queries_per_item = 1;  // R'; the rate is R'/k queries per item
  WorkerModel workers = WorkerModel::shc(0.5);
  DecoderKind decoder = DecoderKind::Oracle;
  std::uint64_t seed = 0;
  int n_trials = 1;
};

struct SimulationReport {
  double empirical_error = 0.0;
  std::optional<double> std_error;       // estimator sigma, trials >= 2
  std::optional<double> ci_halfwidth;    // 95% normal approx, trials >= 8
  std::optional<double> analytic_prediction;
  double rate_used = 0.0;                // queries per item, R'/k
  std::uint64_t n_decodings = 0;         // real items x trials
  int filler_items = 0;
};

/// iid labels drawn from the source pmf.
std::vector<int> generate_dataset(std::size_t n_items, const SourceModel& source, Rng& rng);

/// Non-adaptive assignment where every item lands in exactly r_prime queries
/// of k distinct items each. When n_items is not divisible by k, up to k-1
/// filler items (ids >= n_items) are appended to restore regularity; fillers
/// are excluded from error accounting downstream.
struct QueryPlan {
  int k = 1;
  std::size_t n_real_items = 0;
  int filler_items = 0;
  int queries_per_item = 0;
  std::vector<std::uint32_t> slots;  // n_queries consecutive groups of k

  std::size_t n_queries() const { return slots.size() / static_cast<std::size_t>(k); }
  std::span<const std::uint32_t> query(std::size_t i) const {
    return std::span<const std::uint32_t>(slots).subspan(i * static_cast<std::size_t>(k),
                                                         static_cast<std::size_t>(k));
  }
};

QueryPlan assign_queries(std::size_t n_items, int k, int r_prime, Rng& rng);

/// Expands a plan into explicit queries carrying the truth pattern each
/// query's labels induce.
std::vector<KicQuery> materialize_queries(const QueryPlan& plan, std::span<const int> labels,
                                          int n_clusters);

/// SHC pool with an oracle decoder that errs on an item only when every one
/// of its queries was answered by a spammer; the error is then realized by
/// minimum-mismatch decoding of one uniformly chosen spammer response.
/// Trials run on independent derived streams, so they are safe to
/// parallelize; aggregation happens once at the end.
SimulationReport run_oracle_decoder_sim(const SimConfig& cfg);

/// Direct-label queries (k = 1) against an MSC population, decoded by
/// plurality with uniform tie breaking.
SimulationReport run_majority_vote_sim(const SimConfig& cfg);

/// Dispatch on cfg.decoder.
SimulationReport run_simulation(const SimConfig& cfg);

enum class SweepAxis { QueriesPerItem, HammerProb, WorkerError };

/// One report per grid value; grid point i runs with seed
/// derive_seed(base.seed, i), so a sweep is reproducible point by point.
std::vector<SimulationReport> sweep(const SimConfig& base, SweepAxis axis,
                                    std::span<const double> grid);

}  // namespace crowdlim
