#include "crowdlim/sim_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "crowdlim/errors.hpp"

namespace crowdlim {

namespace {

constexpr int kMinTrialsForCi = 8;

void validate_common(const SimConfig& cfg) {
  require(cfg.code_k >= 1, "SimConfig: code_k must be >= 1");
  require(cfg.queries_per_item >= 1, "SimConfig: queries_per_item must be >= 1");
  require(cfg.n_trials >= 1, "SimConfig: n_trials must be >= 1");
  require(cfg.n_items >= static_cast<std::size_t>(cfg.code_k),
          "SimConfig: n_items must be >= code_k");
}

struct TrialStats {
  std::vector<double> per_trial_error;

  void finish(SimulationReport& report) const {
    const auto trials = per_trial_error.size();
    const double mean =
        std::accumulate(per_trial_error.begin(), per_trial_error.end(), 0.0) / trials;
    report.empirical_error = mean;
    if (trials >= 2) {
      double ss = 0.0;
      for (double e : per_trial_error) ss += (e - mean) * (e - mean);
      const double sd = std::sqrt(ss / (trials - 1));
      report.std_error = sd / std::sqrt(static_cast<double>(trials));
      if (trials >= kMinTrialsForCi) report.ci_halfwidth = 1.96 * *report.std_error;
    }
  }
};

// Decodes one item of a query from a spammer's pattern guess: pick the label
// alignment with fewer mismatches against the true labels (ties to the
// un-flipped alignment) and report whether this item comes out wrong.
bool spammer_decodes_item_wrong(std::span<const std::uint32_t> items, std::size_t position,
                                std::uint32_t response, std::span<const int> labels) {
  const int k = static_cast<int>(items.size());
  int mismatches_plain = 0;
  for (int j = 0; j < k; ++j) {
    const int bit = j == 0 ? 0 : static_cast<int>((response >> (j - 1)) & 1u);
    mismatches_plain += bit != labels[items[static_cast<std::size_t>(j)]];
  }
  const int alignment = mismatches_plain <= k - mismatches_plain ? 0 : 1;
  const int item_bit =
      position == 0 ? 0 : static_cast<int>((response >> (position - 1)) & 1u);
  return (alignment ^ item_bit) != labels[items[position]];
}

}  // namespace

std::vector<int> generate_dataset(std::size_t n_items, const SourceModel& source, Rng& rng) {
  const auto probs = source.pmf.probs();
  std::vector<int> labels(n_items);
  for (std::size_t i = 0; i < n_items; ++i) {
    const double u = rng.next_unit();
    double acc = 0.0;
    int label = static_cast<int>(probs.size()) - 1;
    for (std::size_t j = 0; j < probs.size(); ++j) {
      acc += probs[j];
      if (u < acc) {
        label = static_cast<int>(j);
        break;
      }
    }
    labels[i] = label;
  }
  return labels;
}

QueryPlan assign_queries(std::size_t n_items, int k, int r_prime, Rng& rng) {
  require(k >= 1, "assign_queries: k must be >= 1");
  require(r_prime >= 1, "assign_queries: queries per item must be >= 1");
  require(n_items >= static_cast<std::size_t>(k),
          "assign_queries: need at least k items to form a query");

  // Pad to a multiple of k, then chunk one fresh permutation of all items per
  // round: every item lands in exactly one query per round and queries hold
  // distinct items by construction.
  const int fillers =
      static_cast<int>((static_cast<std::size_t>(k) - n_items % static_cast<std::size_t>(k)) %
                       static_cast<std::size_t>(k));

  QueryPlan plan;
  plan.k = k;
  plan.n_real_items = n_items;
  plan.filler_items = fillers;
  plan.queries_per_item = r_prime;

  const std::size_t total_items = n_items + static_cast<std::size_t>(fillers);
  plan.slots.resize(total_items * static_cast<std::size_t>(r_prime));
  std::vector<std::uint32_t> round(total_items);
  for (std::size_t i = 0; i < total_items; ++i) round[i] = static_cast<std::uint32_t>(i);
  for (int r = 0; r < r_prime; ++r) {
    for (std::size_t i = total_items - 1; i > 0; --i) {
      std::swap(round[i], round[rng.next_below(i + 1)]);
    }
    std::copy(round.begin(), round.end(),
              plan.slots.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(r) * total_items));
  }
  return plan;
}

std::vector<KicQuery> materialize_queries(const QueryPlan& plan, std::span<const int> labels,
                                          int n_clusters) {
  require(labels.size() >= plan.n_real_items + static_cast<std::size_t>(plan.filler_items),
          "materialize_queries: label vector shorter than the plan");
  std::vector<KicQuery> queries;
  queries.reserve(plan.n_queries());
  std::vector<int> query_labels(static_cast<std::size_t>(plan.k));
  for (std::size_t q = 0; q < plan.n_queries(); ++q) {
    const auto items = plan.query(q);
    for (std::size_t j = 0; j < items.size(); ++j) query_labels[j] = labels[items[j]];
    Partition pattern = encode_query(query_labels, n_clusters);
    queries.push_back(
        KicQuery{std::vector<std::uint32_t>(items.begin(), items.end()), std::move(pattern)});
  }
  return queries;
}

SimulationReport run_oracle_decoder_sim(const SimConfig& cfg) {
  validate_common(cfg);
  require(cfg.workers.kind == WorkerModel::Kind::Shc,
          "run_oracle_decoder_sim: oracle decoding requires the spammer-hammer model");
  const double q = cfg.workers.hammer_prob;
  require(q >= 0.0 && q <= 1.0, "run_oracle_decoder_sim: hammer probability must lie in [0, 1]");
  const int n_labels = cfg.source.n_labels();
  const int k = cfg.code_k;
  require(k == 1 || n_labels == 2,
          "run_oracle_decoder_sim: incidence queries (k >= 2) need a binary source");

  const int r_prime = cfg.queries_per_item;
  const std::uint32_t n_patterns = k >= 2 ? (1u << (k - 1)) : static_cast<std::uint32_t>(n_labels);

  TrialStats stats;
  int filler_items = 0;
  for (int trial = 0; trial < cfg.n_trials; ++trial) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(trial)));
    QueryPlan plan = assign_queries(cfg.n_items, k, r_prime, rng);
    filler_items = plan.filler_items;
    const std::size_t total_items =
        plan.n_real_items + static_cast<std::size_t>(plan.filler_items);
    const std::vector<int> labels = generate_dataset(total_items, cfg.source, rng);

    // Fresh worker per query; spammer guesses are realized once per query.
    const std::size_t n_queries = plan.n_queries();
    std::vector<std::uint8_t> query_is_hammer(n_queries);
    std::vector<std::uint32_t> spam_response(n_queries, 0);
    for (std::size_t qi = 0; qi < n_queries; ++qi) {
      query_is_hammer[qi] = rng.next_bernoulli(q);
      if (!query_is_hammer[qi]) spam_response[qi] = static_cast<std::uint32_t>(rng.next_below(n_patterns));
    }

    std::vector<std::uint8_t> hammered(total_items, 0);
    for (std::size_t qi = 0; qi < n_queries; ++qi) {
      if (!query_is_hammer[qi]) continue;
      for (std::uint32_t item : plan.query(qi)) hammered[item] = 1;
    }

    // Covering queries per item, in slot order.
    std::vector<std::uint32_t> cover(total_items * static_cast<std::size_t>(r_prime));
    std::vector<std::uint32_t> cover_count(total_items, 0);
    for (std::size_t s = 0; s < plan.slots.size(); ++s) {
      const std::uint32_t item = plan.slots[s];
      cover[item * static_cast<std::size_t>(r_prime) + cover_count[item]++] =
          static_cast<std::uint32_t>(s / static_cast<std::size_t>(k));
    }

    std::uint64_t errors = 0;
    for (std::size_t item = 0; item < plan.n_real_items; ++item) {
      if (hammered[item]) continue;
      // All covering workers are spammers; one uniformly chosen response is
      // as informative as all of them.
      const std::uint32_t qi =
          cover[item * static_cast<std::size_t>(r_prime) +
                rng.next_below(static_cast<std::uint64_t>(r_prime))];
      if (k == 1) {
        errors += static_cast<int>(spam_response[qi]) != labels[item];
        continue;
      }
      const auto items = plan.query(qi);
      const std::size_t position =
          static_cast<std::size_t>(std::find(items.begin(), items.end(),
                                             static_cast<std::uint32_t>(item)) -
                                   items.begin());
      errors += spammer_decodes_item_wrong(items, position, spam_response[qi], labels);
    }
    stats.per_trial_error.push_back(static_cast<double>(errors) /
                                    static_cast<double>(plan.n_real_items));
  }

  SimulationReport report;
  stats.finish(report);
  report.rate_used = static_cast<double>(r_prime) / k;
  report.n_decodings = static_cast<std::uint64_t>(cfg.n_items) *
                       static_cast<std::uint64_t>(cfg.n_trials);
  report.filler_items = filler_items;
  const double spammer_error =
      k >= 2 ? spammer_error_prob(k) : 1.0 - 1.0 / static_cast<double>(n_labels);
  report.analytic_prediction = spammer_error * std::pow(1.0 - q, r_prime);
  return report;
}

SimulationReport run_majority_vote_sim(const SimConfig& cfg) {
  validate_common(cfg);
  require(cfg.code_k == 1, "run_majority_vote_sim: majority voting requires k = 1");
  require(cfg.workers.kind == WorkerModel::Kind::MscPopulation && cfg.workers.population,
          "run_majority_vote_sim: majority voting requires an MSC population");
  const SkillPopulation& population = *cfg.workers.population;
  const int n_labels = cfg.source.n_labels();
  require(n_labels >= 2, "run_majority_vote_sim: need at least two labels");
  const int r_prime = cfg.queries_per_item;

  TrialStats stats;
  std::vector<int> votes(static_cast<std::size_t>(n_labels));
  std::vector<int> best;
  for (int trial = 0; trial < cfg.n_trials; ++trial) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(trial)));
    const std::vector<int> labels = generate_dataset(cfg.n_items, cfg.source, rng);

    std::uint64_t errors = 0;
    for (std::size_t item = 0; item < cfg.n_items; ++item) {
      std::fill(votes.begin(), votes.end(), 0);
      for (int r = 0; r < r_prime; ++r) {
        const MscChannel worker(n_labels, population.sample(rng));
        ++votes[static_cast<std::size_t>(worker.sample(labels[item], rng))];
      }
      const int top = *std::max_element(votes.begin(), votes.end());
      best.clear();
      for (int label = 0; label < n_labels; ++label) {
        if (votes[static_cast<std::size_t>(label)] == top) best.push_back(label);
      }
      const int decoded =
          best.size() == 1
              ? best.front()
              : best[static_cast<std::size_t>(rng.next_below(best.size()))];
      errors += decoded != labels[item];
    }
    stats.per_trial_error.push_back(static_cast<double>(errors) /
                                    static_cast<double>(cfg.n_items));
  }

  SimulationReport report;
  stats.finish(report);
  report.rate_used = static_cast<double>(r_prime);
  report.n_decodings = static_cast<std::uint64_t>(cfg.n_items) *
                       static_cast<std::uint64_t>(cfg.n_trials);
  report.filler_items = 0;
  report.analytic_prediction = std::nullopt;  // no closed form
  return report;
}

SimulationReport run_simulation(const SimConfig& cfg) {
  return cfg.decoder == DecoderKind::Oracle ? run_oracle_decoder_sim(cfg)
                                            : run_majority_vote_sim(cfg);
}

std::vector<SimulationReport> sweep(const SimConfig& base, SweepAxis axis,
                                    std::span<const double> grid) {
  std::vector<SimulationReport> reports;
  reports.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    SimConfig cfg = base;
    cfg.seed = derive_seed(base.seed, i);
    switch (axis) {
      case SweepAxis::QueriesPerItem: {
        const double value = grid[i];
        require(value >= 1.0 && value == std::floor(value),
                "sweep: queries-per-item grid values must be positive integers");
        cfg.queries_per_item = static_cast<int>(value);
        break;
      }
      case SweepAxis::HammerProb:
        require(base.workers.kind == WorkerModel::Kind::Shc,
                "sweep: hammer-probability sweeps require the spammer-hammer model");
        cfg.workers.hammer_prob = grid[i];
        break;
      case SweepAxis::WorkerError:
        require(base.workers.kind == WorkerModel::Kind::MscPopulation,
                "sweep: worker-error sweeps require the MSC model");
        cfg.workers.population = SkillPopulation::point_mass(grid[i]);
        break;
    }
    reports.push_back(run_simulation(cfg));
  }
  return reports;
}

}  // namespace crowdlim
