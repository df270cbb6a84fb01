#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace crowdlim {

/// A partition of k items into unlabeled blocks, canonicalized as a
/// restricted growth string: item 0 is always block 0, and each new block
/// index is one past the largest seen so far. Two partitions are equal iff
/// the strings are equal.
using Partition = std::vector<std::uint8_t>;

/// All partitions of k items into at most n_clusters nonempty unlabeled
/// blocks. The count is the sum of Stirling numbers of the second kind
/// S(k, 1..n_clusters); for n_clusters = 2 and k >= 2 it equals 2^(k-1).
std::vector<Partition> enumerate_valid_responses(int k, int n_clusters);

/// Partition induced by grouping items with equal labels, forgetting which
/// label each block carried.
Partition encode_query(std::span<const int> labels, int n_clusters);

/// Probability that a uniformly guessing spammer mislabels an item of a
/// k-item binary-clustering query over a uniform dataset. Closed form; k >= 2.
double spammer_error_prob(int k);

/// Independent oracle for spammer_error_prob: exhaustively averages the
/// minimum-mismatch per-item error over all (truth, response) pairs of
/// valid binary patterns. k in [2, 16].
double spammer_error_prob_bruteforce(int k);

struct KicCode {
  int k = 0;
  int n_clusters = 0;
  std::vector<Partition> valid_responses;

  static KicCode make(int k, int n_clusters);
  Partition encode(std::span<const int> labels) const;
};

struct KicQuery {
  std::vector<std::uint32_t> item_ids;  // k distinct dataset indices
  Partition true_pattern;
};

}  // namespace crowdlim
