#include "crowdlim/kic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

#include "crowdlim/errors.hpp"

namespace crowdlim {

namespace {

void enumerate_rgs(int position, int blocks_used, int k, int n_clusters, Partition& current,
                   std::vector<Partition>& out) {
  if (position == k) {
    out.push_back(current);
    return;
  }
  const int limit = std::min(blocks_used + 1, n_clusters);
  for (int block = 0; block < limit; ++block) {
    current[static_cast<std::size_t>(position)] = static_cast<std::uint8_t>(block);
    enumerate_rgs(position + 1, std::max(blocks_used, block + 1), k, n_clusters, current, out);
  }
}

std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t result = 1;
  for (int i = 1; i <= r; ++i) {
    result = result * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
  }
  return result;
}

}  // namespace

std::vector<Partition> enumerate_valid_responses(int k, int n_clusters) {
  require(k >= 1, "enumerate_valid_responses: k must be >= 1");
  require(n_clusters >= 2, "enumerate_valid_responses: n_clusters must be >= 2");
  std::vector<Partition> out;
  Partition current(static_cast<std::size_t>(k), 0);
  enumerate_rgs(0, 0, k, n_clusters, current, out);
  return out;
}

Partition encode_query(std::span<const int> labels, int n_clusters) {
  require(!labels.empty(), "encode_query: no labels");
  require(n_clusters >= 2, "encode_query: n_clusters must be >= 2");
  Partition pattern(labels.size(), 0);
  // Relabel blocks in order of first appearance.
  std::vector<int> block_of_label(static_cast<std::size_t>(n_clusters), -1);
  int next_block = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int label = labels[i];
    require(label >= 0 && label < n_clusters, "encode_query: label out of range");
    if (block_of_label[static_cast<std::size_t>(label)] < 0) {
      block_of_label[static_cast<std::size_t>(label)] = next_block++;
    }
    pattern[i] = static_cast<std::uint8_t>(block_of_label[static_cast<std::size_t>(label)]);
  }
  return pattern;
}

double spammer_error_prob(int k) {
  require(k >= 2 && k <= 32, "spammer_error_prob: k must lie in [2, 32]");
  // Sum of i*C(k,i) over i <= floor((k-1)/2), with the even-k middle classes
  // contributing (k/4)*C(k,k/2); scaled by 4 to stay in integers throughout.
  std::uint64_t bracket_x4 = 0;
  for (int i = 0; i <= (k - 1) / 2; ++i) {
    bracket_x4 += 4ULL * static_cast<std::uint64_t>(i) * binomial(k, i);
  }
  if (k % 2 == 0) bracket_x4 += static_cast<std::uint64_t>(k) * binomial(k, k / 2);
  const double denom = 4.0 * static_cast<double>(k) * std::ldexp(1.0, k - 1);
  return static_cast<double>(bracket_x4) / denom;
}

double spammer_error_prob_bruteforce(int k) {
  require(k >= 2 && k <= 16, "spammer_error_prob_bruteforce: k must lie in [2, 16]");
  // Binary patterns as (k-1)-bit masks relative to the first item; the two
  // label alignments of a (truth, response) pair mismatch on d and k-d items.
  const std::uint32_t n_patterns = 1u << (k - 1);
  std::uint64_t total_mismatches = 0;
  for (std::uint32_t truth = 0; truth < n_patterns; ++truth) {
    for (std::uint32_t response = 0; response < n_patterns; ++response) {
      const int d = std::popcount(truth ^ response);
      total_mismatches += static_cast<std::uint64_t>(std::min(d, k - d));
    }
  }
  const double n_pairs = static_cast<double>(n_patterns) * static_cast<double>(n_patterns);
  return static_cast<double>(total_mismatches) / (n_pairs * static_cast<double>(k));
}

KicCode KicCode::make(int k, int n_clusters) {
  return KicCode{k, n_clusters, enumerate_valid_responses(k, n_clusters)};
}

Partition KicCode::encode(std::span<const int> labels) const {
  require(static_cast<int>(labels.size()) == k, "KicCode::encode: expected exactly k labels");
  return encode_query(labels, n_clusters);
}

}  // namespace crowdlim
