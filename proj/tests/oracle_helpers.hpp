#pragma once

// Test-only reference computations, kept independent of the library's
// implementation paths on purpose.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

inline long double entropy_bits(const std::vector<long double>& pmf) {
  long double h = 0.0L;
  for (long double p : pmf) {
    if (p > 0.0L) h -= p * (std::log(p) / std::log(2.0L));
  }
  return h;
}

inline long double symmetric_entropy_bits(long double epsilon, int n) {
  std::vector<long double> pmf{1.0L - epsilon};
  for (int i = 1; i < n; ++i) pmf.push_back(epsilon / (n - 1));
  return entropy_bits(pmf);
}

inline std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t result = 1;
  for (int i = 1; i <= r; ++i) {
    result = result * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
  }
  return result;
}

// Stirling numbers of the second kind via the standard recurrence.
inline std::uint64_t stirling2(int n, int k) {
  if (n == 0 && k == 0) return 1;
  if (n == 0 || k == 0 || k > n) return 0;
  std::vector<std::vector<std::uint64_t>> table(static_cast<std::size_t>(n) + 1,
                                                std::vector<std::uint64_t>(static_cast<std::size_t>(k) + 1, 0));
  table[0][0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= std::min(i, k); ++j) {
      table[i][j] = static_cast<std::uint64_t>(j) * table[i - 1][j] + table[i - 1][j - 1];
    }
  }
  return table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

// All set partitions of {0..n-1}, blocks as sorted sets; recursion attaches
// element 0 to every subset of the remainder (unlike the library's
// restricted-growth enumeration).
inline std::vector<std::vector<std::set<int>>> all_set_partitions(const std::set<int>& items) {
  std::vector<std::vector<std::set<int>>> partitions;
  if (items.empty()) return partitions;
  std::vector<int> vec(items.begin(), items.end());
  std::vector<int> tail(vec.begin() + 1, vec.end());
  const std::size_t n_subsets = std::size_t{1} << tail.size();
  for (std::size_t mask = 0; mask < n_subsets; ++mask) {
    std::set<int> first_block{vec[0]};
    std::set<int> rest;
    for (std::size_t i = 0; i < tail.size(); ++i) {
      if (mask & (std::size_t{1} << i)) {
        first_block.insert(tail[i]);
      } else {
        rest.insert(tail[i]);
      }
    }
    if (rest.empty()) {
      partitions.push_back({first_block});
    } else {
      for (auto& sub : all_set_partitions(rest)) {
        std::vector<std::set<int>> combined{first_block};
        combined.insert(combined.end(), sub.begin(), sub.end());
        partitions.push_back(combined);
      }
    }
  }
  return partitions;
}

// P(plurality decoding fails) for a binary label, R' independent responses
// each wrong with probability eps, ties broken by a fair coin.
inline long double majority_error_binary(int r_prime, long double eps) {
  long double p = 0.0L;
  for (int wrong = 0; wrong <= r_prime; ++wrong) {
    const long double term = static_cast<long double>(binomial(r_prime, wrong)) *
                             std::pow(eps, wrong) * std::pow(1.0L - eps, r_prime - wrong);
    if (2 * wrong > r_prime) {
      p += term;
    } else if (2 * wrong == r_prime) {
      p += term / 2.0L;
    }
  }
  return p;
}

}  // namespace oracle
