#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "crowdlim/errors.hpp"
#include "crowdlim/kic.hpp"
#include "crowdlim/rng.hpp"
#include "oracle_helpers.hpp"

using namespace crowdlim;

namespace {

// Test-side restricted-growth canonicalization, independent of encode_query.
Partition canonical_from_blocks(const std::vector<std::set<int>>& blocks, int k) {
  std::vector<int> block_of(static_cast<std::size_t>(k), -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (int item : blocks[b]) block_of[static_cast<std::size_t>(item)] = static_cast<int>(b);
  }
  Partition out(static_cast<std::size_t>(k), 0);
  std::map<int, std::uint8_t> renumber;
  std::uint8_t next = 0;
  for (int i = 0; i < k; ++i) {
    const int raw = block_of[static_cast<std::size_t>(i)];
    auto [it, inserted] = renumber.try_emplace(raw, next);
    if (inserted) ++next;
    out[static_cast<std::size_t>(i)] = it->second;
  }
  return out;
}

}  // namespace

TEST_CASE("valid response enumeration counts") {
  CHECK(enumerate_valid_responses(3, 2).size() == 4);
  CHECK(enumerate_valid_responses(2, 2).size() == 2);
  CHECK(enumerate_valid_responses(5, 2).size() == 16);
  CHECK(enumerate_valid_responses(1, 2).size() == 1);
  for (int k = 2; k <= 16; ++k) {
    CHECK(enumerate_valid_responses(k, 2).size() == (std::size_t{1} << (k - 1)));
  }
  for (int n = 2; n <= 5; ++n) {
    for (int k = 1; k <= 10; ++k) {
      std::uint64_t expected = 0;
      for (int j = 1; j <= n; ++j) expected += oracle::stirling2(k, j);
      CHECK(enumerate_valid_responses(k, n).size() == expected);
    }
  }
}

TEST_CASE("enumeration agrees with an independent partition generator") {
  for (int k = 1; k <= 7; ++k) {
    for (int n = 2; n <= 4; ++n) {
      std::set<int> items;
      for (int i = 0; i < k; ++i) items.insert(i);
      std::set<Partition> expected;
      for (const auto& blocks : oracle::all_set_partitions(items)) {
        if (static_cast<int>(blocks.size()) <= n) {
          expected.insert(canonical_from_blocks(blocks, k));
        }
      }
      const auto got = enumerate_valid_responses(k, n);
      CHECK(std::set<Partition>(got.begin(), got.end()) == expected);
      CHECK(got.size() == expected.size());
    }
  }
}

TEST_CASE("encode query examples") {
  CHECK(encode_query(std::vector<int>{0, 0, 1}, 2) == Partition{0, 0, 1});
  CHECK(encode_query(std::vector<int>{0, 0, 0}, 2) == Partition{0, 0, 0});
  CHECK(encode_query(std::vector<int>{0, 1, 0, 1}, 2) == Partition{0, 1, 0, 1});
  // labellings are forgotten
  CHECK(encode_query(std::vector<int>{1, 1, 0}, 2) == Partition{0, 0, 1});
  CHECK(encode_query(std::vector<int>{2, 0, 2, 1}, 3) == Partition{0, 1, 0, 2});
  CHECK_THROWS_AS(encode_query(std::vector<int>{0, 2}, 2), ValidationError);
}

TEST_CASE("encode query is invariant under global label permutation") {
  Rng rng(31);
  for (int round = 0; round < 500; ++round) {
    const int n = 2 + static_cast<int>(rng.next_below(3));
    const int k = 2 + static_cast<int>(rng.next_below(6));
    std::vector<int> labels(static_cast<std::size_t>(k));
    for (int& label : labels) label = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (std::size_t i = perm.size() - 1; i > 0; --i) {
      std::swap(perm[i], perm[rng.next_below(i + 1)]);
    }
    std::vector<int> permuted(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      permuted[i] = perm[static_cast<std::size_t>(labels[i])];
    }
    CHECK(encode_query(labels, n) == encode_query(permuted, n));
  }
}

TEST_CASE("true patterns of uniform binary labels are uniform over responses") {
  // Each binary pattern corresponds to exactly two labelings, so uniform
  // labels induce uniform patterns; checked empirically at 4 sigma.
  Rng rng(37);
  const int k = 4;
  const auto responses = enumerate_valid_responses(k, 2);
  std::map<Partition, int> counts;
  const int n = 400'000;
  std::vector<int> labels(static_cast<std::size_t>(k));
  for (int i = 0; i < n; ++i) {
    for (int& label : labels) label = static_cast<int>(rng.next_below(2));
    ++counts[encode_query(labels, 2)];
  }
  const double expected = 1.0 / static_cast<double>(responses.size());
  const double sigma = std::sqrt(expected * (1 - expected) / n);
  for (const auto& response : responses) {
    CHECK(std::abs(counts[response] / static_cast<double>(n) - expected) < 4 * sigma);
  }
}

TEST_CASE("spammer error probability closed form vs exhaustive oracle") {
  CHECK(spammer_error_prob(2) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(spammer_error_prob(3) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(spammer_error_prob(4) == doctest::Approx(0.3125).epsilon(1e-15));
  CHECK(spammer_error_prob(5) == doctest::Approx(0.3125).epsilon(1e-15));
  CHECK(spammer_error_prob_bruteforce(2) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(spammer_error_prob_bruteforce(4) == doctest::Approx(0.3125).epsilon(1e-15));
  for (int k = 2; k <= 12; ++k) {
    CHECK(spammer_error_prob(k) ==
          doctest::Approx(spammer_error_prob_bruteforce(k)).epsilon(1e-13));
  }
  for (int k = 2; k <= 16; ++k) {
    CHECK(spammer_error_prob(k) > 0.0);
    CHECK(spammer_error_prob(k) < 0.5);
  }
  // consecutive even/odd arities share the same value
  for (int k = 2; k <= 14; k += 2) {
    CHECK(spammer_error_prob(k) == doctest::Approx(spammer_error_prob(k + 1)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(spammer_error_prob(1), ValidationError);
  CHECK_THROWS_AS(spammer_error_prob_bruteforce(1), ValidationError);
  CHECK_THROWS_AS(spammer_error_prob_bruteforce(17), ValidationError);
}

TEST_CASE("kic code type") {
  const KicCode code = KicCode::make(3, 2);
  CHECK(code.valid_responses.size() == 4);
  CHECK(code.encode(std::vector<int>{0, 0, 1}) == Partition{0, 0, 1});
  const auto& valid = code.valid_responses;
  CHECK(std::find(valid.begin(), valid.end(), Partition{0, 0, 1}) != valid.end());
  CHECK_THROWS_AS(code.encode(std::vector<int>{0, 1}), ValidationError);
}
