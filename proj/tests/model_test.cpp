#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "fixtures.hpp"
#include "rlsa/model.hpp"

using namespace rlsa;

namespace {

// Lehmer rank of a permutation of 0..n-1.
long permutation_rank(const std::vector<int>& p) {
  const int n = static_cast<int>(p.size());
  long rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j) smaller += p[j] < p[i];
    rank = rank * (n - i) + smaller;
  }
  return rank;
}

bool is_permutation_of(const std::vector<int>& seq, std::vector<int> ids) {
  std::vector<int> s = seq;
  std::sort(s.begin(), s.end());
  std::sort(ids.begin(), ids.end());
  return s == ids;
}

}  // namespace

TEST_CASE("random_sequence_pair: single block") {
  const auto inst = fixture::unit_blocks(1);
  for (std::uint64_t seed : {0ULL, 1ULL, 12345ULL}) {
    const SequencePair sp = random_sequence_pair(inst, seed);
    CHECK(sp.gamma_plus == std::vector<int>{0});
    CHECK(sp.gamma_minus == std::vector<int>{0});
  }
}

TEST_CASE("random_sequence_pair: same seed, same pair") {
  const auto inst = fixture::unit_blocks(3);
  CHECK(random_sequence_pair(inst, 99) == random_sequence_pair(inst, 99));
  CHECK(is_valid(inst, random_sequence_pair(inst, 99)));
}

TEST_CASE("random_sequence_pair: gamma_plus uniform over 8! permutations") {
  const auto inst = fixture::unit_blocks(8);
  constexpr int kSamples = 10000;
  constexpr int kGroups = 40;  // 40320 / 40 = 1008 permutations per group
  std::vector<int> groups(kGroups, 0);
  std::vector<std::vector<int>> pos_counts(8, std::vector<int>(8, 0));
  for (int s = 0; s < kSamples; ++s) {
    const SequencePair sp = random_sequence_pair(inst, static_cast<std::uint64_t>(s));
    ++groups[permutation_rank(sp.gamma_plus) / 1008];
    for (int i = 0; i < 8; ++i) ++pos_counts[sp.gamma_plus[i]][i];
  }
  const double expected = kSamples / double(kGroups);
  double chi2 = 0.0;
  for (int g : groups) chi2 += (g - expected) * (g - expected) / expected;
  CHECK(chi2 < 72.0547);  // df 39, alpha 0.001

  const double cell = kSamples / 8.0;
  double chi2_pos = 0.0;
  for (const auto& row : pos_counts) {
    for (int c : row) chi2_pos += (c - cell) * (c - cell) / cell;
  }
  CHECK(chi2_pos < 85.3506);  // df 49, alpha 0.001
}

TEST_CASE("random_sequence_pair skips fixed blocks") {
  auto inst = fixture::unit_blocks(4);
  inst.blocks[2].kind = BlockKind::kFixed;
  inst.blocks[2].fixed_origin = Point{10, 10};
  const SequencePair sp = random_sequence_pair(inst, 3);
  CHECK(sp.size() == 3);
  CHECK(is_permutation_of(sp.gamma_plus, {0, 1, 3}));
  CHECK(is_permutation_of(sp.gamma_minus, {0, 1, 3}));
}

TEST_CASE("swap_pair") {
  const SequencePair sp{{0, 1, 2}, {2, 0, 1}};
  CHECK(swap_pair(sp, 0, 2) == SequencePair{{2, 1, 0}, {0, 2, 1}});
  CHECK(swap_pair(sp, 1, 1) == sp);
  CHECK(swap_pair(swap_pair(sp, 0, 1), 0, 1) == sp);
  CHECK(sp == SequencePair{{0, 1, 2}, {2, 0, 1}});
  CHECK_THROWS_AS(swap_pair(sp, 0, 7), InvalidArgument);
}

TEST_CASE("swap_single") {
  const SequencePair sp{{0, 1}, {0, 1}};
  CHECK(swap_single(sp, Sequence::kPlus, 0, 1) == SequencePair{{1, 0}, {0, 1}});
  CHECK(swap_single(sp, Sequence::kMinus, 0, 1) == SequencePair{{0, 1}, {1, 0}});
  CHECK(swap_single(sp, Sequence::kPlus, 1, 1) == sp);
  CHECK_THROWS_AS(swap_single(sp, Sequence::kPlus, 0, 2), InvalidArgument);
  CHECK_THROWS_AS(swap_single(sp, Sequence::kMinus, -1, 0), InvalidArgument);
}

TEST_CASE("swaps keep sequence pairs valid") {
  const auto inst = fixture::unit_blocks(12);
  Rng rng(5);
  SequencePair sp = random_sequence_pair(inst, rng);
  for (int k = 0; k < 10000; ++k) {
    switch (uniform_index(rng, 3)) {
      case 0:
        sp = swap_pair(sp, uniform_index(rng, 12), uniform_index(rng, 12));
        break;
      case 1:
        sp = swap_single(sp, Sequence::kPlus, uniform_index(rng, 12),
                         uniform_index(rng, 12));
        break;
      default:
        sp = swap_single(sp, Sequence::kMinus, uniform_index(rng, 12),
                         uniform_index(rng, 12));
    }
    REQUIRE(is_valid(inst, sp));
  }
}

TEST_CASE("seeded streams are reproducible") {
  const auto inst = fixture::unit_blocks(6);
  Rng a(77), b(77);
  for (int k = 0; k < 50; ++k) {
    CHECK(random_sequence_pair(inst, a) == random_sequence_pair(inst, b));
  }
}

TEST_CASE("uniform_index and uniform_unit ranges") {
  Rng rng(1);
  std::vector<int> hits(7, 0);
  for (int k = 0; k < 7000; ++k) {
    const int i = uniform_index(rng, 7);
    REQUIRE(i >= 0);
    REQUIRE(i < 7);
    ++hits[i];
    const double u = uniform_unit(rng);
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
  for (int h : hits) CHECK(h > 800);
  CHECK_THROWS_AS(uniform_index(rng, 0), InvalidArgument);
}

TEST_CASE("validate(instance) rejects broken instances") {
  CHECK_NOTHROW(validate(fixture::unit_blocks(2)));

  auto zero = fixture::unit_blocks(2);
  zero.blocks[0].width = 0.0;
  CHECK_THROWS_AS(validate(zero), InvalidArgument);

  auto all_fixed = fixture::unit_blocks(1);
  all_fixed.blocks[0].kind = BlockKind::kFixed;
  all_fixed.blocks[0].fixed_origin = Point{0, 0};
  CHECK_THROWS_AS(validate(all_fixed), InvalidArgument);

  auto self_net = fixture::blocks({1, 1}, {1, 1}, {{0, 0}});
  CHECK_THROWS_AS(validate(self_net), InvalidArgument);

  auto missing = fixture::blocks({1, 1}, {1, 1}, {{0, 5}});
  CHECK_THROWS_AS(validate(missing), InvalidArgument);

  auto no_weight = fixture::unit_blocks(2);
  no_weight.weights = {0.0, 0.0};
  CHECK_THROWS_AS(validate(no_weight), InvalidArgument);

  auto clash = fixture::unit_blocks(3);
  for (int i : {0, 1}) {
    clash.blocks[i].kind = BlockKind::kFixed;
    clash.blocks[i].fixed_origin = Point{0.5 * i, 0};
  }
  CHECK_THROWS_AS(validate(clash), InvalidArgument);
}

TEST_CASE("validate(instance, sp) rejects non-permutations") {
  const auto inst = fixture::unit_blocks(3);
  CHECK_FALSE(is_valid(inst, {{0, 1}, {0, 1}}));
  CHECK_FALSE(is_valid(inst, {{0, 1, 1}, {0, 1, 2}}));
  CHECK_FALSE(is_valid(inst, {{0, 1, 3}, {0, 1, 2}}));
  CHECK_THROWS_AS(validate(inst, SequencePair{{0, 1}, {0, 1, 2}}), InvalidArgument);
}
