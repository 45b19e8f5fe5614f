#include <doctest.h>

#include "fixtures.hpp"
#include "rlsa/bench_io.hpp"
#include "rlsa/packer.hpp"

using namespace rlsa;

namespace {

// Random integer-valued sizes keep every coordinate exactly representable.
std::vector<double> random_sizes(Rng& rng, int n) {
  std::vector<double> v(n);
  for (double& s : v) s = 1 + uniform_index(rng, 20);
  return v;
}

}  // namespace

TEST_CASE("pack: two unit blocks side by side") {
  const auto inst = fixture::unit_blocks(2);
  const Packing p = pack(inst, {{0, 1}, {0, 1}});
  CHECK(p.origin(0) == Point{0, 0});
  CHECK(p.origin(1) == Point{1, 0});
  CHECK(p.bbox_width == 2.0);
  CHECK(p.bbox_height == 1.0);
}

TEST_CASE("pack: two unit blocks stacked") {
  const auto inst = fixture::unit_blocks(2);
  const Packing p = pack(inst, {{1, 0}, {0, 1}});
  CHECK(p.origin(0) == Point{0, 0});
  CHECK(p.origin(1) == Point{0, 1});
  CHECK(p.bbox_width == 1.0);
  CHECK(p.bbox_height == 2.0);
}

TEST_CASE("pack rejects an invalid sequence pair") {
  const auto inst = fixture::unit_blocks(3);
  CHECK_THROWS_AS(pack(inst, {{0, 1}, {0, 1}}), InvalidArgument);
}

TEST_CASE("pack equals the longest-path oracle for every pair, n <= 4") {
  Rng rng(2024);
  for (int set = 0; set < 20; ++set) {
    const int n = 1 + set % 4;
    const auto w = random_sizes(rng, n);
    const auto h = random_sizes(rng, n);
    const auto inst = fixture::blocks(w, h);
    for (const SequencePair& sp : oracle::all_sequence_pairs(n)) {
      const Packing p = pack(inst, sp);
      const auto expect = oracle::longest_path_pack(w, h, sp);
      for (int b = 0; b < n; ++b) {
        REQUIRE(p.origin(b) == expect[b]);
      }
    }
  }
}

TEST_CASE("pack respects left-of and below relations") {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + uniform_index(rng, 15);
    const auto inst = fixture::blocks(random_sizes(rng, n), random_sizes(rng, n));
    const SequencePair sp = random_sequence_pair(inst, rng);
    const Packing p = pack(inst, sp);
    std::vector<int> pp(n), pm(n);
    for (int i = 0; i < n; ++i) {
      pp[sp.gamma_plus[i]] = i;
      pm[sp.gamma_minus[i]] = i;
    }
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        if (pp[a] < pp[b] && pm[a] < pm[b]) {
          REQUIRE(p.x[a] + inst.blocks[a].width <= p.x[b]);
        }
        if (pp[a] > pp[b] && pm[a] < pm[b]) {
          REQUIRE(p.y[a] + inst.blocks[a].height <= p.y[b]);
        }
      }
    }
  }
}

TEST_CASE("pack never overlaps blocks") {
  Rng rng(31);
  for (int n : {10, 49, 100}) {
    for (int trial = 0; trial < 340; ++trial) {
      const auto inst = fixture::blocks(random_sizes(rng, n), random_sizes(rng, n));
      const Packing p = pack(inst, random_sequence_pair(inst, rng));
      REQUIRE(fixture::count_overlaps(inst, p) == 0);
    }
  }
}

TEST_CASE("fixed blocks are obstacles and never move") {
  auto inst = fixture::blocks({2, 2, 2, 3}, {2, 2, 2, 3});
  inst.blocks[3].kind = BlockKind::kFixed;
  inst.blocks[3].fixed_origin = Point{1, 0};
  for (const SequencePair& sp : oracle::all_sequence_pairs(3)) {
    const Packing p = pack(inst, sp);
    REQUIRE(p.origin(3) == Point{1, 0});
    REQUIRE(fixture::count_overlaps(inst, p) == 0);
  }
}

TEST_CASE("obstacle displacement picks the shorter shift, ties go right") {
  // Block 0 would sit at (0,0). Obstacle at (1,0) of size 1x3: shifting right
  // needs 2, shifting up needs 3.
  auto inst = fixture::blocks({2, 1}, {2, 3});
  inst.blocks[1].kind = BlockKind::kFixed;
  inst.blocks[1].fixed_origin = Point{1, 0};
  CHECK(pack(inst, {{0}, {0}}).origin(0) == Point{2, 0});

  // Obstacle 3 wide, 1 tall at (0,1): right costs 3, up costs 2.
  auto up = fixture::blocks({2, 3}, {2, 1});
  up.blocks[1].kind = BlockKind::kFixed;
  up.blocks[1].fixed_origin = Point{0, 1};
  CHECK(pack(up, {{0}, {0}}).origin(0) == Point{0, 2});

  // 2x2 obstacle at (0,0): both shifts are 2.
  auto tie = fixture::blocks({1, 2}, {1, 2});
  tie.blocks[1].kind = BlockKind::kFixed;
  tie.blocks[1].fixed_origin = Point{0, 0};
  CHECK(pack(tie, {{0}, {0}}).origin(0) == Point{2, 0});
}

TEST_CASE("bounding_box") {
  const auto one = fixture::blocks({30}, {40});
  const Packing p = pack(one, {{0}, {0}});
  const Extent e = bounding_box(one, p);
  CHECK(e.width == 30.0);
  CHECK(e.height == 40.0);

  const auto strip = fixture::unit_blocks(2);
  const Extent s = bounding_box(strip, pack(strip, {{0, 1}, {0, 1}}));
  CHECK(s.width == 2.0);
  CHECK(s.height == 1.0);

  Rng rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + uniform_index(rng, 6);
    const auto inst = fixture::blocks(random_sizes(rng, n), random_sizes(rng, n));
    const Packing q = pack(inst, random_sequence_pair(inst, rng));
    const auto [w, h] = oracle::scan_bbox(fixture::rects_of(inst, q));
    const Extent b = bounding_box(inst, q);
    REQUIRE(b.width == w);
    REQUIRE(b.height == h);
    REQUIRE(q.bbox_width == w);
    REQUIRE(q.bbox_height == h);
  }
}

TEST_CASE("overlaps uses open intervals") {
  const auto inst = fixture::unit_blocks(2);
  const Dimensions dims = dimensions_of(inst);
  const Packing touching = pack(inst, {{0, 1}, {0, 1}});
  CHECK_FALSE(overlaps(touching, dims, 0, 1));
  Packing stacked = touching;
  stacked.x[1] = 0.5;
  stacked.y[1] = 0.5;
  CHECK(overlaps(stacked, dims, 0, 1));
}

TEST_CASE("pack on a lattice with a fixed block") {
  ProblemInstance inst = gen_lattice(4);
  inst = apply_fixed(inst, FixedConfig{{{"b5", 1.5, 1.5}}});
  Rng rng(9);
  for (int k = 0; k < 200; ++k) {
    const Packing p = pack(inst, random_sequence_pair(inst, rng));
    REQUIRE(p.origin(5) == Point{1.5, 1.5});
    REQUIRE(fixture::count_overlaps(inst, p) == 0);
  }
}
