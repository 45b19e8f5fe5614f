#pragma once

#include <string>
#include <utility>
#include <vector>

#include "oracles.hpp"
#include "rlsa/model.hpp"
#include "rlsa/packer.hpp"

namespace fixture {

// Free blocks b0..b{n-1} with the given sizes and two-member nets.
inline rlsa::ProblemInstance blocks(const std::vector<double>& w,
                                    const std::vector<double>& h,
                                    const std::vector<std::pair<int, int>>& edges = {},
                                    rlsa::CostWeights weights = {0.0, 1.0}) {
  rlsa::ProblemInstance inst;
  inst.name = "fixture";
  for (std::size_t i = 0; i < w.size(); ++i) {
    inst.blocks.push_back({static_cast<int>(i), "b" + std::to_string(i), w[i],
                           h[i], rlsa::BlockKind::kFree, std::nullopt});
  }
  for (auto [a, b] : edges) {
    inst.nets.push_back({static_cast<int>(inst.nets.size()), {a, b}});
  }
  inst.weights = weights;
  return inst;
}

inline rlsa::ProblemInstance unit_blocks(int n) {
  return blocks(std::vector<double>(n, 1.0), std::vector<double>(n, 1.0));
}

inline std::vector<oracle::Rect> rects_of(const rlsa::ProblemInstance& inst,
                                          const rlsa::Packing& p) {
  std::vector<oracle::Rect> out;
  for (const rlsa::Block& b : inst.blocks) {
    out.push_back({p.x[b.id], p.y[b.id], b.width, b.height});
  }
  return out;
}

inline std::vector<std::pair<int, int>> edges_of(const rlsa::ProblemInstance& inst) {
  std::vector<std::pair<int, int>> out;
  for (const rlsa::Net& n : inst.nets) {
    for (std::size_t k = 1; k < n.members.size(); ++k) {
      out.emplace_back(n.members[k - 1], n.members[k]);
    }
  }
  return out;
}

inline int count_overlaps(const rlsa::ProblemInstance& inst,
                          const rlsa::Packing& p) {
  const auto r = rects_of(inst, p);
  int count = 0;
  for (std::size_t a = 0; a < r.size(); ++a) {
    for (std::size_t b = a + 1; b < r.size(); ++b) {
      if (oracle::rects_overlap(r[a], r[b])) ++count;
    }
  }
  return count;
}

// Path of the synthetic 49-module benchmark shipped with the repo.
inline std::string synth49_path() { return RLSA_DATA_DIR "/synth49.yal"; }
inline std::string synth49_fixed_path() {
  return RLSA_DATA_DIR "/synth49_fixed.json";
}
// Sum of w*h over synth49.yal, from tools/gen_synth_yal.py.
constexpr double kSynth49BlockArea = 24089231.0;

}  // namespace fixture
