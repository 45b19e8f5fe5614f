#include "rlsa/model.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace rlsa {

std::vector<BlockId> ProblemInstance::free_ids() const {
  std::vector<BlockId> ids;
  for (const Block& b : blocks) {
    if (!b.is_fixed()) ids.push_back(b.id);
  }
  return ids;
}

std::vector<BlockId> ProblemInstance::fixed_ids() const {
  std::vector<BlockId> ids;
  for (const Block& b : blocks) {
    if (b.is_fixed()) ids.push_back(b.id);
  }
  return ids;
}

int ProblemInstance::num_free() const {
  return static_cast<int>(std::count_if(
      blocks.begin(), blocks.end(), [](const Block& b) { return !b.is_fixed(); }));
}

namespace {

bool rects_overlap(Point pa, double wa, double ha, Point pb, double wb,
                   double hb) {
  return pa.x < pb.x + wb && pb.x < pa.x + wa && pa.y < pb.y + hb &&
         pb.y < pa.y + ha;
}

}  // namespace

void validate(const ProblemInstance& instance) {
  const int n = instance.num_blocks();
  for (int i = 0; i < n; ++i) {
    const Block& b = instance.blocks[i];
    if (b.id != i) {
      throw InvalidArgument("block ids must be dense 0..n-1; block '" +
                            b.name + "' has id " + std::to_string(b.id));
    }
    if (!(b.width > 0.0) || !(b.height > 0.0)) {
      throw InvalidArgument("block '" + b.name + "' has non-positive size");
    }
    if (b.is_fixed() != b.fixed_origin.has_value()) {
      throw InvalidArgument("block '" + b.name +
                            "': fixed kind and fixed origin disagree");
    }
  }
  if (instance.num_free() < 1) {
    throw InvalidArgument("instance '" + instance.name +
                          "' has no free blocks");
  }
  if (instance.weights.area < 0.0 || instance.weights.wire < 0.0 ||
      !(instance.weights.area + instance.weights.wire > 0.0)) {
    throw InvalidArgument("cost weights must be non-negative with positive sum");
  }
  for (const Net& net : instance.nets) {
    if (net.members.size() < 2) {
      throw InvalidArgument("net " + std::to_string(net.id) +
                            " has fewer than 2 members");
    }
    std::vector<BlockId> sorted = net.members;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvalidArgument("net " + std::to_string(net.id) +
                            " has duplicate members");
    }
    if (sorted.front() < 0 || sorted.back() >= n) {
      throw InvalidArgument("net " + std::to_string(net.id) +
                            " references an unknown block");
    }
  }
  const std::vector<BlockId> fixed = instance.fixed_ids();
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    for (std::size_t j = i + 1; j < fixed.size(); ++j) {
      const Block& a = instance.blocks[fixed[i]];
      const Block& b = instance.blocks[fixed[j]];
      if (rects_overlap(*a.fixed_origin, a.width, a.height, *b.fixed_origin,
                        b.width, b.height)) {
        throw InvalidArgument("fixed blocks '" + a.name + "' and '" + b.name +
                              "' overlap");
      }
    }
  }
}

void validate(const ProblemInstance& instance, const SequencePair& sp) {
  const std::vector<BlockId> expected = instance.free_ids();
  if (sp.gamma_plus.size() != expected.size() ||
      sp.gamma_minus.size() != expected.size()) {
    throw InvalidArgument("sequence pair length does not match free-block count");
  }
  auto check = [&](std::vector<BlockId> seq, const char* label) {
    std::sort(seq.begin(), seq.end());
    if (seq != expected) {
      throw InvalidArgument(std::string(label) +
                            " is not a permutation of the free-block ids");
    }
  };
  check(sp.gamma_plus, "gamma_plus");
  check(sp.gamma_minus, "gamma_minus");
}

bool is_valid(const ProblemInstance& instance, const SequencePair& sp) {
  try {
    validate(instance, sp);
    return true;
  } catch (const InvalidArgument&) {
    return false;
  }
}

int uniform_index(Rng& rng, int n) {
  if (n < 1) throw InvalidArgument("uniform_index: empty range");
  // Rejection sampling keeps the stream identical across standard libraries.
  const std::uint64_t range = static_cast<std::uint64_t>(n);
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return static_cast<int>(draw % range);
}

double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace {

void shuffle(std::vector<BlockId>& v, Rng& rng) {
  for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
    std::swap(v[i], v[uniform_index(rng, i + 1)]);
  }
}

}  // namespace

SequencePair random_sequence_pair(const ProblemInstance& instance, Rng& rng) {
  SequencePair sp;
  sp.gamma_plus = instance.free_ids();
  sp.gamma_minus = sp.gamma_plus;
  shuffle(sp.gamma_plus, rng);
  shuffle(sp.gamma_minus, rng);
  return sp;
}

SequencePair random_sequence_pair(const ProblemInstance& instance,
                                  std::uint64_t seed) {
  Rng rng(seed);
  return random_sequence_pair(instance, rng);
}

SequencePair swap_pair(const SequencePair& sp, BlockId a, BlockId b) {
  SequencePair out = sp;
  for (std::vector<BlockId>* seq : {&out.gamma_plus, &out.gamma_minus}) {
    auto ia = std::find(seq->begin(), seq->end(), a);
    auto ib = std::find(seq->begin(), seq->end(), b);
    if (ia == seq->end() || ib == seq->end()) {
      throw InvalidArgument("swap_pair: block " + std::to_string(a) + " or " +
                            std::to_string(b) + " not in sequence pair");
    }
    std::iter_swap(ia, ib);
  }
  return out;
}

SequencePair swap_single(const SequencePair& sp, Sequence which, int i, int j) {
  SequencePair out = sp;
  std::vector<BlockId>& seq =
      which == Sequence::kPlus ? out.gamma_plus : out.gamma_minus;
  const int n = static_cast<int>(seq.size());
  if (i < 0 || j < 0 || i >= n || j >= n) {
    throw InvalidArgument("swap_single: position out of range");
  }
  std::swap(seq[i], seq[j]);
  return out;
}

}  // namespace rlsa
