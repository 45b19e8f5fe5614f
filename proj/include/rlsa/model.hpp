#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rlsa/errors.hpp"

namespace rlsa {

using BlockId = int;
using Rng = std::mt19937_64;

enum class BlockKind { kFree, kFixed };

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

struct Block {
  BlockId id = 0;
  std::string name;
  double width = 0.0;   // um
  double height = 0.0;  // um
  BlockKind kind = BlockKind::kFree;
  std::optional<Point> fixed_origin;  // present iff kind == kFixed

  bool is_fixed() const { return kind == BlockKind::kFixed; }
  double area() const { return width * height; }
};

struct Net {
  int id = 0;
  std::vector<BlockId> members;
};

struct CostWeights {
  double area = 0.0;
  double wire = 1.0;
};

// A benchmark: blocks, connectivity and the weights of the cost function.
// `notes` collects non-fatal diagnostics from ingestion (e.g. how multi-pin
// nets were decomposed, non-rectilinear outlines).
struct ProblemInstance {
  std::string name;
  std::vector<Block> blocks;
  std::vector<Net> nets;
  CostWeights weights;
  std::vector<std::string> notes;

  int num_blocks() const { return static_cast<int>(blocks.size()); }
  // Free-block ids in ascending order. This order defines the RL action and
  // state indexing.
  std::vector<BlockId> free_ids() const;
  std::vector<BlockId> fixed_ids() const;
  int num_free() const;
};

// Throws InvalidArgument describing the first violated invariant.
void validate(const ProblemInstance& instance);

// Two permutations of the free-block ids. Fixed blocks never appear.
struct SequencePair {
  std::vector<BlockId> gamma_plus;
  std::vector<BlockId> gamma_minus;

  int size() const { return static_cast<int>(gamma_plus.size()); }
  bool operator==(const SequencePair&) const = default;
};

enum class Sequence { kPlus, kMinus };

// Throws InvalidArgument unless both sequences are permutations of exactly
// the instance's free-block ids.
void validate(const ProblemInstance& instance, const SequencePair& sp);
bool is_valid(const ProblemInstance& instance, const SequencePair& sp);

SequencePair random_sequence_pair(const ProblemInstance& instance,
                                  std::uint64_t seed);
SequencePair random_sequence_pair(const ProblemInstance& instance, Rng& rng);

// Exchanges the positions of blocks a and b in both sequences.
SequencePair swap_pair(const SequencePair& sp, BlockId a, BlockId b);

// Exchanges positions i and j of one sequence only.
SequencePair swap_single(const SequencePair& sp, Sequence which, int i, int j);

// Uniform integer in [0, n).
int uniform_index(Rng& rng, int n);
double uniform_unit(Rng& rng);

}  // namespace rlsa
