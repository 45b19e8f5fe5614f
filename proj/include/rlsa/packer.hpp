#pragma once

#include <Eigen/Core>

#include "rlsa/model.hpp"

namespace rlsa {

// Per-block outline, indexed by block id. Normally taken from the instance;
// the annealer substitutes a copy when rotation moves transpose blocks.
struct Dimensions {
  Eigen::VectorXd width;
  Eigen::VectorXd height;
};

Dimensions dimensions_of(const ProblemInstance& instance);

// Lower-left origins for every block (free and fixed), indexed by block id.
struct Packing {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  double bbox_width = 0.0;
  double bbox_height = 0.0;

  Point origin(BlockId id) const { return {x[id], y[id]}; }
};

// Sequence-pair evaluation with fixed blocks as obstacles.
//
// Free blocks are visited in gamma_minus order, which places every left- and
// below-predecessor of a block before it. A block's tentative origin is the
// longest path through its predecessors (clamped at 0). If it then overlaps a
// fixed block, it moves either right past the obstacle or up past it,
// whichever distance is shorter (right on ties), and repeats until clear.
// Displaced origins feed the constraints of later blocks.
//
// Throws InvalidArgument if sp is not valid for the instance.
Packing pack(const ProblemInstance& instance, const SequencePair& sp);
Packing pack(const ProblemInstance& instance, const SequencePair& sp,
             const Dimensions& dims);

struct Extent {
  double width = 0.0;
  double height = 0.0;
};

// Smallest origin-anchored rectangle containing every block. Negative
// coordinates (only possible for fixed blocks) widen the box.
Extent bounding_box(const Packing& p, const Dimensions& dims);
Extent bounding_box(const ProblemInstance& instance, const Packing& p);

// Open-interval overlap test between blocks a and b of a packing.
bool overlaps(const Packing& p, const Dimensions& dims, BlockId a, BlockId b);

}  // namespace rlsa
