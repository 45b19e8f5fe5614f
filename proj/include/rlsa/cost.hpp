#pragma once

#include "rlsa/model.hpp"
#include "rlsa/packer.hpp"

namespace rlsa {

struct CostBreakdown {
  double area = 0.0;        // um^2
  double wirelength = 0.0;  // um
  double total = 0.0;       // weights.area * area + weights.wire * wirelength
  bool operator==(const CostBreakdown&) const = default;
};

// Per-term scale applied before weighting. Identity unless a caller wants to
// put area and wirelength on comparable footing.
struct CostNormalization {
  double area = 1.0;
  double wire = 1.0;
};

double area(const Packing& p);

// Sum over nets of center-to-center Manhattan distances between consecutive
// members. Throws InconsistencyError if a net names a block the packing does
// not cover.
double wirelength(const ProblemInstance& instance, const Packing& p);
double wirelength(const ProblemInstance& instance, const Packing& p,
                  const Dimensions& dims);

CostBreakdown cost(const ProblemInstance& instance, const Packing& p,
                   CostNormalization norm = {});
CostBreakdown cost(const ProblemInstance& instance, const Packing& p,
                   const Dimensions& dims, CostNormalization norm = {});

// pack followed by cost.
CostBreakdown evaluate(const ProblemInstance& instance, const SequencePair& sp);
CostBreakdown evaluate(const ProblemInstance& instance, const SequencePair& sp,
                       const Dimensions& dims);

}  // namespace rlsa
