#include "rlsa/cost.hpp"

#include <cmath>
#include <string>

namespace rlsa {

double area(const Packing& p) { return p.bbox_width * p.bbox_height; }

double wirelength(const ProblemInstance& instance, const Packing& p) {
  return wirelength(instance, p, dimensions_of(instance));
}

double wirelength(const ProblemInstance& instance, const Packing& p,
                  const Dimensions& dims) {
  const Eigen::Index n = p.x.size();
  double total = 0.0;
  for (const Net& net : instance.nets) {
    for (std::size_t k = 0; k < net.members.size(); ++k) {
      if (net.members[k] < 0 || net.members[k] >= n) {
        throw InconsistencyError("net " + std::to_string(net.id) +
                                 " references missing block " +
                                 std::to_string(net.members[k]));
      }
    }
    for (std::size_t k = 1; k < net.members.size(); ++k) {
      const BlockId a = net.members[k - 1];
      const BlockId b = net.members[k];
      const double cxa = p.x[a] + 0.5 * dims.width[a];
      const double cya = p.y[a] + 0.5 * dims.height[a];
      const double cxb = p.x[b] + 0.5 * dims.width[b];
      const double cyb = p.y[b] + 0.5 * dims.height[b];
      total += std::abs(cxa - cxb) + std::abs(cya - cyb);
    }
  }
  return total;
}

CostBreakdown cost(const ProblemInstance& instance, const Packing& p,
                   CostNormalization norm) {
  return cost(instance, p, dimensions_of(instance), norm);
}

CostBreakdown cost(const ProblemInstance& instance, const Packing& p,
                   const Dimensions& dims, CostNormalization norm) {
  CostBreakdown c;
  c.area = area(p);
  c.wirelength = wirelength(instance, p, dims);
  c.total = instance.weights.area * (norm.area * c.area) +
            instance.weights.wire * (norm.wire * c.wirelength);
  return c;
}

CostBreakdown evaluate(const ProblemInstance& instance, const SequencePair& sp) {
  const Dimensions dims = dimensions_of(instance);
  return cost(instance, pack(instance, sp, dims), dims);
}

CostBreakdown evaluate(const ProblemInstance& instance, const SequencePair& sp,
                       const Dimensions& dims) {
  return cost(instance, pack(instance, sp, dims), dims);
}

}  // namespace rlsa
