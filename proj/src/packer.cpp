#include "rlsa/packer.hpp"

#include <algorithm>
#include <vector>

namespace rlsa {

Dimensions dimensions_of(const ProblemInstance& instance) {
  const int n = instance.num_blocks();
  Dimensions dims{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (const Block& b : instance.blocks) {
    dims.width[b.id] = b.width;
    dims.height[b.id] = b.height;
  }
  return dims;
}

bool overlaps(const Packing& p, const Dimensions& dims, BlockId a, BlockId b) {
  return p.x[a] < p.x[b] + dims.width[b] && p.x[b] < p.x[a] + dims.width[a] &&
         p.y[a] < p.y[b] + dims.height[b] && p.y[b] < p.y[a] + dims.height[a];
}

Extent bounding_box(const Packing& p, const Dimensions& dims) {
  if (p.x.size() == 0) return {};
  const double min_x = std::min(0.0, p.x.minCoeff());
  const double min_y = std::min(0.0, p.y.minCoeff());
  const double max_x = (p.x + dims.width).maxCoeff();
  const double max_y = (p.y + dims.height).maxCoeff();
  return {max_x - min_x, max_y - min_y};
}

Extent bounding_box(const ProblemInstance& instance, const Packing& p) {
  return bounding_box(p, dimensions_of(instance));
}

Packing pack(const ProblemInstance& instance, const SequencePair& sp) {
  return pack(instance, sp, dimensions_of(instance));
}

Packing pack(const ProblemInstance& instance, const SequencePair& sp,
             const Dimensions& dims) {
  validate(instance, sp);
  const int n = instance.num_blocks();
  const int m = sp.size();

  Packing p;
  p.x = Eigen::VectorXd::Zero(n);
  p.y = Eigen::VectorXd::Zero(n);

  const std::vector<BlockId> fixed = instance.fixed_ids();
  for (BlockId f : fixed) {
    p.x[f] = instance.blocks[f].fixed_origin->x;
    p.y[f] = instance.blocks[f].fixed_origin->y;
  }

  std::vector<int> pos_plus(n, -1);
  for (int i = 0; i < m; ++i) pos_plus[sp.gamma_plus[i]] = i;

  for (int k = 0; k < m; ++k) {
    const BlockId b = sp.gamma_minus[k];
    double x = 0.0;
    double y = 0.0;
    for (int j = 0; j < k; ++j) {
      const BlockId q = sp.gamma_minus[j];
      if (pos_plus[q] < pos_plus[b]) {
        x = std::max(x, p.x[q] + dims.width[q]);   // q left of b
      } else {
        y = std::max(y, p.y[q] + dims.height[q]);  // q below b
      }
    }

    const double w = dims.width[b];
    const double h = dims.height[b];
    bool moved = true;
    while (moved) {
      moved = false;
      for (BlockId f : fixed) {
        const double fx = p.x[f];
        const double fy = p.y[f];
        const double fw = dims.width[f];
        const double fh = dims.height[f];
        if (x < fx + fw && fx < x + w && y < fy + fh && fy < y + h) {
          const double right = fx + fw - x;
          const double up = fy + fh - y;
          if (right <= up) {
            x = fx + fw;
          } else {
            y = fy + fh;
          }
          moved = true;
        }
      }
    }
    p.x[b] = x;
    p.y[b] = y;
  }

  const Extent box = bounding_box(p, dims);
  p.bbox_width = box.width;
  p.bbox_height = box.height;
  return p;
}

}  // namespace rlsa
