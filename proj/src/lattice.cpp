#include "rlsa/bench_io.hpp"

namespace rlsa {

ProblemInstance gen_lattice(int n) {
  if (n < 2) throw InvalidArgument("lattice side must be >= 2");
  ProblemInstance inst;
  inst.name = "lattice" + std::to_string(n * n);
  inst.weights = {0.0, 1.0};
  const int count = n * n;
  inst.blocks.reserve(count);
  for (int i = 0; i < count; ++i) {
    inst.blocks.push_back(
        {i, "b" + std::to_string(i), 1.0, 1.0, BlockKind::kFree, std::nullopt});
  }
  int net_id = 0;
  for (int i = 0; i + 1 < count; ++i) {
    if ((i + 1) % n != 0) inst.nets.push_back({net_id++, {i, i + 1}});
  }
  for (int i = 0; i + n < count; ++i) {
    inst.nets.push_back({net_id++, {i, i + n}});
  }
  return inst;
}

}  // namespace rlsa
