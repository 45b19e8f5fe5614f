#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <json.hpp>

#include "rlsa/bench_io.hpp"

namespace rlsa {

ProblemInstance apply_fixed(const ProblemInstance& instance,
                            const FixedConfig& cfg) {
  ProblemInstance out = instance;
  std::set<std::string> seen;
  for (const FixedEntry& e : cfg.entries) {
    if (!seen.insert(e.name).second) {
      throw ConfigError("fixed config names '" + e.name + "' twice");
    }
    auto it = std::find_if(out.blocks.begin(), out.blocks.end(),
                           [&](const Block& b) { return b.name == e.name; });
    if (it == out.blocks.end()) {
      throw ConfigError("fixed config names unknown block '" + e.name + "'");
    }
    it->kind = BlockKind::kFixed;
    it->fixed_origin = Point{e.x, e.y};
  }
  try {
    validate(out);
  } catch (const InvalidArgument& err) {
    throw ConfigError(std::string("fixed config rejected: ") + err.what());
  }
  return out;
}

FixedConfig parse_fixed_config(std::string_view json_text) {
  FixedConfig cfg;
  try {
    const nlohmann::json doc = nlohmann::json::parse(json_text);
    if (!doc.is_array()) throw ConfigError("fixed config must be a JSON array");
    for (const auto& item : doc) {
      cfg.entries.push_back({item.at("name").get<std::string>(),
                             item.at("x").get<double>(),
                             item.at("y").get<double>()});
    }
  } catch (const nlohmann::json::exception& err) {
    throw ConfigError(std::string("fixed config: ") + err.what());
  }
  return cfg;
}

FixedConfig load_fixed_config(const std::filesystem::path& path) {
  return parse_fixed_config(read_text_file(path));
}

void save_fixed_config(const FixedConfig& cfg,
                       const std::filesystem::path& path) {
  nlohmann::json doc = nlohmann::json::array();
  for (const FixedEntry& e : cfg.entries) {
    doc.push_back({{"name", e.name}, {"x", e.x}, {"y", e.y}});
  }
  write_text_file(path, doc.dump(2) + "\n");
}

FixedConfig example_fixed_config(const ProblemInstance& instance, int count,
                                 std::uint64_t seed) {
  std::vector<BlockId> free = instance.free_ids();
  if (count >= static_cast<int>(free.size())) {
    throw ConfigError("example fixed config would leave no free block");
  }
  double total = 0.0;
  for (const Block& b : instance.blocks) total += b.area();
  const double side = std::sqrt(total);
  std::stable_sort(free.begin(), free.end(), [&](BlockId a, BlockId b) {
    return instance.blocks[a].area() > instance.blocks[b].area();
  });

  Rng rng(seed);
  FixedConfig cfg;
  std::vector<BlockId> placed;
  for (int k = 0; k < count; ++k) {
    const Block& b = instance.blocks[free[k]];
    const double span_x = std::max(0.0, side - b.width);
    const double span_y = std::max(0.0, side - b.height);
    bool ok = false;
    for (int attempt = 0; attempt < 10000 && !ok; ++attempt) {
      const double x = std::round(span_x * uniform_unit(rng));
      const double y = std::round(span_y * uniform_unit(rng));
      ok = true;
      for (std::size_t q = 0; q < placed.size() && ok; ++q) {
        const Block& o = instance.blocks[placed[q]];
        const FixedEntry& e = cfg.entries[q];
        ok = x >= e.x + o.width || e.x >= x + b.width || y >= e.y + o.height ||
             e.y >= y + b.height;
      }
      if (ok) cfg.entries.push_back({b.name, x, y});
    }
    if (!ok) throw ConfigError("could not place example fixed block '" + b.name + "'");
    placed.push_back(b.id);
  }
  return cfg;
}

}  // namespace rlsa
