#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rlsa/cost.hpp"
#include "rlsa/model.hpp"
#include "rlsa/packer.hpp"

namespace rlsa {

// ---------------------------------------------------------------------------
// Benchmarks

// n*n unit blocks on a grid netlist: block i connects to i+1 (same row only)
// and to i+n. Wirelength-only cost.
ProblemInstance gen_lattice(int n);

// MCNC YAL block format (MODULE / TYPE / DIMENSIONS / IOLIST / NETWORK /
// ENDMODULE, C-style comments). Each non-parent module becomes a free block
// sized by the bounding box of its outline; the parent's NETWORK becomes
// 2-member edges chaining the blocks of each signal in declaration order.
// Area-only cost. Throws ParseError with a 1-based line number.
ProblemInstance parse_yal(std::string_view text, std::string name = "yal");
ProblemInstance load_yal(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Fixed-block configuration

struct FixedEntry {
  std::string name;
  double x = 0.0;
  double y = 0.0;
  bool operator==(const FixedEntry&) const = default;
};

struct FixedConfig {
  std::vector<FixedEntry> entries;
};

// Returns a copy with the named blocks fixed at the given origins. Throws
// ConfigError for unknown or duplicate names, overlapping fixed rectangles,
// or a configuration that would leave no free block.
ProblemInstance apply_fixed(const ProblemInstance& instance,
                            const FixedConfig& cfg);

// JSON array of {"name", "x", "y"} objects.
FixedConfig parse_fixed_config(std::string_view json_text);
FixedConfig load_fixed_config(const std::filesystem::path& path);
void save_fixed_config(const FixedConfig& cfg, const std::filesystem::path& path);

// Not derived from any published coordinates: fixes the `count` largest free
// blocks at seeded random, mutually non-overlapping spots inside the square
// of side sqrt(total block area) at the origin. That square lies inside the
// region of any packing, so the fixed blocks never set the chip outline on
// their own.
FixedConfig example_fixed_config(const ProblemInstance& instance, int count = 3,
                                 std::uint64_t seed = 7);

// ---------------------------------------------------------------------------
// Run records

enum class InitMethod { kRlInit, kRandomInit };

std::string to_string(InitMethod m);
InitMethod parse_init_method(std::string_view s);

struct TracePoint {
  int step = 0;
  double current = 0.0;
  double best = 0.0;
  bool operator==(const TracePoint&) const = default;
};

struct RunRecord {
  std::string instance;
  InitMethod method = InitMethod::kRandomInit;
  std::uint64_t seed = 0;
  std::uint64_t sa_seed = 0;
  int sa_steps = 0;
  CostBreakdown initial;
  CostBreakdown final_cost;
  SequencePair best;
  std::vector<TracePoint> trace;
  double seconds = 0.0;
  // Multiplier from raw cost units to report units (1e-6 turns um^2 into
  // mm^2 for area-only instances).
  double report_scale = 1.0;

  bool operator==(const RunRecord&) const = default;
};

struct SummaryRow {
  std::string instance;
  InitMethod method = InitMethod::kRandomInit;
  int n_runs = 0;
  double mean_cost = 0.0;  // report units
  double std_cost = 0.0;   // sample std; 0 for a single run
  double mean_seconds = 0.0;
};

// One row per (instance, method) in order of first appearance.
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);

// Writes `<base>.csv` (summary) and `<base>.json` (all records). Throws
// IoError naming the offending path.
void write_results(const std::vector<RunRecord>& records,
                   const std::filesystem::path& base);
std::vector<RunRecord> read_results(const std::filesystem::path& json_path);

std::string summary_csv(const std::vector<RunRecord>& records);
std::string records_json(const std::vector<RunRecord>& records);
std::vector<RunRecord> parse_records_json(std::string_view text);

// Sequence pairs as {"gamma_plus": [...], "gamma_minus": [...]}.
std::string sequence_pair_json(const SequencePair& sp);
SequencePair parse_sequence_pair_json(std::string_view text);

// ---------------------------------------------------------------------------
// Figures

// Block rectangles (fixed ones drawn distinctly), labels, the bounding box and
// a cost title, scaled into a 1000-unit canvas.
std::string svg_string(const ProblemInstance& instance, const Packing& p,
                       const Dimensions& dims, const std::string& subtitle = "");
void render_svg(const ProblemInstance& instance, const Packing& p,
                const std::filesystem::path& path,
                const std::string& subtitle = "");
void render_svg(const ProblemInstance& instance, const Packing& p,
                const Dimensions& dims, const std::filesystem::path& path,
                const std::string& subtitle = "");

// Shared by the writers above.
void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace rlsa
