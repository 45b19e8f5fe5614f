#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "rlsa/bench_io.hpp"

namespace rlsa {

using nlohmann::json;

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string to_string(InitMethod m) {
  return m == InitMethod::kRlInit ? "rl_init" : "random_init";
}

InitMethod parse_init_method(std::string_view s) {
  if (s == "rl_init") return InitMethod::kRlInit;
  if (s == "random_init") return InitMethod::kRandomInit;
  throw InvalidArgument("unknown init method '" + std::string(s) + "'");
}

namespace {

json to_json(const CostBreakdown& c) {
  return {{"area", c.area}, {"wirelength", c.wirelength}, {"total", c.total}};
}

CostBreakdown cost_from_json(const json& j) {
  return {j.at("area").get<double>(), j.at("wirelength").get<double>(),
          j.at("total").get<double>()};
}

json to_json(const SequencePair& sp) {
  return {{"gamma_plus", sp.gamma_plus}, {"gamma_minus", sp.gamma_minus}};
}

SequencePair sp_from_json(const json& j) {
  return {j.at("gamma_plus").get<std::vector<BlockId>>(),
          j.at("gamma_minus").get<std::vector<BlockId>>()};
}

json to_json(const RunRecord& r) {
  json trace = json::array();
  for (const TracePoint& t : r.trace) trace.push_back({t.step, t.current, t.best});
  return {{"instance", r.instance},
          {"method", to_string(r.method)},
          {"seed", r.seed},
          {"sa_seed", r.sa_seed},
          {"sa_steps", r.sa_steps},
          {"initial", to_json(r.initial)},
          {"final", to_json(r.final_cost)},
          {"best", to_json(r.best)},
          {"trace", trace},
          {"seconds", r.seconds},
          {"report_scale", r.report_scale}};
}

RunRecord record_from_json(const json& j) {
  RunRecord r;
  r.instance = j.at("instance").get<std::string>();
  r.method = parse_init_method(j.at("method").get<std::string>());
  r.seed = j.at("seed").get<std::uint64_t>();
  r.sa_seed = j.at("sa_seed").get<std::uint64_t>();
  r.sa_steps = j.at("sa_steps").get<int>();
  r.initial = cost_from_json(j.at("initial"));
  r.final_cost = cost_from_json(j.at("final"));
  r.best = sp_from_json(j.at("best"));
  for (const json& t : j.at("trace")) {
    r.trace.push_back(
        {t.at(0).get<int>(), t.at(1).get<double>(), t.at(2).get<double>()});
  }
  r.seconds = j.at("seconds").get<double>();
  r.report_scale = j.value("report_scale", 1.0);
  return r;
}

}  // namespace

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
  std::vector<SummaryRow> rows;
  std::vector<std::vector<double>> costs;
  for (const RunRecord& r : records) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](const SummaryRow& s) {
      return s.instance == r.instance && s.method == r.method;
    });
    if (it == rows.end()) {
      rows.push_back({r.instance, r.method});
      costs.emplace_back();
      it = rows.end() - 1;
    }
    const auto k = static_cast<std::size_t>(it - rows.begin());
    costs[k].push_back(r.final_cost.total * r.report_scale);
    it->n_runs += 1;
    it->mean_seconds += r.seconds;
  }
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& c = costs[k];
    const double n = static_cast<double>(c.size());
    double mean = 0.0;
    for (double v : c) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : c) ss += (v - mean) * (v - mean);
    rows[k].mean_cost = mean;
    rows[k].std_cost = c.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    rows[k].mean_seconds /= n;
  }
  return rows;
}

std::string summary_csv(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  out << "instance,method,n_runs,mean_cost,std_cost,mean_seconds\n";
  out << std::setprecision(10);
  for (const SummaryRow& row : summarize(records)) {
    out << row.instance << ',' << to_string(row.method) << ',' << row.n_runs
        << ',' << row.mean_cost << ',' << row.std_cost << ','
        << row.mean_seconds << '\n';
  }
  return out.str();
}

std::string records_json(const std::vector<RunRecord>& records) {
  json doc = json::array();
  for (const RunRecord& r : records) doc.push_back(to_json(r));
  return doc.dump(1) + "\n";
}

std::vector<RunRecord> parse_records_json(std::string_view text) {
  std::vector<RunRecord> out;
  try {
    for (const json& j : json::parse(text)) out.push_back(record_from_json(j));
  } catch (const json::exception& err) {
    throw InvalidArgument(std::string("run records: ") + err.what());
  }
  return out;
}

void write_results(const std::vector<RunRecord>& records,
                   const std::filesystem::path& base) {
  std::filesystem::path csv = base;
  csv += ".csv";
  std::filesystem::path js = base;
  js += ".json";
  write_text_file(csv, summary_csv(records));
  write_text_file(js, records_json(records));
}

std::vector<RunRecord> read_results(const std::filesystem::path& json_path) {
  return parse_records_json(read_text_file(json_path));
}

std::string sequence_pair_json(const SequencePair& sp) {
  return to_json(sp).dump() + "\n";
}

SequencePair parse_sequence_pair_json(std::string_view text) {
  try {
    return sp_from_json(json::parse(text));
  } catch (const json::exception& err) {
    throw InvalidArgument(std::string("sequence pair: ") + err.what());
  }
}

}  // namespace rlsa
