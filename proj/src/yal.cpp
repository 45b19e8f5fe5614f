#include <algorithm>
#include <charconv>
#include <map>
#include <unordered_map>

#include "rlsa/bench_io.hpp"

namespace rlsa {
namespace {

struct Statement {
  std::vector<std::string> tokens;
  int line = 0;
};

// Splits YAL text into ';'-terminated statements, dropping /* */ comments.
std::vector<Statement> tokenize(std::string_view text) {
  std::vector<Statement> out;
  Statement current;
  std::string token;
  int line = 1;
  int token_line = 1;

  auto flush_token = [&] {
    if (token.empty()) return;
    if (current.tokens.empty()) current.line = token_line;
    current.tokens.push_back(std::move(token));
    token.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '*') {
      flush_token();
      const int comment_line = line;
      std::size_t end = text.find("*/", i + 2);
      if (end == std::string_view::npos) {
        throw ParseError("unterminated comment", comment_line);
      }
      line += static_cast<int>(
          std::count(text.begin() + i, text.begin() + end, '\n'));
      i = end + 1;
      continue;
    }
    if (c == '\n') {
      flush_token();
      ++line;
    } else if (c == ';') {
      flush_token();
      if (current.tokens.empty()) current.line = line;
      out.push_back(std::move(current));
      current = Statement{};
    } else if (c == ' ' || c == '\t' || c == '\r' || c == ',') {
      flush_token();
    } else {
      if (token.empty()) token_line = line;
      token.push_back(c);
    }
  }
  flush_token();
  if (!current.tokens.empty()) {
    throw ParseError("statement not terminated by ';'", current.line);
  }
  return out;
}

double to_number(const std::string& s, int line) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("expected a number, got '" + s + "'", line);
  }
  return v;
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

struct Module {
  std::string name;
  std::string type;
  int line = 0;
  bool has_dims = false;
  double width = 0.0;
  double height = 0.0;
  bool rectilinear = true;
  // NETWORK entries: (instance line, module name, signals).
  struct Instance {
    int line = 0;
    std::string module;
    std::vector<std::string> signals;
  };
  std::vector<Instance> network;
};

}  // namespace

ProblemInstance parse_yal(std::string_view text, std::string name) {
  const std::vector<Statement> statements = tokenize(text);

  std::vector<Module> modules;
  enum class Section { kNone, kIoList, kNetwork, kOther };
  bool in_module = false;
  Section section = Section::kNone;
  std::string other_end;

  for (const Statement& st : statements) {
    if (st.tokens.empty()) continue;
    const std::string kw = upper(st.tokens[0]);

    if (!in_module) {
      if (kw != "MODULE" || st.tokens.size() != 2) {
        throw ParseError("expected 'MODULE <name>;'", st.line);
      }
      Module mod;
      mod.name = st.tokens[1];
      mod.line = st.line;
      modules.push_back(std::move(mod));
      in_module = true;
      section = Section::kNone;
      continue;
    }

    Module& mod = modules.back();
    if (section == Section::kIoList) {
      if (kw == "ENDIOLIST") section = Section::kNone;
      continue;  // pin geometry is not used
    }
    if (section == Section::kNetwork) {
      if (kw == "ENDNETWORK") {
        section = Section::kNone;
      } else {
        if (st.tokens.size() < 2) {
          throw ParseError("network entry needs '<instance> <module> ...'",
                           st.line);
        }
        mod.network.push_back(
            {st.line, st.tokens[1],
             std::vector<std::string>(st.tokens.begin() + 2, st.tokens.end())});
      }
      continue;
    }
    if (section == Section::kOther) {
      if (kw == other_end) section = Section::kNone;
      continue;
    }

    if (kw == "ENDMODULE") {
      in_module = false;
    } else if (kw == "TYPE") {
      if (st.tokens.size() != 2) throw ParseError("expected 'TYPE <kind>;'", st.line);
      mod.type = upper(st.tokens[1]);
    } else if (kw == "DIMENSIONS") {
      const std::size_t count = st.tokens.size() - 1;
      if (count < 4 || count % 2 != 0) {
        throw ParseError("DIMENSIONS needs an even number (>= 4) of coordinates",
                         st.line);
      }
      std::vector<double> xs;
      std::vector<double> ys;
      for (std::size_t i = 1; i < st.tokens.size(); i += 2) {
        xs.push_back(to_number(st.tokens[i], st.line));
        ys.push_back(to_number(st.tokens[i + 1], st.line));
      }
      const auto [xmin, xmax] = std::minmax_element(xs.begin(), xs.end());
      const auto [ymin, ymax] = std::minmax_element(ys.begin(), ys.end());
      mod.width = *xmax - *xmin;
      mod.height = *ymax - *ymin;
      mod.has_dims = true;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const std::size_t j = (i + 1) % xs.size();
        if (xs[i] != xs[j] && ys[i] != ys[j]) mod.rectilinear = false;
      }
      if (xs.size() != 4) mod.rectilinear = false;
    } else if (kw == "IOLIST") {
      section = Section::kIoList;
    } else if (kw == "NETWORK") {
      section = Section::kNetwork;
    } else if (kw == "PLACEMENT" || kw == "CRITICALNETS") {
      section = Section::kOther;
      other_end = "END" + kw;
    } else if (kw == "MODULE") {
      throw ParseError("MODULE '" + mod.name + "' (line " +
                           std::to_string(mod.line) + ") is missing ENDMODULE",
                       st.line);
    }
    // Other single statements (CURRENT, VOLTAGE, ...) are ignored.
  }
  if (in_module) {
    throw ParseError("MODULE '" + modules.back().name + "' is missing ENDMODULE",
                     modules.back().line);
  }

  ProblemInstance inst;
  inst.name = std::move(name);
  inst.weights = {1.0, 0.0};

  std::unordered_map<std::string, BlockId> block_of_module;
  const Module* parent = nullptr;
  for (const Module& mod : modules) {
    if (mod.type == "PARENT") {
      if (parent != nullptr) {
        throw ParseError("more than one PARENT module", mod.line);
      }
      parent = &mod;
      continue;
    }
    if (!mod.has_dims) {
      throw ParseError("module '" + mod.name + "' has no DIMENSIONS", mod.line);
    }
    if (!(mod.width > 0.0) || !(mod.height > 0.0)) {
      throw ParseError("module '" + mod.name + "' has a degenerate outline",
                       mod.line);
    }
    if (block_of_module.count(mod.name)) {
      throw ParseError("duplicate module '" + mod.name + "'", mod.line);
    }
    const BlockId id = inst.num_blocks();
    block_of_module[mod.name] = id;
    inst.blocks.push_back(
        {id, mod.name, mod.width, mod.height, BlockKind::kFree, std::nullopt});
    if (!mod.rectilinear) {
      inst.notes.push_back("warning: module '" + mod.name +
                           "' is not a rectangle; using its bounding box");
    }
  }
  if (inst.blocks.empty()) {
    throw ParseError("no block modules found", 1);
  }

  if (parent == nullptr) {
    inst.notes.push_back("no PARENT module; net list is empty");
    return inst;
  }

  // signal -> distinct member blocks, both in order of first appearance
  std::vector<std::string> signal_order;
  std::map<std::string, std::vector<BlockId>> members;
  for (const Module::Instance& entry : parent->network) {
    auto it = block_of_module.find(entry.module);
    if (it == block_of_module.end()) {
      throw ParseError("network references unknown module '" + entry.module +
                           "'",
                       entry.line);
    }
    for (const std::string& sig : entry.signals) {
      auto [slot, inserted] = members.try_emplace(sig);
      if (inserted) signal_order.push_back(sig);
      if (std::find(slot->second.begin(), slot->second.end(), it->second) ==
          slot->second.end()) {
        slot->second.push_back(it->second);
      }
    }
  }
  int multi = 0;
  for (const std::string& sig : signal_order) {
    const std::vector<BlockId>& m = members[sig];
    if (m.size() > 2) ++multi;
    for (std::size_t k = 1; k < m.size(); ++k) {
      inst.nets.push_back({static_cast<int>(inst.nets.size()), {m[k - 1], m[k]}});
    }
  }
  inst.notes.push_back(std::to_string(signal_order.size()) + " signals, " +
                       std::to_string(multi) +
                       " with more than two blocks; chained into " +
                       std::to_string(inst.nets.size()) + " two-block edges");
  return inst;
}

ProblemInstance load_yal(const std::filesystem::path& path) {
  return parse_yal(read_text_file(path), path.stem().string());
}

}  // namespace rlsa
