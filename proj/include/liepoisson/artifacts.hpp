#pragma once

// Artifact writing: atomic temp-and-rename file output, the meta header
// carried by every artifact, and CSV formatting (17 significant digits,
// '.' decimal, LF endings).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "liepoisson/errors.hpp"
#include "liepoisson/version.hpp"

namespace lp::io {

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Writes content to path via a sibling temp file and rename.
inline void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error("IOError", "cannot open '" + tmp.string() + "' for writing");
    out << content;
    if (!out) throw Error("IOError", "short write to '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

/// Meta block recorded on every artifact: tool version, rng seed, and the
/// echoed configuration. No timestamps: identical configs must produce
/// byte-identical artifacts.
inline nlohmann::json meta_block(const std::string& command, std::uint64_t rng_seed,
                                 const nlohmann::json& config) {
  return {{"tool", "lpcre"},
          {"version", kVersion},
          {"command", command},
          {"rng_seed", rng_seed},
          {"config", config}};
}

struct CsvWriter {
  std::string out;

  void meta(const nlohmann::json& meta) {
    for (auto it = meta.begin(); it != meta.end(); ++it)
      out += "# " + it.key() + ": " + it.value().dump() + "\n";
  }
  void header(const std::vector<std::string>& cols) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) out += ',';
      out += cols[i];
    }
    out += '\n';
  }
  void row(const std::vector<std::string>& cells) { header(cells); }
  void numeric_row(const std::vector<double>& vals) {
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (i) out += ',';
      out += format_double(vals[i]);
    }
    out += '\n';
  }
};

} // namespace lp::io
