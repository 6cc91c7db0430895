#ifndef OPMINE_IO_HPP
#define OPMINE_IO_HPP

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "opmine/error.hpp"
#include "opmine/hash.hpp"

namespace opmine {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("MissingArtifact", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("IoError", "cannot write " + path);
  out << content;
}

inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("MissingArtifact", "cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return std::string(buf);
}

inline std::string file_fingerprint(const std::string& path) {
  return hex64(fnv1a64(read_file(path)));
}

// Audit sidecar: every artifact <out> gets <out>.meta.json recording the
// config hash, the seed, and the fingerprints of its inputs so a rerun can
// be checked byte for byte.
inline void write_sidecar(const std::string& out_path, std::uint64_t config_hash,
                          std::uint64_t seed,
                          const std::map<std::string, std::string>& input_fingerprints) {
  std::ostringstream ss;
  ss << "{\"config_hash\":\"" << hex64(config_hash) << "\",\"seed\":" << seed
     << ",\"inputs\":{";
  bool first = true;
  for (const auto& [name, fp] : input_fingerprints) {
    if (!first) ss << ",";
    first = false;
    ss << "\"" << name << "\":\"" << fp << "\"";
  }
  ss << "}}\n";
  write_file(out_path + ".meta.json", ss.str());
}

}  // namespace opmine

#endif  // OPMINE_IO_HPP
