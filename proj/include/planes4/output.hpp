#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace planes4 {

// 17 significant digits, enough to round-trip a double.
std::string format_real(double v);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row);
  // Cell-wise order; cells that both parse as numbers compare numerically.
  void sort_rows();
};

std::string sha256_hex(const std::string& data);

struct Manifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;  // resolved inputs
  std::string version;
  std::uint64_t seed = 0;
  std::string started;
  std::string finished;
  std::vector<std::string> outputs;

  // SHA-256 of the command, version, seed and sorted params; timestamps and output
  // paths are excluded so identical inputs give identical digests.
  std::string digest() const;
};

std::string utc_timestamp();

// First line "# config_digest=<digest>", then the header and the rows.
void write_csv(const std::string& path, const Table& table, const std::string& digest);
void write_manifest(const std::string& path, const Manifest& m);

// Indented key: value record; depth 0 lines are top-level keys.
struct RecordLine {
  int depth;
  std::string key;
  std::string value;
};
void write_record(const std::string& path, const std::vector<RecordLine>& lines);

}  // namespace planes4
