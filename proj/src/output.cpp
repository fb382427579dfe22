#include "planes4/output.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <openssl/evp.h>

#include "planes4/errors.hpp"

namespace planes4 {

namespace {

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "cannot open " + path + " for writing");
  return out;
}

}  // namespace

std::string format_real(double v) { return fmt::format("{:.17g}", v); }

void Table::add(std::vector<std::string> row) {
  require(row.size() == columns.size(), "table row width does not match the header");
  rows.push_back(std::move(row));
}

void Table::sort_rows() {
  auto less = [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      double x, y;
      if (parse_number(a[i], x) && parse_number(b[i], y)) {
        if (x != y) return x < y;
      } else if (a[i] != b[i]) {
        return a[i] < b[i];
      }
    }
    return false;
  };
  std::stable_sort(rows.begin(), rows.end(), less);
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw NumericalError("SHA-256 digest failed");
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

std::string Manifest::digest() const {
  auto sorted = params;
  std::sort(sorted.begin(), sorted.end());
  std::string canon = "command=" + command + "\nversion=" + version + "\nseed=" + std::to_string(seed) + "\n";
  for (const auto& [k, v] : sorted) canon += k + "=" + v + "\n";
  return sha256_hex(canon);
}

std::string utc_timestamp() {
  const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", now);
}

void write_csv(const std::string& path, const Table& table, const std::string& digest) {
  auto out = open_for_write(path);
  out << "# config_digest=" << digest << '\n';
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(table.columns);
  for (const auto& r : table.rows) line(r);
  require(out.good(), "failed writing " + path);
}

void write_manifest(const std::string& path, const Manifest& m) {
  auto out = open_for_write(path);
  out << "command=" << m.command << '\n'
      << "config_digest=" << m.digest() << '\n'
      << "version=" << m.version << '\n'
      << "seed=" << m.seed << '\n'
      << "started=" << m.started << '\n'
      << "finished=" << m.finished << '\n';
  for (const auto& [k, v] : m.params) out << "param." << k << '=' << v << '\n';
  for (const auto& o : m.outputs) out << "output=" << o << '\n';
  require(out.good(), "failed writing " + path);
}

void write_record(const std::string& path, const std::vector<RecordLine>& lines) {
  auto out = open_for_write(path);
  for (const auto& l : lines) {
    out << std::string(static_cast<std::size_t>(2 * l.depth), ' ') << l.key << ':';
    if (!l.value.empty()) out << ' ' << l.value;
    out << '\n';
  }
  require(out.good(), "failed writing " + path);
}

}  // namespace planes4
