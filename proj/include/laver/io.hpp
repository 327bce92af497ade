#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "laver/braid.hpp"
#include "laver/cochain.hpp"
#include "laver/errors.hpp"
#include "laver/poset.hpp"
#include "laver/table.hpp"

namespace laver {

using json = nlohmann::ordered_json;

namespace detail {

inline void put_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 24) & 0xff));
}

inline std::uint32_t get_u32(std::string_view bytes, std::size_t at) {
  return static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[at])) |
         static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[at + 1])) << 8 |
         static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[at + 2])) << 16 |
         static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[at + 3])) << 24;
}

}  // namespace detail

/// Cache encoding of a table: magic "LAVR", version byte 0x01, one byte n,
/// then per row ascending a 32-bit little-endian period followed by that
/// many 32-bit little-endian stored values.  No checksum — the content is
/// re-verifiable against the defining laws.
inline std::string table_bytes(const LaverTable& t) {
  std::string out = "LAVR";
  out.push_back('\x01');
  out.push_back(static_cast<char>(t.n()));
  for (LaverTable::value_type p = 1; p <= t.size(); ++p) {
    const auto row = t.stored_row(p);
    detail::put_u32(out, static_cast<std::uint32_t>(row.size()));
    for (auto v : row) detail::put_u32(out, v);
  }
  return out;
}

inline LaverTable table_from_bytes(std::string_view bytes) {
  if (bytes.size() < 6) throw format_error("table file truncated before the header ends");
  if (bytes.substr(0, 4) != "LAVR") throw format_error("bad magic in table file");
  if (bytes[4] != '\x01') throw format_error("unsupported table file version");
  const unsigned n = static_cast<unsigned char>(bytes[5]);
  if (n > 16) throw format_error("table order out of range in table file");
  const std::uint64_t N = std::uint64_t{1} << n;

  std::vector<std::vector<LaverTable::value_type>> rows;
  rows.reserve(N);
  std::size_t at = 6;
  for (std::uint64_t p = 1; p <= N; ++p) {
    if (bytes.size() - at < 4) throw format_error("table file truncated in row headers");
    const std::uint32_t per = detail::get_u32(bytes, at);
    at += 4;
    if (per == 0 || per > N) throw format_error("row period out of range in table file");
    if ((bytes.size() - at) / 4 < per)
      throw format_error("table file truncated in row values");
    std::vector<LaverTable::value_type> row(per);
    for (std::uint32_t i = 0; i < per; ++i, at += 4) row[i] = detail::get_u32(bytes, at);
    rows.push_back(std::move(row));
  }
  if (at != bytes.size()) throw format_error("trailing bytes after the table data");
  return LaverTable::from_stored_rows(n, rows);
}

/// Atomic write: the bytes land in a sibling temp file first and are
/// renamed over the target.
inline void write_table(const LaverTable& t, const std::filesystem::path& path) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    const std::string bytes = table_bytes(t);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw std::runtime_error("write_table: cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline LaverTable read_table(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("read_table: cannot open " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  return table_from_bytes(buf.str());
}

inline json table_json(const LaverTable& t) {
  json j;
  j["n"] = t.n();
  auto periods = json::array();
  auto rows = json::array();
  for (LaverTable::value_type p = 1; p <= t.size(); ++p) {
    periods.push_back(t.period(p));
    const auto row = t.stored_row(p);
    rows.push_back(std::vector<LaverTable::value_type>(row.begin(), row.end()));
  }
  j["periods"] = std::move(periods);
  j["rows"] = std::move(rows);
  return j;
}

inline json cochain_json(const Cochain& c) {
  json j;
  j["n"] = c.level();
  j["k"] = c.arity();
  j["values"] = c.values();
  return j;
}

inline json trace_json(const ColoringTrace& trace) {
  json j;
  j["initial"] = trace.initial;
  auto crossings = json::array();
  for (const auto& rec : trace.records) {
    json r;
    r["letter"] = rec.letter;
    r["lower"] = rec.lower;
    r["upper"] = rec.upper;
    if (rec.region) r["region"] = *rec.region;
    crossings.push_back(std::move(r));
  }
  j["crossings"] = std::move(crossings);
  j["final"] = trace.finals;
  return j;
}

/// Matrix form of a 2-cochain: header row of column indices, then one row
/// per first argument.
inline std::string cochain_csv(const Cochain& c) {
  if (c.arity() != 2) throw std::invalid_argument("cochain_csv: arity 2 only");
  const std::size_t N = c.table_size();
  std::ostringstream out;
  for (std::size_t q = 1; q <= N; ++q) out << ',' << q;
  out << '\n';
  for (std::size_t x = 1; x <= N; ++x) {
    out << x;
    for (std::size_t q = 1; q <= N; ++q) out << ',' << c[(x - 1) * N + (q - 1)];
    out << '\n';
  }
  return out.str();
}

/// Hasse diagram of the divisibility order, one edge line per cover.
inline std::string poset_dot(const DivisibilityPoset& poset) {
  std::ostringstream out;
  out << "digraph divisibility {\n";
  for (LaverTable::value_type q = 1; q <= poset.size(); ++q) out << "  " << q << ";\n";
  for (const auto& [a, b] : poset.hasse()) out << "  " << a << " -> " << b << ";\n";
  out << "}\n";
  return out.str();
}

/// Plain-text multiplication table, one row per p; `descending` flips the
/// row order to ease visual diffing against the usual printed layout.
inline std::string table_text(const LaverTable& t, bool descending = false) {
  const auto N = t.size();
  const int w = static_cast<int>(std::to_string(N).size());
  const int lw = std::max(3, w);
  std::ostringstream out;
  out << std::setw(lw) << "p\\q" << " |";
  for (LaverTable::value_type q = 1; q <= N; ++q) out << ' ' << std::setw(w) << q;
  out << '\n' << std::string(lw + 1, '-') << '+' << std::string((w + 1) * N, '-') << '\n';
  for (LaverTable::value_type i = 1; i <= N; ++i) {
    const LaverTable::value_type p = descending ? N + 1 - i : i;
    out << std::setw(lw) << p << " |";
    for (LaverTable::value_type q = 1; q <= N; ++q)
      out << ' ' << std::setw(w) << t.apply(p, q);
    out << '\n';
  }
  return out.str();
}

}  // namespace laver
