#pragma once

// Result files.  Numbers are printed with 17 significant digits so that a
// rerun with the same config and seed gives identical bytes; data files
// carry no timestamps.  Every file is written as name.partial and renamed
// when complete.

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "homoclinic/errors.hpp"

namespace homoclinic {

using Json = nlohmann::ordered_json;

[[nodiscard]] inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline void dump_json(const Json& j, std::string& out, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  const char* colon = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += std::string(",") + nl;
        first = false;
        out += pad + Json(it.key()).dump() + colon;
        dump_json(it.value(), out, indent, depth + 1);
      }
      out += nl + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      out += nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += std::string(",") + nl;
        out += pad;
        dump_json(j[i], out, indent, depth + 1);
      }
      out += nl + close_pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      // JSON has no inf/nan; they are written as strings.
      out += std::isfinite(v) ? format_number(v) : "\"" + format_number(v) + "\"";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace detail

/// JSON text with 17-digit floats; indent 0 gives the compact form.
[[nodiscard]] inline std::string to_text(const Json& j, int indent = 2) {
  std::string out;
  detail::dump_json(j, out, indent, 0);
  if (indent > 0) out += "\n";
  return out;
}

/// Recursively key-sorted copy, used for hashing.
[[nodiscard]] inline Json canonical(const Json& j) {
  if (j.is_object()) {
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    std::sort(keys.begin(), keys.end());
    Json out = Json::object();
    for (const auto& k : keys) out[k] = canonical(j.at(k));
    return out;
  }
  if (j.is_array()) {
    Json out = Json::array();
    for (const auto& v : j) out.push_back(canonical(v));
    return out;
  }
  return j;
}

/// SHA-1 of "blob <size>\0<content>", as git computes object ids.
[[nodiscard]] inline std::string git_blob_sha1(const std::string& content) {
  const std::string data = "blob " + std::to_string(content.size()) + std::string(1, '\0') + content;
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha1(), nullptr) != 1) throw IoError("sha1 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

[[nodiscard]] inline std::string content_hash(const Json& config) { return git_blob_sha1(to_text(canonical(config), 0)); }

/// Comma-separated table; floats through format_number.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  template <typename... Ts>
  void row(const Ts&... cells) {
    std::vector<std::string> r;
    (r.push_back(cell(cells)), ...);
    if (r.size() != header_.size()) throw DomainError("csv: row width differs from header");
    rows_.push_back(std::move(r));
  }

  [[nodiscard]] std::string text() const {
    std::string out = join(header_);
    for (const auto& r : rows_) out += join(r);
    return out;
  }

  [[nodiscard]] bool empty() const { return rows_.empty(); }

 private:
  static std::string cell(double v) { return format_number(v); }
  static std::string cell(float v) { return format_number(v); }
  static std::string cell(bool v) { return v ? "1" : "0"; }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const char* v) { return v; }
  template <typename T>
  static std::string cell(const T& v) {
    return std::to_string(v);
  }
  static std::string join(const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
    return s + "\n";
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Whitespace-delimited columns with a '#' header line, for plotting.
class PlotTable {
 public:
  explicit PlotTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void row(const std::vector<double>& values) {
    if (values.size() != columns_.size()) throw DomainError("plot: row width differs from header");
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) s += (i ? " " : "") + format_number(values[i]);
    body_ += s + "\n";
  }
  /// Blank line between blocks (one block per eps, for instance).
  void block(const std::string& label) { body_ += "\n# " + label + "\n"; }

  [[nodiscard]] std::string text() const {
    std::string h = "#";
    for (const auto& c : columns_) h += " " + c;
    return h + "\n" + body_;
  }

 private:
  std::vector<std::string> columns_;
  std::string body_;
};

/// Output directory with an inventory of everything written.
class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path root) : root_(std::move(root)) {
    std::error_code ec;
    std::filesystem::create_directories(root_, ec);
    if (ec) throw IoError("cannot create output directory " + root_.string() + ": " + ec.message());
  }

  void write(const std::string& name, const std::string& content) {
    const auto final_path = root_ / name;
    auto partial = final_path;
    partial += ".partial";
    {
      std::ofstream os(partial, std::ios::binary | std::ios::trunc);
      if (!os) throw IoError("cannot open " + partial.string());
      os << content;
      os.flush();
      if (!os) throw IoError("write failed: " + partial.string());
    }
    std::error_code ec;
    std::filesystem::rename(partial, final_path, ec);
    if (ec) throw IoError("rename failed for " + final_path.string() + ": " + ec.message());
    files_.push_back(name);
  }

  void write_json(const std::string& name, const Json& j) { write(name, to_text(j)); }

  [[nodiscard]] const std::filesystem::path& root() const { return root_; }
  [[nodiscard]] const std::vector<std::string>& files() const { return files_; }

 private:
  std::filesystem::path root_;
  std::vector<std::string> files_;
};

}  // namespace homoclinic
