#include "rmtd/export.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

#include "rmtd/format.hpp"

namespace rmtd {

namespace {

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return quote(std::get<std::string>(c));
}

const char* cell_type(const Cell& c) {
  if (std::holds_alternative<double>(c)) return "real";
  if (std::holds_alternative<std::int64_t>(c)) return "integer";
  return "text";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

std::string file_stem(const StudyResult& r, const Table& t) { return r.study + "_" + t.name; }

}  // namespace

std::string csv_text(const Table& table, const StudyResult& result) {
  std::string s;
  for (const auto& c : table.columns) s += quote(c.name) + ',';
  s += "config_hash,seed,code_version\n";
  const std::string prov = hex64(result.config_hash) + ',' + std::to_string(result.seed) + ',' + quote(result.code_version);
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::logic_error("table " + table.name + ": row width differs from the header");
    }
    for (const auto& c : row) s += cell_text(c) + ',';
    s += prov + '\n';
  }
  return s;
}

std::string schema_text(const Table& table) {
  std::string s = "# column | type | description\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    const char* type = table.rows.empty() ? "number" : cell_type(table.rows.front()[i]);
    s += table.columns[i].name + " | " + type + " | " + table.columns[i].doc + '\n';
  }
  s += "config_hash | text | FNV-1a 64-bit hash of the canonical configuration, hexadecimal\n";
  s += "seed | integer | root seed of the run\n";
  s += "code_version | text | library version that produced the row\n";
  return s;
}

std::string manifest_text(const StudyResult& result, const ExperimentConfig& cfg) {
  std::string s = "# rmtd run manifest v1\n";
  s += serialize_config(cfg);
  s += "manifest.study = " + result.study + '\n';
  s += "manifest.config_hash = " + hex64(result.config_hash) + '\n';
  s += "manifest.seed = " + std::to_string(result.seed) + '\n';
  s += "manifest.code_version = " + result.code_version + '\n';
  std::string files;
  for (const auto& t : result.tables) files += (files.empty() ? "" : ", ") + file_stem(result, t) + ".csv";
  s += "manifest.files = " + files + '\n';
  for (const auto& w : result.warnings) s += "manifest.warning = " + w + '\n';
  return s;
}

std::vector<std::filesystem::path> export_study(const StudyResult& result, const ExperimentConfig& cfg,
                                                const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  for (const auto& t : result.tables) {
    const auto csv = dir / (file_stem(result, t) + ".csv");
    write_file(csv, csv_text(t, result));
    written.push_back(csv);
    const auto schema = dir / (file_stem(result, t) + ".schema.txt");
    write_file(schema, schema_text(t));
    written.push_back(schema);
  }
  const auto manifest = dir / (result.study + ".manifest");
  write_file(manifest, manifest_text(result, cfg));
  written.push_back(manifest);
  return written;
}

}  // namespace rmtd
