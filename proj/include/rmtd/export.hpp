#pragma once

// CSV export. For each table of a study:
//   <study>_<table>.csv         header row, then data rows; provenance columns
//                               config_hash, seed and code_version close every row
//   <study>_<table>.schema.txt  one line per column: name, type, description
// plus <study>.manifest: the canonical configuration followed by
// manifest.* provenance keys. See docs/output.md.

#include <filesystem>
#include <string>
#include <vector>

#include "rmtd/config.hpp"
#include "rmtd/experiments.hpp"

namespace rmtd {

std::string csv_text(const Table& table, const StudyResult& result);
std::string schema_text(const Table& table);
std::string manifest_text(const StudyResult& result, const ExperimentConfig& cfg);

// Creates the directory if needed. Returns the written paths.
// Throws IoError naming the offending path.
std::vector<std::filesystem::path> export_study(const StudyResult& result, const ExperimentConfig& cfg,
                                                const std::filesystem::path& dir);

}  // namespace rmtd
