#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "stratrelease/learner.hpp"

namespace stratrelease {

inline constexpr const char* kToolVersion = "0.1.0";

// 12 significant digits, '.' decimal point; the CSV dialect used everywhere.
std::string format_sig(double v);

std::string join_indices(const std::vector<std::size_t>& idx, char sep = ';');

// Columns: candidate_id,released_indices,i,l,j,cutoff,utility,rejected_reason
std::string candidates_csv(const ReleaseReport& report);

std::string sweep_csv(const std::string& param,
                      const std::vector<std::pair<double, double>>& points);

// Self-contained line plot with axes and labels, no external assets.
std::string sweep_svg(const std::string& param,
                      const std::vector<std::pair<double, double>>& points);

std::string samples_csv(const std::vector<double>& xs);

// FNV-1a 64-bit content digest, hex-encoded.
std::string fnv1a_hex(const std::string& bytes);

struct RunManifest {
  std::string command_line;
  std::string instance_digest;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  double wall_clock_sec = 0.0;
  std::vector<std::pair<std::string, std::string>> outputs;  // path, digest
};

nlohmann::json manifest_to_json(const RunManifest& m);

nlohmann::json report_to_json(const ReleaseReport& report);
nlohmann::json best_response_to_json(const struct BestResponse& br, bool two_d);

void write_file(const std::string& path, const std::string& content);

}  // namespace stratrelease
