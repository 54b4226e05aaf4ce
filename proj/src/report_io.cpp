#include "stratrelease/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "stratrelease/best_response.hpp"
#include "stratrelease/errors.hpp"

namespace stratrelease {

std::string format_sig(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string join_indices(const std::vector<std::size_t>& idx, char sep) {
  std::string out;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) out.push_back(sep);
    out += std::to_string(idx[i]);
  }
  return out;
}

std::string candidates_csv(const ReleaseReport& report) {
  std::string out = "candidate_id,released_indices,i,l,j,cutoff,utility,rejected_reason\n";
  for (const auto& row : report.candidates) {
    out += std::to_string(row.id);
    out += ',';
    out += join_indices(row.released);
    out += ',';
    if (row.i) out += std::to_string(*row.i);
    out += ',';
    if (row.l) out += std::to_string(*row.l);
    out += ',';
    if (row.j) out += std::to_string(*row.j);
    out += ',';
    out += format_sig(row.cutoff);
    out += ',';
    if (!row.rejected()) out += format_sig(row.utility);
    out += ',';
    out += row.rejected_reason;
    out += '\n';
  }
  return out;
}

std::string sweep_csv(const std::string& param,
                      const std::vector<std::pair<double, double>>& points) {
  std::string out = param + ",utility\n";
  for (const auto& [x, u] : points) {
    out += format_sig(x);
    out += ',';
    out += format_sig(u);
    out += '\n';
  }
  return out;
}

std::string sweep_svg(const std::string& param,
                      const std::vector<std::pair<double, double>>& points) {
  const int width = 800, height = 500;
  const int ml = 70, mr = 20, mt = 20, mb = 50;
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (!points.empty()) {
    xmin = xmax = points.front().first;
    ymin = ymax = points.front().second;
    for (const auto& [x, y] : points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (xmax - xmin < 1e-12) xmax = xmin + 1.0;
  if (ymax - ymin < 1e-12) ymax = ymin + 1.0;
  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
  auto py = [&](double y) { return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
      << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
      << height - mb << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    double x = xmin + (xmax - xmin) * i / 5.0;
    double y = ymin + (ymax - ymin) * i / 5.0;
    svg << "<line x1=\"" << px(x) << "\" y1=\"" << height - mb << "\" x2=\"" << px(x)
        << "\" y2=\"" << height - mb + 5 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << px(x) << "\" y=\"" << height - mb + 20
        << "\" font-size=\"12\" text-anchor=\"middle\">" << format_sig(x) << "</text>\n";
    svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(y) << "\" x2=\"" << ml << "\" y2=\""
        << py(y) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << ml - 8 << "\" y=\"" << py(y) + 4
        << "\" font-size=\"12\" text-anchor=\"end\">" << format_sig(y) << "</text>\n";
  }
  svg << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 10
      << "\" font-size=\"14\" text-anchor=\"middle\">" << param << "</text>\n";
  svg << "<text x=\"15\" y=\"" << (mt + height - mb) / 2
      << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
      << (mt + height - mb) / 2 << ")\">utility</text>\n";
  if (!points.empty()) {
    svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : points) svg << px(x) << "," << py(y) << " ";
    svg << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string samples_csv(const std::vector<double>& xs) {
  std::string out = "x\n";
  for (double x : xs) {
    out += format_sig(x);
    out += '\n';
  }
  return out;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

nlohmann::json manifest_to_json(const RunManifest& m) {
  nlohmann::json j;
  j["command_line"] = m.command_line;
  j["instance_digest"] = m.instance_digest;
  j["seed"] = m.seed;
  j["tool_version"] = m.tool_version;
  j["rng"] = kSampleRngId;
  j["wall_clock_sec"] = m.wall_clock_sec;
  nlohmann::json outputs = nlohmann::json::array();
  for (const auto& [path, digest] : m.outputs)
    outputs.push_back({{"path", path}, {"digest", digest}});
  j["outputs"] = outputs;
  return j;
}

nlohmann::json report_to_json(const ReleaseReport& report) {
  nlohmann::json j;
  j["released"] = report.released;
  if (report.released_interval)
    j["released_interval"] = {report.released_interval->first, report.released_interval->second};
  j["cutoff"] = report.cutoff;
  j["utility"] = report.utility;
  j["fpr"] = report.fpr;
  j["fnr"] = report.fnr;
  j["candidates_examined"] = report.candidates.size();
  return j;
}

nlohmann::json best_response_to_json(const BestResponse& br, bool two_d) {
  nlohmann::json j;
  if (two_d)
    j["target"] = {br.target.x, br.target.y};
  else
    j["target"] = br.target.x;
  j["utility"] = br.utility;
  j["cost"] = br.cost;
  j["passed"] = br.passed;
  j["oracle_calls"] = br.oracle_calls;
  return j;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << content;
}

}  // namespace stratrelease
