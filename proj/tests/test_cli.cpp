#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

const std::string kCli = STRATRELEASE_CLI_PATH;

struct CommandResult {
  int exit_code = -1;
  std::string out;
};

CommandResult run(const std::string& args) {
  std::string cmd = kCli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CommandResult result;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) result.out.append(buf, n);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tmp(const std::string& name) { return "cli_tmp_" + name; }

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("reproduce targets exit zero and print pass tables") {
  for (const char* target : {"table1", "example2", "claim-fpr"}) {
    CommandResult r = run(std::string("reproduce ") + target);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("pass") != std::string::npos);
  }
  CHECK(run("reproduce subset-sum --a 1,2").exit_code == 0);
  CHECK(run("reproduce nonsense").exit_code == 2);
}

TEST_CASE("gen then evaluate round trip") {
  std::string path = tmp("example2.json");
  CHECK(run("gen --kind example2 --out " + path).exit_code == 0);
  CommandResult r = run("evaluate --instance " + path + " --release 1");
  CHECK(r.exit_code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("utility").get<double>() == doctest::Approx(0.55).epsilon(1e-9));
  CHECK(doc.at("cutoff").get<double>() == doctest::Approx(1.0).epsilon(1e-9));

  CommandResult full = run("evaluate --instance " + path);
  auto doc2 = nlohmann::json::parse(full.out);
  CHECK(doc2.at("utility").get<double>() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("evaluate rejects releases without the deployed classifier") {
  std::string path = tmp("example2b.json");
  run("gen --kind example2 --out " + path);
  CHECK(run("evaluate --instance " + path + " --release 0").exit_code == 2);
}

TEST_CASE("best-response solvers agree through the CLI") {
  std::string path = tmp("rand1d.json");
  CHECK(run("gen --kind random-1d --n 6 --seed 3 --out " + path).exit_code == 0);
  auto scan = nlohmann::json::parse(
      run("best-response --instance " + path + " --agent 0.31 --solver scan").out);
  auto brute = nlohmann::json::parse(
      run("best-response --instance " + path + " --agent 0.31 --solver brute").out);
  CHECK(scan.at("target").get<double>() == brute.at("target").get<double>());
  CHECK(scan.at("utility").get<double>() ==
        doctest::Approx(brute.at("utility").get<double>()).epsilon(1e-9));
  CHECK(brute.at("oracle_calls").get<long long>() == (1LL << 6));
}

TEST_CASE("2-D best response and project run end to end") {
  std::string path = tmp("rand2d.json");
  CHECK(run("gen --kind random-2d --n 4 --seed 5 --out " + path).exit_code == 0);
  auto arr = nlohmann::json::parse(
      run("best-response --instance " + path + " --agent 0.1,0.2 --solver arrangement").out);
  auto brute = nlohmann::json::parse(
      run("best-response --instance " + path + " --agent 0.1,0.2 --solver brute").out);
  CHECK(arr.at("utility").get<double>() ==
        doctest::Approx(brute.at("utility").get<double>()).epsilon(1e-9));
  auto proj = nlohmann::json::parse(
      run("project --instance " + path + " --agent 0.1,0.2 --positive 0,1").out);
  CHECK(proj.contains("feasible"));
}

TEST_CASE("optimize emits a report, a candidate table and a manifest") {
  std::string path = tmp("opt_instance.json");
  run("gen --kind random-1d --n 5 --seed 11 --out " + path);
  std::string prefix = tmp("opt");
  CommandResult r = run("optimize --instance " + path +
                        " --objective accuracy --method brute --out-prefix " + prefix);
  CHECK(r.exit_code == 0);
  std::string csv = slurp(prefix + ".candidates.csv");
  CHECK(csv.rfind("candidate_id,released_indices,i,l,j,cutoff,utility,rejected_reason\n", 0) ==
        0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + (1 << 4));  // header + subsets
  auto manifest = nlohmann::json::parse(slurp(prefix + ".report.json.manifest.json"));
  CHECK(manifest.at("outputs").size() == 2);
  for (const auto& out : manifest.at("outputs")) {
    std::string digest = out.at("digest").get<std::string>();
    CHECK(digest.size() == 16);
  }

  CommandResult uniform = run("optimize --instance " + path +
                              " --objective accuracy --method uniform");
  auto ju = nlohmann::json::parse(uniform.out);
  auto jb = nlohmann::json::parse(r.out);
  CHECK(ju.at("utility").get<double>() ==
        doctest::Approx(jb.at("utility").get<double>()).epsilon(1e-9));
}

TEST_CASE("oversized brute force is a capability error") {
  std::string path = tmp("big.json");
  run("gen --kind random-1d --n 21 --seed 1 --out " + path);
  CHECK(run("optimize --instance " + path + " --method brute").exit_code == 4);
}

TEST_CASE("sample output is deterministic and seeded") {
  std::string path = tmp("sample_instance.json");
  run("gen --kind example2 --out " + path);
  std::string out1 = tmp("s1.csv"), out2 = tmp("s2.csv"), out3 = tmp("s3.csv");
  CHECK(run("sample --instance " + path + " --count 500 --seed 9 --out " + out1).exit_code == 0);
  CHECK(run("sample --instance " + path + " --count 500 --seed 9 --out " + out2).exit_code == 0);
  CHECK(run("sample --instance " + path + " --count 500 --seed 10 --out " + out3).exit_code == 0);
  CHECK(slurp(out1) == slurp(out2));
  CHECK(slurp(out1) != slurp(out3));
  CHECK(slurp(out1).rfind("x\n", 0) == 0);
}

TEST_CASE("sweep writes a deterministic CSV and an SVG plot") {
  // continuous prior instance written by hand
  std::string path = tmp("cont.json");
  {
    nlohmann::json doc;
    doc["domain"] = {{"lo", 0.0}, {"hi", 2.0}};
    doc["f"] = 0.4;
    doc["h"] = 0.4;
    doc["support"] = {0.4};
    doc["prior_weights"] = {1.0};
    doc["prior_interval"] = {{"a", 0.0}, {"b", 1.6}};
    doc["distribution"] = {{"atoms", nlohmann::json::array()},
                           {"uniform_pieces", {{0.0, 2.0, 1.0}}}};
    doc["cost"] = {{"kind", "abs1d"}, {"k", 1.0}};
    std::ofstream f(path);
    f << doc.dump(2) << "\n";
  }
  std::string p1 = tmp("sweep1"), p2 = tmp("sweep2");
  CHECK(run("sweep --instance " + path + " --param d --from 0.4 --to 1.6 --steps 24 "
            "--out-prefix " + p1).exit_code == 0);
  CHECK(run("sweep --instance " + path + " --param d --from 0.4 --to 1.6 --steps 24 "
            "--out-prefix " + p2).exit_code == 0);
  std::string csv = slurp(p1 + ".csv");
  CHECK(csv == slurp(p2 + ".csv"));
  CHECK(csv.rfind("d,utility\n", 0) == 0);
  std::string svg = slurp(p1 + ".svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("utility") != std::string::npos);

  // utility rises until d = f + 1, then the curve is flat at 1
  std::istringstream rows(csv);
  std::string line;
  std::getline(rows, line);
  double prev = -1.0, last = -1.0;
  bool monotone = true;
  while (std::getline(rows, line)) {
    auto comma = line.find(',');
    double u = std::stod(line.substr(comma + 1));
    if (u < prev - 1e-12) monotone = false;
    prev = u;
    last = u;
  }
  CHECK(monotone);
  CHECK(last == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("gen output parses back identically") {
  std::string p1 = tmp("g1.json"), p2 = tmp("g2.json");
  CHECK(run("gen --kind subset-sum --a 2,3,5 --out " + p1).exit_code == 0);
  CHECK(run("gen --kind subset-sum --a 2,3,5 --out " + p2).exit_code == 0);
  CHECK(slurp(p1) == slurp(p2));
}


TEST_CASE("optimizer output is identical across thread counts") {
  std::string path = tmp("threads.json");
  run("gen --kind random-1d --n 12 --seed 8 --out " + path);
  std::string cmd = kCli + " optimize --instance " + path + " --method brute --objective fnr";
  auto capture = [](const std::string& shell_cmd) {
    FILE* pipe = popen((shell_cmd + " 2>/dev/null").c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
    pclose(pipe);
    return out;
  };
  std::string s1 = capture("STRATRELEASE_THREADS=1 " + cmd);
  std::string s4 = capture("STRATRELEASE_THREADS=4 " + cmd);
  CHECK(!s1.empty());
  CHECK(s1 == s4);
}

TEST_SUITE_END();
