#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stratrelease/best_response.hpp"
#include "stratrelease/errors.hpp"
#include "stratrelease/instances.hpp"
#include "stratrelease/json_io.hpp"
#include "stratrelease/learner.hpp"
#include "stratrelease/report_io.hpp"

using namespace stratrelease;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitCapability = 4;

struct Run {
  std::string command_line;
  std::string instance_digest;
  std::uint64_t seed = 0;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, std::string>> outputs;
  std::optional<std::string> manifest_path;

  void add_output(const std::string& path, const std::string& content) {
    write_file(path, content);
    outputs.push_back({path, fnv1a_hex(content)});
  }

  void finish() {
    if (!manifest_path && outputs.empty()) return;
    RunManifest m;
    m.command_line = command_line;
    m.instance_digest = instance_digest;
    m.seed = seed;
    m.wall_clock_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    m.outputs = outputs;
    std::string path = manifest_path ? *manifest_path : outputs.front().first + ".manifest.json";
    write_file(path, manifest_to_json(m).dump(2) + "\n");
  }
};

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stoul(tok));
  }
  return out;
}

std::vector<long long> parse_int_list(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stoll(tok));
  }
  return out;
}

std::vector<std::size_t> release_or_full(const Instance& inst, const std::string& release) {
  if (release.empty()) return inst.full_release();
  return parse_index_list(release);
}

struct ReproRow {
  std::string name;
  double got = 0.0;
  double want = 0.0;
  double tol = 1e-9;
  bool pass() const { return std::abs(got - want) <= tol; }
};

int print_repro(const std::string& target, const std::vector<ReproRow>& rows) {
  bool all = true;
  std::printf("reproduce %s\n", target.c_str());
  std::printf("%-34s %16s %16s %s\n", "quantity", "computed", "expected", "verdict");
  for (const auto& r : rows) {
    all = all && r.pass();
    std::printf("%-34s %16s %16s %s\n", r.name.c_str(), format_sig(r.got).c_str(),
                format_sig(r.want).c_str(), r.pass() ? "pass" : "FAIL");
  }
  std::printf("%s\n", all ? "all rows pass" : "MISMATCH");
  return all ? kExitOk : kExitMismatch;
}

int cmd_reproduce(const std::string& target, const std::string& a_list) {
  if (target == "table1") {
    Instance inst = example_table1();
    std::vector<ReproRow> rows;
    rows.push_back({"U({h1})", release_utility(inst, {0}), 2.0 / 3.0, 1e-9});
    rows.push_back({"U({h1,h2})", release_utility(inst, {0, 1}), 1.0, 1e-9});
    ReleaseReport best = optimize_release_bruteforce(inst, Objective::Accuracy);
    rows.push_back({"optimal utility", best.utility, 1.0, 1e-9});
    rows.push_back({"optimal release size", static_cast<double>(best.released.size()), 2.0, 0.0});
    return print_repro(target, rows);
  }
  if (target == "example2") {
    Instance inst = example_thresholds();
    std::vector<ReproRow> rows;
    rows.push_back({"U({h2})", release_utility(inst, {1}), 0.55, 1e-9});
    rows.push_back({"U({h_1.8,h2})", release_utility(inst, {0, 1}), 1.0, 1e-9});
    rows.push_back({"cutoff of {h2}", compute_cutoff(inst, {1}), 1.0, 1e-9});
    return print_repro(target, rows);
  }
  if (target == "claim-fpr") {
    Instance inst = example_claim_fpr();
    Posterior p12 = restrict_posterior(inst.prior, {0, 1}, inst.deployed);
    Posterior p2 = restrict_posterior(inst.prior, {1}, inst.deployed);
    Posterior pall = restrict_posterior(inst.prior, {0, 1, 2}, inst.deployed);
    std::vector<ReproRow> rows;
    rows.push_back({"BR(x1,{h2})", br_threshold_scan(0.0, p2, 1.0).target.x, 0.5, 1e-12});
    rows.push_back({"BR(x1,support)", br_threshold_scan(0.0, pall, 1.0).target.x, 0.7, 1e-12});
    rows.push_back({"BR(x1,{h1,h2})", br_threshold_scan(0.0, p12, 1.0).target.x, 0.1, 1e-12});
    rows.push_back({"BR(x2,{h1,h2})", br_threshold_scan(0.4, p12, 1.0).target.x, 0.5, 1e-12});
    rows.push_back({"FPR({h2})", release_fpr(inst, {1}), 1.0, 1e-12});
    rows.push_back({"FPR(support)", release_fpr(inst, {0, 1, 2}), 1.0, 1e-12});
    rows.push_back({"FPR({h1,h2})", release_fpr(inst, {0, 1}), 0.0, 1e-12});
    return print_repro(target, rows);
  }
  if (target == "subset-sum") {
    std::vector<long long> a = a_list.empty() ? std::vector<long long>{1, 2}
                                              : parse_int_list(a_list);
    Instance inst = generate_subset_sum_instance(a);
    ReleaseReport best = optimize_release_bruteforce(inst, Objective::Accuracy);
    bool feasible = subset_sum_feasible(a);
    std::vector<ReproRow> rows;
    rows.push_back({"optimum reaches 1 (0/1)", best.utility >= 1.0 - 1e-9 ? 1.0 : 0.0,
                    feasible ? 1.0 : 0.0, 0.0});
    return print_repro(target, rows);
  }
  throw ValidationError("unknown reproduce target: " + target);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strategic-classification information-release toolkit"};
  app.require_subcommand(1);

  std::string instance_path, release, objective = "accuracy", method = "brute";
  std::string solver = "scan", target, a_list, out_prefix, out_path, param = "d";
  std::string agent_text, positive_list, negative_list, manifest_path;
  double epsilon = 0.05, from = 0.0, to = 1.0;
  std::uint64_t seed = 0;
  std::size_t steps = 20, count = 1000, gen_n = 5;
  std::string gen_kind = "random-1d";

  auto* c_rep = app.add_subcommand("reproduce", "re-run a named fixture and check its numbers");
  c_rep->add_option("target", target)->required();
  c_rep->add_option("--a", a_list);

  auto* c_eval = app.add_subcommand("evaluate", "evaluate one release of an instance");
  c_eval->add_option("--instance", instance_path)->required();
  c_eval->add_option("--release", release);
  c_eval->add_option("--manifest", manifest_path);

  auto* c_br = app.add_subcommand("best-response", "solve one agent's best response");
  c_br->add_option("--instance", instance_path)->required();
  c_br->add_option("--agent", agent_text)->required();
  c_br->add_option("--release", release);
  c_br->add_option("--solver", solver);
  c_br->add_option("--epsilon", epsilon);
  c_br->add_option("--seed", seed);
  c_br->add_option("--manifest", manifest_path);

  auto* c_opt = app.add_subcommand("optimize", "optimize the released subset");
  c_opt->add_option("--instance", instance_path)->required();
  c_opt->add_option("--objective", objective);
  c_opt->add_option("--method", method);
  c_opt->add_option("--out-prefix", out_prefix);
  c_opt->add_option("--manifest", manifest_path);

  auto* c_sweep = app.add_subcommand("sweep", "utility curve over the release upper end");
  c_sweep->add_option("--instance", instance_path)->required();
  c_sweep->add_option("--param", param);
  c_sweep->add_option("--from", from)->required();
  c_sweep->add_option("--to", to)->required();
  c_sweep->add_option("--steps", steps);
  c_sweep->add_option("--out-prefix", out_prefix);
  c_sweep->add_option("--manifest", manifest_path);

  auto* c_proj = app.add_subcommand("project", "projection-oracle call for debugging");
  c_proj->add_option("--instance", instance_path)->required();
  c_proj->add_option("--agent", agent_text)->required();
  c_proj->add_option("--positive", positive_list);
  c_proj->add_option("--negative", negative_list);

  auto* c_gen = app.add_subcommand("gen", "emit an instance JSON");
  c_gen->add_option("--kind", gen_kind)->required();
  c_gen->add_option("--n", gen_n);
  c_gen->add_option("--seed", seed);
  c_gen->add_option("--a", a_list);
  c_gen->add_option("--out", out_path);
  c_gen->add_option("--manifest", manifest_path);

  auto* c_sample = app.add_subcommand("sample", "draw data points as CSV");
  c_sample->add_option("--instance", instance_path)->required();
  c_sample->add_option("--count", count);
  c_sample->add_option("--seed", seed);
  c_sample->add_option("--out", out_path);
  c_sample->add_option("--manifest", manifest_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  Run run;
  {
    std::ostringstream cl;
    for (int i = 0; i < argc; ++i) cl << (i ? " " : "") << argv[i];
    run.command_line = cl.str();
  }
  run.seed = seed;
  if (!manifest_path.empty()) run.manifest_path = manifest_path;

  try {
    std::optional<Instance> inst;
    if (!instance_path.empty()) {
      inst = load_instance(instance_path);
      run.instance_digest = fnv1a_hex(serialize_instance(*inst));
    }

    if (c_rep->parsed()) return cmd_reproduce(target, a_list);

    if (c_eval->parsed()) {
      ReleaseEvaluation ev = evaluate_release(*inst, release_or_full(*inst, release));
      json j;
      j["released"] = release_or_full(*inst, release);
      j["cutoff"] = ev.cutoff;
      j["utility"] = ev.utility;
      j["fpr"] = ev.fpr;
      j["fnr"] = ev.fnr;
      std::cout << j.dump(2) << "\n";
      run.finish();
      return kExitOk;
    }

    if (c_br->parsed()) {
      std::vector<std::size_t> rel = release_or_full(*inst, release);
      Posterior post = restrict_posterior(inst->prior, rel, inst->deployed);
      BestResponse br;
      bool two_d = !inst->is_1d();
      if (two_d) {
        std::stringstream ss(agent_text);
        std::string sx, sy;
        std::getline(ss, sx, ',');
        std::getline(ss, sy, ',');
        Vec2 x{std::stod(sx), std::stod(sy)};
        if (solver == "brute")
          br = br_bruteforce(x, post, inst->cost, inst->box());
        else if (solver == "arrangement")
          br = br_linear_2d(x, post, inst->box(), inst->cost);
        else
          throw ValidationError("solver for 2-D instances: brute or arrangement");
      } else {
        double x = std::stod(agent_text);
        if (solver == "brute")
          br = br_bruteforce(x, post, inst->cost, inst->domain_diameter());
        else if (solver == "scan")
          br = br_threshold_scan(x, post, inst->cost.k);
        else if (solver == "submodular")
          br = br_submodular_approx(x, post, inst->cost, epsilon, seed);
        else
          throw ValidationError("solver for 1-D instances: brute, scan or submodular");
      }
      std::cout << best_response_to_json(br, two_d).dump(2) << "\n";
      run.finish();
      return kExitOk;
    }

    if (c_opt->parsed()) {
      ReleaseReport report;
      if (method == "brute")
        report = optimize_release_bruteforce(*inst, parse_objective(objective));
      else if (method == "uniform")
        report = optimize_release_uniform(*inst);
      else if (method == "interval") {
        if (!inst->prior_interval)
          throw ValidationError("optimize --method interval needs a prior_interval instance");
        auto [a, b] = *inst->prior_interval;
        report = optimal_interval_release(a, b, inst->ground_truth_threshold(),
                                          inst->deployed_threshold(), inst->data, inst->cost.k);
      } else
        throw ValidationError("method must be brute, uniform or interval");
      std::cout << report_to_json(report).dump(2) << "\n";
      if (!out_prefix.empty()) {
        run.add_output(out_prefix + ".report.json", report_to_json(report).dump(2) + "\n");
        run.add_output(out_prefix + ".candidates.csv", candidates_csv(report));
      }
      run.finish();
      return kExitOk;
    }

    if (c_sweep->parsed()) {
      if (param != "d") throw ValidationError("sweep supports --param d");
      if (!inst->prior_interval)
        throw ValidationError("sweep needs a prior_interval instance");
      double f = inst->ground_truth_threshold();
      double h = inst->deployed_threshold();
      std::vector<std::pair<double, double>> points;
      for (std::size_t s = 0; s <= steps; ++s) {
        double d = from + (to - from) * static_cast<double>(s) / static_cast<double>(steps);
        if (d < h) continue;  // release [h, d] must contain h
        points.push_back({d, interval_release_utility(h, d, f, h, inst->data, inst->cost.k)});
      }
      std::string prefix = out_prefix.empty() ? "sweep" : out_prefix;
      run.add_output(prefix + ".csv", sweep_csv(param, points));
      run.add_output(prefix + ".svg", sweep_svg(param, points));
      run.finish();
      return kExitOk;
    }

    if (c_proj->parsed()) {
      Region region{parse_index_list(positive_list), parse_index_list(negative_list)};
      Projection p;
      json j;
      if (inst->is_1d()) {
        double x = std::stod(agent_text);
        p = project_1d(x, inst->prior.support, region, inst->cost, inst->domain_diameter());
        j["point"] = p.point.x;
      } else {
        std::stringstream ss(agent_text);
        std::string sx, sy;
        std::getline(ss, sx, ',');
        std::getline(ss, sy, ',');
        p = project_2d({std::stod(sx), std::stod(sy)}, inst->prior.support, region, inst->box(),
                       inst->cost);
        j["point"] = {p.point.x, p.point.y};
      }
      j["cost"] = p.cost;
      j["feasible"] = p.feasible;
      j["retracted"] = p.retracted;
      j["on_inflated_boundary"] = p.on_inflated_boundary;
      std::cout << j.dump(2) << "\n";
      return kExitOk;
    }

    if (c_gen->parsed()) {
      Instance out;
      if (gen_kind == "table1")
        out = example_table1();
      else if (gen_kind == "example2")
        out = example_thresholds();
      else if (gen_kind == "claim-fpr")
        out = example_claim_fpr();
      else if (gen_kind == "subset-sum")
        out = generate_subset_sum_instance(a_list.empty() ? std::vector<long long>{1, 2, 3}
                                                          : parse_int_list(a_list));
      else if (gen_kind == "random-1d")
        out = random_threshold_instance(gen_n, seed);
      else if (gen_kind == "random-2d") {
        RandomLinear2D r = random_linear2d(gen_n, seed, Box{{-1.0, -1.0}, {1.0, 1.0}});
        out.domain = r.bbox;
        out.prior = r.prior;
        out.deployed = 0;
        out.ground_truth = r.prior.support[0];
        out.cost = pnorm2d_cost(2);
        out.agents = r.agents;
        out = make_instance(std::move(out));
      } else
        throw ValidationError("unknown gen kind: " + gen_kind);
      std::string text = serialize_instance(out);
      if (out_path.empty())
        std::cout << text;
      else
        run.add_output(out_path, text);
      run.finish();
      return kExitOk;
    }

    if (c_sample->parsed()) {
      std::vector<double> xs = sample(inst->data, count, seed);
      std::string csv = samples_csv(xs);
      if (out_path.empty())
        std::cout << csv;
      else
        run.add_output(out_path, csv);
      run.finish();
      return kExitOk;
    }
  } catch (const CapabilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapability;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
