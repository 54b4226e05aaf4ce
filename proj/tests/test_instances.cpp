#include "doctest.h"

#include <cmath>

#include "stratrelease/best_response.hpp"
#include "stratrelease/errors.hpp"
#include "stratrelease/instances.hpp"
#include "stratrelease/json_io.hpp"
#include "stratrelease/learner.hpp"

using namespace stratrelease;

TEST_SUITE_BEGIN("instances");

TEST_CASE("two-point fixture carries the exact constants") {
  Instance inst = example_table1();
  REQUIRE(inst.data.atoms.size() == 2);
  CHECK(inst.data.atoms[0].mass == 2.0 / 3.0);
  CHECK(inst.data.atoms[1].mass == 1.0 / 3.0);
  CHECK(inst.cost.table.cost(0.0, 2.0) == 2.0);
  CHECK(inst.cost.table.cost(2.0, 0.0) == 0.75);
  CHECK(inst.cost.table.cost(0.0, 0.0) == 0.0);
  CHECK(std::isinf(inst.cost.table.cost(0.5, 2.0)));
  for (double w : inst.prior.weights) CHECK(w == 1.0 / 3.0);
  CHECK(accepts1(inst.ground_truth, 0.0));
  CHECK(!accepts1(inst.ground_truth, 2.0));
}

TEST_CASE("screening fixture carries the exact constants") {
  Instance inst = example_thresholds();
  CHECK(inst.prior.threshold_at(0) == 1.8);
  CHECK(inst.prior.threshold_at(1) == 2.0);
  CHECK(inst.prior.weights[0] == 0.9);
  CHECK(inst.prior.weights[1] == 0.1);
  CHECK(inst.ground_truth_threshold() == 1.9);
  CHECK(inst.deployed_threshold() == 2.0);
}

TEST_CASE("claim fixture carries the exact constants") {
  Instance inst = example_claim_fpr();
  CHECK(inst.prior.weights == std::vector<double>{0.2, 0.1, 0.7});
  CHECK(inst.deployed_threshold() == 0.5);
  REQUIRE(inst.data.atoms.size() == 2);
  CHECK(inst.data.atoms[0].location == 0.0);
  CHECK(inst.data.atoms[1].location == 0.4);
  Posterior post = restrict_posterior(inst.prior, {0, 1}, inst.deployed);
  CHECK(post.weights[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(post.weights[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("fixtures round-trip through the JSON format byte-identically") {
  for (const Instance& inst : {example_table1(), example_thresholds(), example_claim_fpr(),
                               generate_subset_sum_instance({1, 2, 3}),
                               random_threshold_instance(6, 77)}) {
    std::string once = serialize_instance(inst);
    std::string twice = serialize_instance(parse_instance(once));
    CHECK(once == twice);
  }
}

TEST_CASE("2-D instances round-trip through the JSON format") {
  RandomLinear2D r = random_linear2d(4, 5, Box{{-1.0, -1.0}, {1.0, 1.0}});
  Instance inst;
  inst.domain = r.bbox;
  inst.prior = r.prior;
  inst.deployed = 0;
  inst.ground_truth = r.prior.support[0];
  inst.cost = pnorm2d_cost(2);
  inst.agents = r.agents;
  inst = make_instance(std::move(inst));
  std::string once = serialize_instance(inst);
  Instance back = parse_instance(once);
  CHECK(serialize_instance(back) == once);
  CHECK(back.agents.size() == 4);
}

TEST_CASE("unknown fields are rejected") {
  Instance inst = example_thresholds();
  nlohmann::json doc = instance_to_json(inst);
  doc["surprise"] = 1;
  CHECK_THROWS_AS(instance_from_json(doc), ValidationError);
}

TEST_CASE("h outside the support is rejected") {
  nlohmann::json doc = instance_to_json(example_thresholds());
  doc["h"] = 1.5;
  CHECK_THROWS_AS(instance_from_json(doc), ValidationError);
}

TEST_CASE("random threshold instances are deterministic and valid") {
  Instance a = random_threshold_instance(7, 123);
  Instance b = random_threshold_instance(7, 123);
  Instance c = random_threshold_instance(7, 124);
  CHECK(serialize_instance(a) == serialize_instance(b));
  CHECK(serialize_instance(a) != serialize_instance(c));
  CHECK(a.deployed_threshold() >= a.ground_truth_threshold());
  for (std::size_t i = 1; i < a.prior.size(); ++i)
    CHECK(a.prior.threshold_at(i) > a.prior.threshold_at(i - 1));
}

TEST_CASE("random generator honors prior and data kinds") {
  RandomThresholdConfig cfg;
  cfg.prior = PriorKind::Dirichlet;
  cfg.data = DataKind::Atoms;
  Instance inst = random_threshold_instance(5, 9, cfg);
  CHECK(inst.data.atoms_only());
  double sum = 0.0;
  for (double w : inst.prior.weights) sum += w;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(random_threshold_instance(
                      3, 1, [] {
                        RandomThresholdConfig bad;
                        bad.f_min = 0.8;
                        bad.f_max = 0.9;
                        bad.h_max = 0.5;
                        bad.h_min = 0.1;
                        return bad;
                      }()),
                  ValidationError);
}

TEST_CASE("random 2-D bundles are deterministic with legal lines") {
  Box bbox{{-1.0, -1.0}, {1.0, 1.0}};
  RandomLinear2D a = random_linear2d(6, 42, bbox);
  RandomLinear2D b = random_linear2d(6, 42, bbox);
  CHECK(a.agents.size() == b.agents.size());
  for (std::size_t i = 0; i < a.agents.size(); ++i) {
    CHECK(a.agents[i].x == b.agents[i].x);
    CHECK(a.agents[i].y == b.agents[i].y);
  }
  for (const auto& c : a.posterior.classifiers)
    CHECK(norm_l2(std::get<LinearClassifier>(c).weights) > 0.0);
  CHECK(build_arrangement(a.posterior.classifiers, bbox).size() <= 1 + 6 * 7 / 2);
}

TEST_SUITE_END();
