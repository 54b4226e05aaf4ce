#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "stratrelease/distributions.hpp"
#include "stratrelease/errors.hpp"

using namespace stratrelease;

TEST_SUITE_BEGIN("distributions");

TEST_CASE("uniform piece interval probability") {
  DataDistribution d = uniform_distribution(0.0, 2.0);
  CHECK(interval_prob(d, 1.0, 1.9, false, false) == doctest::Approx(0.45).epsilon(1e-12));
  CHECK(interval_prob(d, 1.0, 1.9, true, true) == doctest::Approx(0.45).epsilon(1e-12));
}

TEST_CASE("atom endpoint inclusivity") {
  DataDistribution d = atom_distribution({{0.0, 2.0 / 3.0}, {1.0, 1.0 / 3.0}});
  CHECK(interval_prob(d, 0.0, 0.0, true, true) == doctest::Approx(2.0 / 3.0));
  CHECK(interval_prob(d, 0.0, 0.0, false, true) == 0.0);
  CHECK(interval_prob(d, 0.0, 1.0, true, false) == doctest::Approx(2.0 / 3.0));
  CHECK(interval_prob(d, 0.0, 1.0, true, true) == doctest::Approx(1.0));
}

TEST_CASE("degenerate and empty intervals") {
  DataDistribution d = uniform_distribution(0.0, 1.0);
  CHECK(interval_prob(d, 0.8, 0.2, true, true) == 0.0);
  CHECK(interval_prob(d, 0.5, 0.5, false, false) == 0.0);
}

TEST_CASE("additivity and total mass") {
  DataDistribution d =
      make_distribution({{0.25, 0.2}, {0.75, 0.1}}, {{0.0, 1.0, 0.7}});
  double left = interval_prob(d, 0.0, 0.5, true, true);
  double right = interval_prob(d, 0.5, 1.0, false, true);
  CHECK(left + right == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(interval_prob(d, d.min_support(), d.max_support(), true, true) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("flipping an endpoint flag changes the result by the atom mass") {
  DataDistribution d = make_distribution({{0.5, 0.4}}, {{0.0, 1.0, 0.6}});
  double with = interval_prob(d, 0.5, 1.0, true, true);
  double without = interval_prob(d, 0.5, 1.0, false, true);
  CHECK(with - without == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("distribution validation") {
  CHECK_THROWS_AS(make_distribution({{0.0, 0.5}}, {}), ValidationError);  // mass != 1
  CHECK_THROWS_AS(make_distribution({{0.0, 0.5}, {0.0, 0.5}}, {}), ValidationError);
  CHECK_THROWS_AS(make_distribution({}, {{0.0, 0.5, 0.5}, {0.4, 1.0, 0.5}}), ValidationError);
}

TEST_CASE("sampling is deterministic per seed") {
  DataDistribution d = make_distribution({{0.3, 0.25}}, {{0.0, 1.0, 0.75}});
  auto a = sample(d, 1000, 42);
  auto b = sample(d, 1000, 42);
  auto c = sample(d, 1000, 43);
  CHECK(a == b);
  CHECK(a != c);
}

TEST_CASE("sample mean of the unit uniform") {
  DataDistribution d = uniform_distribution(0.0, 1.0);
  auto xs = sample(d, 100000, 1);
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  CHECK(std::abs(mean - 0.5) < 0.01);
}

TEST_CASE("atom-only samples land on atoms") {
  DataDistribution d = atom_distribution({{0.1, 0.5}, {0.9, 0.5}});
  for (double x : sample(d, 500, 9)) CHECK((x == 0.1 || x == 0.9));
}

TEST_CASE("empirical interval frequency matches interval_prob") {
  DataDistribution d = uniform_distribution(0.0, 2.0);
  auto xs = sample(d, 100000, 5);
  double freq = static_cast<double>(
                    std::count_if(xs.begin(), xs.end(),
                                  [](double x) { return x > 1.0 && x < 1.9; })) /
                static_cast<double>(xs.size());
  CHECK(std::abs(freq - interval_prob(d, 1.0, 1.9, false, false)) < 0.01);
}


TEST_CASE("interval probability is monotone under inclusion") {
  DataDistribution d = make_distribution({{0.25, 0.2}, {0.5, 0.1}}, {{0.0, 1.0, 0.7}});
  double inner = interval_prob(d, 0.2, 0.6, false, false);
  double outer = interval_prob(d, 0.1, 0.8, false, false);
  CHECK(inner <= outer);
  CHECK(interval_prob(d, 0.2, 0.6, false, false) <= interval_prob(d, 0.2, 0.6, true, true));
}

TEST_SUITE_END();
