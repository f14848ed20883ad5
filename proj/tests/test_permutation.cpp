#include <catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "ewens/permutation.hpp"
#include "oracles.hpp"

using namespace ewens;

namespace {

Rational factorial(int n) {
  Rational f(1);
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

const std::vector<Rational> kThetas = {Rational(1, 2), Rational(1), Rational(2)};

}  // namespace

TEST_CASE("Ewens weights on S_2") {
  const auto id = Permutation::identity(2);
  const Permutation swap({2, 1});
  CHECK(ewens_weight(id, 2) == Rational(2, 3));
  CHECK(ewens_weight(swap, 2) == Rational(1, 3));
  CHECK(ewens_weight(Permutation({3, 1, 2, 5, 4}), 1) == 1 / factorial(5));
  CHECK_THROWS_AS(ewens_weight(id, 0), ParameterError);
  CHECK_THROWS_AS(ewens_weight(id, -1), ParameterError);
}

TEST_CASE("weights sum to one exactly") {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& theta : kThetas) {
      Rational total(0);
      for_each_permutation(n, [&](const Permutation& s) { total += ewens_weight(s, theta); });
      CHECK(total == 1);
    }
  }
}

TEST_CASE("enumerate_ewens") {
  const auto two = enumerate_ewens(2, 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].sigma == Permutation::identity(2));
  CHECK(two[0].weight == Rational(2, 3));
  CHECK(two[1].weight == Rational(1, 3));

  const auto three = enumerate_ewens(3, 1);
  CHECK(three.size() == 6);
  for (const auto& e : three) CHECK(e.weight == Rational(1, 6));

  CHECK_THROWS_AS(enumerate_ewens(0, 1), CapacityError);
  CHECK_THROWS_AS(enumerate_ewens(10, 1), CapacityError);

  // Weights agree with an oracle normalized by total mass.
  for (const auto& theta : kThetas) {
    const auto all = enumerate_ewens(5, theta);
    std::map<std::vector<int>, Rational> ref;
    oracle::for_each_weighted(5, theta, [&](const std::vector<int>& img, const Rational& w) { ref[img] = w; });
    Rational total(0);
    for (const auto& e : all) {
      std::vector<int> img(e.sigma.one_line().begin(), e.sigma.one_line().end());
      CHECK(ref.at(img) == e.weight);
      total += e.weight;
    }
    CHECK(total == 1);
  }
}

TEST_CASE("cycle statistics") {
  const auto id = cycle_stats(Permutation::identity(4));
  CHECK(id.total == 4);
  CHECK(id.by_length == std::map<int, int>{{1, 4}});

  const auto two = cycle_stats(Permutation({2, 1, 4, 3}));
  CHECK(two.total == 2);
  CHECK(two.by_length == std::map<int, int>{{2, 2}});

  const auto ex = cycle_stats(Permutation({3, 7, 5, 2, 1, 6, 4}));
  CHECK(ex.total == 3);
  CHECK(ex.by_length == std::map<int, int>{{1, 1}, {3, 2}});
  CHECK(cycle_notation(Permutation({3, 7, 5, 2, 1, 6, 4})) == "(3 5 1)(7 4 2)(6)");

  CounterRng rng(5);
  for (int t = 0; t < 500; ++t) {
    const auto s = ewens_sample(1 + t % 30, 0.5 + t % 3, rng);
    const auto st = cycle_stats(s);
    std::vector<int> img(s.one_line().begin(), s.one_line().end());
    const auto type = oracle::cycle_type(img);
    int covered = 0;
    std::map<int, int> by_length;
    for (int l : type) ++by_length[l];
    for (const auto& [len, count] : st.by_length) covered += len * count;
    CHECK(covered == s.size());
    CHECK(st.by_length == by_length);
    CHECK(st.total == oracle::cycles(img));
  }
}

TEST_CASE("partial permutations") {
  CHECK(partial_cycle_count(PartialPermutation({1}, {1})) == 1);
  CHECK(partial_cycle_count(PartialPermutation({1, 2}, {2, 1})) == 1);
  CHECK(partial_cycle_count(PartialPermutation({1, 3}, {2, 4})) == 0);
  CHECK(partial_cycle_count(PartialPermutation({}, {})) == 0);
  CHECK(partial_cycle_count(PartialPermutation({1, 2, 3}, {2, 3, 4})) == 0);
  CHECK_THROWS_AS(PartialPermutation({1, 1}, {2, 3}), ValidationError);
  CHECK_THROWS_AS(PartialPermutation({1, 2}, {3, 3}), ValidationError);
  CHECK_THROWS_AS(PartialPermutation({1, 2}, {3}), ValidationError);

  CounterRng rng(9);
  for (int t = 0; t < 300; ++t) {
    const auto s = ewens_sample(1 + t % 20, 1.3, rng);
    std::vector<int> src(s.size());
    std::iota(src.begin(), src.end(), 1);
    std::vector<int> dst(s.one_line().begin(), s.one_line().end());
    CHECK(partial_cycle_count(PartialPermutation(src, dst)) == cycle_count(s));
  }
}

TEST_CASE("permutation validation") {
  CHECK_THROWS_AS(Permutation({1, 1}), ValidationError);
  CHECK_THROWS_AS(Permutation({0, 1}), ValidationError);
  CHECK_THROWS_AS(Permutation({1, 3}), ValidationError);
  CHECK(Permutation({2, 3, 1}).inverse() == Permutation({3, 1, 2}));
}

TEST_CASE("sampler basics") {
  CounterRng rng(1);
  for (int t = 0; t < 20; ++t) CHECK(ewens_sample(1, 0.3 + t, rng) == Permutation::identity(1));
  CHECK_THROWS_AS(ewens_sample(0, 1.0, rng), ValidationError);
  CHECK_THROWS_AS(ewens_sample(3, 0.0, rng), ParameterError);

  CounterRng a(123), b(123);
  for (int t = 0; t < 50; ++t) CHECK(ewens_sample(40, 1.7, a) == ewens_sample(40, 1.7, b));
}

TEST_CASE("sampler matches the Ewens law on S_6") {
  for (int theta : {1, 2}) {
    CounterRng rng(2024 + theta);
    const long n = 100000;
    std::map<Permutation, long> counts;
    for (long t = 0; t < n; ++t) ++counts[ewens_sample(6, theta, rng)];
    CHECK(counts.size() == 720);
    for (const auto& [sigma, w] : enumerate_ewens(6, theta)) {
      const double p = to_double(w);
      const double phat = static_cast<double>(counts[sigma]) / n;
      INFO("theta " << theta << " sigma " << cycle_notation(sigma));
      CHECK(std::abs(phat - p) <= 5 * std::sqrt(p * (1 - p) / n));
    }
  }
}
