#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "ewens/elementary.hpp"
#include "oracles.hpp"

using namespace ewens;

namespace {

const std::vector<Rational> kThetas = {Rational(1, 2), Rational(1), Rational(2)};
const RatFun N = RatFun::variable();

// All of S_n with cycle counts, for indicator sums that never touch rationals
// until the end.
struct Law {
  int n;
  std::vector<std::vector<int>> perms;
  std::vector<int> cyc;

  explicit Law(int size) : n(size) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 1);
    do {
      perms.push_back(img);
      cyc.push_back(oracle::cycles(img));
    } while (std::next_permutation(img.begin(), img.end()));
  }

  // E[prod 1{sigma(i_j) = s_j}] as a function of theta.
  Rational moment(const std::vector<int>& i, const std::vector<int>& s, const Rational& theta) const {
    std::vector<long> hits(n + 1, 0), all(n + 1, 0);
    for (std::size_t k = 0; k < perms.size(); ++k) {
      ++all[cyc[k]];
      bool ok = true;
      for (std::size_t j = 0; j < i.size() && ok; ++j) ok = perms[k][i[j] - 1] == s[j];
      if (ok) ++hits[cyc[k]];
    }
    Rational num(0), den(0), power(1);
    for (int c = 0; c <= n; ++c) {
      num += hits[c] * power;
      den += all[c] * power;
      power *= theta;
    }
    return num / den;
  }
};

}  // namespace

TEST_CASE("joint moment examples") {
  for (const auto& theta : kThetas) {
    CHECK(joint_moment({3}, {3}, theta, 7) == theta / (7 + theta - 1));
    CHECK(joint_moment({3}, {4}, theta, 7) == 1 / (7 + theta - 1));
    CHECK(joint_moment({1, 1}, {2, 3}, theta, 5) == 0);
    CHECK(joint_moment({1, 2}, {3, 3}, theta, 5) == 0);
  }
  CHECK(joint_moment({1, 2}, {2, 1}, 1, 4) == Rational(1, 12));
  CHECK(Law(4).moment({1, 2}, {2, 1}, 1) == Rational(1, 12));
  CHECK(joint_moment({}, {}, 1, 4) == 1);
  CHECK_THROWS_AS(joint_moment({5}, {1}, 1, 4), ValidationError);
  CHECK_THROWS_AS(joint_moment({1}, {1}, 0, 4), ParameterError);

  CHECK(joint_moment_symbolic({1}, {2}, 1) == 1 / N);
  CHECK(joint_moment_symbolic({1, 3}, {2, 4}, 1) == 1 / (N * (N - 1)));
  CHECK(joint_moment_symbolic({1, 1}, {2, 2}, 1) == 1 / N);
  CHECK(joint_moment_symbolic({1, 1}, {2, 3}, 2).is_zero());
  CHECK(joint_moment_symbolic({2}, {2}, Rational(1, 2)) == Rational(1, 2) / (N - Rational(1, 2)));
}

TEST_CASE("joint moments match enumeration for every spec with r <= 3") {
  for (int n = 2; n <= 6; ++n) {
    const Law law(n);
    long specs = 0;
    for (int r = 1; r <= 3; ++r) {
      std::vector<int> flat(2 * r, 1);
      while (true) {
        const std::vector<int> i(flat.begin(), flat.begin() + r), s(flat.begin() + r, flat.end());
        for (const auto& theta : kThetas) {
          REQUIRE(joint_moment(i, s, theta, n) == law.moment(i, s, theta));
          REQUIRE(joint_moment_symbolic(i, s, theta).eval(n) == joint_moment(i, s, theta, n));
        }
        ++specs;
        int k = 0;
        while (k < 2 * r && flat[k] == n) flat[k++] = 1;
        if (k == 2 * r) break;
        ++flat[k];
      }
    }
    CHECK(specs == n * n + n * n * n * n + n * n * n * n * n * n);
  }
}

TEST_CASE("joint cumulant examples") {
  for (const auto& theta : kThetas) {
    const ElementarySpec one({2}, {5});
    CHECK(joint_cumulant(one, theta, 6) == joint_moment({2}, {5}, theta, 6));
  }

  const ElementarySpec distinct({1, 3}, {2, 4});
  CHECK(joint_cumulant_symbolic(distinct, 1) == 1 / (N * N * (N - 1)));
  for (int n = 4; n <= 8; ++n) {
    const Law law(n);
    const Rational oracle_value = law.moment({1, 3}, {2, 4}, 1) - law.moment({1}, {2}, 1) * law.moment({3}, {4}, 1);
    CHECK(joint_cumulant(distinct, 1, n) == oracle_value);
    CHECK(oracle_value == Rational(1) / (n * n * (n - 1)));
  }

  const ElementarySpec fixed({1, 2}, {1, 2});
  CHECK(joint_cumulant(fixed, 1, 5) == Rational(1, 100));
  const Law five(5);
  CHECK(five.moment({1, 2}, {1, 2}, 1) - five.moment({1}, {1}, 1) * five.moment({2}, {2}, 1) == Rational(1, 100));

  // One block: the cumulant is just the moment of the merged product.
  const ElementarySpec merged({1, 3}, {2, 4}, SetPartition::top(2));
  CHECK(joint_cumulant_symbolic(merged, 1) == 1 / (N * (N - 1)));

  CHECK_THROWS_AS(ElementarySpec({1, 2}, {1}), ValidationError);
  CHECK_THROWS_AS(ElementarySpec({}, {}), ValidationError);
  CHECK_THROWS_AS(ElementarySpec({0}, {1}), ValidationError);
  CHECK_THROWS_AS(ElementarySpec({1, 2}, {1, 2}, SetPartition::top(3)), ValidationError);
  std::vector<int> nine(9);
  std::iota(nine.begin(), nine.end(), 1);
  CHECK_THROWS_AS(joint_cumulant(ElementarySpec(nine, nine), 1, 9), CapacityError);
}

TEST_CASE("cumulants of grouped products against enumeration") {
  CounterRng rng(77);
  const Law law(6);
  for (int t = 0; t < 150; ++t) {
    const auto spec = random_spec(2 + t % 2, 6, rng);
    const Rational theta = kThetas[t % 3];
    const int ell = spec.tau.block_count();
    auto table = MomentTable<Rational>::tabulate(ell, [&](SubsetMask blocks) {
      std::vector<int> i, s;
      for (int j = 1; j <= spec.size(); ++j) {
        if (blocks >> spec.tau.block_of(j) & 1u) {
          i.push_back(spec.i[j - 1]);
          s.push_back(spec.s[j - 1]);
        }
      }
      return law.moment(i, s, theta);
    });
    CHECK(joint_cumulant(spec, theta, 6) == cumulant_from_moments(table));
  }
}

TEST_CASE("bound exponent") {
  CHECK(bound_exponent(ElementarySpec({1, 3}, {2, 4})) == -3);
  CHECK(bound_exponent(ElementarySpec({5, 2, 2, 7, 7}, {8, 8, 2, 7, 7})) == -5);
  CHECK(bound_exponent(ElementarySpec({4}, {9})) == -1);
  CHECK(bound_exponent(ElementarySpec({1, 3}, {2, 4}, SetPartition::top(2))) == -2);

  const auto report = verify_main_lemma(ElementarySpec({1, 3}, {2, 4}), 1);
  CHECK(report.degree == Degree(-3));
  CHECK(report.bound == -3);
  CHECK(report.holds);
  CHECK(report.cumulant.pretty() == "1/(N²(N−1))");

  for (const auto& theta : kThetas) {
    const auto single = verify_main_lemma(ElementarySpec({2}, {7}), theta);
    CHECK(single.degree == Degree(-1));
    CHECK(single.bound == -1);
    CHECK(single.holds);
  }
}

TEST_CASE("degree bound over every collision pattern with r <= 3") {
  const auto summary = sweep_main_lemma(3, 6, kThetas);
  CHECK(summary.patterns == 2 + 15 + 203);
  CHECK(summary.checked > 0);
  for (const auto& f : summary.failures) {
    FAIL_CHECK("bound fails: degree " << f.report.degree.to_string() << " > " << f.report.bound);
  }
  CHECK(summary.failures.empty());
  CHECK_THROWS_AS(sweep_main_lemma(5, 6, kThetas), CapacityError);
}

TEST_CASE("degree bound on random r = 4 specs, symbolic matches numeric") {
  CounterRng rng(4);
  for (int t = 0; t < 200; ++t) {
    const auto spec = random_spec(4, 8, rng);
    const Rational theta = kThetas[t % 3];
    const auto report = verify_main_lemma(spec, theta);
    REQUIRE(report.holds);
    for (int n : {spec.max_entry(), spec.max_entry() + 3, spec.max_entry() + 11}) {
      REQUIRE(report.cumulant.eval(n) == joint_cumulant(spec, theta, n));
    }
  }
}

TEST_CASE("cumulant is symmetric in its arguments") {
  CounterRng rng(8);
  for (int t = 0; t < 100; ++t) {
    const int r = 2 + t % 3;
    const auto spec = random_spec(r, 6, rng);
    std::vector<int> order(r);
    std::iota(order.begin(), order.end(), 0);
    for (int k = r - 1; k > 0; --k) std::swap(order[k], order[rng.below(k + 1)]);
    std::vector<int> i(r), s(r), labels(r);
    for (int k = 0; k < r; ++k) {
      i[k] = spec.i[order[k]];
      s[k] = spec.s[order[k]];
      labels[k] = spec.tau.block_of(order[k] + 1);
    }
    const ElementarySpec shuffled(i, s, SetPartition::from_labels(labels));
    CHECK(joint_cumulant_symbolic(shuffled, 2) == joint_cumulant_symbolic(spec, 2));
    CHECK(bound_exponent(shuffled) == bound_exponent(spec));
  }
}

TEST_CASE("factorizing moments across two groups give a zero cumulant") {
  // Blocks 1,2 use symbols 1..4 and blocks 3,4 use 5..8; moments on the
  // union are replaced by the product of the two groups' moments.
  const std::vector<std::vector<int>> is = {{1}, {2, 3}, {5}, {6, 7}}, ss = {{2}, {3, 1}, {6}, {7, 8}};
  auto part = [&](SubsetMask blocks) {
    std::vector<int> i, s;
    for (int b = 0; b < 4; ++b) {
      if (blocks >> b & 1u) {
        i.insert(i.end(), is[b].begin(), is[b].end());
        s.insert(s.end(), ss[b].begin(), ss[b].end());
      }
    }
    return joint_moment_symbolic(i, s, Rational(3, 2));
  };
  const auto table = MomentTable<RatFun>::tabulate(4, [&](SubsetMask m) {
    const SubsetMask left = m & 3u, right = m & 12u;
    RatFun v(1);
    if (left) v *= part(left);
    if (right) v *= part(right);
    return v;
  });
  CHECK(cumulant_from_moments(table).is_zero());
  CHECK(cumulant_from_moments(table).degree().is_minus_infinity());
}
