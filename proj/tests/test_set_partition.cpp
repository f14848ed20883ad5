#include <catch_amalgamated.hpp>

#include <random>

#include "ewens/set_partition.hpp"
#include "oracles.hpp"

using namespace ewens;

namespace {

SetPartition random_partition(int n, std::mt19937& gen) {
  std::uniform_int_distribution<int> tag(0, n - 1);
  std::vector<int> labels(n);
  for (auto& l : labels) l = tag(gen);
  return SetPartition::from_labels(labels);
}

Rational random_rational(std::mt19937& gen, bool nonzero = true) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  while (true) {
    Rational q(num(gen), den(gen));
    q.canonicalize();
    if (!nonzero || sgn(q) != 0) return q;
  }
}

// Distinct nonzero moments on every subset.
MomentTable<Rational> numbered(int ell) {
  return MomentTable<Rational>::tabulate(ell, [](SubsetMask m) { return Rational(static_cast<int>(m) + 1, 3); });
}

}  // namespace

TEST_CASE("partition enumeration gives Bell numbers") {
  const std::vector<std::size_t> bell = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
  for (int n = 1; n <= 8; ++n) CHECK(all_partitions(n).size() == bell[n]);
  const auto one = all_partitions(1);
  CHECK(one[0].to_string() == "{1}");
  CHECK_THROWS_AS(all_partitions(0), CapacityError);
  CHECK_THROWS_AS(all_partitions(13), CapacityError);

  std::set<std::vector<int>> seen;
  for (const auto& p : all_partitions(6)) seen.insert(p.rgs());
  CHECK(seen.size() == 203);
}

TEST_CASE("canonical form and construction") {
  const auto p = SetPartition::from_blocks(4, {{4, 2}, {3}, {1}});
  CHECK(p.blocks() == std::vector<std::vector<int>>{{1}, {2, 4}, {3}});
  CHECK(p.rank() == 1);
  CHECK(p == SetPartition::from_labels({7, 3, 9, 3}));
  CHECK_THROWS_AS(SetPartition::from_blocks(3, {{1, 2}}), ValidationError);
  CHECK_THROWS_AS(SetPartition::from_blocks(3, {{1, 2}, {2, 3}}), ValidationError);
  CHECK_THROWS_AS(SetPartition::from_blocks(3, {{1, 2}, {}, {3}}), ValidationError);
  CHECK_THROWS_AS(SetPartition::from_blocks(2, {{1, 2, 3}}), ValidationError);
}

TEST_CASE("join, meet and refinement") {
  const auto a = SetPartition::from_blocks(3, {{1, 2}, {3}});
  const auto b = SetPartition::from_blocks(3, {{1}, {2, 3}});
  CHECK(join(a, b) == SetPartition::top(3));
  CHECK(meet(a, b) == SetPartition::singletons(3));
  CHECK(join(a, a) == a);
  CHECK(meet(a, a) == a);
  CHECK(refines(a, SetPartition::top(3)));
  CHECK_FALSE(refines(a, b));
  CHECK_THROWS_AS(join(a, SetPartition::top(4)), ValidationError);
  CHECK_THROWS_AS(meet(a, SetPartition::top(2)), ValidationError);
  CHECK_THROWS_AS(refines(a, SetPartition::top(2)), ValidationError);

  const auto p = SetPartition::from_blocks(4, {{1, 2}, {3, 4}});
  const auto q = SetPartition::from_blocks(4, {{2, 3}, {1}, {4}});
  CHECK(join(p, q).rank() == 3);
  CHECK(join(p, q).rank() <= p.rank() + q.rank());
}

TEST_CASE("lattice laws on random partitions") {
  std::mt19937 gen(17);
  for (int t = 0; t < 400; ++t) {
    const int n = 1 + t % 8;
    const auto p = random_partition(n, gen), q = random_partition(n, gen), r = random_partition(n, gen);
    CHECK(join(p, q) == join(q, p));
    CHECK(meet(p, q) == meet(q, p));
    CHECK(join(join(p, q), r) == join(p, join(q, r)));
    CHECK(meet(meet(p, q), r) == meet(p, meet(q, r)));
    CHECK(join(p, meet(p, q)) == p);
    CHECK(meet(p, join(p, q)) == p);
    CHECK(refines(p, join(p, q)));
    CHECK(refines(meet(p, q), p));
    CHECK(refines(p, q) == (join(p, q) == q));
  }
}

TEST_CASE("rank is subadditive under join") {
  for (int n = 1; n <= 6; ++n) {
    const auto all = all_partitions(n);
    for (const auto& p : all) {
      for (const auto& q : all) REQUIRE(join(p, q).rank() <= p.rank() + q.rank());
    }
  }
}

TEST_CASE("Moebius values") {
  CHECK(mobius_to_top(SetPartition::top(5)) == 1);
  CHECK(mobius_to_top(SetPartition::singletons(3)) == 2);
  CHECK(mobius_to_top(SetPartition::from_blocks(4, {{1, 3}, {2, 4}})) == -1);
  CHECK(mobius_for_block_count(4) == -6);

  for (int n = 1; n <= 6; ++n) {
    const auto all = all_partitions(n);
    for (const auto& base : all) {
      if (base.block_count() == 1) continue;
      Integer s = 0;
      for (const auto& pi : all) {
        if (refines(base, pi)) s += mobius_to_top(pi);
      }
      REQUIRE(s == 0);
    }
  }
}

TEST_CASE("cumulants from moments") {
  const auto m1 = numbered(1);
  CHECK(cumulant_from_moments(m1) == m1.at(1));

  const auto m2 = numbered(2);
  CHECK(cumulant_from_moments(m2) == m2.at(3) - m2.at(1) * m2.at(2));

  const auto m = numbered(3);
  const Rational expected = m.at(7) - m.at(1) * m.at(6) - m.at(2) * m.at(5) - m.at(4) * m.at(3) +
                            2 * m.at(1) * m.at(2) * m.at(4);
  CHECK(cumulant_from_moments(m) == expected);

  // Factorizing functional: every mixed cumulant vanishes.
  std::mt19937 gen(3);
  for (int ell = 2; ell <= 6; ++ell) {
    std::vector<Rational> single(ell);
    for (auto& s : single) s = random_rational(gen);
    const auto prod = MomentTable<Rational>::tabulate(ell, [&](SubsetMask mask) {
      Rational v(1);
      for (int j = 0; j < ell; ++j) {
        if (mask >> j & 1u) v *= single[j];
      }
      return v;
    });
    CHECK(cumulant_from_moments(prod) == 0);
    for (SubsetMask d = 3; d < (SubsetMask{1} << ell); ++d) {
      if (std::popcount(d) >= 2) CHECK(quasi_factor_U(prod, d) == 1);
    }
  }

  MomentTable<Rational> partial(2);
  partial.set(1, Rational(1));
  CHECK_THROWS_WITH(cumulant_from_moments(partial), Catch::Matchers::ContainsSubstring("{1,2}"));
  CHECK_THROWS_AS(MomentTable<Rational>(0), CapacityError);
  CHECK_THROWS_AS(partial.set(0, Rational(2)), ValidationError);
  CHECK_THROWS_AS(partial.set(4, Rational(2)), ValidationError);
  CHECK_THROWS_AS(cumulant_from_moments(numbered(11)), CapacityError);
}

TEST_CASE("cumulants agree with the log generating function") {
  std::mt19937 gen(99);
  for (int trial = 0; trial < 60; ++trial) {
    const int ell = 1 + trial % 3;
    const int outcomes = 2 + trial % 4;
    std::vector<std::pair<std::vector<Rational>, Rational>> law;
    Rational mass(0);
    for (int o = 0; o < outcomes; ++o) {
      std::vector<Rational> x(ell);
      for (auto& v : x) v = random_rational(gen, false);
      const Rational w(1 + static_cast<int>(gen() % 5));
      law.emplace_back(x, w);
      mass += w;
    }
    for (auto& [x, p] : law) p /= mass;

    const auto table = MomentTable<Rational>::tabulate(ell, [&](SubsetMask mask) {
      Rational e(0);
      for (const auto& [x, p] : law) {
        Rational prod = p;
        for (int j = 0; j < ell; ++j) {
          if (mask >> j & 1u) prod *= x[j];
        }
        e += prod;
      }
      return e;
    });
    CHECK(cumulant_from_moments(table) == oracle::log_mgf_cumulant(law, ell));
  }
}

TEST_CASE("truncated cumulants") {
  const auto m2 = numbered(2);
  CHECK(truncated_cumulant(m2, SetPartition::top(2), {}) == m2.at(3));
  CHECK(truncated_cumulant(m2, SetPartition::singletons(2), {}) == m2.at(3) - m2.at(1) * m2.at(2));
  // Every partition lies below the top one, so forbidding it empties the sum.
  CHECK(truncated_cumulant(m2, SetPartition::singletons(2), {SetPartition::top(2)}) == 0);
  CHECK(truncated_cumulant(m2, SetPartition::singletons(2), {SetPartition::top(2)}, Exclusion::above) ==
        -m2.at(1) * m2.at(2));
  CHECK(truncated_cumulant(m2, SetPartition::singletons(2), {SetPartition::singletons(2)}) == m2.at(3));

  const auto m4 = numbered(4);
  CHECK(truncated_cumulant(m4, SetPartition::singletons(4), {}) == cumulant_from_moments(m4));
  CHECK(truncated_cumulant(m4, SetPartition::top(4), {}) == m4.at(15));

  // Brute-force the restricted Moebius sum directly.
  const auto base = SetPartition::from_blocks(4, {{1, 2}, {3}, {4}});
  const std::vector<SetPartition> forbid = {SetPartition::from_blocks(4, {{1, 2, 3}, {4}})};
  Rational direct(0);
  for (const auto& pi : all_partitions(4)) {
    if (!refines(base, pi) || refines(pi, forbid[0])) continue;
    Rational term(mobius_to_top(pi));
    for (auto b : pi.block_masks()) term *= m4.at(b);
    direct += term;
  }
  CHECK(truncated_cumulant(m4, base, forbid) == direct);

  Rational above(0);
  for (const auto& pi : all_partitions(4)) {
    if (!refines(base, pi) || refines(forbid[0], pi)) continue;
    Rational term(mobius_to_top(pi));
    for (auto b : pi.block_masks()) term *= m4.at(b);
    above += term;
  }
  CHECK(truncated_cumulant(m4, base, forbid, Exclusion::above) == above);

  CHECK_THROWS_AS(truncated_cumulant(m2, SetPartition::top(3), {}), ValidationError);
  CHECK_THROWS_AS(truncated_cumulant(m2, SetPartition::top(2), {SetPartition::top(3)}), ValidationError);
}

TEST_CASE("quasi-factorization round trip") {
  const auto m2 = numbered(2);
  CHECK(quasi_factor_U(m2, 0) == 1);
  CHECK(quasi_factor_U(m2, 1) == m2.at(1));
  CHECK(quasi_factor_U(m2, 3) == m2.at(3) / (m2.at(1) * m2.at(2)));

  std::mt19937 gen(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int ell = 1 + trial % 4;
    const auto table = MomentTable<Rational>::tabulate(ell, [&](SubsetMask) { return random_rational(gen); });
    for (SubsetMask d = 0; d < (SubsetMask{1} << ell); ++d) {
      Rational prod(1);
      SubsetMask sub = d;
      while (true) {
        prod *= quasi_factor_U(table, sub);
        if (sub == 0) break;
        sub = (sub - 1) & d;
      }
      REQUIRE(prod == table.at(d));
    }
  }

  auto zero = numbered(3);
  zero.set(2, Rational(0));
  CHECK_THROWS_AS(quasi_factor_U(zero, 7), DivisionError);
  CHECK_THROWS_WITH(quasi_factor_U(zero, 7), Catch::Matchers::ContainsSubstring("{2}"));
  CHECK(quasi_factor_U(zero, 5) == zero.at(5) / (zero.at(1) * zero.at(4)));
}
