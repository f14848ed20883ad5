#include <catch_amalgamated.hpp>

#include <random>

#include "ewens/ratfun.hpp"

using namespace ewens;

namespace {

const RatFun N = RatFun::variable();

RatFun random_ratfun(std::mt19937& gen) {
  std::uniform_int_distribution<int> coef(-4, 4), deg(0, 3);
  auto poly = [&] {
    std::vector<Rational> c(deg(gen) + 1);
    for (auto& x : c) x = make_rational(coef(gen), 1 + static_cast<int>(gen() % 3));
    return Poly(c);
  };
  Poly den = poly();
  while (den.is_zero()) den = poly();
  return RatFun(poly(), den);
}

}  // namespace

TEST_CASE("spec arithmetic examples") {
  const RatFun f = 1 / (N * (N - 1)) - 1 / (N * N);
  CHECK(f == 1 / (N * N * (N - 1)));
  CHECK(f.pretty() == "1/(N²(N−1))");
  CHECK(f.degree() == Degree(-3));
  CHECK(f.to_text() == "(1)/(0,0,-1,1)");
  CHECK(f + 0 == f);
  CHECK(f * 1 == f);
  CHECK(f.eval(4) == Rational(1, 48));
  CHECK(RatFun(1).eval(Rational(7, 3)) == 1);
  CHECK_THROWS_AS((1 / (N - 1)).eval(1), DivisionError);
  CHECK_THROWS_AS(N / RatFun(0), DivisionError);
  CHECK_THROWS_AS(RatFun(Poly(1), Poly()), DivisionError);
}

TEST_CASE("degrees and canonical form") {
  CHECK(RatFun(0).degree().is_minus_infinity());
  CHECK(RatFun(0).degree() < Degree(-1000000));
  CHECK(RatFun(0).degree().to_string() == "-inf");
  CHECK(RatFun(0).to_text() == "(0)/(1)");
  CHECK(RatFun(5).degree() == Degree(0));
  CHECK((N * N / (N + 1)).degree() == Degree(1));

  const RatFun g(Poly(std::vector<Rational>{-2, 0, 2}), Poly(std::vector<Rational>{2, 2}));
  CHECK(g == N - 1);
  CHECK(g.denominator() == Poly(1));

  const RatFun h(Poly(std::vector<Rational>{1}), Poly(std::vector<Rational>{0, 3}));
  CHECK(h.denominator().leading() == 1);
  CHECK(h.numerator() == Poly(Rational(1, 3)));
  CHECK(RatFun(h.numerator(), h.denominator()) == h);
  CHECK(h.pretty() == "1/(3N)");
  CHECK((-1 / ((N - 1) * (N - 1))).pretty("X") == "−1/(X−1)²");
  CHECK((Rational(-5) * N).pretty() == "−5N");
}

TEST_CASE("evaluation is a ring homomorphism") {
  std::mt19937 gen(21);
  std::uniform_int_distribution<int> pt(-50, 50);
  for (int trial = 0; trial < 40; ++trial) {
    const RatFun a = random_ratfun(gen), b = random_ratfun(gen);
    int tested = 0;
    while (tested < 20) {
      const Rational x = make_rational(pt(gen), 1 + static_cast<int>(gen() % 7));
      Rational ax, bx;
      try {
        ax = a.eval(x);
        bx = b.eval(x);
      } catch (const DivisionError&) {
        continue;
      }
      ++tested;
      CHECK((a + b).eval(x) == ax + bx);
      CHECK((a - b).eval(x) == ax - bx);
      CHECK((a * b).eval(x) == ax * bx);
      CHECK((-a).eval(x) == -ax);
      if (sgn(bx) != 0 && !b.is_zero()) CHECK((a / b).eval(x) == ax / bx);
    }
    const RatFun again(a.numerator(), a.denominator());
    CHECK(again == a);
  }
}

TEST_CASE("telescoping products") {
  const RatFun X = RatFun::variable();
  CHECK(tech_product({}) == 1);
  CHECK(tech_product({3}) == X / (X - 3));
  CHECK((tech_product({3}) - 1).degree() == Degree(-1));

  const RatFun r = tech_product({1, 1});
  CHECK(r == X * (X - 2) / ((X - 1) * (X - 1)));
  CHECK(r.pretty("X") == "X(X−2)/(X−1)²");
  CHECK(r - 1 == -1 / ((X - 1) * (X - 1)));
  CHECK((r - 1).degree() == Degree(-2));

  CHECK_THROWS_AS(tech_product({1, 0}), ValidationError);
  CHECK_THROWS_AS(tech_product({1, 1, 1, 1, 1, 1, 1}), CapacityError);

  // Every list with entries in 1..3 and length up to 4.
  int lists = 0;
  for (int len = 1; len <= 4; ++len) {
    std::vector<int> a(len, 1);
    while (true) {
      ++lists;
      const Degree d = (tech_product(a) - 1).degree();
      INFO("list length " << len);
      REQUIRE(d <= Degree(-len));
      int k = 0;
      while (k < len && a[k] == 3) a[k++] = 1;
      if (k == len) break;
      ++a[k];
    }
  }
  CHECK(lists == 3 + 9 + 27 + 81);
}
