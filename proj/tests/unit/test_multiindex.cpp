#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "rpop/multiindex.hpp"
#include "rpop/polynomial.hpp"
#include "rpop/rng.hpp"

using namespace rpop;

TEST_CASE("basis n=2 tau=2 matches the monomial vector order") {
  const MonomialBasis b = enumerate_basis(2, 2);
  REQUIRE(b.size() == 6);
  const std::vector<Exponent> expected = {{2, 0, 0}, {1, 1, 0}, {1, 0, 1},
                                          {0, 2, 0}, {0, 1, 1}, {0, 0, 2}};
  CHECK(b.exponents == expected);
  CHECK(b.e1_index == 0);
  CHECK(b.exponents[b.e1_index] == Exponent{2, 0, 0});
}

TEST_CASE("basis n=3 tau=1 is the coordinate exponents") {
  const MonomialBasis b = enumerate_basis(3, 1);
  REQUIRE(b.size() == 4);
  const std::vector<Exponent> expected = {
      {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  CHECK(b.exponents == expected);
}

TEST_CASE("basis n=0 tau=5 is the single exponent (5)") {
  const MonomialBasis b = enumerate_basis(0, 5);
  REQUIRE(b.size() == 1);
  CHECK(b.exponents[0] == Exponent{5});
}

TEST_CASE("basis sizes, distinctness and determinism") {
  for (int n : {1, 2, 4}) {
    for (int tau : {1, 2, 3}) {
      const MonomialBasis b = enumerate_basis(n, tau);
      CHECK(b.size() ==
            static_cast<int>(binomial_checked(n + tau, tau)));
      std::set<Exponent> seen;
      for (const auto& e : b.exponents) {
        CHECK(degree(e) == tau);
        seen.insert(e);
      }
      CHECK(static_cast<int>(seen.size()) == b.size());
      const MonomialBasis again = enumerate_basis(n, tau);
      CHECK(again.exponents == b.exponents);
      // position index is the inverse of the enumeration
      for (int i = 0; i < b.size(); ++i) {
        CHECK(b.index_of(b.exponents[i]) == i);
      }
    }
  }
}

TEST_CASE("basis capacity error") {
  CHECK_THROWS_AS(enumerate_basis(100, 60), std::overflow_error);
}

TEST_CASE("homogenize w1+1 at tau=1") {
  Polynomial p = Polynomial::variable(1, 0) + Polynomial::constant(1, 1.0);
  const Polynomial ph = homogenize(p, 1);
  REQUIRE(ph.terms().size() == 2);
  CHECK(ph.terms().at(Exponent{1, 1}) == doctest::Approx(1.0));
  CHECK(ph.terms().at(Exponent{2, 0}) == doctest::Approx(1.0));
}

TEST_CASE("homogenize (w2+w3-1)^2 at tau=1 expands (x2+x3-x0)^2") {
  Polynomial lin =
      Polynomial::variable(3, 1) + Polynomial::variable(3, 2) -
      Polynomial::constant(3, 1.0);
  const Polynomial p = lin * lin;
  const Polynomial ph = homogenize(p, 1);
  // (x2+x3-x0)^2 = x0^2 + x2^2 + x3^2 - 2 x0 x2 - 2 x0 x3 + 2 x2 x3
  CHECK(ph.terms().at(Exponent{2, 0, 0, 0}) == doctest::Approx(1.0));
  CHECK(ph.terms().at(Exponent{0, 0, 2, 0}) == doctest::Approx(1.0));
  CHECK(ph.terms().at(Exponent{0, 0, 0, 2}) == doctest::Approx(1.0));
  CHECK(ph.terms().at(Exponent{1, 0, 1, 0}) == doctest::Approx(-2.0));
  CHECK(ph.terms().at(Exponent{1, 0, 0, 1}) == doctest::Approx(-2.0));
  CHECK(ph.terms().at(Exponent{0, 0, 1, 1}) == doctest::Approx(2.0));
  CHECK(ph.terms().size() == 6);
}

TEST_CASE("homogenize constants and degree errors") {
  const Polynomial c = Polynomial::constant(3, 2.5);
  const Polynomial ch = homogenize(c, 2);
  REQUIRE(ch.terms().size() == 1);
  CHECK(ch.terms().at(Exponent{4, 0, 0, 0}) == doctest::Approx(2.5));

  Polynomial quartic(1);
  quartic.add_term(Exponent{4}, 1.0);
  CHECK_THROWS_AS(homogenize(quartic, 1), std::invalid_argument);
}

TEST_CASE("homogenize then evaluate at x0=1 recovers p") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform_int(0, 3));
    Polynomial p(n);
    const MonomialBasis deg3 = enumerate_basis(n, 3);
    for (const auto& e : deg3.exponents) {
      Exponent w(e.begin() + 1, e.end());
      p.add_term(w, rng.uniform(-1e3, 1e3));
    }
    const Polynomial ph = homogenize(p, 2);
    Eigen::VectorXd w(n), x(n + 1);
    for (int i = 0; i < n; ++i) w[i] = rng.uniform(-1.0, 1.0);
    x[0] = 1.0;
    x.tail(n) = w;
    double scale = 0.0;
    for (const auto& [e, c] : p.terms()) scale += std::abs(c);
    const double diff = std::abs(ph.evaluate(x) - p.evaluate(w));
    CHECK(diff <= 1e-12 * (1.0 + scale));
  }
}

TEST_CASE("block_key sums and symmetry") {
  CHECK(block_key({2, 0}, {0, 2}) == Exponent{2, 2});
  CHECK(block_key({3, 0, 0}, {3, 0, 0}) == Exponent{6, 0, 0});
  CHECK(block_key({1, 1}, {1, 1}) == Exponent{2, 2});
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Exponent a(4), b(4);
    for (int i = 0; i < 4; ++i) {
      a[i] = static_cast<int>(rng.uniform_int(0, 5));
      b[i] = static_cast<int>(rng.uniform_int(0, 5));
    }
    CHECK(block_key(a, b) == block_key(b, a));
  }
}

TEST_CASE("block sharing: (0,2)-type and (1,1)-type entries share a key") {
  // n=1, tau=2 basis {x0^2, x0 x1, x1^2}: (2,0)+(0,2) and (1,1)+(1,1) both
  // give gamma=(2,2); brute-force enumeration of alpha+beta pairs confirms
  // exactly three ordered pairs in that block.
  const MonomialBasis b = enumerate_basis(1, 2);
  int ordered_pairs = 0;
  for (const auto& alpha : b.exponents) {
    for (const auto& beta : b.exponents) {
      if (block_key(alpha, beta) == Exponent{2, 2}) ++ordered_pairs;
    }
  }
  CHECK(ordered_pairs == 3);
}

TEST_CASE("polynomial zero handling") {
  Polynomial p(2);
  p.add_term({1, 0}, 2.0);
  p.add_term({1, 0}, -2.0);
  CHECK(p.is_zero());
  CHECK(p.terms().empty());
}
