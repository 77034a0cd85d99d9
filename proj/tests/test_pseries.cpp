#include "doctest.h"

#include "operadix/errors.hpp"
#include "operadix/pseries.hpp"

#include <random>

using namespace operadix;

namespace {

PSeries poly(std::vector<std::pair<int, long>> terms, int trunc) {
  std::vector<std::pair<int, Rational>> q;
  for (auto [e, c] : terms) q.emplace_back(e, Rational(c));
  return PSeries::from_terms(q, trunc);
}

std::vector<long> dense_coeffs(const PSeries& f, int from, int to) {
  std::vector<long> out;
  for (int e = from; e <= to; ++e) {
    Rational c = f.coeff(e);
    REQUIRE(c.get_den() == 1);
    out.push_back(c.get_num().get_si());
  }
  return out;
}

PSeries random_unit_series(std::mt19937& rng, int trunc) {
  std::uniform_int_distribution<int> value(-3, 3);
  std::vector<std::pair<int, Rational>> terms{{1, Rational(1)}};
  int degree = 2 + static_cast<int>(rng() % 6);
  for (int e = 2; e <= degree; ++e) terms.emplace_back(e, Rational(value(rng)));
  return PSeries::from_terms(terms, trunc);
}

}  // namespace

TEST_CASE("arithmetic truncates to the smaller order") {
  PSeries t = PSeries::identity(10);
  CHECK(t + t == poly({{1, 2}}, 10));
  CHECK(poly({{1, 1}, {2, -1}}, 10) * poly({{0, 1}, {1, 1}}, 10) == poly({{1, 1}, {3, -1}}, 10));
  CHECK((poly({{1, 1}, {5, 1}}, 10) + poly({{1, 1}}, 3)).trunc() == 3);
  CHECK((poly({{1, 1}, {5, 1}}, 10) + poly({{1, 1}}, 3)) == poly({{1, 2}}, 3));
  CHECK(-(-t) == t);
  CHECK((t - t).is_zero());
}

TEST_CASE("geometric expansion times its denominator is t") {
  for (int n = 2; n <= 6; ++n) {
    std::vector<std::pair<int, long>> terms;
    for (int k = 0; k * (n - 1) + 1 <= 40; ++k) terms.emplace_back(k * (n - 1) + 1, 1);
    PSeries g = poly(terms, 40);
    PSeries denom = poly({{0, 1}, {n - 1, -1}}, 40);
    CHECK(g * denom == PSeries::identity(40));
  }
}

TEST_CASE("shared denominator stays in lowest terms") {
  PSeries f = PSeries::from_terms({{1, Rational(1, 2)}, {2, Rational(1, 3)}}, 5);
  CHECK(f.denominator() == 6);
  PSeries g = 6 * f;
  CHECK(g.denominator() == 1);
  CHECK(g.coeff(1) == 3);
  CHECK((f - f).denominator() == 1);
}

TEST_CASE("composition") {
  PSeries f = poly({{1, 1}, {2, -1}, {3, 1}}, 12);
  CHECK(compose(f, PSeries::identity(12)) == f);
  CHECK(compose(poly({{2, 1}}, 10), poly({{1, 1}, {2, 1}}, 10)) == poly({{2, 1}, {3, 2}, {4, 1}}, 10));
  CHECK_THROWS_AS(compose(f, poly({{0, 1}, {1, 1}}, 12)), DomainError);
  PSeries h = revert(poly({{1, 1}, {2, -1}, {3, 1}}, 9), 9);
  CHECK(compose(poly({{1, 1}, {2, -1}, {3, 1}}, 9), h) == PSeries::identity(9));
}

TEST_CASE("reversion reproduces the printed inverses") {
  PSeries a = revert(poly({{1, 1}, {2, -1}, {3, 1}}, 9), 9);
  CHECK(dense_coeffs(a, 0, 9) == std::vector<long>{0, 1, 1, 1, 0, -4, -14, -30, -33, 55});

  PSeries b = revert(poly({{1, 1}, {3, -1}, {5, 1}}, 13), 13);
  CHECK(b == poly({{1, 1}, {3, 1}, {5, 2}, {7, 4}, {9, 5}, {11, -13}, {13, -147}}, 13));

  PSeries c = revert(poly({{1, 1}, {4, -1}, {7, 1}}, 25), 25);
  CHECK(c == poly({{1, 1}, {4, 1}, {7, 3}, {10, 11}, {13, 42}, {16, 153}, {19, 469}, {22, 690}, {25, -5967}},
                  25));

  CHECK(revert(PSeries::identity(30), 30) == PSeries::identity(30));
}

TEST_CASE("reversion preconditions") {
  CHECK_THROWS_AS(revert(poly({{0, 1}, {1, 1}}, 5), 5), DomainError);
  CHECK_THROWS_AS(revert(poly({{1, 2}}, 5), 5), DomainError);
  CHECK_THROWS_AS(revert(poly({{2, 1}}, 5), 5), DomainError);
  CHECK_THROWS_AS(revert(poly({{1, 1}}, 5), 6), DomainError);
}

TEST_CASE("first negative coefficient") {
  CHECK(first_negative(revert(poly({{1, 1}, {2, -1}, {3, 1}}, 9), 9)) == 5);
  CHECK_FALSE(first_negative(poly({{1, 1}, {2, 1}}, 9)).has_value());
  CHECK(first_negative(revert(poly({{1, 1}, {5, -1}, {9, 1}}, 60), 60)) == 57);
}

TEST_CASE("odd reflection") {
  CHECK(odd_reflect(poly({{1, 1}, {2, 1}, {3, 1}}, 5)) == poly({{1, 1}, {2, -1}, {3, 1}}, 5));
  for (int n = 2; n <= 6; ++n) {
    for (int d = 0; d <= 1; ++d) {
      PSeries tass = poly({{1, 1}, {n, d % 2 ? -1 : 1}, {2 * n - 1, 1}}, 20);
      CHECK(odd_reflect(odd_reflect(tass)) == tass);
      // -f(-t) of t + (-1)^d t^n + t^{2n-1} flips the middle sign iff n is even.
      int middle = (d % 2 ? -1 : 1) * (n % 2 == 0 ? -1 : 1);
      CHECK(odd_reflect(tass) == poly({{1, 1}, {n, middle}, {2 * n - 1, 1}}, 20));
    }
  }
}

TEST_CASE("random reversion round trips") {
  std::mt19937 rng(31337);
  for (int trial = 0; trial < 40; ++trial) {
    int order = 6 + static_cast<int>(rng() % 15);
    PSeries f = random_unit_series(rng, order);
    PSeries h = revert(f, order);
    CHECK(compose(f, h) == PSeries::identity(order));
    CHECK(compose(h, f) == PSeries::identity(order));
    CHECK(h.is_integral());
    CHECK(revert(odd_reflect(f), order) == odd_reflect(h));
    CHECK(revert_newton(f, order) == h);
  }
}

TEST_CASE("rational reversion") {
  PSeries f = PSeries::from_terms({{1, Rational(1)}, {2, Rational(1, 2)}, {4, Rational(-2, 3)}}, 14);
  PSeries h = revert(f, 14);
  CHECK_FALSE(h.is_integral());
  CHECK(compose(f, h) == PSeries::identity(14));
  CHECK(revert_newton(f, 14) == h);
}

TEST_CASE("inverse of the odd-degree series is supported on 1 mod n-1") {
  for (int n = 2; n <= 8; ++n) {
    int order = 12 * (n - 1) + 1;
    PSeries h = revert(poly({{1, 1}, {n, -1}, {2 * n - 1, 1}}, order), order);
    for (const auto& [e, c] : h.coeffs()) CHECK((e - 1) % (n - 1) == 0);
    CHECK(revert_newton(poly({{1, 1}, {n, -1}, {2 * n - 1, 1}}, order), order) == h);
  }
}

TEST_CASE("strided reverter resumes from saved state") {
  PSeries f = poly({{1, 1}, {5, -1}, {9, 1}}, 120);
  IntegerReverter full(f);
  full.extend_to(120);

  IntegerReverter part(f);
  part.extend_to(60);
  CHECK(part.stride() == 4);
  CHECK(part.order() == 57);
  IntegerReverter resumed(f, part.state());
  resumed.extend_to(120);
  CHECK(resumed.series(120) == full.series(120));

  IntegerReverter other(poly({{1, 1}, {5, -1}, {9, 2}}, 120));
  other.extend_to(60);
  CHECK_THROWS_AS(IntegerReverter(f, other.state()), DomainError);
}

TEST_CASE("text forms") {
  CHECK(to_string(poly({{1, 1}, {2, -1}, {3, 1}}, 9)) == "t - t^2 + t^3 + O(t^10)");
  CHECK(to_string(PSeries(4)) == "0 + O(t^5)");
  CHECK(to_string(PSeries::from_terms({{0, Rational(-3, 2)}, {2, Rational(2)}}, 3)) ==
        "-3/2 + 2 t^2 + O(t^4)");
  CHECK(parse_sparse_spec("1:1,-1:8,1:15", 20) == poly({{1, 1}, {8, -1}, {15, 1}}, 20));
  CHECK(parse_sparse_spec("1/2:3", 5).coeff(3) == Rational(1, 2));
  CHECK_THROWS_AS(parse_sparse_spec("1;1", 5), ParseError);
  CHECK_THROWS_AS(parse_sparse_spec("1:x", 5), ParseError);
}
