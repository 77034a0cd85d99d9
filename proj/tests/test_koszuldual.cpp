#include "doctest.h"

#include "operadix/errors.hpp"
#include "operadix/koszuldual.hpp"

using namespace operadix;

namespace {

const Family kFamilies[] = {Family::TotAss, Family::PartAss, Family::TotAssTilde, Family::PartAssTilde};

bool same_span(const QMatrix& a, const QMatrix& b) {
  auto dims = subspace_dim_sum(a, b);
  return dims.dim_a == dims.dim_b && dims.dim_sum == dims.dim_a;
}

}  // namespace

TEST_CASE("pairing signs") {
  CHECK(pairing_signs(2) == std::vector<int>{1, -1});
  CHECK(pairing_signs(3) == std::vector<int>{1, 1, 1});
  CHECK(pairing_signs(4) == std::vector<int>{1, -1, 1, -1});
  CHECK_THROWS_AS(pairing_signs(1), DomainError);
}

TEST_CASE("dual of small presentations") {
  auto ass = dual(QuadraticPresentation(2, 0, QMatrix::from_rows({{1, -1}})));
  CHECK(ass.d == 0);
  CHECK(same_span(ass.relspace, QMatrix::from_rows({{1, -1}})));
  CHECK(same_presentation(ass, standard_quadratic(Family::PartAss, 2, 0)));

  auto t3 = dual(QuadraticPresentation(3, 0, QMatrix::from_rows({{1, -1, 0}, {1, 0, -1}})));
  CHECK(t3.d == 1);
  CHECK(same_span(t3.relspace, QMatrix::from_rows({{1, 1, 1}})));
  CHECK(same_presentation(t3, standard_quadratic(Family::PartAss, 3, 1)));

  auto free = dual(QuadraticPresentation(4, 0, QMatrix(0, 4)));
  CHECK(rank(free.relspace) == 4);
  CHECK(free.d == 2);

  CHECK_THROWS_AS(QuadraticPresentation(3, 0, QMatrix(0, 4)), DimensionError);
}

TEST_CASE("projection of the standard relations") {
  CHECK(standard_quadratic(Family::PartAssTilde, 4, 0).relspace == row_basis(QMatrix::from_rows({{1, 1, 1, 1}})));
  CHECK(standard_quadratic(Family::TotAss, 5, 1).relspace.rows() == 4);
  auto tilde = standard_quadratic(Family::TotAssTilde, 4, 0);
  CHECK(same_span(tilde.relspace, QMatrix::from_rows({{1, 1, 0, 0}, {1, 0, -1, 0}, {1, 0, 0, 1}})));
}

TEST_CASE("duality table") {
  for (int n = 2; n <= 6; ++n) {
    for (int d = -1; d <= 2; ++d) CHECK(verify_duality_table(n, d));
  }
  CHECK_THROWS_AS(verify_duality_table(7, 0), DomainError);
}

TEST_CASE("duality is an involution with complementary dimensions") {
  for (int n = 2; n <= 6; ++n) {
    for (int d = 0; d <= 1; ++d) {
      for (Family f : kFamilies) {
        auto qp = standard_quadratic(f, n, d);
        auto once = dual(qp);
        CHECK(once.d == -d + n - 2);
        CHECK(rank(qp.relspace) + rank(once.relspace) == static_cast<std::size_t>(n));
        auto twice = dual(once);
        CHECK(twice.d == d);
        CHECK(same_span(twice.relspace, qp.relspace));
      }
    }
  }
}

TEST_CASE("random relation spaces are annihilated by their dual") {
  for (int n = 2; n <= 6; ++n) {
    for (unsigned seed = 0; seed < 10; ++seed) {
      QMatrix rel(0, static_cast<std::size_t>(n));
      unsigned state = seed * 2654435761u + static_cast<unsigned>(n);
      int rows = static_cast<int>(seed % static_cast<unsigned>(n + 1));
      for (int r = 0; r < rows; ++r) {
        std::vector<Rational> row;
        for (int c = 0; c < n; ++c) {
          state = state * 1103515245u + 12345u;
          row.emplace_back(static_cast<long>((state >> 16) % 7) - 3);
        }
        rel.append_dense_row(row);
      }
      QuadraticPresentation qp(n, 0, rel);
      auto perp = dual(qp);
      auto s = pairing_signs(n);
      for (std::size_t i = 0; i < qp.relspace.rows(); ++i) {
        for (std::size_t j = 0; j < perp.relspace.rows(); ++j) {
          Rational sum;
          for (int c = 0; c < n; ++c) {
            sum += s[static_cast<std::size_t>(c)] * qp.relspace.at(i, static_cast<std::size_t>(c)) *
                   perp.relspace.at(j, static_cast<std::size_t>(c));
          }
          CHECK(sum == 0);
        }
      }
      CHECK(rank(qp.relspace) + rank(perp.relspace) == static_cast<std::size_t>(n));
    }
  }
}
