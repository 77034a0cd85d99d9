#include "operadix/koszuldual.hpp"

#include "operadix/errors.hpp"

#include <string>

namespace operadix {

QuadraticPresentation::QuadraticPresentation(int n_, int d_, const QMatrix& relations)
    : n(n_), d(d_) {
  if (n < 2) throw DomainError("arity must be at least 2, got " + std::to_string(n));
  if (relations.cols() != static_cast<std::size_t>(n)) {
    throw DimensionError("relation rows need " + std::to_string(n) + " coordinates, got " +
                         std::to_string(relations.cols()));
  }
  relspace = row_basis(relations);
}

std::vector<int> pairing_signs(int n) {
  if (n < 2) throw DomainError("arity must be at least 2, got " + std::to_string(n));
  std::vector<int> s;
  for (int i = 1; i <= n; ++i) s.push_back(((i + 1) * (n + 1)) % 2 == 0 ? 1 : -1);
  return s;
}

QuadraticPresentation dual(const QuadraticPresentation& qp) {
  std::vector<int> s = pairing_signs(qp.n);
  QMatrix weighted(0, static_cast<std::size_t>(qp.n));
  for (std::size_t r = 0; r < qp.relspace.rows(); ++r) {
    SparseRow row = qp.relspace.row(r);
    for (auto& [c, v] : row) v *= s[c];
    weighted.append_row(std::move(row));
  }
  QMatrix perp = QMatrix::from_rows(nullspace(weighted), static_cast<std::size_t>(qp.n));
  return QuadraticPresentation(qp.n, -qp.d + qp.n - 2, perp);
}

QuadraticPresentation project(const Presentation& p) {
  int n = p.arity();
  OperadElement mu = OperadElement::generator(p.signature, 0);
  std::vector<std::pair<Monomial, Rational>> basis;
  for (int i = 1; i <= n; ++i) {
    OperadElement c = compose(mu, i, mu);
    basis.push_back(*c.terms().begin());
  }
  QMatrix rows(0, static_cast<std::size_t>(n));
  for (const auto& rel : p.relations) {
    std::vector<Rational> coords(static_cast<std::size_t>(n));
    std::size_t matched = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      Rational c = rel.coeff(basis[i].first);
      if (c != 0) ++matched;
      coords[i] = c / basis[i].second;
    }
    if (matched != rel.terms().size()) {
      throw DomainError("relation " + to_string(rel) + " is not a combination of the composites");
    }
    rows.append_dense_row(coords);
  }
  return QuadraticPresentation(n, p.degree(), rows);
}

QuadraticPresentation standard_quadratic(Family kind, int n, int d) {
  return project(standard_relations(kind, n, d));
}

Family dual_family(Family kind) {
  switch (kind) {
    case Family::TotAss: return Family::PartAss;
    case Family::PartAss: return Family::TotAss;
    case Family::TotAssTilde: return Family::PartAssTilde;
    case Family::PartAssTilde: return Family::TotAssTilde;
  }
  throw DomainError("unknown family");
}

bool same_presentation(const QuadraticPresentation& a, const QuadraticPresentation& b) {
  return a.n == b.n && a.d == b.d && a.relspace == b.relspace;
}

bool verify_duality_table(int n, int d) {
  if (n < 2 || n > 6) throw DomainError("duality table is checked for n in 2..6, got " + std::to_string(n));
  for (Family f : {Family::TotAss, Family::PartAss, Family::TotAssTilde, Family::PartAssTilde}) {
    QuadraticPresentation got = dual(standard_quadratic(f, n, d));
    if (!same_presentation(got, standard_quadratic(dual_family(f), n, -d + n - 2))) return false;
  }
  return true;
}

}  // namespace operadix
