#pragma once

#include "operadix/exactla.hpp"
#include "operadix/family.hpp"
#include "operadix/freeoperad.hpp"

#include <vector>

namespace operadix {

/// One-generator quadratic presentation restricted to the span of the n
/// composites mu o_i mu. Relation rows are coordinates in that ordered basis.
struct QuadraticPresentation {
  int n = 2;
  int d = 0;
  QMatrix relspace{0, 2};

  /// Reduces the rows to a canonical basis. Throws DimensionError when the
  /// column count is not n and DomainError for n < 2.
  QuadraticPresentation(int n, int d, const QMatrix& relations);
};

/// s_i = (-1)^{(i+1)(n+1)} for i = 1..n. Throws DomainError for n < 2.
std::vector<int> pairing_signs(int n);

/// Annihilator of the relations under the signed pairing, on the generator
/// of degree -d + n - 2.
QuadraticPresentation dual(const QuadraticPresentation& qp);

/// Coordinates of the relations of a presentation in the composite basis.
/// Throws DomainError if a relation leaves that span.
QuadraticPresentation project(const Presentation& p);
QuadraticPresentation standard_quadratic(Family kind, int n, int d);

/// The family whose relations the dual of `kind` carries.
Family dual_family(Family kind);

/// True when both presentations have the same n, d and relation subspace.
bool same_presentation(const QuadraticPresentation& a, const QuadraticPresentation& b);

/// Checks the four duality identities between the totally and partially
/// associative families and their suspended variants at (n, d).
/// Throws DomainError for n outside 2..6.
bool verify_duality_table(int n, int d);

}  // namespace operadix
