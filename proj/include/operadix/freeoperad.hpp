#pragma once

#include "operadix/exactla.hpp"
#include "operadix/family.hpp"
#include "operadix/rational.hpp"
#include "operadix/trees.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace operadix {

struct GeneratorSpec {
  std::string name;
  int arity = 2;
  int degree = 0;
};

/// An ordered, immutable generator list shared by all elements built on it.
class Signature {
 public:
  /// Throws DomainError for duplicate names or arities outside 2..255.
  explicit Signature(std::vector<GeneratorSpec> generators);

  std::size_t size() const noexcept { return gens_.size(); }
  const GeneratorSpec& operator[](std::size_t i) const { return gens_.at(i); }
  const std::vector<GeneratorSpec>& generators() const noexcept { return gens_; }
  /// Throws DomainError for an unknown name.
  int index_of(const std::string& name) const;

 private:
  std::vector<GeneratorSpec> gens_;
};

using SignaturePtr = std::shared_ptr<const Signature>;
SignaturePtr make_signature(std::vector<GeneratorSpec> generators);

/// Tree monomial: preorder list of vertex labels, each a generator index,
/// with -1 for a leaf. The shape is recovered from the generator arities.
using Monomial = std::vector<std::int16_t>;
constexpr std::int16_t kLeaf = -1;

PlanarTree monomial_shape(const Signature& sig, const Monomial& m);
int monomial_degree(const Signature& sig, const Monomial& m);
int monomial_arity(const Monomial& m);
/// "(•(••)•)" together with the preorder vertex labels.
std::string render_shape(const Signature& sig, const Monomial& m);
/// Bracket form with labels in front of each vertex: "(mu2 • (mu3 • • •))".
std::string render_labeled(const Signature& sig, const Monomial& m);
/// Labels the vertices of `shape` with the unique generator of each arity.
/// Throws DomainError when an arity has no generator or several.
Monomial monomial_from_shape(const Signature& sig, const PlanarTree& shape);

/// Homogeneous linear combination of tree monomials of one arity and degree.
///
/// Signs: a monomial stands for the composite of its vertices taken in
/// preorder. Whenever a construction produces the vertices in another
/// order, the coefficient picks up (-1)^{deg u * deg v} for every pair
/// (u, v) that has to be transposed to restore preorder.
class OperadElement {
 public:
  /// The zero element of the given arity and degree.
  OperadElement(SignaturePtr sig, int arity, int degree);

  static OperadElement generator(const SignaturePtr& sig, const std::string& name);
  static OperadElement generator(const SignaturePtr& sig, int index);
  static OperadElement monomial(const SignaturePtr& sig, Monomial m, const Rational& coeff = 1);

  const SignaturePtr& signature() const noexcept { return sig_; }
  int arity() const noexcept { return arity_; }
  int degree() const noexcept { return degree_; }
  const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Rational coeff(const Monomial& m) const;
  /// Terms sorted by (shape encoding, labels).
  std::vector<std::pair<Monomial, Rational>> sorted_terms() const;

  /// Adds c*m; throws DomainError if m has the wrong arity or degree.
  void add_term(const Monomial& m, const Rational& c);

  OperadElement& operator+=(const OperadElement& other);
  OperadElement& operator-=(const OperadElement& other);
  OperadElement& operator*=(const Rational& c);
  friend OperadElement operator+(OperadElement a, const OperadElement& b) { return a += b; }
  friend OperadElement operator-(OperadElement a, const OperadElement& b) { return a -= b; }
  friend OperadElement operator*(const Rational& c, OperadElement a) { return a *= c; }
  friend bool operator==(const OperadElement& a, const OperadElement& b);

 private:
  void check_compatible(const OperadElement& other) const;

  SignaturePtr sig_;
  int arity_;
  int degree_;
  std::map<Monomial, Rational> terms_;
};

/// "((••)•) + (•(••))" or, with labels, "(mu2 (mu2 • •) •) + ...".
std::string to_string(const OperadElement& x, bool labeled = false);

/// Parses a signed sum of composition expressions over named generators,
/// e.g. "(mu2 o2 mu3) o4 mu2 - 2 (mu3 o3 mu2) o4 mu2". The operator is "o"
/// or "∘", optionally followed by "_", then the slot. Coefficients are
/// integers or fractions. Throws ParseError, or DomainError for an unknown
/// generator or inhomogeneous terms.
OperadElement parse_compositions(const SignaturePtr& sig, std::string_view text);

/// Parses a signed sum of bracket trees, "((••)•) + (•(••))", labelling each
/// vertex with the unique generator of its arity.
OperadElement parse_brackets(const SignaturePtr& sig, std::string_view text);

/// x o_i y: graft the root of y onto leaf i (1-based) of x. Throws
/// DomainError for a slot out of range or mismatched signatures.
OperadElement compose(const OperadElement& x, int i, const OperadElement& y);

/// Leibniz extension of `rules` (generator name -> image of degree one
/// less). Throws DomainError when a generator occurring in x has no rule
/// or a rule has the wrong arity or degree.
OperadElement apply_derivation(const std::map<std::string, OperadElement>& rules,
                               const OperadElement& x);

/// All monomials of the given arity and degree, canonical order.
std::vector<Monomial> monomial_basis(const Signature& sig, int arity, int degree);

struct Presentation {
  SignaturePtr signature;
  std::vector<OperadElement> relations;
  int arity() const { return (*signature)[0].arity; }
  int degree() const { return (*signature)[0].degree; }
};

/// One generator "mu" of arity n and degree d with the defining relations
/// of the family.
Presentation standard_relations(Family kind, int n, int d);

/// Weight-l monomials of a one-generator presentation (empty for l = 0).
std::vector<Monomial> weight_basis(const Presentation& p, int l);

/// Rows span the weight-l part of the ideal generated by the relations, in
/// the coordinates of weight_basis(p, l). Empty for l < 2.
QMatrix relation_span(const Presentation& p, int l);

struct QuotientDim {
  Integer planar;
  Integer full;  // planar * (l(n-1)+1)!
};

QuotientDim quotient_dim(const Presentation& p, int l);

/// eta_k = (...((mu o_1 mu) o_1 mu)...) o_1 mu with k vertices.
OperadElement left_comb(const Presentation& p, int k);

/// Rewrites x, modulo the partial associativity relation, into a
/// combination of monomials whose vertices all have a leaf as first child.
/// Only defined when n and d have the same parity; throws DomainError
/// otherwise.
OperadElement scomb_normal_form(int n, int d, const OperadElement& x);

/// Dimension of the kernel of the map from span(S^n_l) to the weight-l
/// quotient of the partially associative operad.
std::size_t comb_map_kernel_dim(int n, int d, int l);

}  // namespace operadix
