#pragma once

#include "operadix/freeoperad.hpp"
#include "operadix/rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace operadix {

/// Sparse p-linear map V^{(x)p} -> V on a fixed basis of V: for each input
/// tuple of basis indices, the output coordinates.
class MultilinearMap {
 public:
  using Key = std::vector<std::uint16_t>;
  using Vec = std::map<std::uint16_t, Rational>;

  MultilinearMap(std::size_t dim, int arity);
  static MultilinearMap identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  int arity() const noexcept { return arity_; }
  const std::map<Key, Vec>& entries() const noexcept { return entries_; }
  bool is_zero() const noexcept { return entries_.empty(); }

  /// Throws DimensionError for a key of the wrong length or out-of-range index.
  void add(const Key& inputs, std::uint16_t out, const Rational& c);
  Rational at(const Key& inputs, std::uint16_t out) const;
  Vec apply(const Key& inputs) const;

  MultilinearMap& operator+=(const MultilinearMap& other);
  MultilinearMap& operator-=(const MultilinearMap& other);
  MultilinearMap& operator*=(const Rational& c);
  friend MultilinearMap operator+(MultilinearMap a, const MultilinearMap& b) { return a += b; }
  friend MultilinearMap operator-(MultilinearMap a, const MultilinearMap& b) { return a -= b; }
  friend MultilinearMap operator*(const Rational& c, MultilinearMap a) { return a *= c; }
  friend bool operator==(const MultilinearMap& a, const MultilinearMap& b) {
    return a.dim_ == b.dim_ && a.arity_ == b.arity_ && a.entries_ == b.entries_;
  }

  /// Index of (inputs, out) in the flattened coordinate space of size
  /// dim^(arity+1).
  std::uint64_t flat_index(const Key& inputs, std::uint16_t out) const;
  std::uint64_t flat_size() const;

 private:
  void check_compatible(const MultilinearMap& other) const;

  std::size_t dim_;
  int arity_;
  std::map<Key, Vec> entries_;
};

/// f o_i g: feed the output of g into input i (1-based) of f.
MultilinearMap compose(const MultilinearMap& f, int i, const MultilinearMap& g);

/// Finite-dimensional algebra given by structure constants; table[i][j]
/// holds the coordinates of e_i e_j.
struct AntiAssocAlgebra {
  std::size_t dim = 0;
  std::vector<std::string> basis;
  std::vector<std::vector<std::vector<Rational>>> table;

  /// Zero product on `dim` basis vectors e1, e2, ...
  static AntiAssocAlgebra zero(std::size_t dim);
  /// Throws DimensionError when table and basis do not match dim.
  void check_shape() const;
  MultilinearMap product() const;
  std::vector<Rational> multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) const;
};

struct Violation {
  std::size_t i, j, k;
  std::vector<Rational> value;  // (e_i e_j) e_k + e_i (e_j e_k)
};

/// All basis triples violating (ab)c + a(bc) = 0.
std::vector<Violation> validate(const AntiAssocAlgebra& alg);

/// Free anti-associative algebra on g generators: words of length 1, 2 and
/// left-bracketed words of length 3; a(bc) is rewritten to -(ab)c and
/// longer products vanish. Throws DomainError for g < 1.
AntiAssocAlgebra free_antiassoc(int g);

/// Checks that u is a two-sided unit (DomainError otherwise) and returns
/// whether the product is identically zero. Anti-associativity with c = 1
/// forces ab + ab = 0, so a unital algebra with a nonzero product cannot be
/// valid; InconsistencyError is thrown if validate() says otherwise.
bool unital_collapse(const AntiAssocAlgebra& alg, const std::vector<Rational>& u);

/// Random anti-associative algebra of the given dimension (1..6): a graded
/// nilpotent product V1 V1 -> V2, V1 V2 + V2 V1 -> V3 whose second half is
/// sampled from the solutions of the (then linear) anti-associativity
/// constraints, followed by a random unimodular change of basis. The
/// product is nonzero for dim >= 2; a one-dimensional anti-associative
/// algebra has zero product.
AntiAssocAlgebra random_antiassoc(std::size_t dim, std::mt19937_64& rng);

/// Random p-linear map with `nonzeros` entries drawn from -3..3.
MultilinearMap random_cochain(std::size_t dim, int arity, std::size_t nonzeros, std::mt19937_64& rng);

using Cochain4 = std::array<MultilinearMap, 4>;

/// Parses a cochain formula such as "af(b,c,de) - f(a,b,c(de))". Variables
/// are single letters used once each in alphabetical order; juxtaposition
/// of two factors is the product; `f` (or g, phi, φ) applied to `arity`
/// arguments is the cochain. Returns an element over the generators
/// "mu" (arity 2) and "f" (the given arity). Throws ParseError.
OperadElement parse_cochain_formula(std::string_view text, int arity);

/// Evaluates such an element, with `mu` the algebra product and `f` the
/// cochain.
MultilinearMap evaluate(const OperadElement& formula, const MultilinearMap& mu, const MultilinearMap& f);

/// Printed formulas of delta2 and of the four components of delta3.
extern const char* const kDelta2Formula;
extern const std::array<const char*, 4> kDelta3Formulas;

/// All deltas throw DimensionError when the cochain does not match the
/// algebra dimension or has the wrong arity.
/// a phi(b) - phi(ab) + phi(a) b.
MultilinearMap delta1(const AntiAssocAlgebra& alg, const MultilinearMap& phi);
MultilinearMap delta2(const AntiAssocAlgebra& alg, const MultilinearMap& f);
/// delta2 read off the model: d(mu3) with one mu2 replaced by f.
MultilinearMap delta2_derived(const AntiAssocAlgebra& alg, const MultilinearMap& f);
Cochain4 delta3_printed(const AntiAssocAlgebra& alg, const MultilinearMap& g);
/// d(mu5_i) with g in the mu3 slot and the product in every mu2 slot.
Cochain4 delta3_derived(const AntiAssocAlgebra& alg, const MultilinearMap& g);

struct Delta3Mismatch {
  int component;  // 1..4
  MultilinearMap::Key inputs;
  std::uint16_t output;
  Rational printed;
  Rational derived;
};

/// Entry-wise differences between the printed and derived delta3.
std::vector<Delta3Mismatch> compare_delta3(const AntiAssocAlgebra& alg, const MultilinearMap& g);
/// Symbolic comparison of the printed and derived formulas: the components
/// whose printed formula differs from d(mu5_i) as elements of the free operad.
std::vector<int> delta3_formula_mismatches();

struct CohomologyDims {
  std::size_t h1 = 0;
  std::size_t h2 = 0;
  std::size_t h3 = 0;
};

/// Standard complex C1 -> C2 -> C3 -> 0.
CohomologyDims standard_cohomology_dims(const AntiAssocAlgebra& alg);
/// Deformation complex through delta3_derived.
CohomologyDims deformation_h_dims(const AntiAssocAlgebra& alg);

}  // namespace operadix
