#pragma once

#include "operadix/rational.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace operadix {

/// Truncated power series sum_{e <= trunc} c_e t^e with exact rational
/// coefficients. Stored as integer numerators over one shared positive
/// denominator, kept in lowest terms; zero coefficients are never stored.
class PSeries {
 public:
  PSeries() = default;
  explicit PSeries(int trunc);

  /// Terms with exponent above `trunc` are dropped; repeated exponents add.
  static PSeries from_terms(const std::vector<std::pair<int, Rational>>& terms, int trunc);
  static PSeries monomial(const Rational& c, int exponent, int trunc);
  /// The series t.
  static PSeries identity(int trunc) { return monomial(1, 1, trunc); }

  int trunc() const noexcept { return trunc_; }
  Rational coeff(int exponent) const;
  std::map<int, Rational> coeffs() const;
  const Integer& denominator() const noexcept { return den_; }
  const std::map<int, Integer>& numerators() const noexcept { return num_; }

  bool is_zero() const noexcept { return num_.empty(); }
  bool is_integral() const { return den_ == 1; }
  /// Lowest exponent with a nonzero coefficient.
  std::optional<int> valuation() const;
  PSeries truncated(int trunc) const;

  friend bool operator==(const PSeries& a, const PSeries& b) {
    return a.trunc_ == b.trunc_ && a.den_ == b.den_ && a.num_ == b.num_;
  }
  friend PSeries operator+(const PSeries& a, const PSeries& b);
  friend PSeries operator-(const PSeries& a, const PSeries& b);
  friend PSeries operator-(const PSeries& a);
  friend PSeries operator*(const PSeries& a, const PSeries& b);
  friend PSeries operator*(const Rational& c, const PSeries& a);

 private:
  PSeries(int trunc, Integer den, std::map<int, Integer> num);
  void normalize();

  int trunc_ = 0;
  Integer den_ = 1;
  std::map<int, Integer> num_;
};

/// f(g(t)) to order min(trunc f, trunc g). Throws DomainError if g(0) != 0.
PSeries compose(const PSeries& f, const PSeries& g);

/// The compositional inverse h of f with f(h(t)) = t + O(t^{order+1}).
/// Requires f(0) = 0, f'(0) = 1 and order <= f.trunc(); throws DomainError
/// otherwise. Solved coefficient by coefficient; integral input stays on
/// the integer path.
PSeries revert(const PSeries& f, int order);

/// Same result as `revert`, computed by Newton iteration on h.
PSeries revert_newton(const PSeries& f, int order);

/// Smallest exponent with a strictly negative coefficient.
std::optional<int> first_negative(const PSeries& f);

/// -f(-t): the coefficient of t^k is multiplied by (-1)^{k+1}.
PSeries odd_reflect(const PSeries& f);

/// "t - t^2 + 3/2 t^5 + O(t^10)".
std::string to_string(const PSeries& f);

/// Parses "c:e,c:e,..." (coefficient:exponent pairs, coefficients may be
/// "p/q") into a series truncated at `trunc`. Throws ParseError.
PSeries parse_sparse_spec(const std::string& spec, int trunc);

/// Incremental reversion of f = t*F(t^s). The inverse has the form
/// t*V(t^s) with V = 1 - sum_j b_j y^j V^{1+sj} where F(y) = 1 + sum_j b_j y^j,
/// so only the residue class 1 mod s is ever computed. Powers of V are
/// advanced with the power-series power recurrence (one O(k) step per
/// coefficient and power), which keeps the full state resumable.
template <class Scalar>
class BasicReverter {
 public:
  struct State {
    int stride = 1;
    std::vector<Scalar> v;                                  // V_0..V_K
    std::vector<std::pair<int, std::vector<Scalar>>> powers;  // (m, [V^m]_0..K)
  };

  /// f must satisfy the reversion preconditions; its support beyond the
  /// linear term sets the stride.
  explicit BasicReverter(const PSeries& f);
  /// Resumes from a state produced for the same f. Throws DomainError when
  /// the state does not belong to f.
  BasicReverter(const PSeries& f, State state);

  int stride() const noexcept { return state_.stride; }
  /// Highest exponent of the inverse computed so far.
  int order() const noexcept { return 1 + stride() * (static_cast<int>(state_.v.size()) - 1); }
  /// Computes coefficients up to exponent `order`; `progress` (if set) is
  /// called with the current exponent every few coefficients.
  void extend_to(int order, const std::function<void(int)>& progress = {});

  const State& state() const noexcept { return state_; }
  /// Coefficient of t^(1 + s*k) in the inverse.
  const Scalar& strided_coeff(std::size_t k) const { return state_.v.at(k); }
  PSeries series(int trunc) const;

 private:
  void step();

  PSeries f_;
  std::vector<std::pair<int, Scalar>> b_;  // (j, b_j) for j >= 1
  State state_;
};

using IntegerReverter = BasicReverter<Integer>;
using RationalReverter = BasicReverter<Rational>;

}  // namespace operadix
