#pragma once

#include "operadix/family.hpp"
#include "operadix/pseries.hpp"
#include "operadix/rational.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace operadix {

struct PoincareOptions {
  /// Weights above this trigger `warn` when a series has to be computed by
  /// quotient dimensions (no closed form).
  int weight_ceiling = 6;
  /// Receives warnings; null writes them to stderr.
  std::function<void(const std::string&)> warn;
};

/// Poincare series sum chi(P(a))/a! t^a, truncated at `order`. Cells without
/// a closed form (partially associative, wrong parity, n >= 3) are computed
/// weight by weight from quotient dimensions and cached.
PSeries poincare(const FamilyId& fam, int order, const PoincareOptions& options = {});

/// Series of the totally associative operad with an odd generator:
/// t - t^n + t^(2n-1), truncated at `order`.
PSeries odd_total_series(int n, int order);

/// A^n_0..A^n_L: A_0 = 1, A_l = sum over (l_2..l_n) >= 0 with sum l - 1 of
/// A_{l_2}...A_{l_n}. Throws DomainError for n < 2 or L < 0.
std::vector<Integer> a_coeffs(int n, int L);

/// g_P(-g_dual(-t)) - t. Throws DomainError unless both series start with t.
PSeries gk_residual(const PSeries& gP, const PSeries& gDual);

enum class KoszulStatus { Koszul, NotKoszul, ConjecturedNotKoszul, Unknown };
std::string to_string(KoszulStatus s);

struct KoszulVerdict {
  KoszulStatus status = KoszulStatus::Unknown;
  std::string justification;
};

/// Koszulity table of the four families; only the parity of d matters.
/// Non-Koszul cells with n >= 8 are conjectural.
KoszulVerdict koszul_verdict(const FamilyId& fam);

struct ScanResult {
  int n = 2;
  int bound = 0;
  std::optional<int> first_negative;

  bool not_koszul() const { return first_negative.has_value(); }
};

/// Reverts t - t^n + t^(2n-1) up to `bound` and reports the first negative
/// coefficient. Throws DomainError for n < 2 or bound < 2n - 1.
ScanResult necessary_koszul_scan(int n, int bound, const std::function<void(int)>& progress = {});
/// Same, continuing `reverter` (built on odd_total_series(n, bound)).
ScanResult necessary_koszul_scan(IntegerReverter& reverter, int n, int bound,
                                 const std::function<void(int)>& progress = {});

struct DiscriminantReport {
  int n = 2;
  Integer discriminant;
  bool method_applies = false;
  /// Real zeros of the derivative of t - t^n + t^(2n-1), as exact text.
  std::vector<std::string> real_critical_points;
};

/// Discriminant n^2 - 8n + 4 of 1 - n w + (2n-1) w^2. The positivity argument
/// needs it negative. Throws DomainError for n < 2.
DiscriminantReport discriminant_obstruction(int n);

/// chi(E(a)) for a = 2..maxArity: (-1)^a times the t^a coefficient of the
/// inverse of -g(-t). Throws DomainError for maxArity < 2 or a bad g.
std::vector<Rational> minimal_generator_euler(const PSeries& g, int maxArity);

/// Recomputes the Euler characteristics of the anti-associative minimal
/// model and compares them with the reference list. Throws
/// InconsistencyError on mismatch.
void validate_euler_sign_rule();
extern const std::vector<long> kAntiAssocEuler;

/// f = sum (-1)^(l n) A_l t^(l(n-1)+1) satisfies f = t(1 + (-1)^n f^(n-1))
/// up to `order`.
bool pa_functional_equation_check(int n, int order);
/// Same with a caller-supplied A-list. Throws DomainError when the list is
/// too short for `order`.
bool pa_functional_equation_check(int n, int order, const std::vector<Integer>& a);

}  // namespace operadix
