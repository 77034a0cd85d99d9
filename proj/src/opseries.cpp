#include "operadix/opseries.hpp"

#include "operadix/errors.hpp"
#include "operadix/freeoperad.hpp"

#include <iostream>
#include <map>
#include <mutex>
#include <tuple>

namespace operadix {
namespace {

bool odd(long x) { return x % 2 != 0; }
int sign_of(long e) { return odd(e) ? -1 : 1; }

void check_unit_start(const PSeries& g, const char* what) {
  if (g.coeff(0) != 0 || g.coeff(1) != 1) {
    throw DomainError(std::string(what) + " must have zero constant term and linear coefficient 1");
  }
}

PSeries geometric(int n, int sign, int order) {
  std::vector<std::pair<int, Rational>> terms;
  for (long k = 0; k * (n - 1) + 1 <= order; ++k) {
    terms.emplace_back(static_cast<int>(k * (n - 1) + 1), Rational(odd(k) && sign < 0 ? -1 : 1));
  }
  return PSeries::from_terms(terms, order);
}

// Series sum_l sign(l) A_l t^(l(n-1)+1) from a coefficient list.
PSeries comb_series(int n, int order, const std::vector<Integer>& a,
                    const std::function<int(long)>& sign) {
  std::vector<std::pair<int, Rational>> terms;
  for (long l = 0; l * (n - 1) + 1 <= order; ++l) {
    if (static_cast<std::size_t>(l) >= a.size()) {
      throw DomainError("coefficient list has " + std::to_string(a.size()) + " entries; order " +
                        std::to_string(order) + " needs " + std::to_string(l + 1));
    }
    terms.emplace_back(static_cast<int>(l * (n - 1) + 1), Rational(a[static_cast<std::size_t>(l)] * sign(l)));
  }
  return PSeries::from_terms(terms, order);
}

std::mutex quotient_mutex;
std::map<std::tuple<int, int, int>, Integer> quotient_cache;

Integer cached_planar_dim(int n, int d, int l) {
  auto key = std::make_tuple(n, static_cast<int>(odd(d)), l);
  {
    std::lock_guard<std::mutex> lock(quotient_mutex);
    auto it = quotient_cache.find(key);
    if (it != quotient_cache.end()) return it->second;
  }
  Integer dim = quotient_dim(standard_relations(Family::PartAss, n, d), l).planar;
  std::lock_guard<std::mutex> lock(quotient_mutex);
  quotient_cache.emplace(key, dim);
  return dim;
}

PSeries partial_series(int n, int d, int order, const PoincareOptions& options) {
  if (n == 2) {
    // Binary partial and total associativity coincide.
    return odd(d) ? odd_total_series(2, order) : geometric(2, 1, order);
  }
  int max_weight = order >= 1 ? (order - 1) / (n - 1) : -1;
  if (!odd(n - d)) return comb_series(n, order, a_coeffs(n, std::max(max_weight, 0)), [n](long l) {
      return sign_of(l * n);
    });
  if (max_weight > options.weight_ceiling) {
    std::string msg = "warning: series of PartAss(" + std::to_string(n) + "," + std::to_string(d) +
                      ") has no closed form; computing quotient dimensions up to weight " +
                      std::to_string(max_weight) + " (ceiling " +
                      std::to_string(options.weight_ceiling) + ") may be slow";
    if (options.warn) {
      options.warn(msg);
    } else {
      std::cerr << msg << '\n';
    }
  }
  std::vector<std::pair<int, Rational>> terms;
  for (int l = 0; l <= max_weight; ++l) {
    terms.emplace_back(l * (n - 1) + 1, Rational(cached_planar_dim(n, d, l) * sign_of(static_cast<long>(l) * d)));
  }
  return PSeries::from_terms(terms, order);
}

}  // namespace

PSeries odd_total_series(int n, int order) {
  if (n < 2) throw DomainError("arity must be at least 2, got " + std::to_string(n));
  return PSeries::from_terms({{1, Rational(1)}, {n, Rational(-1)}, {2 * n - 1, Rational(1)}}, order);
}

PSeries poincare(const FamilyId& fam, int order, const PoincareOptions& options) {
  check_family_id(fam);
  if (order < 0) throw DomainError("order must be nonnegative");
  switch (fam.family) {
    case Family::TotAss:
      return odd(fam.d) ? odd_total_series(fam.n, order) : geometric(fam.n, 1, order);
    case Family::PartAss:
      return partial_series(fam.n, fam.d, order, options);
    case Family::TotAssTilde:
      return odd_reflect(poincare({Family::TotAss, fam.n, fam.d - fam.n + 1}, order, options));
    case Family::PartAssTilde:
      return odd_reflect(poincare({Family::PartAss, fam.n, fam.d + fam.n - 1}, order, options));
  }
  throw DomainError("unknown family");
}

std::vector<Integer> a_coeffs(int n, int L) {
  if (n < 2) throw DomainError("arity must be at least 2, got " + std::to_string(n));
  if (L < 0) throw DomainError("coefficient count must be nonnegative");
  static std::mutex mutex;
  static std::map<int, std::vector<Integer>> memo;
  std::lock_guard<std::mutex> lock(mutex);
  auto& a = memo[n];
  if (a.size() > static_cast<std::size_t>(L)) return {a.begin(), a.begin() + L + 1};

  // pow[k][m] = [x^m] A(x)^k, filled column by column as A grows.
  std::size_t size = static_cast<std::size_t>(L) + 1;
  std::vector<std::vector<Integer>> pow(static_cast<std::size_t>(n), std::vector<Integer>(size));
  a.assign(1, Integer(1));
  pow[0][0] = 1;
  for (std::size_t l = 1; l < size; ++l) {
    std::size_t m = l - 1;
    for (std::size_t k = 1; k < pow.size(); ++k) {
      Integer sum;
      for (std::size_t j = 0; j <= m; ++j) sum += a[j] * pow[k - 1][m - j];
      pow[k][m] = sum;
    }
    a.push_back(pow[static_cast<std::size_t>(n) - 1][m]);
  }
  return a;
}

PSeries gk_residual(const PSeries& gP, const PSeries& gDual) {
  check_unit_start(gP, "g_P");
  check_unit_start(gDual, "dual series");
  PSeries composite = compose(gP, odd_reflect(gDual));
  return composite - PSeries::identity(composite.trunc());
}

std::string to_string(KoszulStatus s) {
  switch (s) {
    case KoszulStatus::Koszul: return "koszul";
    case KoszulStatus::NotKoszul: return "not_koszul";
    case KoszulStatus::ConjecturedNotKoszul: return "conjectured_not_koszul";
    case KoszulStatus::Unknown: return "unknown";
  }
  return "unknown";
}

KoszulVerdict koszul_verdict(const FamilyId& fam) {
  check_family_id(fam);
  bool n_even = !odd(fam.n);
  bool d_even = !odd(fam.d);
  bool yes = false;
  switch (fam.family) {
    case Family::TotAss: yes = d_even; break;
    case Family::PartAss: yes = n_even == d_even; break;
    case Family::TotAssTilde: yes = n_even != d_even; break;
    case Family::PartAssTilde: yes = !d_even; break;
  }
  std::string cell = to_string(fam.family) + " table, n " + (n_even ? "even" : "odd") + ", d " +
                     (d_even ? "even" : "odd");
  if (yes) return {KoszulStatus::Koszul, cell + ": yes"};
  if (fam.n >= 8) {
    return {KoszulStatus::ConjecturedNotKoszul,
            cell + ": no, conjectural for n >= 8 (negative inverse coefficient not established)"};
  }
  return {KoszulStatus::NotKoszul, cell + ": no"};
}

ScanResult necessary_koszul_scan(int n, int bound, const std::function<void(int)>& progress) {
  if (n < 2) throw DomainError("arity must be at least 2, got " + std::to_string(n));
  if (bound < 2 * n - 1) throw DomainError("scan bound must be at least 2n-1 = " + std::to_string(2 * n - 1));
  IntegerReverter reverter(odd_total_series(n, bound));
  return necessary_koszul_scan(reverter, n, bound, progress);
}

ScanResult necessary_koszul_scan(IntegerReverter& reverter, int n, int bound,
                                 const std::function<void(int)>& progress) {
  if (n < 2) throw DomainError("arity must be at least 2, got " + std::to_string(n));
  if (bound < 2 * n - 1) throw DomainError("scan bound must be at least 2n-1 = " + std::to_string(2 * n - 1));
  if (reverter.stride() != n - 1) throw DomainError("reverter does not belong to t - t^n + t^(2n-1)");
  ScanResult result{n, bound, std::nullopt};
  if (reverter.order() < bound) reverter.extend_to(bound, progress);
  for (std::size_t k = 0; 1 + static_cast<long>(k) * (n - 1) <= bound; ++k) {
    if (sgn(reverter.strided_coeff(k)) < 0) {
      result.first_negative = 1 + static_cast<int>(k) * (n - 1);
      break;
    }
  }
  return result;
}

DiscriminantReport discriminant_obstruction(int n) {
  if (n < 2) throw DomainError("arity must be at least 2, got " + std::to_string(n));
  DiscriminantReport r;
  r.n = n;
  r.discriminant = Integer(n) * n - 8 * n + 4;
  r.method_applies = sgn(r.discriminant) < 0;
  if (r.method_applies) return r;

  // w = (n -+ sqrt(D)) / (2(2n-1)); both roots are positive, and each real
  // (n-1)-th root of w is a real critical point.
  std::string root_prefix = odd(n - 1) ? "" : "+-";
  std::string degree = std::to_string(n - 1);
  Integer s = sqrt(r.discriminant);
  bool square = s * s == r.discriminant;
  std::vector<std::string> ws;
  if (square) {
    for (int sg : {-1, 1}) {
      Rational w(Integer(n) + sg * s, Integer(2 * (2 * n - 1)));
      w.canonicalize();
      ws.push_back(operadix::to_string(w));
    }
  } else {
    std::string d = r.discriminant.get_str();
    ws.push_back("(" + std::to_string(n) + "-sqrt(" + d + "))/" + std::to_string(2 * (2 * n - 1)));
    ws.push_back("(" + std::to_string(n) + "+sqrt(" + d + "))/" + std::to_string(2 * (2 * n - 1)));
  }
  if (s == 0) ws.pop_back();
  // Largest w first, so the points are listed in decreasing order.
  for (auto it = ws.rbegin(); it != ws.rend(); ++it) {
    r.real_critical_points.push_back(root_prefix + "(" + *it + ")^(1/" + degree + ")");
  }
  return r;
}

const std::vector<long> kAntiAssocEuler{1, -1, 0, 4, -14, 30, -33, -55};

std::vector<Rational> minimal_generator_euler(const PSeries& g, int maxArity) {
  if (maxArity < 2) throw DomainError("maximal arity must be at least 2");
  check_unit_start(g, "Poincare series");
  if (g.trunc() < maxArity) {
    throw DomainError("series is known to order " + std::to_string(g.trunc()) + ", need " +
                      std::to_string(maxArity));
  }
  PSeries inverse = revert(odd_reflect(g.truncated(maxArity)), maxArity);
  std::vector<Rational> out;
  for (int a = 2; a <= maxArity; ++a) out.push_back(sign_of(a) * inverse.coeff(a));
  return out;
}

void validate_euler_sign_rule() {
  PSeries anti = PSeries::from_terms({{1, Rational(1)}, {2, Rational(1)}, {3, Rational(1)}}, 9);
  auto got = minimal_generator_euler(anti, 9);
  for (std::size_t i = 0; i < kAntiAssocEuler.size(); ++i) {
    if (got.at(i) != kAntiAssocEuler[i]) {
      throw InconsistencyError("Euler characteristic sign rule fails at arity " + std::to_string(i + 2) +
                               ": computed " + operadix::to_string(got[i]) + ", expected " +
                               std::to_string(kAntiAssocEuler[i]));
    }
  }
}

bool pa_functional_equation_check(int n, int order) {
  if (n < 2) throw DomainError("arity must be at least 2, got " + std::to_string(n));
  int max_weight = order >= 1 ? (order - 1) / (n - 1) : 0;
  return pa_functional_equation_check(n, order, a_coeffs(n, max_weight));
}

bool pa_functional_equation_check(int n, int order, const std::vector<Integer>& a) {
  if (n < 2) throw DomainError("arity must be at least 2, got " + std::to_string(n));
  if (order < 1) throw DomainError("order must be positive");
  PSeries f = comb_series(n, order, a, [n](long l) { return sign_of(l * n); });
  PSeries power = PSeries::monomial(1, 0, order);
  for (int i = 0; i < n - 1; ++i) power = power * f;
  PSeries rhs = PSeries::identity(order) * (PSeries::monomial(1, 0, order) + Rational(sign_of(n)) * power);
  return f == rhs;
}

}  // namespace operadix
