#include "operadix/pseries.hpp"

#include "operadix/errors.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace operadix {

PSeries::PSeries(int trunc) : trunc_(trunc) {
  if (trunc < 0) throw DomainError("PSeries: negative truncation order");
}

PSeries::PSeries(int trunc, Integer den, std::map<int, Integer> num)
    : trunc_(trunc), den_(std::move(den)), num_(std::move(num)) {
  normalize();
}

void PSeries::normalize() {
  for (auto it = num_.begin(); it != num_.end();) {
    if (it->first > trunc_ || it->second == 0) {
      it = num_.erase(it);
    } else {
      ++it;
    }
  }
  if (den_ < 0) {
    den_ = -den_;
    for (auto& [e, c] : num_) c = -c;
  }
  if (num_.empty()) {
    den_ = 1;
    return;
  }
  Integer g = den_;
  for (const auto& [e, c] : num_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) return;
  }
  mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  for (auto& [e, c] : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

PSeries PSeries::from_terms(const std::vector<std::pair<int, Rational>>& terms, int trunc) {
  if (trunc < 0) throw DomainError("PSeries: negative truncation order");
  Integer den = 1;
  for (const auto& [e, c] : terms) {
    if (e < 0) throw DomainError("PSeries: negative exponent " + std::to_string(e));
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  std::map<int, Integer> num;
  for (const auto& [e, c] : terms) {
    if (e > trunc) continue;
    num[e] += den / c.get_den() * c.get_num();
  }
  return PSeries(trunc, std::move(den), std::move(num));
}

PSeries PSeries::monomial(const Rational& c, int exponent, int trunc) {
  return from_terms({{exponent, c}}, trunc);
}

Rational PSeries::coeff(int exponent) const {
  auto it = num_.find(exponent);
  if (it == num_.end()) return 0;
  Rational q(it->second, den_);
  q.canonicalize();
  return q;
}

std::map<int, Rational> PSeries::coeffs() const {
  std::map<int, Rational> out;
  for (const auto& [e, c] : num_) {
    Rational q(c, den_);
    q.canonicalize();
    out.emplace(e, std::move(q));
  }
  return out;
}

std::optional<int> PSeries::valuation() const {
  if (num_.empty()) return std::nullopt;
  return num_.begin()->first;
}

PSeries PSeries::truncated(int trunc) const {
  if (trunc < 0) throw DomainError("PSeries: negative truncation order");
  return PSeries(trunc, den_, num_);
}

PSeries operator+(const PSeries& a, const PSeries& b) {
  int trunc = std::min(a.trunc_, b.trunc_);
  Integer den;
  mpz_lcm(den.get_mpz_t(), a.den_.get_mpz_t(), b.den_.get_mpz_t());
  Integer fa = den / a.den_, fb = den / b.den_;
  std::map<int, Integer> num;
  for (const auto& [e, c] : a.num_) {
    if (e <= trunc) num[e] += fa * c;
  }
  for (const auto& [e, c] : b.num_) {
    if (e <= trunc) num[e] += fb * c;
  }
  return PSeries(trunc, std::move(den), std::move(num));
}

PSeries operator-(const PSeries& a) {
  PSeries out = a;
  for (auto& [e, c] : out.num_) c = -c;
  return out;
}

PSeries operator-(const PSeries& a, const PSeries& b) { return a + (-b); }

PSeries operator*(const PSeries& a, const PSeries& b) {
  int trunc = std::min(a.trunc_, b.trunc_);
  std::map<int, Integer> num;
  for (const auto& [ea, ca] : a.num_) {
    if (ea > trunc) break;
    for (const auto& [eb, cb] : b.num_) {
      if (ea + eb > trunc) break;
      mpz_addmul(num[ea + eb].get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    }
  }
  return PSeries(trunc, a.den_ * b.den_, std::move(num));
}

PSeries operator*(const Rational& c, const PSeries& a) {
  std::map<int, Integer> num = a.num_;
  for (auto& [e, v] : num) v *= c.get_num();
  return PSeries(a.trunc_, a.den_ * c.get_den(), std::move(num));
}

PSeries compose(const PSeries& f, const PSeries& g) {
  if (g.coeff(0) != 0) throw DomainError("compose: inner series has nonzero constant term");
  int trunc = std::min(f.trunc(), g.trunc());
  PSeries gt = g.truncated(trunc);
  PSeries result(trunc);
  if (f.is_zero()) return result;
  // Horner's rule over the (sparse) exponents of f, highest first.
  const auto& num = f.numerators();
  int current = num.rbegin()->first;
  for (auto it = num.rbegin(); it != num.rend(); ++it) {
    for (; current > it->first; --current) result = result * gt;
    Rational c(it->second, f.denominator());
    c.canonicalize();
    result = result + PSeries::monomial(c, 0, trunc);
  }
  for (; current > 0; --current) result = result * gt;
  return result;
}

namespace {

void check_revertible(const PSeries& f, int order) {
  if (f.coeff(0) != 0) throw DomainError("revert: series has nonzero constant term");
  if (f.trunc() < 1 || f.coeff(1) != 1) throw DomainError("revert: linear coefficient must be 1");
  if (order < 1) throw DomainError("revert: order must be at least 1");
  if (order > f.trunc()) {
    throw DomainError("revert: order " + std::to_string(order) + " exceeds series truncation " +
                      std::to_string(f.trunc()));
  }
}

int detect_stride(const PSeries& f) {
  int s = 0;
  for (const auto& [e, c] : f.numerators()) {
    if (e >= 2) s = std::gcd(s, e - 1);
  }
  return s == 0 ? 1 : s;
}

template <class Scalar>
Scalar to_scalar(const Rational& q);

template <>
Integer to_scalar<Integer>(const Rational& q) {
  if (q.get_den() != 1) throw DomainError("reversion: integer path given a non-integral coefficient");
  return q.get_num();
}

template <>
Rational to_scalar<Rational>(const Rational& q) {
  return q;
}

Rational to_rational(const Integer& z) { return Rational(z); }
const Rational& to_rational(const Rational& q) { return q; }

}  // namespace

template <class Scalar>
BasicReverter<Scalar>::BasicReverter(const PSeries& f) : f_(f) {
  check_revertible(f, 1);
  state_.stride = detect_stride(f);
  for (const auto& [e, q] : f.coeffs()) {
    if (e >= 2) b_.emplace_back((e - 1) / state_.stride, to_scalar<Scalar>(q));
  }
  state_.v.push_back(Scalar(1));
  for (const auto& [j, bj] : b_) state_.powers.push_back({1 + state_.stride * j, {Scalar(1)}});
}

template <class Scalar>
BasicReverter<Scalar>::BasicReverter(const PSeries& f, State state) : BasicReverter(f) {
  bool ok = state.stride == state_.stride && !state.v.empty() &&
            state.powers.size() == state_.powers.size();
  for (std::size_t p = 0; ok && p < state.powers.size(); ++p) {
    ok = state.powers[p].first == state_.powers[p].first &&
         state.powers[p].second.size() == state.v.size();
  }
  if (ok) {
    // Spot-check the leading coefficients against a fresh computation.
    std::size_t probe = std::min<std::size_t>(state.v.size(), 8);
    BasicReverter fresh(f);
    fresh.extend_to(std::min(f.trunc(), 1 + fresh.stride() * static_cast<int>(probe - 1)));
    for (std::size_t k = 0; ok && k < std::min(probe, fresh.state_.v.size()); ++k) {
      ok = fresh.state_.v[k] == state.v[k];
    }
  }
  if (!ok) throw DomainError("reversion state does not belong to this series");
  state_ = std::move(state);
}

template <class Scalar>
void BasicReverter<Scalar>::step() {
  auto& v = state_.v;
  const std::size_t k = v.size();

  Scalar vk(0);
  for (std::size_t p = 0; p < b_.size(); ++p) {
    auto j = static_cast<std::size_t>(b_[p].first);
    if (j > k) break;
    vk -= b_[p].second * state_.powers[p].second[k - j];
  }
  v.push_back(std::move(vk));

  // [y^k] V^m = (1/k) sum_{i=1..k} ((m+1) i - k) V_i [y^{k-i}] V^m, using V_0 = 1.
  for (auto& [m, pw] : state_.powers) {
    Scalar acc(0);
    if constexpr (std::is_same_v<Scalar, Integer>) {
      Integer term;
      for (std::size_t i = 1; i <= k; ++i) {
        if (v[i] == 0 || pw[k - i] == 0) continue;
        long weight = static_cast<long>(m + 1) * static_cast<long>(i) - static_cast<long>(k);
        if (weight == 0) continue;
        mpz_mul(term.get_mpz_t(), v[i].get_mpz_t(), pw[k - i].get_mpz_t());
        if (weight > 0) {
          mpz_addmul_ui(acc.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(weight));
        } else {
          mpz_submul_ui(acc.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(-weight));
        }
      }
      mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(k));
    } else {
      for (std::size_t i = 1; i <= k; ++i) {
        long weight = static_cast<long>(m + 1) * static_cast<long>(i) - static_cast<long>(k);
        if (weight != 0) acc += Scalar(weight) * v[i] * pw[k - i];
      }
      acc /= Scalar(static_cast<long>(k));
    }
    pw.push_back(std::move(acc));
  }
}

template <class Scalar>
void BasicReverter<Scalar>::extend_to(int order, const std::function<void(int)>& progress) {
  check_revertible(f_, order);
  while (this->order() + stride() <= order) {
    step();
    if (progress && state_.v.size() % 16 == 0) progress(this->order());
  }
}

template <class Scalar>
PSeries BasicReverter<Scalar>::series(int trunc) const {
  if (trunc > order() + stride() - 1) {
    throw DomainError("reversion computed only to order " + std::to_string(order()));
  }
  std::vector<std::pair<int, Rational>> terms;
  for (std::size_t k = 0; k < state_.v.size(); ++k) {
    int e = 1 + stride() * static_cast<int>(k);
    if (e > trunc) break;
    terms.emplace_back(e, to_rational(state_.v[k]));
  }
  return PSeries::from_terms(terms, trunc);
}

template class BasicReverter<Integer>;
template class BasicReverter<Rational>;

PSeries revert(const PSeries& f, int order) {
  check_revertible(f, order);
  if (f.is_integral()) {
    IntegerReverter r(f);
    r.extend_to(order);
    return r.series(order);
  }
  RationalReverter r(f);
  r.extend_to(order);
  return r.series(order);
}

namespace {

// Coefficients of u * w up to exponent n, ignoring the operands' own orders.
PSeries mul_to(const PSeries& u, const PSeries& w, int n) {
  return (u.truncated(std::max(u.trunc(), n)) * w.truncated(std::max(w.trunc(), n))).truncated(n);
}

// 1/u for u(0) != 0, to exponent n.
PSeries reciprocal(const PSeries& u, int n) {
  std::map<int, Rational> uc = u.coeffs();
  Rational u0 = u.coeff(0);
  std::vector<Rational> r(n + 1);
  r[0] = 1 / u0;
  for (int k = 1; k <= n; ++k) {
    Rational acc = 0;
    for (const auto& [e, c] : uc) {
      if (e == 0) continue;
      if (e > k) break;
      acc += c * r[k - e];
    }
    r[k] = -acc / u0;
  }
  std::vector<std::pair<int, Rational>> terms;
  for (int k = 0; k <= n; ++k) terms.emplace_back(k, r[k]);
  return PSeries::from_terms(terms, n);
}

}  // namespace

PSeries revert_newton(const PSeries& f, int order) {
  check_revertible(f, order);
  std::vector<std::pair<int, Rational>> dterms;
  for (const auto& [e, c] : f.coeffs()) {
    if (e >= 1) dterms.emplace_back(e - 1, c * e);
  }
  PSeries h = PSeries::identity(1);
  int prec = 1;
  while (prec < order) {
    int next = std::min(2 * prec, order);
    PSeries hn = h.truncated(next);
    PSeries residual = compose(f.truncated(next), hn) - PSeries::identity(next);
    PSeries fprime = PSeries::from_terms(dterms, next);
    PSeries correction = mul_to(residual, reciprocal(compose(fprime, hn), next), next);
    h = hn - correction;
    prec = next;
  }
  return h.truncated(order);
}

std::optional<int> first_negative(const PSeries& f) {
  for (const auto& [e, c] : f.numerators()) {
    if (c < 0) return e;
  }
  return std::nullopt;
}

PSeries odd_reflect(const PSeries& f) {
  std::vector<std::pair<int, Rational>> terms;
  for (const auto& [e, c] : f.coeffs()) terms.emplace_back(e, e % 2 == 0 ? Rational(-c) : c);
  return PSeries::from_terms(terms, f.trunc());
}

std::string to_string(const PSeries& f) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : f.coeffs()) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = mag == 1;
    if (!unit || e == 0) out << to_string(mag);
    if (e == 0) continue;
    if (!unit) out << " ";
    out << "t";
    if (e > 1) out << "^" << e;
  }
  if (first) out << "0";
  out << " + O(t^" << f.trunc() + 1 << ")";
  return out.str();
}

PSeries parse_sparse_spec(const std::string& spec, int trunc) {
  std::vector<std::pair<int, Rational>> terms;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t end = spec.find(',', pos);
    if (end == std::string::npos) end = spec.size();
    std::string item = spec.substr(pos, end - pos);
    std::size_t colon = item.find(':');
    if (colon == std::string::npos) throw ParseError("expected coefficient:exponent", pos);
    Rational c = parse_rational(item.substr(0, colon));
    std::string exp_text = item.substr(colon + 1);
    auto notspace = [](unsigned char ch) { return !std::isspace(ch); };
    exp_text.erase(exp_text.begin(), std::find_if(exp_text.begin(), exp_text.end(), notspace));
    exp_text.erase(std::find_if(exp_text.rbegin(), exp_text.rend(), notspace).base(), exp_text.end());
    if (exp_text.empty() || !std::all_of(exp_text.begin(), exp_text.end(),
                                         [](unsigned char ch) { return std::isdigit(ch); })) {
      throw ParseError("exponent must be a nonnegative integer", pos + colon + 1);
    }
    terms.emplace_back(std::stoi(exp_text), c);
    pos = end + 1;
  }
  return PSeries::from_terms(terms, trunc);
}

}  // namespace operadix
