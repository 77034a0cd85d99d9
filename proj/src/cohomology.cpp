#include "operadix/cohomology.hpp"

#include "operadix/errors.hpp"
#include "operadix/exactla.hpp"
#include "operadix/minimodel.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>

namespace operadix {

// ---------------------------------------------------------------------------
// MultilinearMap

MultilinearMap::MultilinearMap(std::size_t dim, int arity) : dim_(dim), arity_(arity) {
  if (arity < 1) throw DomainError("multilinear map needs arity >= 1");
  if (dim > std::numeric_limits<std::uint16_t>::max()) throw DomainError("dimension too large");
}

MultilinearMap MultilinearMap::identity(std::size_t dim) {
  MultilinearMap id(dim, 1);
  for (std::size_t i = 0; i < dim; ++i) {
    auto k = static_cast<std::uint16_t>(i);
    id.add({k}, k, 1);
  }
  return id;
}

void MultilinearMap::add(const Key& inputs, std::uint16_t out, const Rational& c) {
  if (inputs.size() != static_cast<std::size_t>(arity_)) throw DimensionError("cochain key has the wrong arity");
  for (auto i : inputs) {
    if (i >= dim_) throw DimensionError("cochain input index out of range");
  }
  if (out >= dim_) throw DimensionError("cochain output index out of range");
  if (c == 0) return;
  auto it = entries_.find(inputs);
  if (it == entries_.end()) {
    entries_[inputs].emplace(out, c);
    return;
  }
  auto& vec = it->second;
  auto [pos, inserted] = vec.emplace(out, c);
  if (!inserted) {
    pos->second += c;
    if (pos->second == 0) vec.erase(pos);
  }
  if (vec.empty()) entries_.erase(it);
}

Rational MultilinearMap::at(const Key& inputs, std::uint16_t out) const {
  auto it = entries_.find(inputs);
  if (it == entries_.end()) return 0;
  auto jt = it->second.find(out);
  return jt == it->second.end() ? Rational(0) : jt->second;
}

MultilinearMap::Vec MultilinearMap::apply(const Key& inputs) const {
  auto it = entries_.find(inputs);
  return it == entries_.end() ? Vec{} : it->second;
}

void MultilinearMap::check_compatible(const MultilinearMap& other) const {
  if (dim_ != other.dim_ || arity_ != other.arity_) throw DimensionError("cochain shapes differ");
}

MultilinearMap& MultilinearMap::operator+=(const MultilinearMap& other) {
  check_compatible(other);
  for (const auto& [key, vec] : other.entries_) {
    for (const auto& [o, c] : vec) add(key, o, c);
  }
  return *this;
}

MultilinearMap& MultilinearMap::operator-=(const MultilinearMap& other) {
  check_compatible(other);
  for (const auto& [key, vec] : other.entries_) {
    for (const auto& [o, c] : vec) add(key, o, -c);
  }
  return *this;
}

MultilinearMap& MultilinearMap::operator*=(const Rational& c) {
  if (c == 0) {
    entries_.clear();
    return *this;
  }
  for (auto& [key, vec] : entries_) {
    for (auto& [o, v] : vec) v *= c;
  }
  return *this;
}

std::uint64_t MultilinearMap::flat_index(const Key& inputs, std::uint16_t out) const {
  std::uint64_t idx = 0;
  for (auto i : inputs) idx = idx * dim_ + i;
  return idx * dim_ + out;
}

std::uint64_t MultilinearMap::flat_size() const {
  std::uint64_t size = 1;
  for (int i = 0; i <= arity_; ++i) size *= dim_;
  return size;
}

MultilinearMap compose(const MultilinearMap& f, int i, const MultilinearMap& g) {
  if (f.dim() != g.dim()) throw DimensionError("composing cochains on different spaces");
  if (i < 1 || i > f.arity()) throw DomainError("composition slot out of range");
  std::map<std::uint16_t, std::vector<std::pair<const MultilinearMap::Key*, Rational>>> by_output;
  for (const auto& [key, vec] : g.entries()) {
    for (const auto& [o, c] : vec) by_output[o].emplace_back(&key, c);
  }
  MultilinearMap out(f.dim(), f.arity() + g.arity() - 1);
  auto slot = static_cast<std::size_t>(i - 1);
  MultilinearMap::Key key;
  for (const auto& [fkey, fvec] : f.entries()) {
    auto hit = by_output.find(fkey[slot]);
    if (hit == by_output.end()) continue;
    for (const auto& [gkey, c] : hit->second) {
      key.assign(fkey.begin(), fkey.begin() + static_cast<std::ptrdiff_t>(slot));
      key.insert(key.end(), gkey->begin(), gkey->end());
      key.insert(key.end(), fkey.begin() + static_cast<std::ptrdiff_t>(slot) + 1, fkey.end());
      for (const auto& [o, v] : fvec) out.add(key, o, c * v);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Algebras

AntiAssocAlgebra AntiAssocAlgebra::zero(std::size_t dim) {
  AntiAssocAlgebra alg;
  alg.dim = dim;
  for (std::size_t i = 0; i < dim; ++i) alg.basis.push_back("e" + std::to_string(i + 1));
  alg.table.assign(dim, std::vector<std::vector<Rational>>(dim, std::vector<Rational>(dim)));
  return alg;
}

void AntiAssocAlgebra::check_shape() const {
  if (basis.size() != dim) throw DimensionError("basis name count differs from dim");
  if (table.size() != dim) throw DimensionError("structure table has the wrong number of rows");
  for (const auto& row : table) {
    if (row.size() != dim) throw DimensionError("structure table has the wrong number of columns");
    for (const auto& v : row) {
      if (v.size() != dim) throw DimensionError("structure constant vector has the wrong length");
    }
  }
}

MultilinearMap AntiAssocAlgebra::product() const {
  check_shape();
  MultilinearMap mu(dim, 2);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      for (std::size_t k = 0; k < dim; ++k) {
        mu.add({static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(j)}, static_cast<std::uint16_t>(k),
               table[i][j][k]);
      }
    }
  }
  return mu;
}

std::vector<Rational> AntiAssocAlgebra::multiply(const std::vector<Rational>& a,
                                                 const std::vector<Rational>& b) const {
  if (a.size() != dim || b.size() != dim) throw DimensionError("vector length differs from dim");
  std::vector<Rational> out(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (b[j] == 0) continue;
      Rational c = a[i] * b[j];
      for (std::size_t k = 0; k < dim; ++k) out[k] += c * table[i][j][k];
    }
  }
  return out;
}

std::vector<Violation> validate(const AntiAssocAlgebra& alg) {
  alg.check_shape();
  std::vector<Violation> out;
  auto unit = [&](std::size_t i) {
    std::vector<Rational> v(alg.dim);
    v[i] = 1;
    return v;
  };
  for (std::size_t i = 0; i < alg.dim; ++i) {
    for (std::size_t j = 0; j < alg.dim; ++j) {
      for (std::size_t k = 0; k < alg.dim; ++k) {
        auto value = alg.multiply(alg.table[i][j], unit(k));
        auto right = alg.multiply(unit(i), alg.table[j][k]);
        bool zero = true;
        for (std::size_t r = 0; r < alg.dim; ++r) {
          value[r] += right[r];
          if (value[r] != 0) zero = false;
        }
        if (!zero) out.push_back({i, j, k, std::move(value)});
      }
    }
  }
  return out;
}

AntiAssocAlgebra free_antiassoc(int g) {
  if (g < 1) throw DomainError("free algebra needs at least one generator");
  auto n = static_cast<std::size_t>(g);
  std::size_t dim = n + n * n + n * n * n;
  AntiAssocAlgebra alg = AntiAssocAlgebra::zero(dim);
  auto word2 = [&](std::size_t i, std::size_t j) { return n + i * n + j; };
  auto word3 = [&](std::size_t i, std::size_t j, std::size_t k) { return n + n * n + (i * n + j) * n + k; };
  auto name = [&](std::size_t i) { return g == 1 ? std::string("x") : "x" + std::to_string(i + 1); };
  for (std::size_t i = 0; i < n; ++i) {
    alg.basis[i] = name(i);
    for (std::size_t j = 0; j < n; ++j) {
      alg.basis[word2(i, j)] = name(i) + name(j);
      alg.table[i][j][word2(i, j)] = 1;
      for (std::size_t k = 0; k < n; ++k) {
        alg.basis[word3(i, j, k)] = "(" + name(i) + name(j) + ")" + name(k);
        alg.table[word2(i, j)][k][word3(i, j, k)] = 1;
        alg.table[i][word2(j, k)][word3(i, j, k)] = -1;
      }
    }
  }
  return alg;
}

bool unital_collapse(const AntiAssocAlgebra& alg, const std::vector<Rational>& u) {
  alg.check_shape();
  if (u.size() != alg.dim) throw DimensionError("unit candidate has the wrong length");
  for (std::size_t i = 0; i < alg.dim; ++i) {
    std::vector<Rational> e(alg.dim);
    e[i] = 1;
    if (alg.multiply(u, e) != e || alg.multiply(e, u) != e) {
      throw DomainError("vector is not a two-sided unit (fails on " + alg.basis[i] + ")");
    }
  }
  bool zero_product = alg.product().is_zero();
  if (!zero_product && validate(alg).empty()) {
    throw InconsistencyError("unital anti-associative algebra with nonzero product");
  }
  return zero_product;
}

namespace {

int small_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Rows of a unit lower times unit upper triangular matrix with entries in
// -1..1; the determinant is 1 and the inverse is integral.
std::vector<std::vector<Rational>> random_unimodular(std::size_t m, std::mt19937_64& rng) {
  std::vector<std::vector<Rational>> lower(m, std::vector<Rational>(m)), upper = lower, p = lower;
  for (std::size_t i = 0; i < m; ++i) {
    lower[i][i] = 1;
    upper[i][i] = 1;
    for (std::size_t j = 0; j < i; ++j) lower[i][j] = small_int(rng, -1, 1);
    for (std::size_t j = i + 1; j < m; ++j) upper[i][j] = small_int(rng, -1, 1);
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < m; ++k) p[i][j] += lower[i][k] * upper[k][j];
    }
  }
  return p;
}

std::vector<std::vector<Rational>> inverse(std::vector<std::vector<Rational>> a) {
  std::size_t m = a.size();
  std::vector<std::vector<Rational>> inv(m, std::vector<Rational>(m));
  for (std::size_t i = 0; i < m; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t pivot = c;
    while (pivot < m && a[pivot][c] == 0) ++pivot;
    if (pivot == m) throw InconsistencyError("change of basis is singular");
    std::swap(a[pivot], a[c]);
    std::swap(inv[pivot], inv[c]);
    Rational s = a[c][c];
    for (std::size_t k = 0; k < m; ++k) {
      a[c][k] /= s;
      inv[c][k] /= s;
    }
    for (std::size_t r = 0; r < m; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (std::size_t k = 0; k < m; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

// Structure constants in the basis f_i = sum_r p[i][r] e_r.
AntiAssocAlgebra change_basis(const AntiAssocAlgebra& alg, const std::vector<std::vector<Rational>>& p) {
  auto q = inverse(p);
  AntiAssocAlgebra out = AntiAssocAlgebra::zero(alg.dim);
  for (std::size_t i = 0; i < alg.dim; ++i) {
    for (std::size_t j = 0; j < alg.dim; ++j) {
      auto prod = alg.multiply(p[i], p[j]);
      // prod is in e-coordinates; e_r = sum_s q[r][s] f_s.
      for (std::size_t r = 0; r < alg.dim; ++r) {
        if (prod[r] == 0) continue;
        for (std::size_t s = 0; s < alg.dim; ++s) out.table[i][j][s] += prod[r] * q[r][s];
      }
    }
  }
  return out;
}

}  // namespace

AntiAssocAlgebra random_antiassoc(std::size_t dim, std::mt19937_64& rng) {
  if (dim < 1 || dim > 6) throw DomainError("random algebras are generated for dim 1..6");
  AntiAssocAlgebra alg = AntiAssocAlgebra::zero(dim);
  if (dim == 1) return alg;
  std::size_t m1 = static_cast<std::size_t>(small_int(rng, 1, static_cast<int>(dim) - 1));
  std::size_t m2 = static_cast<std::size_t>(small_int(rng, 1, static_cast<int>(dim - m1)));
  std::size_t m3 = dim - m1 - m2;
  std::size_t v2 = m1, v3 = m1 + m2;

  bool any = false;
  while (!any) {
    for (std::size_t a = 0; a < m1; ++a) {
      for (std::size_t b = 0; b < m1; ++b) {
        for (std::size_t s = 0; s < m2; ++s) {
          int c = small_int(rng, 0, 1) ? small_int(rng, -2, 2) : 0;
          alg.table[a][b][v2 + s] = c;
          any = any || c != 0;
        }
      }
    }
  }

  if (m3 > 0) {
    // Unknowns: (a s -> k) for a in V1, s in V2, then (s a -> k).
    std::size_t block = m1 * m2 * m3;
    auto left = [&](std::size_t a, std::size_t s, std::size_t k) { return (a * m2 + s) * m3 + k; };
    auto right = [&](std::size_t s, std::size_t a, std::size_t k) { return block + (s * m1 + a) * m3 + k; };
    QMatrix constraints(0, 2 * block);
    for (std::size_t a = 0; a < m1; ++a) {
      for (std::size_t b = 0; b < m1; ++b) {
        for (std::size_t c = 0; c < m1; ++c) {
          for (std::size_t k = 0; k < m3; ++k) {
            std::vector<Rational> row(2 * block);
            for (std::size_t s = 0; s < m2; ++s) {
              row[right(s, c, k)] += alg.table[a][b][v2 + s];
              row[left(a, s, k)] += alg.table[b][c][v2 + s];
            }
            constraints.append_dense_row(row);
          }
        }
      }
    }
    auto basis = nullspace(constraints);
    std::vector<Rational> x(2 * block);
    for (const auto& v : basis) {
      int c = small_int(rng, -2, 2);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += c * v[i];
    }
    for (std::size_t a = 0; a < m1; ++a) {
      for (std::size_t s = 0; s < m2; ++s) {
        for (std::size_t k = 0; k < m3; ++k) {
          alg.table[a][v2 + s][v3 + k] = x[left(a, s, k)];
          alg.table[v2 + s][a][v3 + k] = x[right(s, a, k)];
        }
      }
    }
  }

  AntiAssocAlgebra out = change_basis(alg, random_unimodular(dim, rng));
  if (!validate(out).empty()) throw InconsistencyError("random algebra fails anti-associativity");
  return out;
}

MultilinearMap random_cochain(std::size_t dim, int arity, std::size_t nonzeros, std::mt19937_64& rng) {
  MultilinearMap f(dim, arity);
  if (dim == 0) return f;
  std::uniform_int_distribution<int> index(0, static_cast<int>(dim) - 1);
  for (std::size_t n = 0; n < nonzeros; ++n) {
    MultilinearMap::Key key(static_cast<std::size_t>(arity));
    for (auto& k : key) k = static_cast<std::uint16_t>(index(rng));
    int c = 0;
    while (c == 0) c = small_int(rng, -3, 3);
    f.add(key, static_cast<std::uint16_t>(index(rng)), c);
  }
  return f;
}

// ---------------------------------------------------------------------------
// Cochain formulas

namespace {

constexpr std::int16_t kMu = 0;
constexpr std::int16_t kF = 1;

SignaturePtr formula_signature(int arity) {
  static std::mutex mutex;
  static std::map<int, SignaturePtr> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(arity);
  if (it != cache.end()) return it->second;
  auto sig = make_signature({{"mu", 2, 0}, {"f", arity, 0}});
  cache.emplace(arity, sig);
  return sig;
}

struct Node {
  std::int16_t label = kLeaf;
  char variable = 0;
  std::size_t position = 0;
  std::vector<Node> children;
};

class FormulaParser {
 public:
  FormulaParser(std::string_view text, int arity) : text_(text), arity_(arity) {}

  OperadElement parse() {
    auto sig = formula_signature(arity_);
    std::optional<OperadElement> sum;
    bool first = true;
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) {
        if (first) fail("empty formula");
        break;
      }
      Rational sign = 1;
      if (accept("+")) {
      } else if (accept("-") || accept("−")) {
        sign = -1;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      skip_space();
      Rational coeff = sign * coefficient();
      std::size_t start = pos_;
      Node term = product();
      Monomial m;
      std::vector<std::pair<char, std::size_t>> vars;
      flatten(term, m, vars);
      for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i].first != static_cast<char>('a' + i)) {
          throw ParseError("variables must appear once each in order a, b, c, ...", vars[i].second);
        }
      }
      if (vars.size() < 2) throw ParseError("term needs at least two variables", start);
      auto element = OperadElement::monomial(sig, m, coeff);
      if (!sum) {
        sum = element;
      } else {
        if (sum->arity() != element.arity()) throw ParseError("terms have different numbers of variables", start);
        *sum += element;
      }
    }
    return *sum;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  Rational coefficient() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) return 1;
    if (pos_ - start > 9) {
      pos_ = start;
      fail("number too long");
    }
    Rational c(std::stol(std::string(text_.substr(start, pos_ - start))));
    accept("*");
    return c;
  }

  // A product of one or two factors; more is ambiguous.
  Node product() {
    skip_space();
    std::size_t start = pos_;
    Node a = factor();
    if (!starts_factor()) return a;
    Node b = factor();
    if (starts_factor()) fail("ambiguous product of three factors, add brackets");
    Node n;
    n.label = kMu;
    n.position = start;
    n.children.push_back(std::move(a));
    n.children.push_back(std::move(b));
    return n;
  }

  bool starts_factor() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return c == '(' || std::isalpha(static_cast<unsigned char>(c)) || text_.substr(pos_, 2) == "φ";
  }

  std::optional<std::size_t> function_name() {
    for (std::string_view name : {"phi", "φ", "f", "g"}) {
      if (text_.substr(pos_, name.size()) == name) {
        std::size_t after = pos_ + name.size();
        std::size_t p = after;
        while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
        if (p < text_.size() && text_[p] == '(') return after;
      }
    }
    return std::nullopt;
  }

  Node factor() {
    skip_space();
    Node n;
    n.position = pos_;
    if (accept("(")) {
      n = product();
      if (!accept(")")) fail("expected ')'");
      return n;
    }
    if (auto after = function_name()) {
      pos_ = *after;
      accept("(");
      n.label = kF;
      n.children.push_back(product());
      while (accept(",")) n.children.push_back(product());
      if (!accept(")")) fail("expected ',' or ')'");
      if (n.children.size() != static_cast<std::size_t>(arity_)) {
        throw ParseError("cochain applied to " + std::to_string(n.children.size()) + " arguments, expected " +
                             std::to_string(arity_),
                         n.position);
      }
      return n;
    }
    if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      n.variable = text_[pos_++];
      return n;
    }
    fail("expected a variable, a cochain application or '('");
  }

  static void flatten(const Node& n, Monomial& m, std::vector<std::pair<char, std::size_t>>& vars) {
    if (n.label == kLeaf) {
      m.push_back(kLeaf);
      vars.emplace_back(n.variable, n.position);
      return;
    }
    m.push_back(n.label);
    for (const auto& c : n.children) flatten(c, m, vars);
  }

  std::string_view text_;
  int arity_;
  std::size_t pos_ = 0;
};

MultilinearMap evaluate_monomial(const Monomial& m, std::size_t& pos, const MultilinearMap& mu,
                                 const MultilinearMap& f) {
  const MultilinearMap& base = m[pos] == kMu ? mu : f;
  ++pos;
  std::vector<std::optional<MultilinearMap>> children;
  for (int c = 0; c < base.arity(); ++c) {
    if (m[pos] == kLeaf) {
      ++pos;
      children.emplace_back();
    } else {
      children.emplace_back(evaluate_monomial(m, pos, mu, f));
    }
  }
  MultilinearMap out = base;
  for (int c = base.arity(); c >= 1; --c) {
    const auto& child = children[static_cast<std::size_t>(c - 1)];
    if (child) out = compose(out, c, *child);
  }
  return out;
}

// Relabels a model monomial: `target` -> f at the chosen occurrence, mu2 -> mu.
OperadElement linearize(const OperadElement& rule, const std::string& target, int f_arity) {
  const Signature& msig = *rule.signature();
  int mu2 = msig.index_of("mu2");
  int t = msig.index_of(target);
  auto sig = formula_signature(f_arity);
  OperadElement out(sig, rule.arity(), 0);
  for (const auto& [m, c] : rule.terms()) {
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (m[v] != t) continue;
      Monomial r(m.size());
      for (std::size_t u = 0; u < m.size(); ++u) {
        if (m[u] == kLeaf) {
          r[u] = kLeaf;
        } else if (u == v) {
          r[u] = kF;
        } else if (m[u] == mu2) {
          r[u] = kMu;
        } else {
          throw DomainError("rule term has a vertex other than mu2 and one " + target);
        }
      }
      out.add_term(r, c);
    }
  }
  return out;
}

const OperadElement& printed_formula(int which) {
  static const std::array<OperadElement, 5> formulas = [] {
    return std::array<OperadElement, 5>{
        parse_cochain_formula(kDelta2Formula, 2),        parse_cochain_formula(kDelta3Formulas[0], 3),
        parse_cochain_formula(kDelta3Formulas[1], 3), parse_cochain_formula(kDelta3Formulas[2], 3),
        parse_cochain_formula(kDelta3Formulas[3], 3)};
  }();
  return formulas.at(static_cast<std::size_t>(which));
}

const std::array<OperadElement, 4>& derived_delta3_formulas() {
  static const std::array<OperadElement, 4> formulas = [] {
    ModelData model = builtin_model();
    auto get = [&](int i) { return linearize(model.rules.at("mu5_" + std::to_string(i)), "mu3", 3); };
    return std::array<OperadElement, 4>{get(1), get(2), get(3), get(4)};
  }();
  return formulas;
}

const OperadElement& derived_delta2_formula() {
  static const OperadElement formula = linearize(builtin_model().rules.at("mu3"), "mu2", 2);
  return formula;
}

void check_cochain(const AntiAssocAlgebra& alg, const MultilinearMap& f, int arity) {
  alg.check_shape();
  if (f.dim() != alg.dim) throw DimensionError("cochain dimension differs from the algebra");
  if (f.arity() != arity) {
    throw DimensionError("expected a cochain of arity " + std::to_string(arity) + ", got " +
                         std::to_string(f.arity()));
  }
}

}  // namespace

OperadElement parse_cochain_formula(std::string_view text, int arity) {
  if (arity < 2) throw DomainError("cochain formulas need arity >= 2");
  return FormulaParser(text, arity).parse();
}

MultilinearMap evaluate(const OperadElement& formula, const MultilinearMap& mu, const MultilinearMap& f) {
  const Signature& sig = *formula.signature();
  if (sig.size() != 2 || sig[0].arity != 2 || sig[1].arity != f.arity() || mu.arity() != 2) {
    throw DimensionError("formula signature does not match the cochain arities");
  }
  if (mu.dim() != f.dim()) throw DimensionError("product and cochain live on different spaces");
  MultilinearMap out(f.dim(), formula.arity());
  for (const auto& [m, c] : formula.terms()) {
    std::size_t pos = 0;
    out += c * evaluate_monomial(m, pos, mu, f);
  }
  return out;
}

const char* const kDelta2Formula = "af(b,c) + f(ab,c) + f(a,bc) + f(a,b)c";

const std::array<const char*, 4> kDelta3Formulas = {
    "af(b,c,de) - f(a,b,c(de)) + (ab)f(c,d,e) - f(ab,cd,e) + f(ab,c,d)e - f((ab)c,d,e) + f(a,b,c)(de)"
    " - f(a,bc,de)",
    "f((ab)c,d,e) - f(ab,c,d)e + f(a,b,cd)e - f(a,b(cd),e) + af(b,cd,e) - f(a,b,(cd)e) + (ab)f(c,d,e)"
    " - f(ab,c,de)",
    "f(a,bc,de) - af(bc,d,e) + f(a,(bc)d,e) - a(f(b,c,d)e) + f(a,b,cd)e - f(ab,c,d)e + (f(a,b,c)d)e"
    " - f(a(bc),d,e)",
    "f(ab,cd,e) - f(a,b,(cd)e) + af(b,cd,e) - f(a,b(cd),e) + (af(b,c,d))e - f(a,bc,d)e + (f(a,b,c)d)e"
    " - f(ab,c,d)e",
};

MultilinearMap delta1(const AntiAssocAlgebra& alg, const MultilinearMap& phi) {
  check_cochain(alg, phi, 1);
  MultilinearMap mu = alg.product();
  return compose(mu, 2, phi) - compose(phi, 1, mu) + compose(mu, 1, phi);
}

MultilinearMap delta2(const AntiAssocAlgebra& alg, const MultilinearMap& f) {
  check_cochain(alg, f, 2);
  return evaluate(printed_formula(0), alg.product(), f);
}

MultilinearMap delta2_derived(const AntiAssocAlgebra& alg, const MultilinearMap& f) {
  check_cochain(alg, f, 2);
  return evaluate(derived_delta2_formula(), alg.product(), f);
}

Cochain4 delta3_printed(const AntiAssocAlgebra& alg, const MultilinearMap& g) {
  check_cochain(alg, g, 3);
  MultilinearMap mu = alg.product();
  return {evaluate(printed_formula(1), mu, g), evaluate(printed_formula(2), mu, g),
          evaluate(printed_formula(3), mu, g), evaluate(printed_formula(4), mu, g)};
}

Cochain4 delta3_derived(const AntiAssocAlgebra& alg, const MultilinearMap& g) {
  check_cochain(alg, g, 3);
  MultilinearMap mu = alg.product();
  const auto& d = derived_delta3_formulas();
  return {evaluate(d[0], mu, g), evaluate(d[1], mu, g), evaluate(d[2], mu, g), evaluate(d[3], mu, g)};
}

std::vector<Delta3Mismatch> compare_delta3(const AntiAssocAlgebra& alg, const MultilinearMap& g) {
  auto printed = delta3_printed(alg, g);
  auto derived = delta3_derived(alg, g);
  std::vector<Delta3Mismatch> out;
  for (int c = 0; c < 4; ++c) {
    auto diff = printed[static_cast<std::size_t>(c)] - derived[static_cast<std::size_t>(c)];
    for (const auto& [key, vec] : diff.entries()) {
      for (const auto& [o, v] : vec) {
        out.push_back({c + 1, key, o, printed[static_cast<std::size_t>(c)].at(key, o),
                       derived[static_cast<std::size_t>(c)].at(key, o)});
      }
    }
  }
  return out;
}

std::vector<int> delta3_formula_mismatches() {
  std::vector<int> out;
  const auto& derived = derived_delta3_formulas();
  for (int i = 0; i < 4; ++i) {
    if (!(printed_formula(i + 1) == derived[static_cast<std::size_t>(i)])) out.push_back(i + 1);
  }
  return out;
}

namespace {

// Matrix whose rows are the images of the elementary cochains of `arity`
// under `delta`, flattened over the concatenated target components.
template <typename Delta>
std::size_t differential_rank(const AntiAssocAlgebra& alg, int arity, Delta delta) {
  std::size_t m = alg.dim;
  MultilinearMap shape(m, arity);
  std::uint64_t count = shape.flat_size();
  if (count == 0) return 0;
  QMatrix mat;
  bool started = false;
  MultilinearMap::Key key(static_cast<std::size_t>(arity));
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t rest = idx;
    auto out = static_cast<std::uint16_t>(rest % m);
    rest /= m;
    for (std::size_t s = key.size(); s-- > 0;) {
      key[s] = static_cast<std::uint16_t>(rest % m);
      rest /= m;
    }
    MultilinearMap e(m, arity);
    e.add(key, out, 1);
    std::vector<MultilinearMap> image = delta(e);
    std::uint64_t offset = 0;
    SparseRow row;
    for (const auto& part : image) {
      for (const auto& [k, vec] : part.entries()) {
        for (const auto& [o, v] : vec) row.emplace_back(static_cast<std::uint32_t>(offset + part.flat_index(k, o)), v);
      }
      offset += part.flat_size();
    }
    if (offset > std::numeric_limits<std::uint32_t>::max()) throw DomainError("cochain space too large");
    if (!started) {
      mat = QMatrix(0, static_cast<std::size_t>(offset));
      started = true;
    }
    mat.append_row(std::move(row));
  }
  return rank(mat);
}

std::size_t power(std::size_t m, int k) {
  std::size_t p = 1;
  for (int i = 0; i < k; ++i) p *= m;
  return p;
}

}  // namespace

CohomologyDims standard_cohomology_dims(const AntiAssocAlgebra& alg) {
  alg.check_shape();
  std::size_t m = alg.dim;
  if (m == 0) return {};
  std::size_t r1 = differential_rank(alg, 1, [&](const MultilinearMap& e) {
    return std::vector<MultilinearMap>{delta1(alg, e)};
  });
  std::size_t r2 = differential_rank(alg, 2, [&](const MultilinearMap& e) {
    return std::vector<MultilinearMap>{delta2(alg, e)};
  });
  return {power(m, 2) - r1, power(m, 3) - r2 - r1, power(m, 4) - r2};
}

CohomologyDims deformation_h_dims(const AntiAssocAlgebra& alg) {
  CohomologyDims dims = standard_cohomology_dims(alg);
  std::size_t m = alg.dim;
  if (m == 0) return dims;
  std::size_t r2 = power(m, 4) - dims.h3;
  std::size_t r3 = differential_rank(alg, 3, [&](const MultilinearMap& e) {
    auto d = delta3_derived(alg, e);
    return std::vector<MultilinearMap>(d.begin(), d.end());
  });
  dims.h3 = power(m, 4) - r3 - r2;
  return dims;
}

}  // namespace operadix
