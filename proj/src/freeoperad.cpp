#include "operadix/freeoperad.hpp"

#include "operadix/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace operadix {

namespace {

constexpr std::int16_t kHole = -2;

int label_arity(const Signature& sig, std::int16_t label, int hole_arity) {
  if (label == kLeaf) return 0;
  if (label == kHole) return hole_arity;
  return sig[static_cast<std::size_t>(label)].arity;
}

int label_degree(const Signature& sig, std::int16_t label) {
  return label >= 0 ? sig[static_cast<std::size_t>(label)].degree : 0;
}

std::size_t mono_end(const Signature& sig, const Monomial& m, std::size_t i, int hole_arity = 0) {
  std::size_t pending = 1;
  while (pending > 0) {
    pending += static_cast<std::size_t>(label_arity(sig, m[i], hole_arity));
    --pending;
    ++i;
  }
  return i;
}

int span_degree(const Signature& sig, const Monomial& m, std::size_t from, std::size_t to) {
  int deg = 0;
  for (std::size_t i = from; i < to; ++i) deg += label_degree(sig, m[i]);
  return deg;
}

bool odd(long v) { return (v % 2) != 0; }

// Replaces the vertex at position p of m (arity taken from its label, or
// hole_arity for a hole) by the monomial r, accumulating coeff times the
// reordering sign into out. The replaced vertex is assumed to have stood
// as a block in front of its own subtrees.
void substitute(const Signature& sig, const Monomial& m, std::size_t p, int hole_arity,
                const Monomial& r, const Rational& coeff, std::map<Monomial, Rational>& out) {
  std::vector<std::pair<std::size_t, std::size_t>> children;
  std::size_t child = p + 1;
  int k = label_arity(sig, m[p], hole_arity);
  for (int c = 0; c < k; ++c) {
    std::size_t end = mono_end(sig, m, child, hole_arity);
    children.emplace_back(child, end);
    child = end;
  }
  Monomial result(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(p));
  long parity = 0;
  int emitted = 0;  // degree of the subtrees already placed
  std::size_t leaf = 0;
  for (std::int16_t label : r) {
    if (label == kLeaf) {
      auto [from, to] = children.at(leaf++);
      result.insert(result.end(), m.begin() + static_cast<std::ptrdiff_t>(from),
                    m.begin() + static_cast<std::ptrdiff_t>(to));
      emitted += span_degree(sig, m, from, to);
    } else {
      result.push_back(label);
      parity += static_cast<long>(label_degree(sig, label)) * emitted;
    }
  }
  result.insert(result.end(), m.begin() + static_cast<std::ptrdiff_t>(child), m.end());
  Rational& slot = out[result];
  if (odd(parity)) {
    slot -= coeff;
  } else {
    slot += coeff;
  }
  if (slot == 0) out.erase(result);
}

bool same_signature(const SignaturePtr& a, const SignaturePtr& b) {
  if (a == b) return true;
  const auto& ga = a->generators();
  const auto& gb = b->generators();
  if (ga.size() != gb.size()) return false;
  for (std::size_t i = 0; i < ga.size(); ++i) {
    if (ga[i].name != gb[i].name || ga[i].arity != gb[i].arity || ga[i].degree != gb[i].degree) {
      return false;
    }
  }
  return true;
}

void canonical_sort(const Signature& sig, std::vector<Monomial>& ms) {
  std::vector<std::pair<std::string, Monomial>> keyed;
  keyed.reserve(ms.size());
  for (auto& m : ms) keyed.emplace_back(encode(monomial_shape(sig, m)), std::move(m));
  std::sort(keyed.begin(), keyed.end());
  ms.clear();
  for (auto& [key, m] : keyed) ms.push_back(std::move(m));
}

Monomial from_tree_code(const std::vector<std::uint8_t>& code, std::int16_t label) {
  Monomial m;
  m.reserve(code.size());
  for (auto a : code) m.push_back(a == 0 ? kLeaf : label);
  return m;
}

// Adds the relation terms substituted into every context of the skeleton.
std::map<Monomial, Rational> fill_hole(const Signature& sig, const Monomial& skeleton,
                                       int hole_arity, const OperadElement& rel) {
  std::size_t p = static_cast<std::size_t>(std::find(skeleton.begin(), skeleton.end(), kHole) -
                                           skeleton.begin());
  std::map<Monomial, Rational> out;
  for (const auto& [r, c] : rel.terms()) substitute(sig, skeleton, p, hole_arity, r, c, out);
  return out;
}

// Contexts of weight l: weight-l monomials with one vertex merged with one
// of its internal children into a hole.
std::set<Monomial> skeletons(const Signature& sig, const std::vector<Monomial>& basis) {
  std::set<Monomial> out;
  for (const auto& m : basis) {
    for (std::size_t p = 0; p < m.size(); ++p) {
      if (m[p] < 0) continue;
      std::size_t child = p + 1;
      for (int c = 0; c < label_arity(sig, m[p], 0); ++c) {
        if (m[child] >= 0) {
          Monomial s = m;
          s[p] = kHole;
          s.erase(s.begin() + static_cast<std::ptrdiff_t>(child));
          out.insert(std::move(s));
        }
        child = mono_end(sig, m, child);
      }
    }
  }
  return out;
}

void check_single_generator(const Presentation& p) {
  if (!p.signature || p.signature->size() != 1) {
    throw DomainError("weight computations need a one-generator presentation");
  }
}

Presentation family_presentation(const SignaturePtr& sig, Family kind) {
  int n = (*sig)[0].arity;
  OperadElement mu = OperadElement::generator(sig, 0);
  std::vector<OperadElement> comps;
  for (int i = 1; i <= n; ++i) comps.push_back(compose(mu, i, mu));
  auto pm = [](long e) { return odd(e) ? Rational(-1) : Rational(1); };

  Presentation p{sig, {}};
  switch (kind) {
    case Family::TotAss:
      for (int j = 2; j <= n; ++j) p.relations.push_back(comps[0] - comps[j - 1]);
      break;
    case Family::PartAss: {
      OperadElement r(sig, 2 * n - 1, 2 * (*sig)[0].degree);
      for (int i = 1; i <= n; ++i) r += pm(static_cast<long>(i + 1) * (n - 1)) * comps[i - 1];
      p.relations.push_back(r);
      break;
    }
    case Family::TotAssTilde:
      for (int j = 2; j <= n; ++j) {
        p.relations.push_back(pm(n + 1) * comps[0] - pm(static_cast<long>(j) * (n + 1)) * comps[j - 1]);
      }
      break;
    case Family::PartAssTilde: {
      OperadElement r(sig, 2 * n - 1, 2 * (*sig)[0].degree);
      for (const auto& c : comps) r += c;
      p.relations.push_back(r);
      break;
    }
  }
  return p;
}

}  // namespace

Signature::Signature(std::vector<GeneratorSpec> generators) : gens_(std::move(generators)) {
  std::set<std::string> names;
  for (const auto& g : gens_) {
    if (g.arity < 2 || g.arity > 255) {
      throw DomainError("generator '" + g.name + "' has arity " + std::to_string(g.arity) +
                        "; arities must lie in 2..255");
    }
    if (!names.insert(g.name).second) throw DomainError("duplicate generator name '" + g.name + "'");
  }
  if (gens_.size() > 32000) throw DomainError("too many generators");
}

int Signature::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].name == name) return static_cast<int>(i);
  }
  throw DomainError("unknown generator '" + name + "'");
}

SignaturePtr make_signature(std::vector<GeneratorSpec> generators) {
  return std::make_shared<const Signature>(std::move(generators));
}

PlanarTree monomial_shape(const Signature& sig, const Monomial& m) {
  std::vector<std::uint8_t> code;
  code.reserve(m.size());
  for (auto label : m) {
    if (label != kLeaf && (label < 0 || static_cast<std::size_t>(label) >= sig.size())) {
      throw DomainError("monomial has an invalid label");
    }
    code.push_back(static_cast<std::uint8_t>(label_arity(sig, label, 0)));
  }
  return PlanarTree::from_code(std::move(code));
}

int monomial_degree(const Signature& sig, const Monomial& m) { return span_degree(sig, m, 0, m.size()); }

int monomial_arity(const Monomial& m) {
  return static_cast<int>(std::count(m.begin(), m.end(), kLeaf));
}

std::string render_shape(const Signature& sig, const Monomial& m) { return encode(monomial_shape(sig, m)); }

std::string render_labeled(const Signature& sig, const Monomial& m) {
  std::size_t pos = 0;
  std::function<std::string()> walk = [&]() -> std::string {
    std::int16_t label = m.at(pos++);
    if (label == kLeaf) return "\xE2\x80\xA2";
    const GeneratorSpec& g = sig[static_cast<std::size_t>(label)];
    std::string out = "(" + g.name;
    for (int c = 0; c < g.arity; ++c) out += " " + walk();
    return out + ")";
  };
  return walk();
}

Monomial monomial_from_shape(const Signature& sig, const PlanarTree& shape) {
  Monomial m;
  for (auto a : shape.code()) {
    if (a == 0) {
      m.push_back(kLeaf);
      continue;
    }
    int found = -1;
    for (std::size_t g = 0; g < sig.size(); ++g) {
      if (sig[g].arity != a) continue;
      if (found >= 0) throw DomainError("several generators of arity " + std::to_string(a));
      found = static_cast<int>(g);
    }
    if (found < 0) throw DomainError("no generator of arity " + std::to_string(a));
    m.push_back(static_cast<std::int16_t>(found));
  }
  return m;
}

OperadElement::OperadElement(SignaturePtr sig, int arity, int degree)
    : sig_(std::move(sig)), arity_(arity), degree_(degree) {
  if (!sig_) throw DomainError("element needs a signature");
  if (arity_ < 2) throw DomainError("elements of arity below 2 are not represented");
}

OperadElement OperadElement::generator(const SignaturePtr& sig, const std::string& name) {
  return generator(sig, sig->index_of(name));
}

OperadElement OperadElement::generator(const SignaturePtr& sig, int index) {
  const GeneratorSpec& g = (*sig)[static_cast<std::size_t>(index)];
  Monomial m{static_cast<std::int16_t>(index)};
  m.insert(m.end(), static_cast<std::size_t>(g.arity), kLeaf);
  return monomial(sig, std::move(m));
}

OperadElement OperadElement::monomial(const SignaturePtr& sig, Monomial m, const Rational& coeff) {
  monomial_shape(*sig, m);  // validates
  OperadElement x(sig, monomial_arity(m), monomial_degree(*sig, m));
  x.add_term(m, coeff);
  return x;
}

Rational OperadElement::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<std::pair<Monomial, Rational>> OperadElement::sorted_terms() const {
  std::vector<std::tuple<std::string, Monomial, Rational>> keyed;
  for (const auto& [m, c] : terms_) keyed.emplace_back(render_shape(*sig_, m), m, c);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    return std::get<1>(a) < std::get<1>(b);
  });
  std::vector<std::pair<Monomial, Rational>> out;
  for (auto& [key, m, c] : keyed) out.emplace_back(std::move(m), std::move(c));
  return out;
}

void OperadElement::add_term(const Monomial& m, const Rational& c) {
  if (monomial_arity(m) != arity_ || monomial_degree(*sig_, m) != degree_) {
    throw DomainError("term " + render_labeled(*sig_, m) + " does not have arity " +
                      std::to_string(arity_) + " and degree " + std::to_string(degree_));
  }
  if (c == 0) return;
  Rational& slot = terms_[m];
  slot += c;
  if (slot == 0) terms_.erase(m);
}

void OperadElement::check_compatible(const OperadElement& other) const {
  if (!same_signature(sig_, other.sig_)) throw DomainError("elements over different generators");
  if (arity_ != other.arity_ || degree_ != other.degree_) {
    throw DomainError("adding elements of different arity or degree");
  }
}

OperadElement& OperadElement::operator+=(const OperadElement& other) {
  check_compatible(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

OperadElement& OperadElement::operator-=(const OperadElement& other) {
  check_compatible(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

OperadElement& OperadElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

bool operator==(const OperadElement& a, const OperadElement& b) {
  return same_signature(a.sig_, b.sig_) && a.arity_ == b.arity_ && a.degree_ == b.degree_ &&
         a.terms_ == b.terms_;
}

std::string to_string(const OperadElement& x, bool labeled) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : x.sorted_terms()) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1) out << to_string(mag) << " ";
    out << (labeled ? render_labeled(*x.signature(), m) : render_shape(*x.signature(), m));
  }
  if (first) out << "0";
  return out.str();
}

OperadElement compose(const OperadElement& x, int i, const OperadElement& y) {
  if (!same_signature(x.signature(), y.signature())) {
    throw DomainError("composing elements over different generators");
  }
  if (i < 1 || i > x.arity()) {
    throw DomainError("slot " + std::to_string(i) + " out of range 1.." + std::to_string(x.arity()));
  }
  const Signature& sig = *x.signature();
  OperadElement out(x.signature(), x.arity() + y.arity() - 1, x.degree() + y.degree());
  for (const auto& [mx, cx] : x.terms()) {
    std::size_t pos = 0;
    for (int seen = 0; pos < mx.size(); ++pos) {
      if (mx[pos] == kLeaf && ++seen == i) break;
    }
    bool flip = odd(static_cast<long>(y.degree()) * span_degree(sig, mx, pos + 1, mx.size()));
    for (const auto& [my, cy] : y.terms()) {
      Monomial m(mx.begin(), mx.begin() + static_cast<std::ptrdiff_t>(pos));
      m.insert(m.end(), my.begin(), my.end());
      m.insert(m.end(), mx.begin() + static_cast<std::ptrdiff_t>(pos) + 1, mx.end());
      Rational c = cx * cy;
      out.add_term(m, flip ? Rational(-c) : c);
    }
  }
  return out;
}

OperadElement apply_derivation(const std::map<std::string, OperadElement>& rules,
                               const OperadElement& x) {
  const Signature& sig = *x.signature();
  std::vector<const OperadElement*> by_index(sig.size(), nullptr);
  for (const auto& [name, rule] : rules) {
    int g = sig.index_of(name);
    if (!same_signature(rule.signature(), x.signature())) {
      throw DomainError("rule for '" + name + "' is over different generators");
    }
    if (rule.arity() != sig[static_cast<std::size_t>(g)].arity ||
        rule.degree() != sig[static_cast<std::size_t>(g)].degree - 1) {
      throw DomainError("rule for '" + name + "' must have the generator's arity and degree one less");
    }
    by_index[static_cast<std::size_t>(g)] = &rule;
  }

  std::map<Monomial, Rational> acc;
  for (const auto& [m, c] : x.terms()) {
    int before = 0;
    for (std::size_t p = 0; p < m.size(); ++p) {
      if (m[p] < 0) continue;
      const OperadElement* rule = by_index[static_cast<std::size_t>(m[p])];
      if (rule == nullptr) {
        throw DomainError("no rule for generator '" + sig[static_cast<std::size_t>(m[p])].name + "'");
      }
      Rational signed_c = odd(before) ? Rational(-c) : c;
      for (const auto& [r, rc] : rule->terms()) substitute(sig, m, p, 0, r, signed_c * rc, acc);
      before += label_degree(sig, m[p]);
    }
  }
  OperadElement out(x.signature(), x.arity(), x.degree() - 1);
  for (const auto& [m, c] : acc) out.add_term(m, c);
  return out;
}

std::vector<Monomial> monomial_basis(const Signature& sig, int arity, int degree) {
  if (arity < 1) return {};
  std::vector<std::vector<Monomial>> by_arity(static_cast<std::size_t>(arity) + 1);
  by_arity[1].push_back({kLeaf});
  // Appends to `out` every way of filling `slots` children with monomials
  // whose arities sum to `remaining`.
  std::function<void(int, int, Monomial&, std::vector<Monomial>&)> fill =
      [&](int remaining, int slots, Monomial& prefix, std::vector<Monomial>& out) {
        if (slots == 0) {
          if (remaining == 0) out.push_back(prefix);
          return;
        }
        for (int a = 1; a <= remaining - (slots - 1); ++a) {
          for (const auto& sub : by_arity[static_cast<std::size_t>(a)]) {
            std::size_t mark = prefix.size();
            prefix.insert(prefix.end(), sub.begin(), sub.end());
            fill(remaining - a, slots - 1, prefix, out);
            prefix.resize(mark);
          }
        }
      };
  for (int a = 2; a <= arity; ++a) {
    std::vector<Monomial> level;
    for (std::size_t g = 0; g < sig.size(); ++g) {
      if (sig[g].arity > a) continue;
      Monomial prefix{static_cast<std::int16_t>(g)};
      fill(a, sig[g].arity, prefix, level);
    }
    by_arity[static_cast<std::size_t>(a)] = std::move(level);
  }
  std::vector<Monomial> result;
  for (auto& m : by_arity[static_cast<std::size_t>(arity)]) {
    if (monomial_degree(sig, m) == degree) result.push_back(std::move(m));
  }
  canonical_sort(sig, result);
  return result;
}

Presentation standard_relations(Family kind, int n, int d) {
  check_family_id({kind, n, d});
  return family_presentation(make_signature({{"mu", n, d}}), kind);
}

std::vector<Monomial> weight_basis(const Presentation& p, int l) {
  check_single_generator(p);
  if (l < 0) throw DomainError("weight must be nonnegative");
  if (l == 0) return {};
  std::vector<Monomial> out;
  for (const auto& t : enumerate_full(p.arity(), l)) out.push_back(from_tree_code(t.code(), 0));
  return out;
}

QMatrix relation_span(const Presentation& p, int l) {
  std::vector<Monomial> basis = weight_basis(p, l);
  QMatrix rows(0, basis.size());
  if (l < 2) return rows;
  const Signature& sig = *p.signature;
  std::map<Monomial, std::uint32_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], static_cast<std::uint32_t>(i));
  int hole = 2 * p.arity() - 1;
  for (const auto& s : skeletons(sig, basis)) {
    for (const auto& rel : p.relations) {
      SparseRow row;
      for (const auto& [m, c] : fill_hole(sig, s, hole, rel)) row.emplace_back(index.at(m), c);
      if (!row.empty()) rows.append_row(std::move(row));
    }
  }
  return rows;
}

QuotientDim quotient_dim(const Presentation& p, int l) {
  check_single_generator(p);
  if (l < 0) throw DomainError("weight must be nonnegative");
  Integer planar;
  if (l == 0) {
    planar = 1;
  } else {
    std::size_t size = weight_basis(p, l).size();
    planar = static_cast<unsigned long>(size - rank(relation_span(p, l)));
  }
  unsigned a = static_cast<unsigned>(l * (p.arity() - 1) + 1);
  return {planar, planar * factorial(a)};
}

OperadElement left_comb(const Presentation& p, int k) {
  check_single_generator(p);
  if (k < 1) throw DomainError("left comb needs at least one vertex");
  Monomial m(static_cast<std::size_t>(k), 0);
  m.insert(m.end(), static_cast<std::size_t>(k * (p.arity() - 1) + 1), kLeaf);
  return OperadElement::monomial(p.signature, std::move(m));
}

OperadElement scomb_normal_form(int n, int d, const OperadElement& x) {
  if (((n - d) % 2 + 2) % 2 != 0) {
    throw DomainError("comb rewriting needs n and d of equal parity; use the quotient dimension "
                      "computation for this case");
  }
  const SignaturePtr& sig = x.signature();
  if (sig->size() != 1 || (*sig)[0].arity != n || (*sig)[0].degree != d) {
    throw DomainError("element is not over a single generator of arity n and degree d");
  }
  OperadElement rel = family_presentation(sig, Family::PartAss).relations.front();
  int hole = 2 * n - 1;

  OperadElement result = x;
  std::size_t budget = 100000;
  while (true) {
    const Monomial* target = nullptr;
    std::size_t redex = 0;
    for (const auto& [m, c] : result.terms()) {
      for (std::size_t p = 0; p + 1 < m.size(); ++p) {
        if (m[p] >= 0 && m[p + 1] >= 0) {
          target = &m;
          redex = p;
        }
      }
      if (target != nullptr) break;
    }
    if (target == nullptr) return result;
    if (budget-- == 0) throw InconsistencyError("comb rewriting did not terminate");

    Monomial m = *target;
    Rational coeff = result.coeff(m);
    Monomial skeleton = m;
    skeleton[redex] = kHole;
    skeleton.erase(skeleton.begin() + static_cast<std::ptrdiff_t>(redex) + 1);
    std::map<Monomial, Rational> filled = fill_hole(*sig, skeleton, hole, rel);
    Rational lead = filled.at(m);
    for (const auto& [t, c] : filled) result.add_term(t, -coeff / lead * c);
  }
}

std::size_t comb_map_kernel_dim(int n, int d, int l) {
  Presentation p = standard_relations(Family::PartAss, n, d);
  std::vector<Monomial> basis = weight_basis(p, l);
  if (basis.empty()) return 0;
  QMatrix rel = relation_span(p, l);
  QMatrix combs(0, basis.size());
  std::size_t count = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!is_scomb(monomial_shape(*p.signature, basis[i]))) continue;
    combs.append_row({{static_cast<std::uint32_t>(i), Rational(1)}});
    ++count;
  }
  std::size_t image = rank(rel.stacked(combs)) - rank(rel);
  return count - image;
}

}  // namespace operadix
