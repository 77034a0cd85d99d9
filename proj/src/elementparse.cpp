#include "operadix/errors.hpp"
#include "operadix/freeoperad.hpp"

#include <cctype>
#include <optional>

namespace operadix {
namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }
  std::size_t pos() const { return pos_; }
  void set_pos(std::size_t p) { pos_ = p; }
  std::string_view rest() const { return text_.substr(pos_); }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  std::optional<long> number() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) return std::nullopt;
    if (pos_ - start > 9) {
      pos_ = start;
      fail("number too long");
    }
    return std::stol(std::string(text_.substr(start, pos_ - start)));
  }

  std::string name() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      bool ok = std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '^' ||
                (pos_ > start && std::isdigit(static_cast<unsigned char>(c)));
      if (!ok) break;
      ++pos_;
    }
    if (start == pos_) fail("expected a generator name");
    return std::string(text_.substr(start, pos_ - start));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

// Optional "p" or "p/q" coefficient, optionally followed by '*'.
Rational coefficient(Cursor& in) {
  auto num = in.number();
  if (!num) return 1;
  Rational c(*num);
  if (in.accept("/")) {
    auto den = in.number();
    if (!den || *den == 0) in.fail("expected a nonzero denominator");
    c = Rational(*num, *den);
    c.canonicalize();
  }
  in.accept("*");
  return c;
}

OperadElement composite(const SignaturePtr& sig, Cursor& in);

OperadElement atom(const SignaturePtr& sig, Cursor& in) {
  if (in.accept("(")) {
    OperadElement x = composite(sig, in);
    in.expect(")");
    return x;
  }
  std::size_t at = in.pos();
  std::string n = in.name();
  try {
    return OperadElement::generator(sig, n);
  } catch (const DomainError&) {
    throw ParseError("unknown generator '" + n + "'", at);
  }
}

bool composition_operator(Cursor& in) {
  std::size_t save = in.pos();
  if (in.accept("∘") || in.accept("o")) {
    in.accept("_");
    in.skip_space();
    if (std::isdigit(static_cast<unsigned char>(in.peek()))) return true;
  }
  in.set_pos(save);
  return false;
}

OperadElement composite(const SignaturePtr& sig, Cursor& in) {
  OperadElement x = atom(sig, in);
  while (composition_operator(in)) {
    std::size_t at = in.pos();
    long slot = *in.number();
    OperadElement y = atom(sig, in);
    if (slot < 1 || slot > x.arity()) {
      throw ParseError("slot " + std::to_string(slot) + " out of range 1.." + std::to_string(x.arity()), at);
    }
    x = compose(x, static_cast<int>(slot), y);
  }
  return x;
}

template <typename Term>
OperadElement signed_sum(std::string_view text, Term term) {
  Cursor in(text);
  std::optional<OperadElement> total;
  bool first = true;
  while (!in.done()) {
    Rational sign = 1;
    if (in.accept("+")) {
    } else if (in.accept("-")) {
      sign = -1;
    } else if (!first) {
      in.fail("expected '+' or '-'");
    }
    first = false;
    in.skip_space();
    std::size_t at = in.pos();
    Rational c = coefficient(in);
    OperadElement x = term(in);
    x *= sign * c;
    if (!total) {
      total = x;
    } else if (total->arity() != x.arity() || total->degree() != x.degree()) {
      throw ParseError("term of arity " + std::to_string(x.arity()) + " and degree " +
                           std::to_string(x.degree()) + " does not match the first term",
                       at);
    } else {
      *total += x;
    }
  }
  if (!total) in.fail("empty expression");
  return *total;
}

}  // namespace

OperadElement parse_compositions(const SignaturePtr& sig, std::string_view text) {
  return signed_sum(text, [&](Cursor& in) { return composite(sig, in); });
}

OperadElement parse_brackets(const SignaturePtr& sig, std::string_view text) {
  return signed_sum(text, [&](Cursor& in) {
    in.skip_space();
    std::size_t start = in.pos();
    if (in.peek() != '(') in.fail("expected '('");
    // Scan to the matching bracket, then hand the tree text to decode.
    std::string_view rest = in.rest();
    int depth = 0;
    std::size_t end = 0;
    for (; end < rest.size(); ++end) {
      if (rest[end] == '(') ++depth;
      if (rest[end] == ')' && --depth == 0) break;
    }
    if (depth != 0) in.fail("unbalanced brackets");
    PlanarTree t;
    try {
      t = decode(rest.substr(0, end + 1));
    } catch (const ParseError& e) {
      throw ParseError("malformed tree", start + e.position());
    }
    in.set_pos(start + end + 1);
    try {
      return OperadElement::monomial(sig, monomial_from_shape(*sig, t));
    } catch (const DomainError& e) {
      throw ParseError(e.what(), start);
    }
  });
}

}  // namespace operadix
