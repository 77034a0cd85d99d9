#include "doctest.h"

#include "operadix/errors.hpp"
#include "operadix/minimodel.hpp"
#include "operadix/opseries.hpp"

#include <algorithm>
#include <set>

using namespace operadix;

TEST_CASE("element parsers") {
  auto sig = make_signature({{"m2", 2, 0}, {"m3", 3, 1}});
  auto m2 = OperadElement::generator(sig, "m2");
  auto m3 = OperadElement::generator(sig, "m3");
  CHECK(parse_compositions(sig, "m2 o1 m2 + m2 o2 m2") == compose(m2, 1, m2) + compose(m2, 2, m2));
  CHECK(parse_compositions(sig, "-(m2 ∘_2 m3) o4 m2") == Rational(-1) * compose(compose(m2, 2, m3), 4, m2));
  CHECK(parse_compositions(sig, "3/2 m2 o1 m2 - 1/2*m2 o1 m2") == compose(m2, 1, m2));
  CHECK(parse_compositions(sig, "m2 o2 (m3 o1 m2)") == compose(m2, 2, compose(m3, 1, m2)));
  CHECK(parse_brackets(sig, "((••)•) - 2 (•(••))") == compose(m2, 1, m2) - Rational(2) * compose(m2, 2, m2));
  CHECK(parse_brackets(sig, "(* (* * *))") == compose(m2, 2, m3));

  auto position = [&](auto parse, const char* text) {
    try {
      parse(sig, text);
    } catch (const ParseError& e) {
      return static_cast<long>(e.position());
    }
    return -1L;
  };
  CHECK(position(parse_compositions, "m2 o3 m2") == 4);
  CHECK(position(parse_compositions, "m2 o1 mx") == 6);
  CHECK(position(parse_compositions, "m2 o1 m2 m2") == 9);
  CHECK(position(parse_compositions, "m2 + m3") == 5);
  CHECK(position(parse_compositions, "") == 0);
  CHECK(position(parse_brackets, "((••)•") == 0);
  CHECK(position(parse_brackets, "(•••••)") == 0);
}

TEST_CASE("built-in differential") {
  auto m = builtin_model();
  CHECK(m.signature->size() == 6);
  CHECK(m.rules.at("mu2").is_zero());
  CHECK(to_string(m.rules.at("mu3")) == "((••)•) + (•(••))");
  for (const char* name : {"mu5_1", "mu5_2", "mu5_3", "mu5_4"}) {
    const auto& r = m.rules.at(name);
    CHECK(r.arity() == 5);
    CHECK(r.degree() == 1);
    CHECK(r.terms().size() == 8);
    for (const auto& [mono, c] : r.terms()) CHECK((c == 1 || c == -1));
  }
  auto first = parse_brackets(m.signature, "(•(••(••)))");
  CHECK(m.rules.at("mu5_1").coeff(first.terms().begin()->first) == 1);
}

TEST_CASE("composition and bracket transcriptions agree") {
  auto m = builtin_model();
  auto brackets = bracket_rules(m);
  for (const auto& [name, rule] : m.rules) {
    INFO(name);
    CHECK(brackets.at(name) == rule);
  }
}

TEST_CASE("the differential squares to zero") {
  auto m = builtin_model();
  CHECK(check_square_zero(m));

  auto flipped = m;
  auto& r = flipped.rules.at("mu5_1");
  auto term = *r.terms().begin();
  r.add_term(term.first, Rational(-2) * term.second);
  CHECK_FALSE(check_square_zero(flipped));

  auto doubled = m;
  doubled.rules.at("mu3") *= 2;
  auto once = apply_derivation(doubled.rules, OperadElement::generator(doubled.signature, "mu3"));
  CHECK(apply_derivation(doubled.rules, once).is_zero());
  // d^2(mu5_i) is linear in d(mu3), so scaling d(mu3) keeps it zero.
  CHECK(check_square_zero(doubled));
  auto skewed = m;
  skewed.rules.at("mu3") = parse_brackets(m.signature, "((••)•) - (•(••))");
  CHECK_FALSE(check_square_zero(skewed));
}

TEST_CASE("cycle analysis of the five-leaf associahedron") {
  auto r = arity5_cycle_analysis();
  CHECK(r.edges == 21);
  CHECK(r.vertices == 14);
  CHECK(r.kernel_dim == 7);
  CHECK(r.squares_rank == 3);
  CHECK(r.required_generators == 4);
  CHECK(r.mu5_completeness);

  auto partial = builtin_model();
  partial.rules.at("mu5_4") = partial.rules.at("mu5_1");
  CHECK_FALSE(arity5_cycle_analysis(partial).mu5_completeness);
}

TEST_CASE("mu5 boundaries are alternating closed paths of length 8") {
  auto g = associahedron(5);
  std::set<std::string> vertex_names;
  for (const auto& v : g.vertices) vertex_names.insert(encode(v));
  for (int i = 1; i <= 4; ++i) {
    auto p = mu5_cycle_render(i);
    CHECK(p.vertices.size() == 8);
    CHECK(p.edges.size() == 8);
    CHECK(p.signs == std::vector<int>{1, -1, 1, -1, 1, -1, 1, -1});
    std::set<std::string> distinct(p.vertices.begin(), p.vertices.end());
    CHECK(distinct.size() == 8);
    for (const auto& v : p.vertices) CHECK(vertex_names.count(v) == 1);
  }
  auto first = mu5_cycle_render(1);
  std::set<std::string> labels{"(•(••)(••))", "((•••)(••))", "(((••)•)••)", "(((••)••)•)",
                               "((••)(••)•)", "((••)(•••))", "(••(•(••)))", "(•(••(••)))"};
  CHECK(std::set<std::string>(first.edges.begin(), first.edges.end()) == labels);
  CHECK_THROWS_AS(mu5_cycle_render(0), DomainError);
  CHECK_THROWS_AS(mu5_cycle_render(5), DomainError);

  auto broken = builtin_model();
  auto& r = broken.rules.at("mu5_2");
  auto term = *r.terms().begin();
  r.add_term(term.first, Rational(-1) * term.second);
  CHECK_THROWS_AS(mu5_cycle_render(2, broken), InconsistencyError);
}

TEST_CASE("degree-one homology") {
  CHECK(degree1_homology(5, true) == 0);
  CHECK(degree1_homology(5, false) == 4);
  CHECK(degree1_homology(4, true) == 0);
  CHECK(degree1_homology(3, true) == 0);
}

TEST_CASE("no further degree-two generators in arity six") { CHECK(arity6_degree_check()); }

TEST_CASE("generator counts match the Euler characteristics") {
  auto m = builtin_model();
  std::map<int, long> chi;
  for (const auto& g : m.signature->generators()) chi[g.arity] += (g.degree % 2 == 0 ? 1 : -1);
  auto euler = minimal_generator_euler(PSeries::from_terms({{1, Rational(1)}, {2, Rational(1)}, {3, Rational(1)}}, 5), 5);
  for (int a = 2; a <= 5; ++a) CHECK(euler[static_cast<std::size_t>(a - 2)] == chi[a]);
}
