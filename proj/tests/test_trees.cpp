#include "doctest.h"

#include "operadix/errors.hpp"
#include "operadix/trees.hpp"

#include <algorithm>
#include <set>

using namespace operadix;

TEST_CASE("bracket notation") {
  CHECK(encode(PlanarTree::corolla(2)) == "(••)");
  PlanarTree t = PlanarTree::node({PlanarTree::leaf(), PlanarTree::corolla(2), PlanarTree::leaf()});
  CHECK(encode(t) == "(•(••)•)");
  CHECK(decode("(•(••)•)") == t);
  CHECK(decode("(* (* *) *)") == t);
  CHECK(decode("•").is_leaf());
  CHECK(t.leaf_count() == 4);
  CHECK(t.node_count() == 2);
}

TEST_CASE("malformed bracket strings report a position") {
  auto position_of = [](const char* text) {
    try {
      decode(text);
    } catch (const ParseError& e) {
      return static_cast<long>(e.position());
    }
    return -1L;
  };
  CHECK(position_of("(••") == 0);
  CHECK(position_of("(•)") == 0);
  CHECK(position_of("(••))") == 8);
  CHECK(position_of("(•x)") == 4);
  CHECK(position_of("") == 0);
}

TEST_CASE("round trip over enumerated trees") {
  for (int n = 2; n <= 3; ++n) {
    for (int l = 0; l <= 4; ++l) {
      for (const auto& t : enumerate_full(n, l)) CHECK(decode(encode(t)) == t);
    }
  }
}

TEST_CASE("full enumeration") {
  auto leaf_only = enumerate_full(3, 0);
  REQUIRE(leaf_only.size() == 1);
  CHECK(leaf_only[0].is_leaf());
  CHECK(enumerate_full(3, 2).size() == 3);
  CHECK(enumerate_full(2, 3).size() == 5);
  for (int n = 2; n <= 4; ++n) {
    for (int l = 0; l <= 6; ++l) {
      auto trees = enumerate_full(n, l);
      CHECK(Integer(static_cast<unsigned long>(trees.size())) == fuss_catalan(n, l));
      std::set<std::string> seen;
      for (std::size_t i = 0; i < trees.size(); ++i) {
        CHECK(trees[i].node_count() == static_cast<std::size_t>(l));
        CHECK(trees[i].leaf_count() == static_cast<std::size_t>(l * (n - 1) + 1));
        seen.insert(encode(trees[i]));
        if (i > 0) CHECK(encode(trees[i - 1]) < encode(trees[i]));
      }
      CHECK(seen.size() == trees.size());
    }
  }
  CHECK_THROWS_AS(enumerate_full(1, 2), DomainError);
}

TEST_CASE("comb subsets") {
  for (int n = 2; n <= 5; ++n) {
    auto one = enumerate_scomb(n, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == PlanarTree::corolla(n));
  }
  CHECK(enumerate_scomb(3, 2).size() == 2);
  CHECK(enumerate_scomb(3, 3).size() == 5);
  CHECK(count_scomb(4, 3) == 12);
  for (int l = 0; l <= 6; ++l) CHECK(count_scomb(2, l) == 1);
  std::vector<long> s3{1, 1, 2, 5, 14};
  for (int l = 0; l <= 4; ++l) CHECK(count_scomb(3, l) == s3[static_cast<std::size_t>(l)]);

  for (int n = 2; n <= 4; ++n) {
    for (int l = 0; l <= 5; ++l) {
      std::vector<PlanarTree> filtered;
      for (const auto& t : enumerate_full(n, l)) {
        if (is_scomb(t)) filtered.push_back(t);
      }
      CHECK(filtered == enumerate_scomb(n, l));
      CHECK(Integer(static_cast<unsigned long>(filtered.size())) == count_scomb(n, l));
    }
  }
}

TEST_CASE("comb trees decompose into smaller combs") {
  for (int n = 2; n <= 4; ++n) {
    for (int l = 1; l <= 5; ++l) {
      for (const auto& t : enumerate_scomb(n, l)) {
        auto kids = t.children();
        REQUIRE(kids.size() == static_cast<std::size_t>(n));
        CHECK(kids[0].is_leaf());
        std::size_t nodes = 0;
        for (std::size_t c = 1; c < kids.size(); ++c) {
          CHECK(is_scomb(kids[c]));
          nodes += kids[c].node_count();
        }
        CHECK(nodes == static_cast<std::size_t>(l - 1));
      }
    }
  }
}

TEST_CASE("associahedron graphs") {
  auto k3 = associahedron(3);
  CHECK(k3.vertices.size() == 2);
  CHECK(k3.edges.size() == 1);
  auto k4 = associahedron(4);
  CHECK(k4.vertices.size() == 5);
  CHECK(k4.edges.size() == 5);
  CHECK(square_faces(k4).empty());
  auto k5 = associahedron(5);
  CHECK(k5.vertices.size() == 14);
  CHECK(k5.edges.size() == 21);
  CHECK(k5.connected());
  for (const auto& nbrs : k5.adjacency()) CHECK(nbrs.size() == 3);
  auto k6 = associahedron(6);
  CHECK(k6.vertices.size() == 42);
  CHECK(k6.edges.size() == 84);
  CHECK(k6.connected());
  CHECK_THROWS_AS(associahedron(2), DomainError);
  CHECK_THROWS_AS(square_faces(k6), DomainError);
}

TEST_CASE("edge endpoints are the two expansions of the ternary vertex") {
  auto g = associahedron(5);
  for (const auto& e : g.edges) {
    CHECK(e.tree.leaf_count() == 5);
    CHECK(e.tree.node_count() == 3);
    CHECK(e.left != e.right);
    for (auto v : {e.left, e.right}) CHECK(g.vertices[v].node_count() == 4);
  }
  auto edge_tree = decode("(•(••)•)");
  auto k4 = associahedron(4);
  bool found = false;
  for (const auto& e : k4.edges) {
    if (e.tree == edge_tree) {
      found = true;
      CHECK(encode(k4.vertices[e.left]) == "((•(••))•)");
      CHECK(encode(k4.vertices[e.right]) == "(•((••)•))");
    }
  }
  CHECK(found);
}

TEST_CASE("square faces of the five-leaf associahedron") {
  auto g = associahedron(5);
  auto squares = square_faces(g);
  REQUIRE(squares.size() == 3);
  for (const auto& sq : squares) {
    std::set<std::size_t> edges(sq.edges.begin(), sq.edges.end());
    CHECK(edges.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
      const auto& e = g.edges[sq.edges[i]];
      std::set<std::size_t> ends{e.left, e.right};
      CHECK(ends == std::set<std::size_t>{sq.vertices[i], sq.vertices[(i + 1) % 4]});
    }
    for (auto e : sq.edges) {
      const auto& code = g.edges[e].tree.code();
      CHECK(std::count(code.begin(), code.end(), 3) == 1);
    }
  }
}
