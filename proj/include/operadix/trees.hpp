#pragma once

#include "operadix/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace operadix {

/// Planar rooted tree. Stored as the preorder sequence of vertex arities,
/// 0 marking a leaf: the 2-corolla is {2, 0, 0}, the bare leaf is {0}.
class PlanarTree {
 public:
  PlanarTree() : code_{0} {}

  static PlanarTree leaf() { return {}; }
  /// Throws DomainError for fewer than two children.
  static PlanarTree node(const std::vector<PlanarTree>& children);
  static PlanarTree corolla(int arity);
  /// Validates the preorder code; throws DomainError when malformed.
  static PlanarTree from_code(std::vector<std::uint8_t> code);

  bool is_leaf() const noexcept { return code_.size() == 1; }
  int root_arity() const noexcept { return code_.front(); }
  std::size_t leaf_count() const;
  std::size_t node_count() const;
  std::vector<PlanarTree> children() const;
  const std::vector<std::uint8_t>& code() const noexcept { return code_; }

  friend bool operator==(const PlanarTree&, const PlanarTree&) = default;

 private:
  explicit PlanarTree(std::vector<std::uint8_t> code) : code_(std::move(code)) {}
  std::vector<std::uint8_t> code_;
};

/// Index one past the subtree rooted at position `i` of a preorder code.
template <class Code>
std::size_t subtree_end(const Code& code, std::size_t i) {
  std::size_t pending = 1;
  while (pending > 0) {
    pending += static_cast<std::size_t>(code[i] > 0 ? code[i] : 0);
    --pending;
    ++i;
  }
  return i;
}

/// Nested-bracket notation, "•" for leaves: "(•(••)•)".
std::string encode(const PlanarTree& t);
/// Inverse of encode; also accepts '*' for a leaf and ignores spaces.
/// Throws ParseError with the byte offset of the problem.
PlanarTree decode(std::string_view text);

/// Canonical order: lexicographic on the encoded strings.
bool canonical_less(const PlanarTree& a, const PlanarTree& b);
void sort_canonical(std::vector<PlanarTree>& trees);

/// All planar trees with l internal vertices, each of arity n, canonical order.
std::vector<PlanarTree> enumerate_full(int n, int l);
/// The subset whose every internal vertex has a leaf as its first child.
std::vector<PlanarTree> enumerate_scomb(int n, int l);
bool is_scomb(const PlanarTree& t);
/// |enumerate_scomb(n, l)|, by the tuple recursion over the non-first children.
Integer count_scomb(int n, int l);
Integer fuss_catalan(int n, int l);

struct AssocEdge {
  PlanarTree tree;    // one ternary vertex, all others binary
  std::size_t left;   // vertex index of the expansion ((xy)z)
  std::size_t right;  // vertex index of the expansion (x(yz))
};

struct AssocGraph {
  int leaves = 0;
  std::vector<PlanarTree> vertices;  // binary trees, canonical order
  std::vector<AssocEdge> edges;      // canonical order of the edge trees

  std::size_t vertex_index(const PlanarTree& t) const;  // throws DomainError if absent
  std::vector<std::vector<std::size_t>> adjacency() const;
  bool connected() const;
};

/// The 1-skeleton of the associahedron on `a` leaves. Requires a >= 3.
AssocGraph associahedron(int a);

struct SquareFace {
  std::vector<std::size_t> vertices;  // v0 v1 v2 v3 around the cycle
  std::vector<std::size_t> edges;     // edge i joins vertices i and i+1 (mod 4)
};

/// All 4-cycles of the graph. Defined for a <= 5 (empty for a < 5);
/// throws DomainError for larger graphs.
std::vector<SquareFace> square_faces(const AssocGraph& g);

}  // namespace operadix
