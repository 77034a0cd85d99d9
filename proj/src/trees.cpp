#include "operadix/trees.hpp"

#include "operadix/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace operadix {

namespace {

constexpr std::string_view kBullet = "\xE2\x80\xA2";

void check_arity_weight(int n, int l) {
  if (n < 2) throw DomainError("tree arity must be at least 2, got " + std::to_string(n));
  if (n > 255) throw DomainError("tree arity above 255 is not supported");
  if (l < 0) throw DomainError("weight must be nonnegative, got " + std::to_string(l));
}

using Code = std::vector<std::uint8_t>;

// Calls `emit` for every way of writing `total` as an ordered sum of
// `parts` nonnegative integers.
template <class F>
void for_each_composition(int total, int parts, std::vector<int>& acc, F&& emit) {
  if (parts == 1) {
    acc.push_back(total);
    emit(acc);
    acc.pop_back();
    return;
  }
  for (int first = 0; first <= total; ++first) {
    acc.push_back(first);
    for_each_composition(total - first, parts - 1, acc, emit);
    acc.pop_back();
  }
}

// Preorder codes of trees with l vertices of arity n; `comb` restricts to
// trees whose vertices all have a leaf as first child.
const std::vector<Code>& generate(int n, int l, bool comb, std::map<int, std::vector<Code>>& memo) {
  auto found = memo.find(l);
  if (found != memo.end()) return found->second;
  std::vector<Code> out;
  if (l == 0) {
    out.push_back({0});
  } else {
    int free_children = comb ? n - 1 : n;
    std::vector<int> parts;
    for_each_composition(l - 1, free_children, parts, [&](const std::vector<int>& sizes) {
      std::vector<const std::vector<Code>*> lists;
      for (int s : sizes) lists.push_back(&generate(n, s, comb, memo));
      std::vector<std::size_t> idx(lists.size(), 0);
      if (std::any_of(lists.begin(), lists.end(), [](auto* v) { return v->empty(); })) return;
      while (true) {
        Code code{static_cast<std::uint8_t>(n)};
        if (comb) code.push_back(0);
        for (std::size_t c = 0; c < lists.size(); ++c) {
          const Code& child = (*lists[c])[idx[c]];
          code.insert(code.end(), child.begin(), child.end());
        }
        out.push_back(std::move(code));
        std::size_t c = lists.size();
        while (c > 0) {
          --c;
          if (++idx[c] < lists[c]->size()) break;
          idx[c] = 0;
          if (c == 0) return;
        }
      }
    });
  }
  return memo.emplace(l, std::move(out)).first->second;
}

std::vector<PlanarTree> sorted_trees(const std::vector<Code>& codes) {
  std::vector<std::pair<std::string, PlanarTree>> keyed;
  keyed.reserve(codes.size());
  for (const auto& code : codes) {
    PlanarTree t = PlanarTree::from_code(code);
    keyed.emplace_back(encode(t), std::move(t));
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<PlanarTree> out;
  out.reserve(keyed.size());
  for (auto& [key, t] : keyed) out.push_back(std::move(t));
  return out;
}

}  // namespace

PlanarTree PlanarTree::node(const std::vector<PlanarTree>& children) {
  if (children.size() < 2) throw DomainError("a tree vertex needs at least two children");
  if (children.size() > 255) throw DomainError("vertex arity above 255 is not supported");
  Code code{static_cast<std::uint8_t>(children.size())};
  for (const auto& c : children) code.insert(code.end(), c.code_.begin(), c.code_.end());
  return PlanarTree(std::move(code));
}

PlanarTree PlanarTree::corolla(int arity) {
  if (arity < 2 || arity > 255) throw DomainError("corolla arity out of range");
  Code code(static_cast<std::size_t>(arity) + 1, 0);
  code[0] = static_cast<std::uint8_t>(arity);
  return PlanarTree(std::move(code));
}

PlanarTree PlanarTree::from_code(std::vector<std::uint8_t> code) {
  std::size_t pending = 1;
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (pending == 0) throw DomainError("tree code has trailing entries");
    if (code[i] == 1) throw DomainError("tree code has a unary vertex");
    pending += code[i];
    --pending;
  }
  if (pending != 0 || code.empty()) throw DomainError("tree code is incomplete");
  return PlanarTree(std::move(code));
}

std::size_t PlanarTree::leaf_count() const {
  return static_cast<std::size_t>(std::count(code_.begin(), code_.end(), 0));
}

std::size_t PlanarTree::node_count() const { return code_.size() - leaf_count(); }

std::vector<PlanarTree> PlanarTree::children() const {
  std::vector<PlanarTree> out;
  std::size_t i = 1;
  while (i < code_.size()) {
    std::size_t end = subtree_end(code_, i);
    out.push_back(PlanarTree(Code(code_.begin() + static_cast<std::ptrdiff_t>(i),
                                  code_.begin() + static_cast<std::ptrdiff_t>(end))));
    i = end;
  }
  return out;
}

std::string encode(const PlanarTree& t) {
  std::string out;
  std::vector<int> open;  // remaining children of each open vertex
  for (std::uint8_t a : t.code()) {
    if (a == 0) {
      out += kBullet;
      while (!open.empty() && --open.back() == 0) {
        out += ')';
        open.pop_back();
      }
    } else {
      out += '(';
      open.push_back(a);
    }
  }
  return out;
}

namespace {

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  PlanarTree parse() {
    skip_spaces();
    Code code;
    parse_tree(code);
    skip_spaces();
    if (pos_ != text_.size()) throw ParseError("trailing characters after tree", pos_);
    return PlanarTree::from_code(std::move(code));
  }

 private:
  void skip_spaces() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
  }

  bool at_leaf() const {
    return text_.substr(pos_, kBullet.size()) == kBullet || (pos_ < text_.size() && text_[pos_] == '*');
  }

  void parse_tree(Code& code) {
    if (pos_ >= text_.size()) throw ParseError("unexpected end of tree", pos_);
    if (at_leaf()) {
      pos_ += text_[pos_] == '*' ? 1 : kBullet.size();
      code.push_back(0);
      return;
    }
    if (text_[pos_] != '(') throw ParseError("expected '(' or a leaf", pos_);
    std::size_t open = pos_++;
    std::size_t slot = code.size();
    code.push_back(0);
    int children = 0;
    while (true) {
      skip_spaces();
      if (pos_ >= text_.size()) throw ParseError("unbalanced '('", open);
      if (text_[pos_] == ')') {
        ++pos_;
        break;
      }
      parse_tree(code);
      ++children;
    }
    if (children < 2) throw ParseError("vertex with fewer than two children", open);
    if (children > 255) throw ParseError("vertex arity above 255", open);
    code[slot] = static_cast<std::uint8_t>(children);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

PlanarTree decode(std::string_view text) { return TreeParser(text).parse(); }

bool canonical_less(const PlanarTree& a, const PlanarTree& b) { return encode(a) < encode(b); }

void sort_canonical(std::vector<PlanarTree>& trees) {
  std::vector<Code> codes;
  codes.reserve(trees.size());
  for (const auto& t : trees) codes.push_back(t.code());
  trees = sorted_trees(codes);
}

std::vector<PlanarTree> enumerate_full(int n, int l) {
  check_arity_weight(n, l);
  std::map<int, std::vector<Code>> memo;
  return sorted_trees(generate(n, l, false, memo));
}

std::vector<PlanarTree> enumerate_scomb(int n, int l) {
  check_arity_weight(n, l);
  std::map<int, std::vector<Code>> memo;
  return sorted_trees(generate(n, l, true, memo));
}

bool is_scomb(const PlanarTree& t) {
  const auto& code = t.code();
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (code[i] > 0 && code[i + 1] != 0) return false;
  }
  return true;
}

Integer count_scomb(int n, int l) {
  check_arity_weight(n, l);
  std::vector<Integer> s{1};
  for (int w = 1; w <= l; ++w) {
    Integer total = 0;
    std::vector<int> parts;
    for_each_composition(w - 1, n - 1, parts, [&](const std::vector<int>& tuple) {
      Integer prod = 1;
      for (int li : tuple) prod *= s[static_cast<std::size_t>(li)];
      total += prod;
    });
    s.push_back(total);
  }
  return s[static_cast<std::size_t>(l)];
}

Integer fuss_catalan(int n, int l) {
  check_arity_weight(n, l);
  Integer b = binomial(static_cast<unsigned>(n * l), static_cast<unsigned>(l));
  return b / ((n - 1) * l + 1);
}

std::size_t AssocGraph::vertex_index(const PlanarTree& t) const {
  auto it = std::find(vertices.begin(), vertices.end(), t);
  if (it == vertices.end()) throw DomainError("tree " + encode(t) + " is not a vertex");
  return static_cast<std::size_t>(it - vertices.begin());
}

std::vector<std::vector<std::size_t>> AssocGraph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(vertices.size());
  for (const auto& e : edges) {
    adj[e.left].push_back(e.right);
    adj[e.right].push_back(e.left);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

bool AssocGraph::connected() const {
  if (vertices.empty()) return true;
  auto adj = adjacency();
  std::vector<bool> seen(vertices.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == vertices.size();
}

AssocGraph associahedron(int a) {
  if (a < 3) throw DomainError("associahedron needs at least 3 leaves, got " + std::to_string(a));
  AssocGraph g;
  g.leaves = a;
  g.vertices = enumerate_full(2, a - 1);
  std::map<Code, std::size_t> index;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) index.emplace(g.vertices[v].code(), v);

  // Every edge tree arises from a binary tree by contracting one internal edge.
  std::set<Code> edge_codes;
  for (const auto& v : g.vertices) {
    const Code& code = v.code();
    for (std::size_t i = 0; i < code.size(); ++i) {
      if (code[i] == 0) continue;
      std::size_t child = i + 1;
      for (int c = 0; c < code[i]; ++c) {
        if (code[child] > 0) {
          Code contracted = code;
          contracted[i] = static_cast<std::uint8_t>(code[i] + code[child] - 1);
          contracted.erase(contracted.begin() + static_cast<std::ptrdiff_t>(child));
          edge_codes.insert(std::move(contracted));
        }
        child = subtree_end(code, child);
      }
    }
  }

  std::vector<Code> codes(edge_codes.begin(), edge_codes.end());
  for (auto& t : sorted_trees(codes)) {
    const Code& code = t.code();
    std::size_t i = static_cast<std::size_t>(
        std::find(code.begin(), code.end(), std::uint8_t{3}) - code.begin());
    std::size_t y = subtree_end(code, i + 1);
    Code left = code;  // ((x y) z)
    left[i] = 2;
    left.insert(left.begin() + static_cast<std::ptrdiff_t>(i) + 1, 2);
    Code right = code;  // (x (y z))
    right[i] = 2;
    right.insert(right.begin() + static_cast<std::ptrdiff_t>(y), 2);
    g.edges.push_back({std::move(t), index.at(left), index.at(right)});
  }
  return g;
}

std::vector<SquareFace> square_faces(const AssocGraph& g) {
  if (g.leaves > 5) {
    throw DomainError("square faces are only computed for associahedra with at most 5 leaves");
  }
  auto adj = g.adjacency();
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_of;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto [a, b] = std::minmax(g.edges[e].left, g.edges[e].right);
    edge_of.emplace(std::make_pair(a, b), e);
  }
  auto edge = [&](std::size_t a, std::size_t b) { return edge_of.at(std::minmax(a, b)); };

  std::vector<SquareFace> out;
  for (std::size_t v0 = 0; v0 < adj.size(); ++v0) {
    for (std::size_t v1 : adj[v0]) {
      for (std::size_t v3 : adj[v0]) {
        if (v1 <= v0 || v3 <= v1) continue;
        for (std::size_t v2 : adj[v1]) {
          if (v2 <= v0 || !std::binary_search(adj[v3].begin(), adj[v3].end(), v2)) continue;
          out.push_back({{v0, v1, v2, v3}, {edge(v0, v1), edge(v1, v2), edge(v2, v3), edge(v3, v0)}});
        }
      }
    }
  }
  return out;
}

}  // namespace operadix
