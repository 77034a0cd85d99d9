#include "operadix/minimodel.hpp"

#include "operadix/errors.hpp"
#include "operadix/exactla.hpp"
#include "operadix/trees.hpp"

#include <algorithm>

namespace operadix {
namespace {

struct Transcription {
  const char* name;
  const char* compositions;
  const char* brackets;
};

const Transcription kRules[] = {
    {"mu3", "mu2 o1 mu2 + mu2 o2 mu2", "((••)•) + (•(••))"},
    {"mu5_1",
     "(mu2 o2 mu3) o4 mu2 - (mu3 o3 mu2) o4 mu2 + (mu2 o1 mu2) o3 mu3 - (mu3 o1 mu2) o3 mu2"
     " + (mu2 o1 mu3) o1 mu2 - (mu3 o1 mu2) o1 mu2 + (mu2 o1 mu3) o4 mu2 - (mu3 o2 mu2) o4 mu2",
     "(•(••(••))) - (••(•(••))) + ((••)(•••)) - ((••)(••)•)"
     " + (((••)••)•) - (((••)•)••) + ((•••)(••)) - (•(••)(••))"},
    {"mu5_2",
     "(mu3 o1 mu2) o1 mu2 - (mu2 o1 mu3) o1 mu2 + (mu2 o1 mu3) o3 mu2 - (mu3 o2 mu2) o3 mu2"
     " + (mu2 o2 mu3) o3 mu2 - (mu3 o3 mu2) o3 mu2 + (mu2 o1 mu2) o3 mu3 - (mu3 o1 mu2) o4 mu2",
     "(((••)•)••) - (((••)••)•) + ((••(••))•) - (•(•(••))•)"
     " + (•(•(••)•)) - (••((••)•)) + ((••)(•••)) - ((••)•(••))"},
    {"mu5_3",
     "(mu3 o2 mu2) o4 mu2 - (mu2 o2 mu3) o2 mu2 + (mu3 o2 mu2) o2 mu2 - (mu2 o1 mu2) o2 mu3"
     " + (mu2 o1 mu3) o3 mu2 - (mu2 o1 mu3) o1 mu2 + (mu2 o1 mu2) o1 mu3 - (mu3 o1 mu2) o2 mu2",
     "(•(••)(••)) - (•((••)••)) + (•((••)•)•) - ((•(•••))•)"
     " + ((••(••))•) - (((••)••)•) + (((•••)•)•) - ((•(••))••)"},
    {"mu5_4",
     "(mu3 o1 mu2) o3 mu2 - (mu3 o3 mu2) o3 mu2 + (mu2 o2 mu3) o3 mu2 - (mu3 o2 mu2) o3 mu2"
     " + (mu2 o1 mu2) o2 mu3 - (mu2 o1 mu3) o2 mu2 + (mu2 o1 mu2) o1 mu3 - (mu2 o1 mu3) o1 mu2",
     "((••)(••)•) - (••((••)•)) + (•(•(••)•)) - (•(•(••))•)"
     " + ((•(•••))•) - ((•(••)•)•) + (((•••)•)•) - (((••)••)•)"},
};

const char* const kMu5[] = {"mu5_1", "mu5_2", "mu5_3", "mu5_4"};

// Coordinates of a degree-1 arity-a element over the edges of K_a.
std::vector<Rational> edge_coords(const ModelData& m, const AssocGraph& g,
                                  const std::map<std::vector<std::uint8_t>, std::size_t>& edge_index,
                                  const OperadElement& x) {
  std::vector<Rational> v(g.edges.size());
  for (const auto& [mono, c] : x.terms()) {
    auto it = edge_index.find(monomial_shape(*m.signature, mono).code());
    if (it == edge_index.end()) {
      throw InconsistencyError("term " + render_shape(*m.signature, mono) + " is not an edge monomial");
    }
    v[it->second] = c;
  }
  return v;
}

std::map<std::vector<std::uint8_t>, std::size_t> index_edges(const AssocGraph& g) {
  std::map<std::vector<std::uint8_t>, std::size_t> out;
  for (std::size_t e = 0; e < g.edges.size(); ++e) out.emplace(g.edges[e].tree.code(), e);
  return out;
}

OperadElement gen(const ModelData& m, const std::string& name) {
  return OperadElement::generator(m.signature, name);
}

}  // namespace

ModelData builtin_model() {
  ModelData m;
  std::vector<GeneratorSpec> gens{{"mu2", 2, 0}, {"mu3", 3, 1}};
  for (const char* name : kMu5) gens.push_back({name, 5, 2});
  m.signature = make_signature(gens);
  m.rules.emplace("mu2", OperadElement(m.signature, 2, -1));
  m.composition_text.emplace("mu2", "0");
  m.bracket_text.emplace("mu2", "0");
  for (const auto& t : kRules) {
    m.rules.emplace(t.name, parse_compositions(m.signature, t.compositions));
    m.composition_text.emplace(t.name, t.compositions);
    m.bracket_text.emplace(t.name, t.brackets);
  }
  return m;
}

std::map<std::string, OperadElement> bracket_rules(const ModelData& m) {
  std::map<std::string, OperadElement> out;
  for (const auto& [name, text] : m.bracket_text) {
    if (text == "0") {
      out.emplace(name, m.rules.at(name));
    } else {
      out.emplace(name, parse_brackets(m.signature, text));
    }
  }
  return out;
}

bool check_square_zero(const ModelData& m) {
  for (const auto& g : m.signature->generators()) {
    OperadElement once = apply_derivation(m.rules, gen(m, g.name));
    if (!apply_derivation(m.rules, once).is_zero()) return false;
  }
  return true;
}

CycleAnalysis arity5_cycle_analysis(const ModelData& m) {
  AssocGraph g = associahedron(5);
  auto edge_index = index_edges(g);
  CycleAnalysis r;
  r.edges = g.edges.size();
  r.vertices = g.vertices.size();

  // Boundary as a map edges -> vertices; column e holds d(x_e).
  QMatrix boundary(0, g.vertices.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    OperadElement x = OperadElement::monomial(m.signature, monomial_from_shape(*m.signature, g.edges[e].tree));
    OperadElement dx = apply_derivation(m.rules, x);
    std::vector<Rational> row(g.vertices.size());
    for (const auto& [mono, c] : dx.terms()) row[g.vertex_index(monomial_shape(*m.signature, mono))] = c;
    std::vector<Rational> expected(g.vertices.size());
    expected[g.edges[e].left] += 1;
    expected[g.edges[e].right] += 1;
    if (row != expected) {
      throw InconsistencyError("boundary of edge " + encode(g.edges[e].tree) + " is not the sum of its endpoints");
    }
    boundary.append_dense_row(row);
  }
  QMatrix d = boundary.transpose();
  r.kernel_dim = g.edges.size() - rank(d);

  QMatrix squares(0, g.edges.size());
  OperadElement mu3 = gen(m, "mu3");
  for (int i = 1; i <= 3; ++i) {
    auto v = edge_coords(m, g, edge_index, apply_derivation(m.rules, compose(mu3, i, mu3)));
    for (const auto& y : d.multiply(v)) {
      if (y != 0) throw InconsistencyError("square boundary is not a cycle");
    }
    squares.append_dense_row(v);
  }
  r.squares_rank = rank(squares);
  r.required_generators = r.kernel_dim - r.squares_rank;

  QMatrix all = squares;
  for (const char* name : kMu5) {
    auto v = edge_coords(m, g, edge_index, m.rules.at(name));
    for (const auto& y : d.multiply(v)) {
      if (y != 0) throw InconsistencyError(std::string("boundary of ") + name + " is not a cycle");
    }
    all.append_dense_row(v);
  }
  r.mu5_completeness = rank(all) == r.kernel_dim;
  return r;
}

EdgePath mu5_cycle_render(int i, const ModelData& m) {
  if (i < 1 || i > 4) throw DomainError("mu5 index must be in 1..4, got " + std::to_string(i));
  AssocGraph g = associahedron(5);
  auto edge_index = index_edges(g);
  auto coords = edge_coords(m, g, edge_index, m.rules.at(kMu5[i - 1]));

  std::vector<std::size_t> support;
  for (std::size_t e = 0; e < coords.size(); ++e) {
    if (coords[e] == 0) continue;
    if (coords[e] != 1 && coords[e] != -1) throw InconsistencyError("path coefficients must be +-1");
    support.push_back(e);
  }
  if (support.size() < 4 || support.size() % 2 != 0) {
    throw InconsistencyError("boundary has " + std::to_string(support.size()) + " edges; not an even cycle");
  }
  std::map<std::size_t, std::vector<std::size_t>> at_vertex;
  for (auto e : support) {
    at_vertex[g.edges[e].left].push_back(e);
    at_vertex[g.edges[e].right].push_back(e);
  }
  for (const auto& [v, es] : at_vertex) {
    if (es.size() != 2) throw InconsistencyError("vertex " + encode(g.vertices[v]) + " is not on a simple path");
  }

  // Start at the first positive edge and walk around.
  std::size_t first = *std::find_if(support.begin(), support.end(), [&](std::size_t e) { return coords[e] > 0; });
  EdgePath path;
  std::size_t e = first;
  std::size_t v = g.edges[e].left;
  do {
    path.vertices.push_back(encode(g.vertices[v]));
    path.edges.push_back(encode(g.edges[e].tree));
    path.signs.push_back(coords[e] > 0 ? 1 : -1);
    v = g.edges[e].left == v ? g.edges[e].right : g.edges[e].left;
    const auto& es = at_vertex.at(v);
    e = es[0] == e ? es[1] : es[0];
  } while (e != first);
  if (path.edges.size() != support.size()) throw InconsistencyError("boundary splits into several cycles");
  for (std::size_t k = 0; k < path.signs.size(); ++k) {
    if (path.signs[k] != (k % 2 == 0 ? 1 : -1)) throw InconsistencyError("signs do not alternate along the path");
  }
  return path;
}

std::size_t degree1_homology(int arity, bool include_mu5, const ModelData& m) {
  if (arity < 3) throw DomainError("degree-one elements need arity at least 3");
  std::vector<Monomial> c1 = monomial_basis(*m.signature, arity, 1);
  std::vector<Monomial> c0 = monomial_basis(*m.signature, arity, 0);
  std::map<Monomial, std::uint32_t> i1;
  std::map<Monomial, std::uint32_t> i0;
  for (std::size_t k = 0; k < c1.size(); ++k) i1.emplace(c1[k], static_cast<std::uint32_t>(k));
  for (std::size_t k = 0; k < c0.size(); ++k) i0.emplace(c0[k], static_cast<std::uint32_t>(k));

  QMatrix d1(0, c0.size());
  for (const auto& mono : c1) {
    SparseRow row;
    OperadElement d = apply_derivation(m.rules, OperadElement::monomial(m.signature, mono));
    for (const auto& [t, c] : d.terms()) {
      row.emplace_back(i0.at(t), c);
    }
    d1.append_row(std::move(row));
  }
  std::size_t cycles = c1.size() - rank(d1);

  int mu5_first = m.signature->index_of("mu5_1");
  QMatrix d2(0, c1.size());
  for (const auto& mono : monomial_basis(*m.signature, arity, 2)) {
    bool has_mu5 = std::any_of(mono.begin(), mono.end(), [&](std::int16_t l) { return l >= mu5_first; });
    if (has_mu5 && !include_mu5) continue;
    SparseRow row;
    OperadElement d = apply_derivation(m.rules, OperadElement::monomial(m.signature, mono));
    for (const auto& [t, c] : d.terms()) {
      row.emplace_back(i1.at(t), c);
    }
    d2.append_row(std::move(row));
  }
  return cycles - rank(d2);
}

bool arity6_degree_check(const ModelData& m) { return degree1_homology(6, true, m) == 0; }

}  // namespace operadix
