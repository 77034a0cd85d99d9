#pragma once

#include "operadix/freeoperad.hpp"

#include <map>
#include <string>
#include <vector>

namespace operadix {

/// Generators and differential of the anti-associative minimal model up to
/// arity 5: mu2 (degree 0), mu3 (degree 1), mu5_1..mu5_4 (degree 2).
struct ModelData {
  SignaturePtr signature;
  std::map<std::string, OperadElement> rules;
  /// Source text of each rule, in composition and in bracket notation.
  std::map<std::string, std::string> composition_text;
  std::map<std::string, std::string> bracket_text;
};

/// Rules are parsed from the composition transcription.
ModelData builtin_model();

/// The rules evaluated from the bracket transcription instead.
std::map<std::string, OperadElement> bracket_rules(const ModelData& m);

/// d(d(g)) == 0 for every generator g.
bool check_square_zero(const ModelData& m);

struct CycleAnalysis {
  std::size_t edges = 0;
  std::size_t vertices = 0;
  std::size_t kernel_dim = 0;
  std::size_t squares_rank = 0;
  std::size_t required_generators = 0;
  bool mu5_completeness = false;
};

/// Cycle space of the five-leaf associahedron under d(x_e) = x_a + x_b, the
/// part killed by d(mu3 o_i mu3), and whether the four mu5 boundaries
/// complete it. Throws InconsistencyError when the model's boundary on edge
/// monomials is not the unsigned incidence.
CycleAnalysis arity5_cycle_analysis(const ModelData& m = builtin_model());

struct EdgePath {
  std::vector<std::string> vertices;  // closed: edge k joins vertices k and k+1 mod size
  std::vector<std::string> edges;
  std::vector<int> signs;             // +1, -1, +1, ...
};

/// d(mu5_i) as an alternating sum over a closed edge path. Throws
/// DomainError for i outside 1..4 and InconsistencyError when the element
/// is not a single alternating closed path.
EdgePath mu5_cycle_render(int i, const ModelData& m = builtin_model());

/// dim of degree-1 cycles modulo boundaries of degree-2 elements at the
/// given arity, in the free operad on the model's generators (the mu5
/// generators are left out when include_mu5 is false).
std::size_t degree1_homology(int arity, bool include_mu5, const ModelData& m = builtin_model());

/// degree1_homology(6, true) == 0.
bool arity6_degree_check(const ModelData& m = builtin_model());

}  // namespace operadix
