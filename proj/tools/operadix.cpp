#include "operadix/cohomology.hpp"
#include "operadix/errors.hpp"
#include "operadix/family.hpp"
#include "operadix/freeoperad.hpp"
#include "operadix/koszuldual.hpp"
#include "operadix/minimodel.hpp"
#include "operadix/opseries.hpp"
#include "operadix/pseries.hpp"
#include "operadix/serialize.hpp"
#include "operadix/trees.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <random>
#include <sstream>
#include <unistd.h>

using namespace operadix;

namespace {

constexpr int kExitDomain = 2;
constexpr int kExitInconsistency = 3;
constexpr int kExitUsage = 64;

struct Output {
  bool json = false;

  // Prints `j` in JSON mode, otherwise the human text.
  void emit(const Json& j, const std::string& text) const {
    if (json) {
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << text;
      if (!text.empty() && text.back() != '\n') std::cout << "\n";
    }
  }
};

std::string family_label(const FamilyId& f) {
  return to_string(f.family) + "(n=" + std::to_string(f.n) + ", d=" + std::to_string(f.d) + ")";
}

Json family_json(const FamilyId& f) { return Json{{"family", to_string(f.family)}, {"n", f.n}, {"d", f.d}}; }

FamilyId family_id(const std::string& name, int n, int d) {
  FamilyId f{parse_family(name), n, d};
  check_family_id(f);
  return f;
}

std::function<void(int)> progress_reporter(const std::string& what) {
  if (!::isatty(STDERR_FILENO)) return {};
  return [what](int order) {
    if (order % 512 < 16) std::cerr << "\r" << what << ": t^" << order << std::flush;
  };
}

// ---------------------------------------------------------------------------

int cmd_series(const Output& out, const std::string& family, int n, int d, int order) {
  auto f = family_id(family, n, d);
  PSeries g = poincare(f, order);
  Json j = family_json(f);
  j["order"] = order;
  j["series"] = to_json(g);
  out.emit(j, family_label(f) + ": " + to_string(g));
  return 0;
}

int cmd_revert(const Output& out, const std::string& coeffs, int order) {
  PSeries f = parse_sparse_spec(coeffs, order);
  PSeries h = revert(f, order);
  auto neg = first_negative(h);
  Json j{{"input", to_json(f)}, {"inverse", to_json(h)}, {"first_negative", neg ? Json(*neg) : Json(nullptr)}};
  out.emit(j, to_string(h));
  return 0;
}

int cmd_scan(const Output& out, int n, int bound, bool resume, bool use_cache) {
  if (n < 2) throw DomainError("arity must be at least 2, got " + std::to_string(n));
  if (bound < 2 * n - 1) throw DomainError("scan bound must be at least 2n-1 = " + std::to_string(2 * n - 1));
  std::optional<ScanCache> cache;
  std::optional<IntegerReverter::State> cached;
  if (use_cache) {
    cache.emplace(ScanCache::default_dir());
    cached = cache->get(n);
  }
  auto order_of = [&](const IntegerReverter::State& s) { return 1 + s.stride * (static_cast<int>(s.v.size()) - 1); };
  int cached_order = cached ? order_of(*cached) : 0;
  // Only exponents 1 mod (n-1) occur, so a state covers every exponent
  // below its next one.
  bool covers = cached && cached_order + (n - 1) > bound;
  if (cached && !covers && !resume) {
    std::cerr << "note: cached scan for n=" << n << " reaches t^" << cached_order
              << "; recomputing (pass --resume to extend it)\n";
    cached.reset();
  }
  PSeries f = odd_total_series(n, std::max(bound, cached_order));
  IntegerReverter reverter = cached ? IntegerReverter(f, *cached) : IntegerReverter(f);
  if (covers) std::cerr << "note: served from cache " << cache->entry_path(n).string() << "\n";
  ScanResult r = necessary_koszul_scan(reverter, n, bound, progress_reporter("scan n=" + std::to_string(n)));
  if (::isatty(STDERR_FILENO)) std::cerr << "\r";
  if (cache && reverter.order() > (cached ? cached_order : 0)) {
    try {
      cache->put(n, reverter.state());
    } catch (const std::exception& e) {
      std::cerr << "warning: could not write cache: " << e.what() << "\n";
    }
  }
  std::ostringstream text;
  text << "n=" << n << " bound=" << bound << ": ";
  if (r.first_negative) {
    text << "first negative coefficient at t^" << *r.first_negative << " (not Koszul)";
  } else {
    text << "no negative coefficient up to t^" << bound << " (inconclusive)";
  }
  out.emit(to_json(r), text.str());
  return 0;
}

int cmd_verdict(const Output& out, const std::string& family, int n, int d) {
  auto f = family_id(family, n, d);
  KoszulVerdict v = koszul_verdict(f);
  Json j = family_json(f);
  j.update(to_json(v));
  out.emit(j, family_label(f) + ": " + to_string(v.status) + " (" + v.justification + ")");
  return 0;
}

int cmd_dims(const Output& out, const std::string& family, int n, int d, int weight) {
  auto f = family_id(family, n, d);
  if (weight < 0) throw DomainError("weight must be nonnegative");
  QuotientDim q = quotient_dim(standard_relations(f.family, n, d), weight);
  Json j = family_json(f);
  j["weight"] = weight;
  j["planar"] = integer_json(q.planar);
  j["full"] = integer_json(q.full);
  std::ostringstream text;
  text << family_label(f) << " weight " << weight << ": planar " << q.planar << ", full " << q.full;
  if (f.family == Family::PartAss) {
    Integer combs = count_scomb(n, weight);
    std::size_t kernel = comb_map_kernel_dim(n, d, weight);
    j["comb_count"] = integer_json(combs);
    j["comb_kernel_dim"] = kernel;
    j["comb_map_injective"] = kernel == 0;
    text << "\ncombs " << combs << ", comb-map kernel " << kernel
         << (kernel == 0 ? " (injective)" : " (nontrivial: combs are not a basis)");
  }
  out.emit(j, text.str());
  return 0;
}

int cmd_trees(const Output& out, const std::string& mode, int n, int l, bool comb) {
  if (mode == "count") {
    Integer c = comb ? count_scomb(n, l) : fuss_catalan(n, l);
    Json j{{"n", n}, {"l", l}, {"comb", comb}, {"count", integer_json(c)}};
    out.emit(j, to_decimal(c));
    return 0;
  }
  auto trees = comb ? enumerate_scomb(n, l) : enumerate_full(n, l);
  Json list = Json::array();
  std::string text;
  for (const auto& t : trees) {
    list.push_back(encode(t));
    text += encode(t) + "\n";
  }
  out.emit(Json{{"n", n}, {"l", l}, {"comb", comb}, {"trees", list}}, text);
  return 0;
}

int cmd_dual(const Output& out, const std::string& family, int n, int d) {
  auto f = family_id(family, n, d);
  auto qp = standard_quadratic(f.family, n, d);
  auto dq = dual(qp);
  Family df = dual_family(f.family);
  int dd = -d + n - 2;
  bool matches = same_presentation(dq, standard_quadratic(df, n, dd));
  bool involutive = same_presentation(dual(dq), qp);
  Json j = family_json(f);
  j["dual_family"] = to_string(df);
  j["dual_degree"] = dd;
  j["relation_rank"] = qp.relspace.rows();
  j["dual_relation_rank"] = dq.relspace.rows();
  j["matches_standard"] = matches;
  j["involutive"] = involutive;
  std::ostringstream text;
  text << family_label(f) << "! = " << family_label({df, n, dd}) << ": " << (matches ? "verified" : "MISMATCH")
       << ", relations " << qp.relspace.rows() << " -> " << dq.relspace.rows()
       << (involutive ? ", involutive" : ", NOT involutive");
  out.emit(j, text.str());
  if (!matches || !involutive) throw InconsistencyError("duality table check failed for " + family_label(f));
  return 0;
}

int cmd_minimodel(const Output& out, const std::string& mode, int i) {
  ModelData m = builtin_model();
  if (mode == "check") {
    bool square_zero = check_square_zero(m);
    auto brackets = bracket_rules(m);
    bool agree = true;
    for (const auto& [name, rule] : m.rules) agree = agree && brackets.at(name) == rule;
    out.emit(Json{{"square_zero", square_zero}, {"transcriptions_agree", agree}},
             std::string("d^2 = 0: ") + (square_zero ? "yes" : "NO") +
                 "\ncomposition and bracket transcriptions agree: " + (agree ? "yes" : "NO"));
    if (!square_zero || !agree) throw InconsistencyError("minimal model data failed its self-check");
    return 0;
  }
  if (mode == "arity5") {
    CycleAnalysis c = arity5_cycle_analysis(m);
    std::ostringstream text;
    text << "K5: " << c.vertices << " vertices, " << c.edges << " edges\n"
         << "cycle space dim " << c.kernel_dim << ", killed by d(mu3 o_i mu3): " << c.squares_rank
         << ", generators required: " << c.required_generators
         << "\nmu5 boundaries complete the cycle space: " << (c.mu5_completeness ? "yes" : "no");
    out.emit(to_json(c), text.str());
    return 0;
  }
  EdgePath p = mu5_cycle_render(i, m);
  std::ostringstream text;
  text << "d(mu5_" << i << "):\n";
  for (std::size_t k = 0; k < p.edges.size(); ++k) {
    text << "  " << (p.signs[k] > 0 ? "+" : "-") << " " << p.edges[k] << "   " << p.vertices[k] << " -- "
         << p.vertices[(k + 1) % p.vertices.size()] << "\n";
  }
  Json j = to_json(p);
  j["i"] = i;
  out.emit(j, text.str());
  return 0;
}

std::vector<Rational> parse_vector(const std::string& text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto piece = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(parse_rational(piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int cmd_coh(const Output& out, const std::string& mode, const std::string& file, int g, const std::string& unit,
            int samples, std::uint64_t seed) {
  if (mode == "free") {
    std::cout << to_json(free_antiassoc(g)).dump(2) << "\n";
    return 0;
  }
  if (file.empty()) throw DomainError("coh " + mode + " needs --algebra <file>");
  AntiAssocAlgebra alg = load_algebra(file);
  if (mode == "validate") {
    auto bad = validate(alg);
    Json list = Json::array();
    std::ostringstream text;
    text << (bad.empty() ? "anti-associative" : "NOT anti-associative") << " (dim " << alg.dim << ")";
    for (const auto& v : bad) {
      list.push_back(to_json(v));
      text << "\n  (" << alg.basis[v.i] << " " << alg.basis[v.j] << ") " << alg.basis[v.k] << " + "
           << alg.basis[v.i] << " (" << alg.basis[v.j] << " " << alg.basis[v.k] << ") != 0";
    }
    out.emit(Json{{"dim", alg.dim}, {"valid", bad.empty()}, {"violations", list}}, text.str());
    return 0;
  }
  if (mode == "unit") {
    bool zero = unital_collapse(alg, parse_vector(unit));
    out.emit(Json{{"unit", true}, {"product_vanishes", zero}, {"anti_associative", validate(alg).empty()}},
             zero ? "unit accepted; the product vanishes identically"
                  : "unit accepted; the product is nonzero, so the algebra cannot be anti-associative");
    return 0;
  }
  if (!validate(alg).empty()) throw DomainError("algebra is not anti-associative; run 'coh validate' for details");
  if (mode == "dims" || mode == "def-dims") {
    CohomologyDims dims = mode == "dims" ? standard_cohomology_dims(alg) : deformation_h_dims(alg);
    std::ostringstream text;
    text << (mode == "dims" ? "standard" : "deformation") << " complex: h1 = " << dims.h1 << ", h2 = " << dims.h2
         << ", h3 = " << dims.h3;
    out.emit(to_json(dims), text.str());
    return 0;
  }
  // compare: printed against derived delta3 on random cochains.
  std::mt19937_64 rng(seed);
  Json diffs = Json::array();
  std::size_t mismatched = 0;
  for (int s = 0; s < samples; ++s) {
    auto c = random_cochain(alg.dim, 3, 1 + alg.dim, rng);
    auto diff = compare_delta3(alg, c);
    if (!diff.empty()) ++mismatched;
    for (std::size_t k = 0; k < diff.size() && diffs.size() < 20; ++k) diffs.push_back(to_json(diff[k]));
  }
  Json comps = Json::array();
  for (int c : delta3_formula_mismatches()) comps.push_back(c);
  std::ostringstream text;
  text << "printed vs derived delta3: " << mismatched << " of " << samples << " random cochains differ";
  if (!comps.empty()) text << "; formulas differ in component(s) " << comps.dump();
  out.emit(Json{{"samples", samples}, {"mismatched_samples", mismatched}, {"formula_components", comps},
                {"diffs", diffs}},
           text.str());
  return 0;
}

int cmd_gk(const Output& out, const std::string& left, const std::string& right, int order) {
  FamilyId l = parse_family_id(left);
  FamilyId r = parse_family_id(right);
  PSeries res = gk_residual(poincare(l, order), poincare(r, order));
  Json j{{"left", family_json(l)}, {"right", family_json(r)}, {"order", order}, {"residual", to_json(res)},
         {"zero", res.is_zero()}};
  out.emit(j, "g_P(-g_Q(-t)) - t = " + to_string(res));
  return 0;
}

int cmd_discriminant(const Output& out, int n) {
  DiscriminantReport r = discriminant_obstruction(n);
  std::ostringstream text;
  text << "n=" << n << ": D = " << r.discriminant << ", positivity argument "
       << (r.method_applies ? "applies" : "does not apply");
  for (const auto& p : r.real_critical_points) text << "\n  critical point " << p;
  out.emit(to_json(r), text.str());
  return 0;
}

int cmd_euler(const Output& out, const std::string& coeffs, int max_arity) {
  PSeries g = parse_sparse_spec(coeffs, max_arity);
  auto chi = minimal_generator_euler(g, max_arity);
  Json list = Json::array();
  std::string text;
  for (std::size_t a = 0; a < chi.size(); ++a) {
    list.push_back(rational_json(chi[a]));
    text += "chi(E(" + std::to_string(a + 2) + ")) = " + to_string(chi[a]) + "\n";
  }
  out.emit(Json{{"series", to_json(g)}, {"euler", list}}, text);
  return 0;
}

int cmd_pa(const Output& out, int n, int l) {
  auto a = a_coeffs(n, l);
  int order = l * (n - 1) + 1;
  bool fe = pa_functional_equation_check(n, order, a);
  Json list = Json::array();
  std::string text = "A^" + std::to_string(n) + ": ";
  for (std::size_t k = 0; k < a.size(); ++k) {
    list.push_back(integer_json(a[k]));
    text += (k ? "," : "") + to_decimal(a[k]);
  }
  text += std::string("\nfunctional equation to order ") + std::to_string(order) + ": " + (fe ? "holds" : "FAILS");
  out.emit(Json{{"n", n}, {"A", list}, {"functional_equation", fe}}, text);
  if (!fe) throw InconsistencyError("A-list does not satisfy the functional equation");
  return 0;
}

int cmd_selfcheck(const Output& out) {
  validate_euler_sign_rule();
  ModelData m = builtin_model();
  if (!check_square_zero(m)) throw InconsistencyError("minimal model differential does not square to zero");
  auto brackets = bracket_rules(m);
  for (const auto& [name, rule] : m.rules) {
    if (!(brackets.at(name) == rule)) throw InconsistencyError("transcriptions of d(" + name + ") disagree");
  }
  out.emit(Json{{"euler_sign_rule", true}, {"square_zero", true}, {"transcriptions_agree", true}}, "self-check ok");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic workbench for n-ary operads"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  app.add_flag("--json", out.json, "Emit JSON instead of text");

  std::string family, coeffs, mode, file, left, right, unit;
  int n = 3, d = 0, order = 20, bound = 0, weight = 0, l = 0, i = 1, g = 1, max_arity = 9, samples = 50;
  std::uint64_t seed = 1;
  bool resume = false, no_cache = false, comb = false;

  auto* series = app.add_subcommand("series", "Poincare series of a family");
  series->add_option("family", family, "TotAss, PartAss, TotAssTilde or PartAssTilde")->required();
  series->add_option("--n", n)->required();
  series->add_option("--d", d)->required();
  series->add_option("--order", order)->required();

  auto* rev = app.add_subcommand("revert", "Compositional inverse of a sparse series");
  rev->add_option("--coeffs", coeffs, "coefficient:exponent pairs, e.g. 1:1,-1:2,1:3")->required();
  rev->add_option("--order", order)->required();

  auto* scan = app.add_subcommand("koszul-scan", "First negative coefficient of the inverse of t - t^n + t^(2n-1)");
  scan->add_option("--n", n)->required();
  scan->add_option("--bound", bound)->required();
  scan->add_flag("--resume", resume, "Extend a shorter cached scan instead of recomputing");
  scan->add_flag("--no-cache", no_cache, "Neither read nor write the scan cache");

  auto* verdict = app.add_subcommand("verdict", "Koszulity of a family");
  verdict->add_option("--family", family)->required();
  verdict->add_option("--n", n)->required();
  verdict->add_option("--d", d)->required();

  auto* dims = app.add_subcommand("dims", "Quotient dimensions of the free operad");
  dims->add_option("--family", family)->required();
  dims->add_option("--n", n)->required();
  dims->add_option("--d", d)->required();
  dims->add_option("--weight", weight)->required();

  auto* trees = app.add_subcommand("trees", "Count or list planar trees");
  trees->add_option("mode", mode)->required()->check(CLI::IsMember({"count", "list"}));
  trees->add_option("--n", n)->required();
  trees->add_option("--l", l)->required();
  trees->add_flag("--comb", comb, "Only trees whose vertices all have a leaf as first child");

  auto* du = app.add_subcommand("dual", "Quadratic dual of a family");
  du->add_option("--family", family)->required();
  du->add_option("--n", n)->required();
  du->add_option("--d", d)->required();

  auto* mm = app.add_subcommand("minimodel", "Anti-associative minimal model up to arity 5");
  mm->add_option("mode", mode)->required()->check(CLI::IsMember({"check", "arity5", "render"}));
  auto* render_i = mm->add_option("--i", i, "Which mu5 generator (1..4) to render");

  auto* coh = app.add_subcommand("coh", "Anti-associative algebras and their cochain complexes");
  coh->add_option("mode", mode)
      ->required()
      ->check(CLI::IsMember({"validate", "free", "dims", "def-dims", "compare", "unit"}));
  coh->add_option("--algebra", file, "JSON algebra file");
  coh->add_option("--g", g, "Generator count for 'free'");
  coh->add_option("--unit", unit, "Comma-separated coordinates of the unit for 'unit'");
  coh->add_option("--samples", samples, "Random cochains for 'compare'");
  coh->add_option("--seed", seed);

  auto* gk = app.add_subcommand("gk", "Residual of the generating-series functional equation");
  gk->add_option("--left", left, "family,n,d")->required();
  gk->add_option("--right", right, "family,n,d")->required();
  gk->add_option("--order", order)->required();

  auto* disc = app.add_subcommand("discriminant", "Discriminant obstruction for t - t^n + t^(2n-1)");
  disc->add_option("--n", n)->required();

  auto* euler = app.add_subcommand("euler", "Euler characteristics of minimal-model generators");
  euler->add_option("--coeffs", coeffs)->required();
  euler->add_option("--max-arity", max_arity)->required();

  auto* pa = app.add_subcommand("pa-coeffs", "A-coefficients of the partially associative comb count");
  pa->add_option("--n", n)->required();
  pa->add_option("--l", l)->required();

  auto* self = app.add_subcommand("selfcheck", "Run the built-in consistency checks");

  try {
    app.parse(argc, argv);
    if (mm->parsed() && mode == "render" && render_i->count() == 0) {
      throw CLI::RequiredError("minimodel render: --i");
    }
    if (coh->parsed() && mode == "unit" && unit.empty()) throw CLI::RequiredError("coh unit: --unit");
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (series->parsed()) return cmd_series(out, family, n, d, order);
    if (rev->parsed()) return cmd_revert(out, coeffs, order);
    if (scan->parsed()) return cmd_scan(out, n, bound, resume, !no_cache);
    if (verdict->parsed()) return cmd_verdict(out, family, n, d);
    if (dims->parsed()) return cmd_dims(out, family, n, d, weight);
    if (trees->parsed()) return cmd_trees(out, mode, n, l, comb);
    if (du->parsed()) return cmd_dual(out, family, n, d);
    if (mm->parsed()) return cmd_minimodel(out, mode, i);
    if (coh->parsed()) return cmd_coh(out, mode, file, g, unit, samples, seed);
    if (gk->parsed()) return cmd_gk(out, left, right, order);
    if (disc->parsed()) return cmd_discriminant(out, n);
    if (euler->parsed()) return cmd_euler(out, coeffs, max_arity);
    if (pa->parsed()) return cmd_pa(out, n, l);
    if (self->parsed()) return cmd_selfcheck(out);
  } catch (const InconsistencyError& e) {
    std::cerr << "inconsistency: " << e.what() << "\n";
    return kExitInconsistency;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const operadix::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
