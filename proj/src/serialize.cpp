#include "operadix/serialize.hpp"

#include "operadix/errors.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <system_error>
#include <unistd.h>

namespace operadix {

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw ParseError(std::string("missing field '") + name + "'", 0);
  return j.at(name);
}

int int_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer()) throw ParseError(std::string("field '") + name + "' must be an integer", 0);
  return v.get<int>();
}

}  // namespace

Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(static_cast<long>(z.get_si()));
  return Json(to_decimal(z));
}

Json rational_json(const Rational& q) { return Json(to_string(q)); }

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<long>()));
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw ParseError("expected an integer or a decimal string", 0);
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("expected an integer or a rational string", 0);
}

Json to_json(const PSeries& f) {
  Json terms = Json::array();
  for (const auto& [e, c] : f.coeffs()) terms.push_back(Json::array({e, rational_json(c)}));
  return Json{{"order", f.trunc()}, {"terms", terms}};
}

PSeries series_from_json(const Json& j) {
  int order = int_field(j, "order");
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) throw ParseError("'terms' must be an array", 0);
  std::vector<std::pair<int, Rational>> out;
  for (const auto& t : terms) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer()) {
      throw ParseError("series term must be [exponent, coefficient]", 0);
    }
    out.emplace_back(t[0].get<int>(), rational_from_json(t[1]));
  }
  return PSeries::from_terms(out, order);
}

Json to_json(const ScanResult& r) {
  return Json{{"n", r.n},
              {"bound", r.bound},
              {"first_negative", r.first_negative ? Json(*r.first_negative) : Json(nullptr)},
              {"not_koszul", r.not_koszul()}};
}

ScanResult scan_from_json(const Json& j) {
  ScanResult r;
  r.n = int_field(j, "n");
  r.bound = int_field(j, "bound");
  const Json& fn = field(j, "first_negative");
  if (!fn.is_null()) {
    if (!fn.is_number_integer()) throw ParseError("'first_negative' must be an integer or null", 0);
    r.first_negative = fn.get<int>();
  }
  return r;
}

Json to_json(const KoszulVerdict& v) {
  return Json{{"status", to_string(v.status)}, {"justification", v.justification}};
}

Json to_json(const DiscriminantReport& r) {
  return Json{{"n", r.n},
              {"discriminant", integer_json(r.discriminant)},
              {"method_applies", r.method_applies},
              {"real_critical_points", r.real_critical_points}};
}

Json to_json(const CycleAnalysis& c) {
  return Json{{"edges", c.edges},
              {"vertices", c.vertices},
              {"kernel_dim", c.kernel_dim},
              {"squares_rank", c.squares_rank},
              {"required_generators", c.required_generators},
              {"mu5_completeness", c.mu5_completeness}};
}

Json to_json(const EdgePath& p) {
  return Json{{"vertices", p.vertices}, {"edges", p.edges}, {"signs", p.signs}};
}

Json to_json(const CohomologyDims& d) { return Json{{"h1", d.h1}, {"h2", d.h2}, {"h3", d.h3}}; }

CohomologyDims dims_from_json(const Json& j) {
  auto get = [&](const char* name) {
    const Json& v = field(j, name);
    if (!v.is_number_unsigned()) throw ParseError(std::string("'") + name + "' must be a nonnegative integer", 0);
    return v.get<std::size_t>();
  };
  return {get("h1"), get("h2"), get("h3")};
}

Json to_json(const Violation& v) {
  Json value = Json::array();
  for (const auto& c : v.value) value.push_back(rational_json(c));
  return Json{{"triple", {v.i, v.j, v.k}}, {"value", value}};
}

Json to_json(const Delta3Mismatch& m) {
  return Json{{"component", m.component},
              {"inputs", m.inputs},
              {"output", m.output},
              {"printed", rational_json(m.printed)},
              {"derived", rational_json(m.derived)}};
}

Json to_json(const AntiAssocAlgebra& alg) {
  alg.check_shape();
  Json table = Json::array();
  for (const auto& row : alg.table) {
    Json r = Json::array();
    for (const auto& v : row) {
      Json entry = Json::array();
      for (const auto& c : v) entry.push_back(rational_json(c));
      r.push_back(entry);
    }
    table.push_back(r);
  }
  return Json{{"dim", alg.dim}, {"basis", alg.basis}, {"table", table}};
}

AntiAssocAlgebra algebra_from_json(const Json& j) {
  const Json& dim = field(j, "dim");
  if (!dim.is_number_unsigned()) throw ParseError("'dim' must be a nonnegative integer", 0);
  AntiAssocAlgebra alg = AntiAssocAlgebra::zero(dim.get<std::size_t>());
  const Json& basis = field(j, "basis");
  if (!basis.is_array()) throw ParseError("'basis' must be an array of names", 0);
  alg.basis.clear();
  for (const auto& b : basis) {
    if (!b.is_string()) throw ParseError("basis names must be strings", 0);
    alg.basis.push_back(b.get<std::string>());
  }
  const Json& table = field(j, "table");
  if (!table.is_array()) throw ParseError("'table' must be an array", 0);
  alg.table.clear();
  for (const auto& row : table) {
    if (!row.is_array()) throw ParseError("table rows must be arrays", 0);
    std::vector<std::vector<Rational>> r;
    for (const auto& v : row) {
      if (!v.is_array()) throw ParseError("table entries must be coordinate arrays", 0);
      std::vector<Rational> coords;
      for (const auto& c : v) coords.push_back(rational_from_json(c));
      r.push_back(std::move(coords));
    }
    alg.table.push_back(std::move(r));
  }
  alg.check_shape();
  return alg;
}

AntiAssocAlgebra load_algebra(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open algebra file " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("invalid JSON in " + path.string() + ": " + e.what(), e.byte);
  }
  return algebra_from_json(j);
}

// ---------------------------------------------------------------------------
// ScanCache

namespace {

std::string series_key(int n) {
  return "1:1,-1:" + std::to_string(n) + ",1:" + std::to_string(2 * n - 1);
}

Json integer_list(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back(to_decimal(z));
  return out;
}

std::vector<Integer> integers_from(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of decimal strings", 0);
  std::vector<Integer> out;
  out.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_string()) throw ParseError("expected a decimal string", 0);
    out.push_back(parse_integer(x.get<std::string>()));
  }
  return out;
}

}  // namespace

ScanCache::ScanCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path ScanCache::default_dir() {
  if (const char* env = std::getenv("OPERADIX_CACHE"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "operadix";
  if (const char* home = std::getenv("HOME"); home && *home) {
    return std::filesystem::path(home) / ".cache" / "operadix";
  }
  return std::filesystem::temp_directory_path() / "operadix-cache";
}

std::filesystem::path ScanCache::entry_path(int n) const {
  return dir_ / ("scan-n" + std::to_string(n) + ".json");
}

std::optional<IntegerReverter::State> ScanCache::get(int n,
                                                     const std::function<void(const std::string&)>& warn) const {
  auto path = entry_path(n);
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;
  auto complain = [&](const std::string& why) {
    std::string msg = "ignoring cache entry " + path.string() + ": " + why;
    if (warn) {
      warn(msg);
    } else {
      std::cerr << "warning: " << msg << "\n";
    }
  };
  try {
    std::ifstream in(path);
    Json j = Json::parse(in);
    if (!j.is_object() || j.value("version", "") != kVersion) {
      complain("version tag mismatch");
      return std::nullopt;
    }
    const Json& key = field(j, "key");
    if (int_field(key, "n") != n || key.value("series", "") != series_key(n)) {
      complain("key does not match");
      return std::nullopt;
    }
    IntegerReverter::State state;
    state.stride = int_field(j, "stride");
    state.v = integers_from(field(j, "v"));
    for (const auto& p : field(j, "powers")) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer()) throw ParseError("bad power entry", 0);
      state.powers.emplace_back(p[0].get<int>(), integers_from(p[1]));
    }
    // The reverter rejects states that do not belong to the series.
    int order = 1 + state.stride * (static_cast<int>(state.v.size()) - 1);
    IntegerReverter check(odd_total_series(n, std::max(order, 2 * n - 1)), state);
    return check.state();
  } catch (const std::exception& e) {
    complain(e.what());
    return std::nullopt;
  }
}

void ScanCache::put(int n, const IntegerReverter::State& state) const {
  std::filesystem::create_directories(dir_);
  Json powers = Json::array();
  for (const auto& [m, pw] : state.powers) powers.push_back(Json::array({m, integer_list(pw)}));
  Json j{{"version", kVersion},
         {"key", {{"n", n}, {"series", series_key(n)}}},
         {"stride", state.stride},
         {"v", integer_list(state.v)},
         {"powers", powers}};
  static std::atomic<unsigned> counter{0};
  auto target = entry_path(n);
  auto tmp = target;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw DomainError("cannot write cache file " + tmp.string());
    out << j.dump() << "\n";
    if (!out) throw DomainError("short write to cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace operadix
