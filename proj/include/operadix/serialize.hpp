#pragma once

#include "operadix/cohomology.hpp"
#include "operadix/minimodel.hpp"
#include "operadix/opseries.hpp"
#include "operadix/pseries.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace operadix {

using Json = nlohmann::ordered_json;

/// Integers that fit in 64 bits become JSON numbers, larger ones decimal
/// strings. Rationals are always strings "p" or "p/q" so they survive any
/// JSON reader exactly.
Json integer_json(const Integer& z);
Json rational_json(const Rational& q);
/// Accepts a JSON integer or a decimal/fraction string. Throws ParseError.
Integer integer_from_json(const Json& j);
Rational rational_from_json(const Json& j);

/// {"order": N, "terms": [[exponent, "coefficient"], ...]}
Json to_json(const PSeries& f);
PSeries series_from_json(const Json& j);

/// {"n", "bound", "first_negative" (number or null), "not_koszul"}
Json to_json(const ScanResult& r);
ScanResult scan_from_json(const Json& j);

Json to_json(const KoszulVerdict& v);
Json to_json(const DiscriminantReport& r);
Json to_json(const CycleAnalysis& c);
Json to_json(const EdgePath& p);
Json to_json(const CohomologyDims& d);
CohomologyDims dims_from_json(const Json& j);
Json to_json(const Violation& v);
Json to_json(const Delta3Mismatch& m);

/// {"dim": m, "basis": [...], "table": [[[rational, ...], ...], ...]}
Json to_json(const AntiAssocAlgebra& alg);
/// Throws ParseError for missing fields or bad entries and DimensionError
/// when the table does not match dim.
AntiAssocAlgebra algebra_from_json(const Json& j);
AntiAssocAlgebra load_algebra(const std::filesystem::path& path);

/// On-disk store of reverter states for t - t^n + t^(2n-1), one file per n.
/// Entries carry a version tag and the series they belong to; entries that
/// fail to parse or do not match are ignored (with a warning) and
/// recomputed. Writes go to a temporary file and are renamed into place.
class ScanCache {
 public:
  static constexpr const char* kVersion = "operadix-scan-1";

  explicit ScanCache(std::filesystem::path dir);
  /// $OPERADIX_CACHE, else $XDG_CACHE_HOME/operadix, else ~/.cache/operadix.
  static std::filesystem::path default_dir();

  const std::filesystem::path& dir() const noexcept { return dir_; }
  std::filesystem::path entry_path(int n) const;

  std::optional<IntegerReverter::State> get(int n,
                                            const std::function<void(const std::string&)>& warn = {}) const;
  void put(int n, const IntegerReverter::State& state) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace operadix
