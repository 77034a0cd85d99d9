#include "operadix/family.hpp"

#include "operadix/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace operadix {

std::string to_string(Family f) {
  switch (f) {
    case Family::TotAss:
      return "TotAss";
    case Family::PartAss:
      return "PartAss";
    case Family::TotAssTilde:
      return "TotAssTilde";
    case Family::PartAssTilde:
      return "PartAssTilde";
  }
  return "?";
}

Family parse_family(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "totass" || lower == "tass") return Family::TotAss;
  if (lower == "partass" || lower == "pass") return Family::PartAss;
  if (lower == "totasstilde" || lower == "tasstilde") return Family::TotAssTilde;
  if (lower == "partasstilde" || lower == "passtilde") return Family::PartAssTilde;
  throw DomainError("unknown family '" + std::string(text) + "'");
}

namespace {

int parse_int(std::string_view text) {
  int value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw DomainError("expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

FamilyId parse_family_id(std::string_view text) {
  auto c1 = text.find(',');
  auto c2 = c1 == std::string_view::npos ? c1 : text.find(',', c1 + 1);
  if (c2 == std::string_view::npos) {
    throw DomainError("expected family,n,d but got '" + std::string(text) + "'");
  }
  FamilyId id{parse_family(text.substr(0, c1)), parse_int(text.substr(c1 + 1, c2 - c1 - 1)),
              parse_int(text.substr(c2 + 1))};
  check_family_id(id);
  return id;
}

void check_family_id(const FamilyId& id) {
  if (id.n < 2) throw DomainError("arity must be at least 2, got " + std::to_string(id.n));
  if (id.n > 255) throw DomainError("arity above 255 is not supported");
}

}  // namespace operadix
