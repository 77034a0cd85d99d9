#pragma once

#include <string>
#include <string_view>

namespace operadix {

/// The four one-generator n-ary families: totally / partially associative
/// and their suspended ("tilde") variants.
enum class Family { TotAss, PartAss, TotAssTilde, PartAssTilde };

struct FamilyId {
  Family family = Family::TotAss;
  int n = 2;
  int d = 0;

  friend bool operator==(const FamilyId&, const FamilyId&) = default;
};

std::string to_string(Family f);
/// Accepts "TotAss", "PartAss", "TotAssTilde", "PartAssTilde" and the short
/// forms "tAss", "pAss", "tAssTilde", "pAssTilde" (case-insensitive).
/// Throws DomainError on anything else.
Family parse_family(std::string_view text);
/// Parses "family,n,d". Throws DomainError.
FamilyId parse_family_id(std::string_view text);
/// Throws DomainError for n < 2.
void check_family_id(const FamilyId& id);

}  // namespace operadix
