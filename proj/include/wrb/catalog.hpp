#ifndef WRB_CATALOG_H
#define WRB_CATALOG_H

#include <optional>
#include <string>
#include <vector>

#include "wrb/perm_group.hpp"

namespace wrb {

// A named group recipe. Built-in entries are generated programmatically;
// file-loaded entries carry explicit generator lists. catalog_build checks
// that the realized order equals expected_order.
struct CatalogEntry {
  std::string id;
  std::string construction;  // human-readable recipe, e.g. "wreathed(2)"
  std::size_t degree = 0;
  uint64_t expected_order = 0;
  std::string notes;
  std::vector<Perm> generators;
};

// The built-in table: wreathP-n2, wreathP-n3, c4c4-s3, c8c8-s3.
const std::vector<CatalogEntry>& catalog_builtins();

// Lookup by id among the built-ins.
std::optional<CatalogEntry> catalog_find(const std::string& id);

// Realize the entry. Throws domain_error when the generated group's order
// differs from expected_order.
PermGroup catalog_build(const CatalogEntry& entry);

// catalog_build(catalog_find(id)); domain_error for unknown ids.
PermGroup catalog_group(const std::string& id);

// Parse a catalog file. Exact grammar (line oriented, 1-based positions):
//
//   file    = { line }
//   line    = blank | comment | field
//   comment = "#" arbitrary-text
//   field   = key ":" value
//   keys    = "id" | "degree" | "expected_order" | "notes" | "gen"
//
// Every entry starts with an "id" field; "degree" and "expected_order" must
// appear before the first "gen" of the entry; "gen" holds one generator in
// disjoint-cycle notation over 0-based points, e.g. (0 1 2)(5 6); "notes" is
// optional free text. Whitespace around keys and values is ignored. Throws
// parse_error with line/column for malformed input.
std::vector<CatalogEntry> parse_catalog_file(const std::string& text);

} // namespace wrb

#endif
