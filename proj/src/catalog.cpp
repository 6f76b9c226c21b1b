#include "wrb/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "wrb/errors.hpp"
#include "wrb/wreathed.hpp"

namespace wrb {

namespace {

// (C_m x C_m) : S_3 on m*m + 3 points: translations on the torus grid, the
// linear maps (i,j) -> (-j, i-j) and (i,j) -> (j,i) generating S_3, plus a
// 3-cycle / transposition tail so the odd part moves points of its own.
CatalogEntry torus_s3_entry(uint16_t m, const std::string& id) {
  const std::size_t deg = std::size_t(m) * m + 3;
  auto pt = [m](uint16_t i, uint16_t j) { return static_cast<uint16_t>((i % m) * m + (j % m)); };
  std::vector<uint16_t> ia(deg), ib(deg), is(deg), it(deg);
  for (std::size_t k = std::size_t(m) * m; k < deg; ++k)
    ia[k] = ib[k] = is[k] = it[k] = static_cast<uint16_t>(k);
  for (uint16_t i = 0; i < m; ++i) {
    for (uint16_t j = 0; j < m; ++j) {
      ia[pt(i, j)] = pt(i + 1, j);
      ib[pt(i, j)] = pt(i, j + 1);
      is[pt(i, j)] = pt(m - j, i + m - j);
      it[pt(i, j)] = pt(j, i);
    }
  }
  const uint16_t base = static_cast<uint16_t>(m) * m;
  is[base] = base + 1, is[base + 1] = base + 2, is[base + 2] = base;
  it[base + 1] = base + 2, it[base + 2] = base + 1;

  CatalogEntry e;
  e.id = id;
  e.construction = "semidirect(C" + std::to_string(m) + " x C" + std::to_string(m) + ", S3)";
  e.degree = deg;
  e.expected_order = uint64_t(m) * m * 6;
  e.notes = "torus translations with the full S_3 of linear symmetries; Sylow 2-subgroup C_" +
            std::to_string(m) + " wr C_2";
  e.generators = {Perm(std::move(ia)), Perm(std::move(ib)), Perm(std::move(is)),
                  Perm(std::move(it))};
  return e;
}

CatalogEntry wreathed_entry(int n, const std::string& id) {
  WreathedData w = build_wreathed(n);
  CatalogEntry e;
  e.id = id;
  e.construction = "wreathed(" + std::to_string(n) + ")";
  e.degree = w.P.degree();
  e.expected_order = uint64_t{1} << (2 * n + 1);
  e.notes = "C_" + std::to_string(1 << n) + " wr C_2 in its natural action on two blocks";
  e.generators = {w.a, w.b, w.t};
  return e;
}

}  // namespace

const std::vector<CatalogEntry>& catalog_builtins() {
  static const std::vector<CatalogEntry> entries = {
      wreathed_entry(2, "wreathP-n2"),
      wreathed_entry(3, "wreathP-n3"),
      torus_s3_entry(4, "c4c4-s3"),
      torus_s3_entry(8, "c8c8-s3"),
  };
  return entries;
}

std::optional<CatalogEntry> catalog_find(const std::string& id) {
  for (const CatalogEntry& e : catalog_builtins())
    if (e.id == id) return e;
  return std::nullopt;
}

PermGroup catalog_build(const CatalogEntry& entry) {
  if (entry.generators.empty()) throw domain_error("catalog entry '" + entry.id + "' has no generators");
  PermGroup g = PermGroup::from_generators(entry.generators, entry.degree);
  if (g.order() != entry.expected_order)
    throw domain_error("catalog entry '" + entry.id + "' generates a group of order " +
                       std::to_string(g.order()) + ", expected " +
                       std::to_string(entry.expected_order));
  return g;
}

PermGroup catalog_group(const std::string& id) {
  std::optional<CatalogEntry> e = catalog_find(id);
  if (!e) throw domain_error("unknown catalog id '" + id + "'");
  return catalog_build(*e);
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<CatalogEntry> parse_catalog_file(const std::string& text) {
  std::vector<CatalogEntry> entries;
  CatalogEntry cur;
  bool open = false;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  auto flush = [&](int at_line) {
    if (!open) return;
    if (cur.degree == 0) throw parse_error("entry '" + cur.id + "' is missing a degree field", at_line, 1);
    if (cur.expected_order == 0)
      throw parse_error("entry '" + cur.id + "' is missing an expected_order field", at_line, 1);
    if (cur.generators.empty())
      throw parse_error("entry '" + cur.id + "' has no gen fields", at_line, 1);
    entries.push_back(std::move(cur));
    cur = CatalogEntry{};
    open = false;
  };

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw parse_error("expected 'key: value'", lineno,
                        static_cast<int>(raw.find_first_not_of(" \t") + 1));
    std::string key = trim(line.substr(0, colon));
    std::string value = trim(line.substr(colon + 1));
    int value_col = static_cast<int>(raw.find(':') + 2);

    if (key == "id") {
      flush(lineno);
      if (value.empty()) throw parse_error("empty id", lineno, value_col);
      cur.id = value;
      cur.construction = "from_generators";
      open = true;
    } else if (!open) {
      throw parse_error("field '" + key + "' appears before any id field", lineno, 1);
    } else if (key == "degree") {
      try {
        cur.degree = std::stoul(value);
      } catch (const std::exception&) {
        throw parse_error("degree is not a number", lineno, value_col);
      }
      if (cur.degree == 0 || cur.degree > 65535)
        throw parse_error("degree out of range", lineno, value_col);
    } else if (key == "expected_order") {
      try {
        cur.expected_order = std::stoull(value);
      } catch (const std::exception&) {
        throw parse_error("expected_order is not a number", lineno, value_col);
      }
      if (cur.expected_order == 0) throw parse_error("expected_order must be positive", lineno, value_col);
    } else if (key == "notes") {
      cur.notes = value;
    } else if (key == "gen") {
      if (cur.degree == 0)
        throw parse_error("gen field before the entry's degree field", lineno, 1);
      cur.generators.push_back(Perm::parse_cycles(value, cur.degree, lineno));
    } else {
      throw parse_error("unknown field '" + key + "'", lineno, 1);
    }
  }
  flush(lineno == 0 ? 1 : lineno);
  return entries;
}

} // namespace wrb
