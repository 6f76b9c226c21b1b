#ifndef WRB_REPORT_H
#define WRB_REPORT_H

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "wrb/catalog.hpp"
#include "wrb/verify.hpp"

namespace wrb {

using ordered_json = nlohmann::ordered_json;

// One named check of a lemma suite.
struct LemmaResult {
  std::string name;
  bool pass = false;
  std::string detail;  // counts, witnesses, or the counterexample on failure
};

// Self-describing result document. `payload` holds the kind-specific body;
// all wall-clock data lives under payload["timings"] so that reports from
// identical command lines agree byte-for-byte everywhere else.
struct ReportDocument {
  int schema_version = 1;
  std::string command;  // echo of the invocation
  std::string kind;     // "verification" | "criterion-sweep" | "lemma-suite" | "catalog"
  ordered_json payload;
};

ordered_json to_json(const ReportDocument& doc);
ReportDocument report_from_json(const ordered_json& j);

// Kind-specific payload builders.
ordered_json verification_to_json(const VerificationReport& rep);
ordered_json lemma_suite_to_json(int n, const std::vector<LemmaResult>& results,
                                 const std::vector<StageTiming>& timings);
ordered_json catalog_entry_to_json(const CatalogEntry& entry);

// Pretty-printed with a trailing newline.
void write_report(const ReportDocument& doc, std::ostream& out);

// Equality with every "timings" subtree removed on both sides.
bool reports_equal_modulo_timings(const ordered_json& a, const ordered_json& b);

} // namespace wrb

#endif
