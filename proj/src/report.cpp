#include "wrb/report.hpp"

#include <ostream>

#include "wrb/errors.hpp"

namespace wrb {

namespace {

ordered_json timings_to_json(const std::vector<StageTiming>& timings) {
  ordered_json arr = ordered_json::array();
  for (const StageTiming& t : timings) arr.push_back({{"stage", t.stage}, {"seconds", t.seconds}});
  return arr;
}

ordered_json strip_timings(ordered_json j) {
  if (j.is_object()) {
    j.erase("timings");
    for (auto& [key, value] : j.items()) value = strip_timings(value);
  } else if (j.is_array()) {
    for (auto& value : j) value = strip_timings(value);
  }
  return j;
}

}  // namespace

ordered_json to_json(const ReportDocument& doc) {
  return ordered_json{{"schema_version", doc.schema_version},
                      {"command", doc.command},
                      {"kind", doc.kind},
                      {"payload", doc.payload}};
}

ReportDocument report_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("schema_version") || !j.contains("command") ||
      !j.contains("kind") || !j.contains("payload"))
    throw domain_error("report document is missing required fields");
  ReportDocument doc;
  doc.schema_version = j.at("schema_version").get<int>();
  doc.command = j.at("command").get<std::string>();
  doc.kind = j.at("kind").get<std::string>();
  doc.payload = j.at("payload");
  return doc;
}

ordered_json verification_to_json(const VerificationReport& rep) {
  ordered_json verdicts = ordered_json::array();
  for (const SubgroupVerdict& v : rep.verdicts) {
    ordered_json gens = ordered_json::array();
    for (const Perm& g : v.q.generators()) gens.push_back(g.to_cycle_string());
    verdicts.push_back({{"order", v.q.order()},
                        {"class", describe(v.cls)},
                        {"generators", gens},
                        {"fully_normalized", v.fully_normalized},
                        {"route", to_string(v.route)},
                        {"indecomposable", v.indecomposable},
                        {"zero", v.zero},
                        {"split_dim", v.split_dim},
                        {"cross_checked", v.cross_checked},
                        {"detail", v.detail}});
  }
  return ordered_json{{"group", rep.group_id},
                      {"group_prime", rep.group_prime_id},
                      {"n", rep.n},
                      {"fusion_equal", rep.fusion_equal},
                      {"saturated", rep.saturated},
                      {"scott_dim", rep.scott_dim},
                      {"scott_vertex_is_diagonal", rep.scott_vertex_is_diagonal},
                      {"overall", rep.overall},
                      {"verdicts", verdicts},
                      {"timings", timings_to_json(rep.timings)}};
}

ordered_json lemma_suite_to_json(int n, const std::vector<LemmaResult>& results,
                                 const std::vector<StageTiming>& timings) {
  ordered_json arr = ordered_json::array();
  bool all = true;
  for (const LemmaResult& r : results) {
    arr.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    all = all && r.pass;
  }
  return ordered_json{
      {"n", n}, {"all_pass", all}, {"results", arr}, {"timings", timings_to_json(timings)}};
}

ordered_json catalog_entry_to_json(const CatalogEntry& entry) {
  ordered_json gens = ordered_json::array();
  for (const Perm& g : entry.generators) gens.push_back(g.to_cycle_string());
  return ordered_json{{"id", entry.id},
                      {"construction", entry.construction},
                      {"degree", entry.degree},
                      {"expected_order", entry.expected_order},
                      {"notes", entry.notes},
                      {"generators", gens}};
}

void write_report(const ReportDocument& doc, std::ostream& out) {
  out << to_json(doc).dump(2) << "\n";
}

bool reports_equal_modulo_timings(const ordered_json& a, const ordered_json& b) {
  return strip_timings(a) == strip_timings(b);
}

} // namespace wrb
