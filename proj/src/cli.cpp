#include "wrb/cli.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <chrono>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "wrb/catalog.hpp"
#include "wrb/config.hpp"
#include "wrb/errors.hpp"
#include "wrb/fusion.hpp"
#include "wrb/group_ops.hpp"
#include "wrb/verify.hpp"
#include "wrb/wreathed.hpp"

namespace wrb {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool selected(const std::string& name, const std::string& filter) {
  return filter.empty() || lower(name).find(lower(filter)) != std::string::npos;
}

// ---- the check suite -------------------------------------------------------

LemmaResult check_structure(const WreathedData& w) {
  LemmaResult r{"wreathed-structure", false, ""};
  Subgroup full = Subgroup::full(w.P);
  Subgroup z = center_in(full);
  Subgroup zgen = Subgroup::generated(w.P, {w.a * w.b});
  uint64_t expect = uint64_t{1} << (2 * w.n + 1);
  r.pass = w.P.order() == expect && z == zgen && z.order() == (uint64_t{1} << w.n) &&
           z.exponent() == z.order() && w.P0.is_abelian() &&
           w.P0.order() * 2 == w.P.order() && w.P1.order() == (uint64_t{1} << (w.n + 2));
  r.detail = "|P|=" + std::to_string(w.P.order()) + " |Z|=" + std::to_string(z.order()) +
             " [P:P0]=" + std::to_string(w.P.order() / w.P0.order()) +
             " |P1|=" + std::to_string(w.P1.order());
  return r;
}

LemmaResult check_outside_centralizers(const WreathedData& w) {
  LemmaResult r{"outside-base-centralizers", true, ""};
  Subgroup full = Subgroup::full(w.P);
  Subgroup z = Subgroup::generated(w.P, {w.a * w.b});
  uint64_t want = uint64_t{1} << (w.n + 1);
  std::size_t outside = 0;
  for (uint32_t e = 0; e < w.P.order(); ++e) {
    if (w.P0.contains_index(e)) continue;
    ++outside;
    Subgroup c = centralizer_of_element_in(full, e);
    if (c.order() != want || !(intersect(c, w.P0) == z)) {
      r.pass = false;
      r.detail = "counterexample x=" + w.P.element(e).to_cycle_string() +
                 " |C_P(x)|=" + std::to_string(c.order());
      return r;
    }
  }
  r.detail = std::to_string(outside) + " elements outside the base: |C_P(x)|=" +
             std::to_string(want) + " and C_P(x) meets the base in the center";
  return r;
}

LemmaResult check_quaternions(const WreathedData& w) {
  LemmaResult r{"quaternion-subgroups", true, ""};
  Subgroup full = Subgroup::full(w.P);
  Subgroup z = Subgroup::generated(w.P, {w.a * w.b});

  std::vector<Subgroup> brute;
  for (const Subgroup& s : all_subgroups(full))
    if (s.order() == 8 && !s.is_abelian() && s.count_involutions() == 1) brute.push_back(s);
  std::sort(brute.begin(), brute.end());
  std::vector<Subgroup> lib = q8_subgroups(w);
  if (brute != lib) {
    r.pass = false;
    r.detail = "generator-form list has " + std::to_string(lib.size()) +
               " subgroups, enumeration found " + std::to_string(brute.size());
    return r;
  }
  for (const Subgroup& q : brute) {
    if (!(centralizer_in(full, q) == z)) {
      r.pass = false;
      r.detail = "C_P(Q) != Z(P) for " + q.describe_generators();
      return r;
    }
    std::optional<uint32_t> x = conjugating_element_in(full, q, brute.front());
    if (!x || !(q.conjugated_by_index(*x) == brute.front())) {
      r.pass = false;
      r.detail = "no conjugating witness onto the least Q_8 for " + q.describe_generators();
      return r;
    }
  }
  r.detail = std::to_string(brute.size()) +
             " Q_8 subgroups, all of the stated generator form, all conjugate, C_P(Q)=Z(P)";
  return r;
}

LemmaResult check_classification(const WreathedData& w) {
  LemmaResult r{"subgroup-classification", true, ""};
  Subgroup full = Subgroup::full(w.P);
  std::size_t total = 0, witnessed = 0;
  for (const Subgroup& s : all_subgroups(full)) {
    ++total;
    WreathedClass cls = classify_subgroup(w, s);
    if (cls.witness) {
      ++witnessed;
      if (!(s.conjugated_by_index(*cls.witness) == canonical_representative(w, cls))) {
        r.pass = false;
        r.detail = "witness fails to reach the canonical form for " + s.describe_generators();
        return r;
      }
    }
    // the tag is a conjugation invariant
    WreathedClass ca = classify_subgroup(w, s.conjugated_by(w.a));
    WreathedClass ct = classify_subgroup(w, s.conjugated_by(w.t));
    if (!(ca == cls) || !(ct == cls)) {
      r.pass = false;
      r.detail = "classification changes under conjugation for " + s.describe_generators();
      return r;
    }
  }
  r.detail = std::to_string(total) + " subgroups classified, " + std::to_string(witnessed) +
             " carry verified canonical-form witnesses";
  return r;
}

LemmaResult check_saturation(const WreathedData& w, const PermGroup& g, const Subgroup& p,
                             const FusionSystem& f, const std::string& id) {
  LemmaResult r{"fusion-saturation", false, ""};
  find_wreathed_embedding(w, p);  // throws if the Sylow subgroup is not wreathed
  r.pass = is_saturated(f);
  r.detail = id + ": |G|=" + std::to_string(g.order()) + " |P|=" + std::to_string(p.order()) +
             " classes=" + std::to_string(f.classes().size()) +
             (r.pass ? " saturated" : " NOT saturated");
  return r;
}

LemmaResult check_odd_automizers(const WreathedData& w, const Subgroup& p, const FusionSystem& f,
                                 const std::string& id) {
  LemmaResult r{"odd-automizer-classes", true, ""};
  WreathedEmbedding emb = find_wreathed_embedding(w, p);
  auto model_class = [&](const Subgroup& rep) {
    std::vector<Perm> gens;
    for (const Perm& pr : rep.generators()) gens.push_back(emb.ambient_to_model.apply(pr));
    return classify_subgroup(w, Subgroup::generated(w.P, gens));
  };
  // essential classes must land on the two centric candidates: base and P1
  bool base_essential = false, p1_essential = false;
  for (const Subgroup& e : essential_subgroups(f)) {
    WreathedClass cls = model_class(e);
    if (cls.tag == WreathedTag::Base) {
      base_essential = true;
    } else if (cls.tag == WreathedTag::P1Class) {
      p1_essential = true;
    } else {
      r.pass = false;
      r.detail = "essential class outside {base, P1}: " + describe(cls);
      return r;
    }
  }
  // an essential base contributes the homocyclic towers, an essential P1 the
  // Q_8 central products; the non-2-group automizers must hit exactly these
  std::vector<std::string> expected;
  if (base_essential)
    for (int m = 0; m < w.n; ++m)
      expected.push_back(describe(classify_subgroup(w, canonical_homocyclic(w, m))));
  if (p1_essential)
    for (int m = 1; m <= w.n; ++m)
      expected.push_back(describe(classify_subgroup(w, canonical_q8_product(w, m))));
  std::vector<std::string> realized;
  for (const Subgroup& rep : f.class_reps()) {
    AutomizerData ad = automizer(f, rep);
    if (is_power_of_two(ad.aut_f.order())) continue;
    realized.push_back(describe(model_class(rep)));
  }
  std::sort(expected.begin(), expected.end());
  std::sort(realized.begin(), realized.end());
  auto join = [](const std::vector<std::string>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
    return s + "}";
  };
  r.pass = realized == expected;
  r.detail = id + ": non-2-group automizers on " + join(realized) +
             (r.pass ? " == " : " != ") + join(expected) +
             " from essentials (base=" + (base_essential ? "yes" : "no") +
             ", P1=" + (p1_essential ? "yes" : "no") + ")";
  return r;
}

// ---- command plumbing --------------------------------------------------------

std::string join_args(int argc, const char* const* argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

void emit(const ReportDocument& doc, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    write_report(doc, out);
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw domain_error("cannot open output file '" + out_path + "'");
  write_report(doc, f);
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const parse_error& e) {
    err << "parse error: " << e.what() << "\n";
    return 4;
  } catch (const precondition_error& e) {
    err << "precondition failed: " << e.what() << "\n";
    return 2;
  } catch (const resource_error& e) {
    err << "resource cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const domain_error& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const internal_error& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

std::vector<LemmaResult> run_lemma_suite(int n, const std::string& filter,
                                         std::vector<StageTiming>* timings) {
  WreathedData w = build_wreathed(n);
  std::vector<LemmaResult> out;
  auto run = [&](const char* name, const std::function<LemmaResult()>& check) {
    if (!selected(name, filter)) return;
    Clock::time_point t0 = Clock::now();
    out.push_back(check());
    if (timings) timings->push_back({name, elapsed(t0)});
  };

  run("wreathed-structure", [&] { return check_structure(w); });
  run("outside-base-centralizers", [&] { return check_outside_centralizers(w); });
  run("quaternion-subgroups", [&] { return check_quaternions(w); });
  run("subgroup-classification", [&] { return check_classification(w); });

  bool fusion_wanted =
      selected("fusion-saturation", filter) || selected("odd-automizer-classes", filter);
  if (fusion_wanted && (n == 2 || n == 3)) {
    std::string id = n == 2 ? "c4c4-s3" : "c8c8-s3";
    PermGroup g = catalog_group(id);
    Subgroup p = sylow_2(g);
    FusionSystem f = build_fusion(g, p);
    run("fusion-saturation", [&] { return check_saturation(w, g, p, f, id); });
    run("odd-automizer-classes", [&] { return check_odd_automizers(w, p, f, id); });
  }
  return out;
}

int cli_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact checks for Scott modules with wreathed 2-group vertices"};
  app.require_subcommand(1);

  int n = 0;
  std::string filter, out_path, group_id, group_prime_id, describe_id, file_path;
  int threads = 1;
  std::size_t max_dim = 0;

  CLI::App* lem = app.add_subcommand("lemmas", "run the exhaustive structural check suites");
  lem->add_option("--n", n, "wreathed parameter (2 or 3)")->required();
  lem->add_option("--filter", filter, "select checks by name substring");
  lem->add_option("--out", out_path, "write the report to this file instead of stdout");

  CLI::App* ver = app.add_subcommand(
      "verify", "verify Brauer indecomposability of the diagonal Scott module of a pair");
  ver->add_option("--group", group_id, "catalog id of the first factor")->required();
  ver->add_option("--group-prime", group_prime_id, "catalog id of the second factor")->required();
  ver->add_option("--out", out_path, "write the report to this file instead of stdout");
  ver->add_option("--threads", threads, "worker threads for the per-subgroup verdicts");
  ver->add_option("--max-dim", max_dim, "override the permutation-module dimension cap");

  CLI::App* ik = app.add_subcommand(
      "ik-check", "sweep the sufficient indecomposability criterion over one group");
  ik->add_option("--group", group_id, "catalog id")->required();
  ik->add_option("--out", out_path, "write the report to this file instead of stdout");
  ik->add_option("--threads", threads, "accepted for symmetry; the sweep is sequential");
  ik->add_option("--max-dim", max_dim, "override the permutation-module dimension cap");

  CLI::App* cat = app.add_subcommand("catalog", "list, describe, or validate group recipes");
  cat->require_subcommand(1);
  CLI::App* cat_list = cat->add_subcommand("list", "list the built-in entries");
  CLI::App* cat_desc = cat->add_subcommand("describe", "describe one entry and its realized group");
  cat_desc->add_option("id", describe_id, "catalog id")->required();
  CLI::App* cat_add =
      cat->add_subcommand("add-from-file", "parse and validate entries from a catalog file");
  cat_add->add_option("file", file_path, "path to the catalog file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 4;
  }

  const std::string command = join_args(argc, argv);
  if (max_dim > 0) config::set_max_module_dim(max_dim);

  if (*lem) {
    if (n < 2 || n > 3) {
      err << "lemmas: --n must be 2 or 3 (the wreathed construction needs n >= 2, and the "
             "catalog realizes n = 2 and n = 3)\n";
      return 4;
    }
    return guarded(err, [&] {
      std::vector<StageTiming> timings;
      Clock::time_point t0 = Clock::now();
      std::vector<LemmaResult> results = run_lemma_suite(n, filter, &timings);
      timings.push_back({"total", elapsed(t0)});
      if (results.empty()) {
        err << "lemmas: filter '" << filter << "' matches no check\n";
        return 4;
      }
      ReportDocument doc{1, command, "lemma-suite", lemma_suite_to_json(n, results, timings)};
      emit(doc, out_path, out);
      bool all = std::all_of(results.begin(), results.end(),
                             [](const LemmaResult& r) { return r.pass; });
      return all ? 0 : 1;
    });
  }

  if (*ver) {
    return guarded(err, [&] {
      PermGroup g = catalog_group(group_id);
      PermGroup gp = catalog_group(group_prime_id);
      Subgroup p = sylow_2(g);
      VerifyOptions opts;
      opts.group_id = group_id;
      opts.group_prime_id = group_prime_id;
      opts.threads = threads;
      VerificationReport rep = verify_scott_brauer_indecomposable(g, gp, p, opts);
      ReportDocument doc{1, command, "verification", verification_to_json(rep)};
      emit(doc, out_path, out);
      return rep.overall ? 0 : 1;
    });
  }

  if (*ik) {
    return guarded(err, [&] {
      PermGroup g = catalog_group(group_id);
      Subgroup p = sylow_2(g);
      VerifyOptions opts;
      opts.group_id = group_id;
      VerificationReport rep = verify_via_ik(g, p, opts);
      ReportDocument doc{1, command, "criterion-sweep", verification_to_json(rep)};
      emit(doc, out_path, out);
      return rep.overall ? 0 : 1;
    });
  }

  if (*cat_list) {
    return guarded(err, [&] {
      ordered_json entries = ordered_json::array();
      for (const CatalogEntry& e : catalog_builtins()) entries.push_back(catalog_entry_to_json(e));
      ReportDocument doc{1, command, "catalog", ordered_json{{"entries", entries}}};
      emit(doc, out_path, out);
      return 0;
    });
  }

  if (*cat_desc) {
    return guarded(err, [&] {
      std::optional<CatalogEntry> e = catalog_find(describe_id);
      if (!e) throw domain_error("unknown catalog id '" + describe_id + "'");
      PermGroup g = catalog_build(*e);
      Subgroup p = sylow_2(g);
      bool wreathed = false;
      int k = std::countr_zero(p.order());
      if (k >= 5 && k % 2 == 1) {
        try {
          find_wreathed_embedding(build_wreathed((k - 1) / 2), p);
          wreathed = true;
        } catch (const domain_error&) {
        }
      }
      ordered_json body = catalog_entry_to_json(*e);
      body["order"] = g.order();
      body["sylow_2_order"] = p.order();
      body["sylow_2_wreathed"] = wreathed;
      ReportDocument doc{1, command, "catalog", body};
      emit(doc, out_path, out);
      return 0;
    });
  }

  if (*cat_add) {
    return guarded(err, [&] {
      std::ifstream f(file_path);
      if (!f) {
        err << "catalog: cannot read file '" << file_path << "'\n";
        return 4;
      }
      std::stringstream buf;
      buf << f.rdbuf();
      std::vector<CatalogEntry> entries = parse_catalog_file(buf.str());
      ordered_json arr = ordered_json::array();
      for (const CatalogEntry& e : entries) {
        PermGroup g = catalog_build(e);  // validates expected_order
        ordered_json body = catalog_entry_to_json(e);
        body["order"] = g.order();
        body["validated"] = true;
        arr.push_back(std::move(body));
      }
      ReportDocument doc{1, command, "catalog", ordered_json{{"entries", arr}}};
      emit(doc, out_path, out);
      return 0;
    });
  }

  err << "no command selected\n";
  return 4;
}

}  // namespace wrb
