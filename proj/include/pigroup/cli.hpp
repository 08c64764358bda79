#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pigroup/catalog.hpp"
#include "pigroup/harness.hpp"
#include "pigroup/invariants.hpp"
#include "pigroup/reports.hpp"
#include "pigroup/structure.hpp"

namespace pigroup::cli {

namespace detail {

inline PrimeSet parse_pi(const std::vector<std::uint64_t>& values) {
  return PrimeSet(values);  // throws "<n> is not prime" on bad input
}

inline std::vector<TheoremId> parse_theorems(const std::string& csv) {
  std::vector<TheoremId> out;
  if (csv.empty()) return out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "C") {  // alias: both directions
      out.push_back(TheoremId::CForward);
      out.push_back(TheoremId::CConverse);
    } else if (item == "L2.1") {
      out.push_back(TheoremId::L21i);
      out.push_back(TheoremId::L21ii);
    } else if (!item.empty()) {
      out.push_back(theorem_id_from_string(item));
    }
  }
  return out;
}

inline std::vector<CatalogEntry> load_catalog(const std::string& choice) {
  std::string source = choice;
  if (source.empty()) {
    const char* env = std::getenv("PIGROUP_CATALOG");
    source = env ? env : "seed";
  }
  if (source == "seed") return seed_catalog();
  return parse_catalog(source);
}

inline void print_summary(const SweepSummary& s, std::ostream& out) {
  out << "reports: " << s.total << "  pass: " << s.passed << "  fail: " << s.failed
      << "  skipped: " << s.skipped;
  if (s.no_counterexamples || s.candidates)
    out << "  no-counterexample: " << s.no_counterexamples
        << "  candidates: " << s.candidates;
  out << "\n";
  if (!s.suprema.empty()) {
    out << "sharpest ratios observed:\n";
    for (const auto& [id, ext] : s.suprema)
      out << "  " << to_string(id) << ": " << ext.witness.ratio.str() << " ("
          << ext.witness.ratio.approx_str() << ") " << to_string(ext.witness.relation) << " "
          << ext.witness.bound.str() << " at " << ext.group_id << " pi=" << ext.pi.str() << "\n";
  }
  for (const auto& [id, ext] : s.infima)
    out << "  " << to_string(id) << ": min " << ext.witness.ratio.str() << " "
        << to_string(ext.witness.relation) << " " << ext.witness.bound.str() << " at "
        << ext.group_id << " pi=" << ext.pi.str() << "\n";
}

inline void print_fails(const std::vector<TheoremReport>& reports, std::ostream& out) {
  for (const TheoremReport& r : reports) {
    if (r.verdict != Verdict::Fail) continue;
    out << "FAIL " << to_string(r.theorem) << " " << r.group_id << " pi=" << r.pi.str();
    for (const Witness& w : r.witnesses)
      if (!w.holds())
        out << "  [" << w.descriptor << " " << w.ratio.str() << " !" << to_string(w.relation)
            << " " << w.bound.str() << "]";
    out << "\n";
  }
}

inline int run_compute(const std::string& selector, const std::vector<std::uint64_t>& pi_values,
                       std::uint64_t enum_limit, int hall_max_gens, const std::string& out_path,
                       const std::string& format, std::ostream& out) {
  const CatalogEntry entry = entry_from_selector(selector);
  const PermGroup G = entry.build(GroupOptions{enum_limit});
  const PrimeSet pi =
      pi_values.empty() ? PrimeSet::primes_of(G.order()) : detail::parse_pi(pi_values);

  const Rational pr = commuting_probability(G);
  const Rational prpi = pr_pi(G, pi);
  const Rational dpi = d_pi(G, pi);
  const std::uint64_t n_pi = pi_element_count(G, pi);
  const std::uint64_t k = class_count(G);
  std::uint64_t k_pi = 0;
  for (const auto& cls : conjugacy_classes(G).classes)
    if (pi.is_pi_number(cls.element_order)) ++k_pi;

  const Subgroup core = o_pi_core(G, pi);
  const bool hall = core.order() == pi_part(G.order(), pi);
  const Subgroup fit = fitting(G);
  const Subgroup fstar = generalized_fitting(G);
  const Subgroup z = center(G);
  const auto hall_found = find_hall_subgroup(G, pi, hall_max_gens);

  out << "group " << entry.id << ": degree " << G.degree() << ", order " << G.order() << "\n";
  out << "pi = " << pi.str() << "\n";
  out << "|G_pi|        " << n_pi << "\n";
  out << "|G|_pi        " << pi_part(G.order(), pi) << "\n";
  out << "k(G)          " << k << "\n";
  out << "k_pi(G)       " << k_pi << "\n";
  out << "Pr(G)         " << pr.str() << "  (" << pr.approx_str() << ")\n";
  out << "Pr_pi(G)      " << prpi.str() << "  (" << prpi.approx_str() << ")\n";
  out << "d_pi(G)       " << dpi.str() << "  (" << dpi.approx_str() << ")\n";
  if (!pi.empty()) {
    const Rational t = threshold(pi.smallest());
    out << "threshold     " << t.str() << "  (" << t.approx_str() << ")  p = " << pi.smallest()
        << "\n";
  }
  out << "|O_pi(G)|     " << core.order() << (core.abelian ? "  (abelian)" : "") << "\n";
  out << "normal Hall pi-subgroup: " << (hall ? "yes" : "no") << "\n";
  out << "|F(G)|        " << fit.order() << "\n";
  out << "|F*(G)|       " << fstar.order() << "\n";
  out << "|Z(G)|        " << z.order() << "\n";
  out << "Hall search (bounded, <= " << hall_max_gens << " generators): ";
  if (hall_found)
    out << "found order " << hall_found->order() << (hall_found->abelian ? " (abelian)" : "")
        << "\n";
  else
    out << "none found (not a proof of nonexistence)\n";

  if (!out_path.empty()) {
    nlohmann::ordered_json j;
    j["group"] = entry.id;
    j["degree"] = G.degree();
    j["order"] = G.order();
    j["pi"] = pi.primes();
    j["pi_elements"] = n_pi;
    j["pi_part"] = pi_part(G.order(), pi);
    j["k"] = k;
    j["k_pi"] = k_pi;
    j["pr"] = pr.str();
    j["pr_approx"] = pr.approx_str();
    j["pr_pi"] = prpi.str();
    j["pr_pi_approx"] = prpi.approx_str();
    j["d_pi"] = dpi.str();
    j["d_pi_approx"] = dpi.approx_str();
    if (!pi.empty()) {
      j["threshold"] = threshold(pi.smallest()).str();
      j["threshold_approx"] = threshold(pi.smallest()).approx_str();
    }
    j["o_pi_order"] = core.order();
    j["o_pi_abelian"] = core.abelian;
    j["normal_hall"] = hall;
    j["fitting_order"] = fit.order();
    j["generalized_fitting_order"] = fstar.order();
    j["center_order"] = z.order();
    j["hall_search_order"] =
        hall_found ? nlohmann::ordered_json(hall_found->order()) : nlohmann::ordered_json(nullptr);
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    if (format == "csv") {
      std::vector<std::string> keys, values;
      for (auto& [key, value] : j.items()) {
        keys.push_back(key);
        values.push_back(value.is_string() ? value.get<std::string>() : value.dump());
      }
      for (std::size_t i = 0; i < keys.size(); ++i) f << (i ? "," : "") << keys[i];
      f << "\n";
      for (std::size_t i = 0; i < values.size(); ++i)
        f << (i ? "," : "") << pigroup::detail::csv_quote(values[i]);
      f << "\n";
    } else {
      f << j.dump() << "\n";
    }
  }
  return 0;
}

}  // namespace detail

/// Entry point shared by the binary and the tests. `args` excludes the
/// program name. Exit codes: 0 success / all pass, 1 at least one theorem
/// fail verdict, 2 usage or input errors.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact commuting-probability invariants of pi-elements in finite groups"};
  app.require_subcommand(1);

  // compute
  auto* compute = app.add_subcommand("compute", "invariants of a single group");
  std::string group_selector;
  std::vector<std::uint64_t> pi_values;
  std::uint64_t enum_limit = 1'000'000;
  int hall_max_gens = 3;
  std::string out_path, format = "jsonl";
  compute->add_option("--group", group_selector,
                      "group selector: sym:n alt:n psl2:p dih:n cyc:n frob:q,r q8 prod:a*b "
                      "file:path#id")
      ->required();
  compute->add_option("--pi", pi_values, "primes of pi (default: all primes dividing |G|)")
      ->delimiter(',');
  compute->add_option("--enum-limit", enum_limit, "element enumeration limit");
  compute->add_option("--max-gens", hall_max_gens, "generator bound for the Hall search");
  compute->add_option("--out", out_path, "write a machine-readable record here");
  compute->add_option("--format", format, "machine record format: jsonl or csv")
      ->check(CLI::IsMember({"jsonl", "csv"}));

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "verify theorems over a catalog");
  std::string catalog_choice;
  std::string theorems_csv;
  std::string pi_policy = "subsets";
  std::vector<std::uint64_t> sweep_pi;
  std::uint64_t max_order = std::numeric_limits<std::uint64_t>::max();
  std::size_t max_pi_primes = 3;
  std::uint64_t sweep_enum_limit = 1'000'000;
  unsigned jobs = 0;
  std::string sweep_out, sweep_format = "jsonl";
  bool quiet = false;
  sweep_cmd->add_option("--catalog", catalog_choice,
                        "'seed' or a JSONL catalog path (default: $PIGROUP_CATALOG or seed)");
  sweep_cmd->add_option("--theorems", theorems_csv,
                        "comma-separated theorem ids (default: all); "
                        "A B C C-forward C-converse L2.1 L2.1i L2.1ii C2.5 L3.4 P4.4 P4.5 "
                        "P5.1 L5.2 GUSTAFSON OPEN-Q");
  sweep_cmd->add_option("--pi-policy", pi_policy, "subsets | maximal | explicit")
      ->check(CLI::IsMember({"subsets", "maximal", "explicit"}));
  sweep_cmd->add_option("--pi", sweep_pi, "primes for --pi-policy explicit")->delimiter(',');
  sweep_cmd->add_option("--max-order", max_order, "skip groups above this order");
  sweep_cmd->add_option("--max-pi-primes", max_pi_primes, "subset policy: largest pi size");
  sweep_cmd->add_option("--enum-limit", sweep_enum_limit, "element enumeration limit");
  sweep_cmd->add_option("--jobs", jobs, "worker threads (default: all cores)");
  sweep_cmd->add_option("--out", sweep_out, "report file");
  sweep_cmd->add_option("--format", sweep_format, "report format: jsonl or csv")
      ->check(CLI::IsMember({"jsonl", "csv"}));
  sweep_cmd->add_flag("--quiet", quiet, "suppress the per-theorem sharpness table");

  // explore
  auto* explore = app.add_subcommand("explore", "open-question counterexample search");
  std::string ex_catalog;
  std::uint64_t ex_max_order = std::numeric_limits<std::uint64_t>::max();
  std::size_t ex_max_pi_primes = 3;
  std::uint64_t ex_enum_limit = 1'000'000;
  unsigned ex_jobs = 0;
  std::string ex_out, ex_format = "jsonl";
  explore->add_option("--catalog", ex_catalog, "'seed' or a JSONL catalog path");
  explore->add_option("--max-order", ex_max_order, "skip groups above this order");
  explore->add_option("--max-pi-primes", ex_max_pi_primes, "largest pi size");
  explore->add_option("--enum-limit", ex_enum_limit, "element enumeration limit");
  explore->add_option("--jobs", ex_jobs, "worker threads");
  explore->add_option("--out", ex_out, "report file");
  explore->add_option("--format", ex_format, "report format: jsonl or csv")
      ->check(CLI::IsMember({"jsonl", "csv"}));

  // catalog
  auto* catalog_cmd = app.add_subcommand("catalog", "dump or validate catalogs");
  bool dump = false;
  std::string check_path, cat_out;
  catalog_cmd->add_flag("--dump", dump, "write the built-in seed catalog");
  catalog_cmd->add_option("--check", check_path, "validate a JSONL catalog file");
  catalog_cmd->add_option("--out", cat_out, "output path for --dump (default stdout)");

  std::vector<const char*> argv;
  argv.push_back("pigroup");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (compute->parsed()) {
      return detail::run_compute(group_selector, pi_values, enum_limit, hall_max_gens, out_path,
                                 format, out);
    }

    if (sweep_cmd->parsed() || explore->parsed()) {
      const bool exploring = explore->parsed();
      const auto entries = detail::load_catalog(exploring ? ex_catalog : catalog_choice);
      SweepLimits limits;
      limits.max_order = exploring ? ex_max_order : max_order;
      limits.max_pi_primes = exploring ? ex_max_pi_primes : max_pi_primes;
      limits.enumeration_limit = exploring ? ex_enum_limit : sweep_enum_limit;
      PiPolicy policy = PiPolicy::divisor_subsets();
      std::vector<TheoremId> ids;
      if (exploring) {
        ids = {TheoremId::OpenQ};
      } else {
        ids = detail::parse_theorems(theorems_csv);
        if (pi_policy == "maximal") policy = PiPolicy::maximal_only();
        if (pi_policy == "explicit") {
          if (sweep_pi.empty())
            throw std::invalid_argument("--pi-policy explicit requires --pi");
          policy = PiPolicy::explicit_sets_of({detail::parse_pi(sweep_pi)});
        }
      }
      const SweepResult result =
          pigroup::sweep(entries, policy, ids, limits, exploring ? ex_jobs : jobs);
      detail::print_summary(result.summary, out);
      detail::print_fails(result.reports, out);
      if (exploring) {
        for (const TheoremReport& r : result.reports) {
          if (r.verdict != Verdict::CounterexampleCandidate) continue;
          out << "CANDIDATE " << r.group_id << " pi=" << r.pi.str();
          for (const Witness& w : r.witnesses)
            out << "  [" << w.descriptor << " ratio " << w.ratio.str() << " > bound "
                << w.bound.str() << "]";
          out << "\n";
        }
      }
      const std::string report_path = exploring ? ex_out : sweep_out;
      const std::string report_format = exploring ? ex_format : sweep_format;
      if (!report_path.empty()) {
        write_reports(result.reports, report_format_from_string(report_format), report_path);
        out << "report written to " << report_path << " (" << report_format << ")\n";
      }
      return result.summary.failed == 0 ? 0 : 1;
    }

    if (catalog_cmd->parsed()) {
      if (!check_path.empty()) {
        const auto entries = parse_catalog(check_path);
        out << check_path << ": " << entries.size() << " entries OK\n";
        return 0;
      }
      if (dump) {
        if (cat_out.empty()) {
          write_catalog(seed_catalog(), out);
        } else {
          write_catalog(seed_catalog(), cat_out);
          out << "seed catalog written to " << cat_out << "\n";
        }
        return 0;
      }
      err << "catalog: nothing to do (use --dump or --check)\n";
      return 2;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace pigroup::cli
