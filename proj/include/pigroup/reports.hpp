#pragma once

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pigroup/harness.hpp"

namespace pigroup {

enum class ReportFormat { Jsonl, Csv };

inline ReportFormat report_format_from_string(const std::string& s) {
  if (s == "jsonl") return ReportFormat::Jsonl;
  if (s == "csv") return ReportFormat::Csv;
  throw std::invalid_argument("unknown report format: '" + s + "' (expected jsonl or csv)");
}

namespace detail {

inline std::string pi_text(const PrimeSet& pi) {
  std::string s;
  for (std::size_t i = 0; i < pi.primes().size(); ++i) {
    if (i) s += ",";
    s += std::to_string(pi.primes()[i]);
  }
  return s;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += sep;
    s += parts[i];
  }
  return s;
}

inline std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  return out + "\"";
}

// The extremal witness shown in the flat columns: the first violated one if
// any, otherwise the first witness.
inline const Witness* primary_witness(const TheoremReport& r) {
  for (const Witness& w : r.witnesses)
    if (!w.holds()) return &w;
  return r.witnesses.empty() ? nullptr : &r.witnesses.front();
}

}  // namespace detail

/// One record per report. Ratios appear as exact "num/den" strings next to a
/// fixed six-decimal approximation column. Field order is stable, and timing
/// is deliberately not serialized so that identical invocations produce
/// byte-identical files.
inline void write_reports(const std::vector<TheoremReport>& reports, ReportFormat format,
                          std::ostream& out) {
  if (format == ReportFormat::Jsonl) {
    for (const TheoremReport& r : reports) {
      nlohmann::ordered_json j;
      j["theorem"] = to_string(r.theorem);
      j["group"] = r.group_id;
      j["pi"] = r.pi.primes();
      j["verdict"] = to_string(r.verdict);
      j["reason"] = r.reason;
      j["flags"] = r.flags;
      const Witness* w = detail::primary_witness(r);
      j["witness"] = w ? w->descriptor : "";
      j["relation"] = w ? to_string(w->relation) : "";
      j["ratio"] = w ? w->ratio.str() : "";
      j["ratio_approx"] = w ? w->ratio.approx_str() : "";
      j["bound"] = w ? w->bound.str() : "";
      j["bound_approx"] = w ? w->bound.approx_str() : "";
      nlohmann::ordered_json witnesses = nlohmann::ordered_json::array();
      for (const Witness& wit : r.witnesses) {
        nlohmann::ordered_json jw;
        jw["descriptor"] = wit.descriptor;
        jw["relation"] = to_string(wit.relation);
        jw["ratio"] = wit.ratio.str();
        jw["ratio_approx"] = wit.ratio.approx_str();
        jw["bound"] = wit.bound.str();
        jw["bound_approx"] = wit.bound.approx_str();
        witnesses.push_back(std::move(jw));
      }
      j["witnesses"] = std::move(witnesses);
      out << j.dump() << "\n";
    }
    return;
  }

  out << "theorem,group,pi,verdict,reason,flags,witness,relation,ratio,ratio_approx,bound,"
         "bound_approx\n";
  for (const TheoremReport& r : reports) {
    const Witness* w = detail::primary_witness(r);
    std::vector<std::string> fields = {
        to_string(r.theorem),
        r.group_id,
        detail::pi_text(r.pi),
        to_string(r.verdict),
        r.reason,
        detail::join(r.flags, "|"),
        w ? w->descriptor : "",
        w ? to_string(w->relation) : "",
        w ? w->ratio.str() : "",
        w ? w->ratio.approx_str() : "",
        w ? w->bound.str() : "",
        w ? w->bound.approx_str() : "",
    };
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out << ",";
      out << detail::csv_quote(fields[i]);
    }
    out << "\n";
  }
}

inline void write_reports(const std::vector<TheoremReport>& reports, ReportFormat format,
                          const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open report file for writing: " + path);
  write_reports(reports, format, out);
  if (!out) throw std::runtime_error("error while writing report file: " + path);
}

inline std::string reports_to_string(const std::vector<TheoremReport>& reports,
                                     ReportFormat format) {
  std::ostringstream os;
  write_reports(reports, format, os);
  return os.str();
}

}  // namespace pigroup
