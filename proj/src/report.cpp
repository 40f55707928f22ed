#include "polycm/report.hpp"

#include <charconv>
#include <cmath>

#include "polycm/errors.hpp"

namespace polycm {

namespace {

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json optional_limit(const std::optional<double>& v) {
  return v ? Json(*v) : Json("inf");
}

}  // namespace

std::string to_string(CMVerdict v) {
  switch (v) {
    case CMVerdict::consistent_with_cm:
      return "consistent_with_CM";
    case CMVerdict::violation:
      return "violation";
    case CMVerdict::inconclusive:
      return "inconclusive";
  }
  return "";
}

std::string to_string(EntryStatus s) {
  switch (s) {
    case EntryStatus::positive:
      return "positive";
    case EntryStatus::inconclusive:
      return "inconclusive";
    case EntryStatus::violation:
      return "violation";
  }
  return "";
}

Json to_json(const EvalResult& r) {
  return Json{{"value", finite_or_null(r.value)}, {"abs_error", finite_or_null(r.abs_error)}};
}

Json to_json(const CMEntry& e) {
  return Json{{"order", e.order},
              {"x", e.x},
              {"signed_value", to_json(e.signed_value)},
              {"status", to_string(e.status)}};
}

Json to_json(const CMReport& r, bool include_entries) {
  Json j{{"m", r.index.m},
         {"n", r.index.n},
         {"max_order", r.max_order},
         {"grid_points", r.grid.size()},
         {"verdict", to_string(r.verdict)},
         {"violations", r.violations},
         {"inconclusive", r.inconclusive},
         {"inconclusive_fraction", r.inconclusive_fraction()},
         {"min_margin_ratio", finite_or_null(r.min_margin_ratio())}};
  j["first_violation"] = r.first_violation ? to_json(*r.first_violation) : Json(nullptr);
  if (include_entries) {
    Json entries = Json::array();
    for (const CMEntry& e : r.entries) {
      entries.push_back(to_json(e));
    }
    j["entries"] = std::move(entries);
  }
  return j;
}

Json to_json(const LimitCheck& c) {
  return Json{{"end", to_string(c.end)},
              {"expected", optional_limit(c.expected)},
              {"endpoint", c.endpoint},
              {"value", to_json(c.value)},
              {"achieved", c.achieved},
              {"tolerance", c.tolerance},
              {"passed", c.passed}};
}

Json to_json(const KernelReport& r) {
  Json limits = Json::array();
  for (const LimitCheck& c : r.limit_checks) {
    limits.push_back(to_json(c));
  }
  return Json{{"kernel", r.kernel.name()},
              {"grid_points", r.grid.size()},
              {"monotonicity", to_string(r.monotonicity)},
              {"expected_monotonicity", to_string(r.expected_monotonicity)},
              {"increasing_pairs", r.increasing_pairs},
              {"decreasing_pairs", r.decreasing_pairs},
              {"inconclusive_pairs", r.inconclusive_pairs},
              {"diagnostics", r.diagnostics},
              {"range", Json{{"lower", r.claimed_range.lower},
                             {"upper", optional_limit(r.claimed_range.upper)},
                             {"holds", r.range_holds},
                             {"violations", r.range_violations},
                             {"inconclusive", r.range_inconclusive}}},
              {"limit_checks", std::move(limits)},
              {"claims_hold", r.claims_hold()},
              {"claims_contradicted", r.claims_contradicted()}};
}

Json to_json(const Witness& w) {
  const bool sign = w.kind == WitnessKind::sign_change;
  return Json{{"kind", to_string(w.kind)},
              {sign ? "x_pos" : "x_up", w.positive.x},
              {sign ? "f_pos" : "df_up", to_json(w.positive.value)},
              {sign ? "x_neg" : "x_down", w.negative.x},
              {sign ? "f_neg" : "df_down", to_json(w.negative.value)},
              {"margin_factor", w.margin_factor},
              {"certified", w.certified()}};
}

Json to_json(const ClassificationEntry& e) {
  Json j{{"m", e.index.m}, {"n", e.index.n}, {"verdict", to_string(e.verdict)}};
  j["cm_evidence"] = e.cm_evidence ? to_json(*e.cm_evidence, false) : Json(nullptr);
  j["sign_change"] = e.sign_change ? to_json(*e.sign_change) : Json(nullptr);
  j["non_monotonic"] = e.non_monotonic ? to_json(*e.non_monotonic) : Json(nullptr);
  return j;
}

Json to_json(const BoundRow& row) {
  Json comparisons = Json::object();
  for (const BoundComparison& c : row.comparisons) {
    comparisons[to_string(c.variant)] = Json{{"bound", to_json(c.bound)},
                                             {"margin", c.margin},
                                             {"margin_error", c.margin_error},
                                             {"holds", c.holds}};
  }
  return Json{{"x", row.x}, {"derivative", to_json(row.derivative)}, {"bounds", std::move(comparisons)}};
}

Json to_json(const BoundFinding& f) {
  return Json{{"variant", to_string(f.variant)},
              {"x", f.x},
              {"derivative", to_json(f.derivative)},
              {"bound", to_json(f.bound)},
              {"message", f.message}};
}

Json to_json(const InequalityResult& r) {
  return Json{{"k", r.k},
              {"x", r.x},
              {"lower", r.lower},
              {"middle", to_json(r.middle)},
              {"upper", r.upper},
              {"lower_margin", r.lower_margin},
              {"upper_margin", r.upper_margin},
              {"margin_error", r.margin_error},
              {"passed", r.passed}};
}

Json to_json(const TelescopingRow& row) {
  Json remainders = Json::array();
  for (std::size_t i = 0; i < row.remainders.size(); ++i) {
    remainders.push_back(Json{{"N", kTelescopingLadder[i]}, {"remainder", to_json(row.remainders[i])}});
  }
  return Json{{"x", row.x},
              {"partial_sum", to_json(row.partial_sum)},
              {"direct_difference", to_json(row.direct_difference)},
              {"identity_residual", row.identity_residual},
              {"residual_bound", row.residual_bound},
              {"remainders", std::move(remainders)},
              {"remainders_decreasing", row.remainders_decreasing}};
}

std::string format_double(double v) {
  if (std::isnan(v)) {
    return "nan";
  }
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) { row(header); }

std::string CsvWriter::escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  out += '"';
  return out;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) {
    throw DomainError("CsvWriter: row width does not match header");
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) {
      out_ += ',';
    }
    out_ += escape(fields[i]);
  }
  out_ += "\r\n";
}

}  // namespace polycm
