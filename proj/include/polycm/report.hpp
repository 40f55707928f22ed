#pragma once

#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "polycm/classifier.hpp"
#include "polycm/cm_engine.hpp"
#include "polycm/eval_result.hpp"
#include "polycm/inequalities.hpp"
#include "polycm/kernels.hpp"

namespace polycm {

using Json = nlohmann::ordered_json;

// Every numeric result serializes as {"value": v, "abs_error": e}.
Json to_json(const EvalResult& r);
Json to_json(const CMEntry& e);
/// Summary of a CM report; include_entries adds the full (order, x) table.
Json to_json(const CMReport& r, bool include_entries);
Json to_json(const KernelReport& r);
Json to_json(const LimitCheck& c);
Json to_json(const Witness& w);
Json to_json(const ClassificationEntry& e);
Json to_json(const BoundRow& row);
Json to_json(const BoundFinding& f);
Json to_json(const InequalityResult& r);
Json to_json(const TelescopingRow& row);

std::string to_string(CMVerdict v);
std::string to_string(EntryStatus s);

/// Shortest text that parses back to the same double ("inf"/"nan" otherwise).
std::string format_double(double v);

/// RFC-4180 CSV: comma separated, CRLF line endings, fields quoted when they
/// contain a comma, quote, CR or LF.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void row(const std::vector<std::string>& fields);
  const std::string& str() const { return out_; }

  static std::string escape(std::string_view field);

 private:
  std::size_t columns_;
  std::string out_;
};

}  // namespace polycm
