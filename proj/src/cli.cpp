#include "polycm/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "polycm/classifier.hpp"
#include "polycm/cm_engine.hpp"
#include "polycm/errors.hpp"
#include "polycm/inequalities.hpp"
#include "polycm/kernels.hpp"
#include "polycm/report.hpp"

namespace polycm::cli {

namespace {

enum class Format { json, csv, text };
enum class Scale { log, linear };

struct GridSpec {
  double min = 0.01;
  double max = 100.0;
  std::size_t count = 200;
  Scale scale = Scale::log;

  std::vector<double> points() const {
    if (!(min > 0)) {
      throw DomainError("--grid-min must be positive");
    }
    return scale == Scale::log ? log_grid(min, max, count) : linear_grid(min, max, count);
  }
};

struct RunConfig {
  std::string command;
  int m_max = 6;
  int n_max = 6;
  int orders = 8;
  GridSpec grid;
  double precision = 1e-12;
  Format format = Format::json;
  std::string out_path;
  std::optional<int> m;
  std::optional<int> n;
  std::string kernel = "omega";
  int k = 0;

  PrecisionConfig precision_config() const {
    PrecisionConfig cfg;
    cfg.target_abs_error = precision;
    cfg.validate();
    return cfg;
  }
};

// What a command produces before formatting.
struct Outcome {
  int status = kSuccess;
  Json summary = Json::object();
  Json entries = Json::array();
  Json findings = Json::array();
  std::string csv;
  std::string text;
};

std::string to_string(Format f) {
  switch (f) {
    case Format::json:
      return "json";
    case Format::csv:
      return "csv";
    case Format::text:
      return "text";
  }
  return "";
}

Json config_json(const RunConfig& c) {
  Json j{{"command", c.command},
         {"m_max", c.m_max},
         {"n_max", c.n_max},
         {"orders", c.orders},
         {"grid", Json{{"min", c.grid.min},
                       {"max", c.grid.max},
                       {"count", c.grid.count},
                       {"scale", c.grid.scale == Scale::log ? "log" : "linear"}}},
         {"precision", c.precision},
         {"format", to_string(c.format)}};
  if (c.m) j["m"] = *c.m;
  if (c.n) j["n"] = *c.n;
  if (c.command == "kernels") {
    j["kernel"] = c.kernel;
    j["k"] = c.k;
  }
  return j;
}

std::string fmt(double v) { return format_double(v); }


Outcome run_classify(const RunConfig& c) {
  Outcome o;
  const PrecisionConfig cfg = c.precision_config();
  ClassifyOptions opts;
  opts.max_order = c.orders;
  opts.grid = c.grid.points();

  CsvWriter csv({"m", "n", "verdict", "expected", "matches_rule", "cm_verdict", "cm_violations",
                 "cm_inconclusive", "x_pos", "f_pos", "f_pos_abs_error", "x_neg", "f_neg",
                 "f_neg_abs_error", "x_up", "df_up", "df_up_abs_error", "x_down", "df_down",
                 "df_down_abs_error"});
  std::ostringstream text;
  text << std::left << std::setw(4) << "m" << std::setw(4) << "n" << std::setw(30) << "verdict"
       << "evidence\n";

  std::size_t nontrivial = 0;
  for (int m = 1; m <= c.m_max; ++m) {
    for (int n = 1; n <= c.n_max; ++n) {
      const Verdict expected = closed_form_verdict(m, n);
      ClassificationEntry entry;
      try {
        entry = classify(m, n, cfg, opts);
      } catch (const ClassificationError& e) {
        o.status = kVerificationFailure;
        o.findings.push_back(Json{{"m", m}, {"n", n}, {"error", e.what()}});
        o.entries.push_back(Json{{"m", m}, {"n", n}, {"verdict", nullptr},
                                 {"expected", to_string(expected)}, {"matches_rule", false}});
        csv.row({std::to_string(m), std::to_string(n), "", to_string(expected), "false", "", "", "",
                 "", "", "", "", "", "", "", "", "", "", "", ""});
        text << std::setw(4) << m << std::setw(4) << n << std::setw(30) << "ERROR" << e.what() << "\n";
        continue;
      }
      const bool matches = entry.verdict == expected;
      if (!matches) {
        o.status = kVerificationFailure;
        o.findings.push_back(Json{{"m", m},
                                  {"n", n},
                                  {"error", "numeric verdict " + to_string(entry.verdict) +
                                                " disagrees with rule " + to_string(expected)}});
      }
      if (entry.verdict == Verdict::cm_nontrivial) {
        ++nontrivial;
      }
      Json j = to_json(entry);
      j["expected"] = to_string(expected);
      j["matches_rule"] = matches;
      o.entries.push_back(std::move(j));

      const CMReport& cm = *entry.cm_evidence;
      std::vector<std::string> row = {std::to_string(m), std::to_string(n), to_string(entry.verdict),
                                      to_string(expected), matches ? "true" : "false",
                                      to_string(cm.verdict), std::to_string(cm.violations),
                                      std::to_string(cm.inconclusive)};
      for (const auto* w : {entry.sign_change ? &*entry.sign_change : nullptr,
                            entry.non_monotonic ? &*entry.non_monotonic : nullptr}) {
        if (w) {
          for (const WitnessPoint* p : {&w->positive, &w->negative}) {
            row.push_back(fmt(p->x));
            row.push_back(fmt(p->value.value));
            row.push_back(fmt(p->value.abs_error));
          }
        } else {
          row.insert(row.end(), 6, "");
        }
      }
      csv.row(row);

      text << std::setw(4) << m << std::setw(4) << n << std::setw(30) << to_string(entry.verdict);
      if (entry.sign_change && entry.non_monotonic) {
        text << "f>0 at " << fmt(entry.sign_change->positive.x) << ", f<0 at "
             << fmt(entry.sign_change->negative.x) << "; f'>0 at "
             << fmt(entry.non_monotonic->positive.x) << ", f'<0 at "
             << fmt(entry.non_monotonic->negative.x);
      } else {
        text << "CM check " << to_string(cm.verdict) << " (l<=" << cm.max_order << ", "
             << cm.grid.size() << " points)";
      }
      text << "\n";
    }
  }
  o.summary = Json{{"pairs", o.entries.size()}, {"cm_nontrivial", nontrivial},
                   {"all_match_rule", o.status == kSuccess}};
  o.csv = csv.str();
  o.text = text.str();
  return o;
}

Outcome run_check_cm(const RunConfig& c) {
  Outcome o;
  const FamilyIndex idx(c.m.value_or(1), c.n.value_or(2));
  const std::vector<double> grid = c.grid.points();
  const CMReport report = cm_check(idx, c.orders, grid, c.precision_config());

  CsvWriter csv({"m", "n", "order", "x", "signed_value", "abs_error", "status"});
  for (const CMEntry& e : report.entries) {
    o.entries.push_back(to_json(e));
    csv.row({std::to_string(idx.m), std::to_string(idx.n), std::to_string(e.order), fmt(e.x),
             fmt(e.signed_value.value), fmt(e.signed_value.abs_error), to_string(e.status)});
    if (e.status == EntryStatus::violation) {
      o.findings.push_back(Json{{"violation", to_json(e)}});
    }
  }
  o.summary = to_json(report, false);
  o.status = report.verdict == CMVerdict::consistent_with_cm ? kSuccess : kVerificationFailure;
  o.csv = csv.str();

  std::ostringstream text;
  text << "f_{" << idx.m << "," << idx.n << "}: " << to_string(report.verdict) << " over orders 0.."
       << report.max_order << " on " << grid.size() << " points; " << report.violations
       << " violations, " << report.inconclusive << " inconclusive\n";
  if (report.first_violation) {
    text << "first violation: order " << report.first_violation->order << " at x="
         << fmt(report.first_violation->x) << " value " << fmt(report.first_violation->signed_value.value)
         << "\n";
  }
  o.text = text.str();
  return o;
}

KernelId parse_kernel(const RunConfig& c) {
  if (c.kernel == "omega") return KernelId::omega();
  if (c.kernel == "h") return KernelId::h(c.k);
  if (c.kernel == "tanh") return KernelId::tanh();
  if (c.kernel == "kappa") return KernelId::kappa();
  throw CLI::ValidationError("--kernel", "unknown kernel " + c.kernel);
}

Outcome run_kernels(const RunConfig& c) {
  Outcome o;
  const KernelId kernel = parse_kernel(c);
  const std::vector<double> grid = c.grid.points();
  const KernelReport report = kernel_report(kernel, grid);

  CsvWriter csv({"kernel", "t", "value", "abs_error"});
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    o.entries.push_back(Json{{"t", report.grid[i]}, {"value", to_json(report.values[i])}});
    csv.row({kernel.name(), fmt(report.grid[i]), fmt(report.values[i].value),
             fmt(report.values[i].abs_error)});
  }
  for (const LimitCheck& check : report.limit_checks) {
    if (!check.passed) {
      o.findings.push_back(Json{{"limit_check", to_json(check)}});
    }
  }
  o.summary = to_json(report);
  if (!report.claims_hold() && !report.claims_contradicted()) {
    o.findings.push_back(Json{{"unresolved", report.diagnostics},
                              {"range_inconclusive", report.range_inconclusive}});
  }
  o.status = report.claims_contradicted() ? kVerificationFailure : kSuccess;
  o.csv = csv.str();

  std::ostringstream text;
  text << kernel.name() << ": " << to_string(report.monotonicity) << " (expected "
       << to_string(report.expected_monotonicity) << "), range "
       << (report.range_holds ? "holds"
           : report.range_violations > 0 ? "violated"
                                         : "unresolved at " + std::to_string(report.range_inconclusive) + " points")
       << "\n";
  if (!report.claims_hold() && !report.claims_contradicted()) {
    text << "  " << report.diagnostics << "\n";
  }
  for (const LimitCheck& check : report.limit_checks) {
    text << "  limit at " << to_string(check.end) << ": expected "
         << (check.expected ? fmt(*check.expected) : std::string("inf")) << ", value "
         << fmt(check.value.value) << " at t=" << fmt(check.endpoint) << " -> "
         << (check.passed ? "pass" : "not reached") << "\n";
  }
  o.text = text.str();
  return o;
}

Outcome run_inequalities(const RunConfig& c) {
  Outcome o;
  const std::vector<double> grid = c.grid.points();
  const BoundsSummary summary = bounds_suite(c.orders, grid, c.precision_config());

  CsvWriter csv({"k", "x", "lower", "middle", "middle_abs_error", "upper", "lower_margin",
                 "upper_margin", "margin_error", "passed"});
  const auto emit = [&](const InequalityResult& r) {
    o.entries.push_back(to_json(r));
    csv.row({std::to_string(r.k), fmt(r.x), fmt(r.lower), fmt(r.middle.value), fmt(r.middle.abs_error),
             fmt(r.upper), fmt(r.lower_margin), fmt(r.upper_margin), fmt(r.margin_error),
             r.passed ? "true" : "false"});
    if (!r.passed) {
      o.findings.push_back(Json{{"result", to_json(r)}, {"failed", r.failed}});
    }
  };
  for (const InequalityResult& r : summary.psi_results) emit(r);
  for (const InequalityResult& r : summary.polygamma_results) emit(r);

  o.summary = Json{{"checks", summary.size()},
                   {"failures", summary.failures},
                   {"inconclusive", summary.inconclusive.size()},
                   {"min_lower_margin", summary.min_lower_margin ? Json(*summary.min_lower_margin) : Json(nullptr)},
                   {"min_upper_margin", summary.min_upper_margin ? Json(*summary.min_upper_margin) : Json(nullptr)},
                   {"psi_lower_margin_shrinks", summary.psi_lower_margin_shrinks}};
  o.status = summary.all_passed() ? kSuccess : kVerificationFailure;
  o.csv = csv.str();

  std::ostringstream text;
  text << summary.size() << " inequality checks (k <= " << c.orders << ", " << grid.size()
       << " points): " << summary.failures << " failures, " << summary.inconclusive.size()
       << " inconclusive\n";
  o.text = text.str();
  return o;
}

Outcome run_bounds(const RunConfig& c) {
  Outcome o;
  const PrecisionConfig cfg = c.precision_config();
  const std::vector<double> grid = c.grid.points();
  const int m_lo = c.m.value_or(1);
  const int m_hi = c.m.value_or(c.m_max);
  const int nu_lo = c.n.value_or(1);
  const int nu_hi = c.n.value_or(c.n_max);

  std::vector<std::string> header = {"m", "nu", "x", "derivative", "derivative_abs_error"};
  for (const char* v : {"p_printed", "p_derived", "q_printed", "q_derived"}) {
    header.push_back(std::string(v) + "_bound");
    header.push_back(std::string(v) + "_bound_abs_error");
    header.push_back(std::string(v) + "_holds");
  }
  CsvWriter csv(header);
  std::ostringstream text;
  std::size_t derived_violations = 0;
  std::size_t printed_findings = 0;

  for (int m = m_lo; m <= m_hi; ++m) {
    for (int nu = nu_lo; nu <= nu_hi; ++nu) {
      const BoundReport report = bound_check(FamilyIndex(m, 2 * nu), grid, cfg);
      derived_violations += report.derived_violations;
      printed_findings += report.findings.size();
      for (const BoundRow& row : report.rows) {
        Json j = to_json(row);
        j = Json{{"m", m}, {"nu", nu}, {"x", row.x}, {"derivative", j["derivative"]},
                 {"bounds", j["bounds"]}};
        o.entries.push_back(std::move(j));
        std::vector<std::string> fields = {std::to_string(m), std::to_string(nu), fmt(row.x),
                                           fmt(row.derivative.value), fmt(row.derivative.abs_error)};
        for (const BoundComparison& cmp : row.comparisons) {
          fields.push_back(fmt(cmp.bound.value));
          fields.push_back(fmt(cmp.bound.abs_error));
          fields.push_back(cmp.holds ? "true" : "false");
        }
        csv.row(fields);
      }
      for (const BoundFinding& f : report.findings) {
        Json j = to_json(f);
        j["m"] = m;
        j["nu"] = nu;
        o.findings.push_back(std::move(j));
      }
      text << "q/p bounds for f'_{" << m << "," << 2 * nu << "}: derived violations "
           << report.derived_violations << ", printed-bound findings " << report.findings.size()
           << "\n";
    }
  }
  o.summary = Json{{"derived_violations", derived_violations}, {"printed_findings", printed_findings}};
  o.status = derived_violations == 0 ? kSuccess : kVerificationFailure;
  o.csv = csv.str();
  o.text = text.str();
  return o;
}

std::string render(const RunConfig& c, const Outcome& o) {
  switch (c.format) {
    case Format::json: {
      Json doc{{"config", config_json(c)},
               {"status", o.status},
               {"summary", o.summary},
               {"entries", o.entries},
               {"findings", o.findings}};
      return doc.dump(2) + "\n";
    }
    case Format::csv:
      return o.csv;
    case Format::text:
      return o.text;
  }
  return "";
}

void add_common(CLI::App* app, RunConfig& c) {
  const auto scale_map = std::map<std::string, Scale>{{"log", Scale::log}, {"linear", Scale::linear}};
  const auto format_map =
      std::map<std::string, Format>{{"json", Format::json}, {"csv", Format::csv}, {"text", Format::text}};
  app->add_option("--grid-min", c.grid.min, "Smallest grid point (> 0)");
  app->add_option("--grid-max", c.grid.max, "Largest grid point");
  app->add_option("--grid-count", c.grid.count, "Number of grid points (>= 2)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
  app->add_option("--grid-scale", c.grid.scale, "Grid spacing")
      ->transform(CLI::CheckedTransformer(scale_map, CLI::ignore_case));
  app->add_option("--precision", c.precision, "Target absolute error of each evaluation")
      ->check(CLI::PositiveNumber);
  app->add_option("--format", c.format, "Output format")
      ->transform(CLI::CheckedTransformer(format_map, CLI::ignore_case));
  app->add_option("--out", c.out_path, "Write the report to this file instead of stdout");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Complete-monotonicity verification for f_{m,n}(x) = [psi^(m)(x)]^2 + psi^(n)(x)"};
  app.require_subcommand(1);

  RunConfig c;

  auto* classify_cmd = app.add_subcommand("classify", "Classify every f_{m,n} for m <= m-max, n <= n-max");
  add_common(classify_cmd, c);
  classify_cmd->add_option("--m-max", c.m_max, "Largest m")->check(CLI::PositiveNumber);
  classify_cmd->add_option("--n-max", c.n_max, "Largest n")->check(CLI::PositiveNumber);
  classify_cmd->add_option("--orders", c.orders, "Highest derivative order in the CM check")
      ->check(CLI::NonNegativeNumber);

  auto* check_cm_cmd = app.add_subcommand("check-cm", "Sign table of (-1)^l f^{(l)} for one f_{m,n}");
  add_common(check_cm_cmd, c);
  check_cm_cmd->add_option("--m", c.m, "m (default 1)")->check(CLI::PositiveNumber);
  check_cm_cmd->add_option("--n", c.n, "n (default 2)")->check(CLI::PositiveNumber);
  check_cm_cmd->add_option("--orders", c.orders, "Highest derivative order")
      ->check(CLI::NonNegativeNumber);

  auto* kernels_cmd = app.add_subcommand("kernels", "Monotonicity, range and limits of a Laplace kernel");
  add_common(kernels_cmd, c);
  kernels_cmd->add_option("--kernel", c.kernel, "omega | h | tanh | kappa")
      ->check(CLI::IsMember({"omega", "h", "tanh", "kappa"}));
  kernels_cmd->add_option("--k", c.k, "Index k of h_k");

  auto* ineq_cmd = app.add_subcommand("inequalities", "Double inequalities for psi and psi^(k)");
  add_common(ineq_cmd, c);
  ineq_cmd->add_option("--orders", c.orders, "Largest k")->check(CLI::PositiveNumber);

  auto* bounds_cmd = app.add_subcommand(
      "bounds", "Audit the p/q bounds on f'_{m,2n}; --m/--n select one pair, else sweep to --m-max/--n-max");
  add_common(bounds_cmd, c);
  bounds_cmd->add_option("--m", c.m, "m of p_{m,n}, q_{m,n}")->check(CLI::PositiveNumber);
  bounds_cmd->add_option("--n", c.n, "n of p_{m,n}, q_{m,n} (bounds f'_{m,2n})")
      ->check(CLI::PositiveNumber);
  bounds_cmd->add_option("--m-max", c.m_max, "Largest m in the sweep")->check(CLI::PositiveNumber);
  bounds_cmd->add_option("--n-max", c.n_max, "Largest n in the sweep")->check(CLI::PositiveNumber);

  // Per-command defaults, applied before parsing so explicit flags win.
  classify_cmd->preparse_callback([&](std::size_t) { c.command = "classify"; });
  check_cm_cmd->preparse_callback([&](std::size_t) { c.command = "check-cm"; });
  kernels_cmd->preparse_callback([&](std::size_t) {
    c.command = "kernels";
    c.grid = {1e-6, 50.0, 64, Scale::log};
  });
  ineq_cmd->preparse_callback([&](std::size_t) {
    c.command = "inequalities";
    c.grid = {0.05, 100.0, 100, Scale::log};
  });
  bounds_cmd->preparse_callback([&](std::size_t) {
    c.command = "bounds";
    c.grid = {0.01, 100.0, 100, Scale::log};
    c.m_max = 4;
    c.n_max = 4;
  });

  std::vector<std::string> reversed(args.size() > 0 ? args.begin() + 1 : args.begin(), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  Outcome outcome;
  try {
    if (c.command == "classify") {
      outcome = run_classify(c);
    } else if (c.command == "check-cm") {
      outcome = run_check_cm(c);
    } else if (c.command == "kernels") {
      outcome = run_kernels(c);
    } else if (c.command == "inequalities") {
      outcome = run_inequalities(c);
    } else {
      outcome = run_bounds(c);
    }
  } catch (const CLI::ValidationError& e) {
    err << e.what() << "\n";
    return kUsageError;
  } catch (const DomainError& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "numeric error: " << e.what() << "\n";
    return kNumericError;
  }

  const std::string rendered = render(c, outcome);
  if (c.out_path.empty()) {
    out << rendered;
  } else {
    std::ofstream file(c.out_path, std::ios::binary);
    if (!file) {
      err << "cannot open " << c.out_path << " for writing\n";
      return kUsageError;
    }
    file << rendered;
  }
  for (const Json& f : outcome.findings) {
    if (f.contains("error")) {
      err << "f_{" << f["m"].get<int>() << "," << f["n"].get<int>() << "}: "
          << f["error"].get<std::string>() << "\n";
    }
  }
  return outcome.status;
}

}  // namespace polycm::cli
