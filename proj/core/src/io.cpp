#include "mzchain/io.hpp"

#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace mzchain {

std::string format_float(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "n,phi,psi,i_upper,i_lower,r\n";
  for (const SweepRow& row : rows) {
    out << row.n << ',' << format_float(row.phi) << ','
        << format_float(row.psi) << ',' << format_float(row.i_upper) << ','
        << format_float(row.i_lower) << ',' << format_float(row.r) << '\n';
  }
}

namespace {

nlohmann::json to_json(const SweepRow& row) {
  return {{"n", row.n},         {"phi", row.phi},
          {"psi", row.psi},     {"i_upper", row.i_upper},
          {"i_lower", row.i_lower}, {"r", row.r}};
}

nlohmann::json to_json(const OracleReport& report) {
  nlohmann::json formulas = nlohmann::json::array();
  for (const FormulaDeviation& f : report.formulas) {
    formulas.push_back({{"formula", f.formula},
                        {"max_abs_deviation", f.max_abs_deviation},
                        {"argmax",
                         {{"n", f.argmax_n},
                          {"phi", f.argmax_phi},
                          {"psi", f.argmax_psi}}}});
  }
  nlohmann::json flags = nlohmann::json::array();
  for (const PrintedFormulaFlag& f : report.printed_formula_flags) {
    flags.push_back({{"formula", f.formula},
                     {"n", f.n},
                     {"phi", f.phi},
                     {"psi", f.psi},
                     {"printed_value", f.printed_value},
                     {"oracle_value", f.oracle_value}});
  }
  return {{"grid", report.grid},
          {"tolerance", report.tolerance},
          {"passed", report.passed},
          {"max_abs_deviation", report.max_abs_deviation},
          {"argmax",
           {{"n", report.argmax_n},
            {"phi", report.argmax_phi},
            {"psi", report.argmax_psi}}},
          {"formulas", formulas},
          {"printed_formula_flags", flags}};
}

nlohmann::json to_json(double psi, const FringeReport& report) {
  return {{"psi", psi},
          {"n", report.n},
          {"estimated_period", report.estimated_period},
          {"minima_count", report.minima_count},
          {"claimed_period", report.claimed_period},
          {"resolution_wavelengths", report.resolution_wavelengths},
          {"classification", to_string(report.classification)}};
}

}  // namespace

void write_json(
    const SweepResult& result,
    const std::vector<std::pair<double, FringeReport>>& fringe_per_psi,
    std::ostream& out) {
  nlohmann::json doc;
  doc["config"] = {{"n", result.config.n},
                   {"phi_start", result.config.phi_start},
                   {"phi_stop", result.config.phi_stop},
                   {"phi_points", result.config.phi_points},
                   {"psi_values", result.config.psi_values},
                   {"engine", to_string(result.config.engine)}};
  nlohmann::json rows = nlohmann::json::array();
  for (const SweepRow& row : result.rows) {
    rows.push_back(to_json(row));
  }
  doc["rows"] = std::move(rows);
  if (result.oracle) {
    doc["oracle_report"] = to_json(*result.oracle);
  }
  nlohmann::json fringe = nlohmann::json::array();
  for (const auto& [psi, report] : fringe_per_psi) {
    fringe.push_back(to_json(psi, report));
  }
  doc["fringe_report"] = std::move(fringe);
  out << doc.dump(2) << "\n";
}

}  // namespace mzchain
