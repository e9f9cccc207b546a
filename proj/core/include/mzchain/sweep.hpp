#ifndef MZCHAIN_SWEEP_HPP_
#define MZCHAIN_SWEEP_HPP_

#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mzchain/field_algebra.hpp"

namespace mzchain {

enum class Engine { matrix, closed_form, both };
const char* to_string(Engine e);

struct SweepConfig {
  int n = 1;
  double phi_start = 0.0;
  double phi_stop = 2.0 * std::numbers::pi;
  int phi_points = 721;  // endpoint-inclusive
  std::vector<double> psi_values{0.0};
  Engine engine = Engine::both;
};

struct SweepRow {
  int n = 0;
  double phi = 0.0;
  double psi = 0.0;
  double i_upper = 0.0;
  double i_lower = 0.0;
  double r = 0.0;  // 4 * i_upper * i_lower
};

// Fringe-period classification relative to the single-MZI baseline
// (period 2 pi in phi, i.e. a lambda/2 phase resolution):
//   classical       period compatible with 2 pi
//   quantum-bound   period within one grid step of 2 pi / n
//   sub-classical   shorter than classical but not at the n-fold bound
enum class FringeClass { classical, sub_classical, quantum_bound };
const char* to_string(FringeClass c);

struct FringeReport {
  int n = 0;
  double estimated_period = 0.0;  // +inf when the slice has no minima
  int minima_count = 0;
  double claimed_period = 0.0;         // 2 pi / n
  double resolution_wavelengths = 0.0;  // 1 / (2 n)
  FringeClass classification = FringeClass::classical;
};

struct FormulaDeviation {
  std::string formula;
  double max_abs_deviation = 0.0;
  int argmax_n = 0;
  double argmax_phi = 0.0;
  double argmax_psi = 0.0;
};

// A formula variant that circulates in print but disagrees with the
// matrix engine; reported for documentation, never a failure.
struct PrintedFormulaFlag {
  std::string formula;
  int n = 0;
  double phi = 0.0;
  double psi = 0.0;
  double printed_value = 0.0;
  double oracle_value = 0.0;
};

struct OracleReport {
  std::string grid;
  double tolerance = 0.0;
  bool passed = false;
  double max_abs_deviation = 0.0;
  int argmax_n = 0;
  double argmax_phi = 0.0;
  double argmax_psi = 0.0;
  std::vector<FormulaDeviation> formulas;
  std::vector<PrintedFormulaFlag> printed_formula_flags;
};

struct SweepResult {
  SweepConfig config;
  std::vector<SweepRow> rows;
  // Present for Engine::both: the recorded matrix/closed-form agreement.
  std::optional<OracleReport> oracle;
};

// Requested closed form does not exist (n > 2 with a coupling phase away
// from 0 and +/- pi).
class UnsupportedFormulaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrix and closed-form engines disagreed beyond tolerance.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Agreement required between the two engines wherever both apply.
inline constexpr double kEngineAgreementTol = 1e-12;

// Equispaced grid, endpoint-inclusive.  points >= 2, start < stop.
std::vector<double> phi_grid(double start, double stop, int points);

// One row per (psi, phi) grid point, psi-major.  Engine::both computes
// rows with the matrix engine, checks them against closed forms wherever
// one exists, and attaches the comparison as an OracleReport; deviation
// beyond kEngineAgreementTol throws VerificationError.
SweepResult sweep(const SweepConfig& config);

// Matrix-engine surface over the outer product of the two grids,
// indexed [psi][phi].
std::vector<std::vector<SweepRow>> sweep_2d(int n,
                                            const std::vector<double>& phis,
                                            const std::vector<double>& psis);

// Fringe statistics of i_upper over one 2 pi phi window (a single
// (n, psi) slice, >= 64 samples, ascending phi; a duplicated phi = 2 pi
// endpoint is dropped).  Minima are strict local minima; runs of values
// within 1e-12 count once, at the run midpoint, so constant slices report
// zero fringes.  The period estimate is the mean circular minima spacing.
FringeReport fringe_report(const std::vector<SweepRow>& rows);

// Cross-validates every closed form against the matrix engine on the
// canonical grid (n in 1..max_n, psi in {0, +/-pi/4, +/-pi/2, +/-3pi/4,
// +/-pi}, 721 phi points in [0, 2 pi]) and computes the printed-variant
// errata flags.  Never throws on deviation: passed records the verdict.
OracleReport verify_oracle(int max_n, double tol);

}  // namespace mzchain

#endif  // MZCHAIN_SWEEP_HPP_
