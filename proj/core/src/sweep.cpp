#include "mzchain/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "mzchain/closed_form.hpp"
#include "mzchain/elements.hpp"

namespace mzchain {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

SweepRow matrix_row(int n, double phi, double psi) {
  ChainSpec spec;
  spec.n = n;
  spec.phi = phi;
  spec.psi = psi;
  const IntensityPair p =
      intensities(apply(coupled_chain(spec), FieldPair{{1.0, 0.0}, {0.0, 0.0}}));
  return {n, phi, psi, p.upper, p.lower, r_product(p.upper, p.lower)};
}

SweepRow row_from_pair(int n, double phi, double psi, const IntensityPair& p) {
  return {n, phi, psi, p.upper, p.lower, r_product(p.upper, p.lower)};
}

const char* chain_formula_id(int n, double psi) {
  if (n == 1) {
    return "single-mzi-intensities";
  }
  if (n == 2) {
    return "double-mzi-intensities";
  }
  const double reduced = std::abs(std::remainder(psi, kTwoPi));
  if (reduced <= kClosedFormPsiTol) {
    return "identity-coupling-collapse";
  }
  return "n-chain-intensities";
}

bool is_quantum_psi(double psi) {
  return std::abs(std::abs(std::remainder(psi, kTwoPi)) - kPi) <=
         kClosedFormPsiTol;
}

class DeviationTracker {
 public:
  void update(const char* formula, double deviation, int n, double phi,
              double psi) {
    Entry* entry = nullptr;
    for (Entry& e : entries_) {
      if (e.record.formula == formula) {
        entry = &e;
        break;
      }
    }
    if (entry == nullptr) {
      entries_.push_back(Entry{});
      entry = &entries_.back();
      entry->record.formula = formula;
    }
    if (!entry->seen || deviation > entry->record.max_abs_deviation) {
      entry->record.max_abs_deviation = deviation;
      entry->record.argmax_n = n;
      entry->record.argmax_phi = phi;
      entry->record.argmax_psi = psi;
      entry->seen = true;
    }
  }

  void finalize(OracleReport& report) const {
    report.max_abs_deviation = 0.0;
    bool first = true;
    for (const Entry& e : entries_) {
      report.formulas.push_back(e.record);
      if (first || e.record.max_abs_deviation > report.max_abs_deviation) {
        report.max_abs_deviation = e.record.max_abs_deviation;
        report.argmax_n = e.record.argmax_n;
        report.argmax_phi = e.record.argmax_phi;
        report.argmax_psi = e.record.argmax_psi;
        first = false;
      }
    }
  }

 private:
  struct Entry {
    FormulaDeviation record;
    bool seen = false;
  };
  std::vector<Entry> entries_;
};

void require_finite(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

void validate_config(const SweepConfig& config) {
  if (config.n < 1) {
    throw std::invalid_argument("n must be at least 1");
  }
  require_finite(config.phi_start, "phi_start");
  require_finite(config.phi_stop, "phi_stop");
  if (config.psi_values.empty()) {
    throw std::invalid_argument("psi_values must not be empty");
  }
  for (double psi : config.psi_values) {
    require_finite(psi, "psi");
  }
}

std::string describe_sweep_grid(const SweepConfig& config) {
  std::ostringstream os;
  os << "n=" << config.n << "; phi: " << config.phi_points << " points in ["
     << config.phi_start << ", " << config.phi_stop << "]; "
     << config.psi_values.size() << " psi value(s); engine="
     << to_string(config.engine);
  return os.str();
}

std::string describe_unsupported(int n, double psi) {
  std::ostringstream os;
  os << "no closed form exists for n=" << n << " at psi=" << psi
     << "; use the matrix engine";
  return os.str();
}

std::vector<PrintedFormulaFlag> printed_flags() {
  std::vector<PrintedFormulaFlag> flags;
  const double half_pi = 0.5 * kPi;

  // Lower-port value at phi=psi=pi/2 where both printed lower-port
  // variants give 1/4 while the composed matrix gives 1/2.
  const SweepRow mid = matrix_row(2, half_pi, half_pi);
  flags.push_back({"double-mzi-lower-printed", 2, half_pi, half_pi,
                   double_mzi_lower_printed(half_pi, half_pi), mid.i_lower});
  flags.push_back({"quarter-psi-lower-printed", 2, half_pi, half_pi,
                   quarter_psi_lower_printed(half_pi), mid.i_lower});

  // A 1/16 front factor on the two-block matrix, in place of the 1/4
  // carried by two normalized blocks, scales every intensity by 1/16.
  const SweepRow origin = matrix_row(2, 0.0, 0.0);
  flags.push_back({"chain-matrix-prefactor-printed", 2, 0.0, 0.0,
                   origin.i_upper / 16.0, origin.i_upper});
  return flags;
}

}  // namespace

const char* to_string(Engine e) {
  switch (e) {
    case Engine::matrix:
      return "matrix";
    case Engine::closed_form:
      return "closed_form";
    default:
      return "both";
  }
}

const char* to_string(FringeClass c) {
  switch (c) {
    case FringeClass::classical:
      return "classical";
    case FringeClass::sub_classical:
      return "sub-classical";
    default:
      return "quantum-bound";
  }
}

std::vector<double> phi_grid(double start, double stop, int points) {
  require_finite(start, "phi_start");
  require_finite(stop, "phi_stop");
  if (points < 2) {
    throw std::invalid_argument("phi grid needs at least 2 points");
  }
  if (!(start < stop)) {
    throw std::invalid_argument("phi_start must be less than phi_stop");
  }
  std::vector<double> grid(static_cast<size_t>(points));
  const double span = stop - start;
  for (int i = 0; i < points; ++i) {
    grid[static_cast<size_t>(i)] =
        start + span * (static_cast<double>(i) / (points - 1));
  }
  grid.back() = stop;
  return grid;
}

SweepResult sweep(const SweepConfig& config) {
  validate_config(config);
  const std::vector<double> phis =
      phi_grid(config.phi_start, config.phi_stop, config.phi_points);

  SweepResult result;
  result.config = config;
  result.rows.reserve(phis.size() * config.psi_values.size());

  DeviationTracker tracker;
  for (double psi : config.psi_values) {
    for (double phi : phis) {
      switch (config.engine) {
        case Engine::matrix:
          result.rows.push_back(matrix_row(config.n, phi, psi));
          break;
        case Engine::closed_form: {
          const auto cf = chain_intensities_closed_form(config.n, phi, psi);
          if (!cf) {
            throw UnsupportedFormulaError(describe_unsupported(config.n, psi));
          }
          result.rows.push_back(row_from_pair(config.n, phi, psi, *cf));
          break;
        }
        case Engine::both: {
          const SweepRow row = matrix_row(config.n, phi, psi);
          if (const auto cf =
                  chain_intensities_closed_form(config.n, phi, psi)) {
            const double deviation = std::max(std::abs(row.i_upper - cf->upper),
                                              std::abs(row.i_lower - cf->lower));
            tracker.update(chain_formula_id(config.n, psi), deviation,
                           config.n, phi, psi);
          }
          result.rows.push_back(row);
          break;
        }
      }
    }
  }

  if (config.engine == Engine::both) {
    OracleReport report;
    report.grid = describe_sweep_grid(config);
    report.tolerance = kEngineAgreementTol;
    tracker.finalize(report);
    report.passed = report.max_abs_deviation <= kEngineAgreementTol;
    if (!report.passed) {
      std::ostringstream os;
      os << "matrix and closed-form engines disagree: |delta|="
         << report.max_abs_deviation << " at (n=" << report.argmax_n
         << ", phi=" << report.argmax_phi << ", psi=" << report.argmax_psi
         << ")";
      throw VerificationError(os.str());
    }
    result.oracle = std::move(report);
  }
  return result;
}

std::vector<std::vector<SweepRow>> sweep_2d(int n,
                                            const std::vector<double>& phis,
                                            const std::vector<double>& psis) {
  if (phis.empty() || psis.empty()) {
    throw std::invalid_argument("sweep_2d needs nonempty grids");
  }
  if (n < 1) {
    throw std::invalid_argument("n must be at least 1");
  }
  std::vector<std::vector<SweepRow>> surface;
  surface.reserve(psis.size());
  for (double psi : psis) {
    std::vector<SweepRow> slice;
    slice.reserve(phis.size());
    for (double phi : phis) {
      slice.push_back(matrix_row(n, phi, psi));
    }
    surface.push_back(std::move(slice));
  }
  return surface;
}

FringeReport fringe_report(const std::vector<SweepRow>& rows) {
  if (rows.empty()) {
    throw std::invalid_argument("fringe analysis needs a nonempty slice");
  }
  const int n = rows.front().n;
  const double psi = rows.front().psi;
  for (const SweepRow& row : rows) {
    if (row.n != n || row.psi != psi) {
      throw std::invalid_argument(
          "fringe analysis needs rows from a single (n, psi) slice");
    }
  }

  std::vector<double> phis;
  std::vector<double> values;
  phis.reserve(rows.size());
  values.reserve(rows.size());
  for (const SweepRow& row : rows) {
    if (!phis.empty() && !(row.phi > phis.back())) {
      throw std::invalid_argument("fringe analysis needs ascending phi");
    }
    phis.push_back(row.phi);
    values.push_back(row.i_upper);
  }

  // An endpoint-inclusive [0, 2 pi] grid repeats the wrap sample.
  if (std::abs(phis.back() - phis.front() - kTwoPi) <= 1e-9) {
    phis.pop_back();
    values.pop_back();
  }
  const size_t m = phis.size();
  if (m < 64) {
    throw std::invalid_argument(
        "fringe analysis needs at least 64 samples over a 2 pi window");
  }
  const double step = (phis.back() - phis.front()) / static_cast<double>(m - 1);
  if (std::abs(phis.back() - phis.front() + step - kTwoPi) > 2.0 * step) {
    throw std::invalid_argument(
        "fringe analysis needs one full 2 pi phi window");
  }

  // Strict local minima on the circle; runs of machine-equal values are
  // one plateau, counted at the midpoint.
  const double eps = 1e-12;
  std::vector<char> joined(m);
  bool all_joined = true;
  for (size_t i = 0; i < m; ++i) {
    joined[i] = std::abs(values[(i + 1) % m] - values[i]) <= eps;
    all_joined = all_joined && joined[i] != 0;
  }

  std::vector<double> minima;
  if (!all_joined) {
    size_t start = 0;
    while (joined[(start + m - 1) % m]) {
      ++start;
    }
    size_t idx = start;
    size_t processed = 0;
    while (processed < m) {
      size_t run_len = 1;
      while (joined[(idx + run_len - 1) % m]) {
        ++run_len;
      }
      const double rep = values[idx];
      const double before = values[(idx + m - 1) % m];
      const double after = values[(idx + run_len) % m];
      if (before - rep > eps && after - rep > eps) {
        minima.push_back(phis[(idx + (run_len - 1) / 2) % m]);
      }
      idx = (idx + run_len) % m;
      processed += run_len;
    }
    std::sort(minima.begin(), minima.end());
  }

  FringeReport report;
  report.n = n;
  report.minima_count = static_cast<int>(minima.size());
  report.claimed_period = kTwoPi / n;
  report.resolution_wavelengths = 1.0 / (2.0 * n);

  if (minima.empty()) {
    report.estimated_period = std::numeric_limits<double>::infinity();
  } else if (minima.size() == 1) {
    report.estimated_period = kTwoPi;
  } else {
    double gap_sum = minima.front() + kTwoPi - minima.back();
    for (size_t i = 1; i < minima.size(); ++i) {
      gap_sum += minima[i] - minima[i - 1];
    }
    report.estimated_period = gap_sum / static_cast<double>(minima.size());
  }

  if (report.estimated_period >= kTwoPi * (1.0 - step)) {
    report.classification = FringeClass::classical;
  } else if (n >= 2 &&
             std::abs(report.estimated_period - kTwoPi / n) <= step) {
    report.classification = FringeClass::quantum_bound;
  } else {
    report.classification = FringeClass::sub_classical;
  }
  return report;
}

OracleReport verify_oracle(int max_n, double tol) {
  if (max_n < 1) {
    throw std::invalid_argument("max_n must be at least 1");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("tolerance must be positive");
  }

  const std::vector<double> phis = phi_grid(0.0, kTwoPi, 721);
  const double psis[] = {0.0,          0.25 * kPi,  -0.25 * kPi,
                         0.5 * kPi,    -0.5 * kPi,  0.75 * kPi,
                         -0.75 * kPi,  kPi,         -kPi};

  DeviationTracker tracker;
  for (int n = 1; n <= max_n; ++n) {
    for (double psi : psis) {
      const bool quantum = is_quantum_psi(psi);
      for (double phi : phis) {
        const SweepRow row = matrix_row(n, phi, psi);
        if (const auto cf = chain_intensities_closed_form(n, phi, psi)) {
          const double deviation = std::max(std::abs(row.i_upper - cf->upper),
                                            std::abs(row.i_lower - cf->lower));
          tracker.update(chain_formula_id(n, psi), deviation, n, phi, psi);
        }
        if (n == 1 || quantum) {
          tracker.update("intensity-product",
                         std::abs(row.r - intensity_product(n, phi)), n, phi,
                         psi);
        }
      }
    }

    // The dedicated matrix form is specific to psi = pi.
    for (double phi : phis) {
      const TransferMatrix2 closed = n_chain_matrix_closed_form(n, phi);
      ChainSpec spec;
      spec.n = n;
      spec.phi = phi;
      spec.psi = kPi;
      const TransferMatrix2 chain = coupled_chain(spec);

      const FieldPair in{{1.0, 0.0}, {0.0, 0.0}};
      const IntensityPair a = intensities(apply(closed, in));
      const IntensityPair b = intensities(apply(chain, in));
      tracker.update("n-chain-matrix-intensities",
                     std::max(std::abs(a.upper - b.upper),
                              std::abs(a.lower - b.lower)),
                     n, phi, kPi);

      const TransferMatrix2 rel = compose(adjoint(closed), chain);
      const double phase_dev =
          std::max({std::abs(rel.m01), std::abs(rel.m10),
                    std::abs(rel.m00 - rel.m11)});
      tracker.update("n-chain-matrix-global-phase", phase_dev, n, phi, kPi);
    }
  }

  OracleReport report;
  {
    std::ostringstream os;
    os << "n in 1.." << max_n
       << "; psi in {0, +/-pi/4, +/-pi/2, +/-3pi/4, +/-pi}; phi: 721 "
          "equispaced points in [0, 2*pi]";
    report.grid = os.str();
  }
  report.tolerance = tol;
  tracker.finalize(report);
  report.passed = report.max_abs_deviation <= tol;
  report.printed_formula_flags = printed_flags();
  return report;
}

}  // namespace mzchain
