// mzchain: simulate chains of phase-coupled Mach-Zehnder interferometers.
//
// Subcommands:
//   simulate   one operating point, from --n/--phi/--psi or a .mzc circuit
//   sweep      phi sweep to CSV or JSON, optionally both engines
//   verify     closed-form vs matrix-engine cross-check report
//   parse      parse a .mzc circuit and echo the canonical form
//
// Exit codes: 0 success; 1 verification failure; 2 argument error;
// 3 circuit parse error; 4 circuit compile error (unbound parameter or
// bad phase arithmetic); 5 unwritable output; 6 no closed form for the
// requested operating point.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mzchain/circuit.hpp"
#include "mzchain/closed_form.hpp"
#include "mzchain/elements.hpp"
#include "mzchain/field_algebra.hpp"
#include "mzchain/io.hpp"
#include "mzchain/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitParseError = 3;
constexpr int kExitCompileError = 4;
constexpr int kExitUnwritable = 5;
constexpr int kExitUnsupported = 6;

// Wide enough to accept CLI-truncated constants like 3.1415927 while
// still separating the named psi regimes.
constexpr double kPsiCaseDisplayTol = 1e-6;

double to_radians(double value, bool degrees) {
  return degrees ? value * std::numbers::pi / 180.0 : value;
}

bool parse_double(const std::string& text, double& out) {
  try {
    size_t used = 0;
    out = std::stod(text, &used);
    return used == text.size() && std::isfinite(out);
  } catch (const std::exception&) {
    return false;
  }
}

struct SimulateOptions {
  int n = 0;
  double phi = 0.0;
  double psi = 0.0;
  bool has_n = false;
  bool has_phi = false;
  bool has_psi = false;
  std::string circuit;
  std::vector<std::string> params;
  std::string engine = "both";
  bool engine_given = false;
  bool degrees = false;
};

struct SweepOptions {
  int n = 1;
  std::string phi_range;
  std::string psi_list;
  std::string engine = "both";
  std::string format = "csv";
  std::string output;
  bool degrees = false;
};

struct VerifyOptions {
  int max_n = 8;
  double tol = 1e-12;
};

struct ParseOptions {
  std::string circuit;
};

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return false;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  out = buffer.str();
  return true;
}

bool parse_bindings(const std::vector<std::string>& params, bool degrees,
                    mzchain::Bindings& bindings) {
  for (const std::string& param : params) {
    const size_t eq = param.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "bad --param '" << param << "': expected name=value\n";
      return false;
    }
    double value = 0.0;
    if (!parse_double(param.substr(eq + 1), value)) {
      std::cerr << "bad --param '" << param
                << "': value must be a finite real\n";
      return false;
    }
    bindings[param.substr(0, eq)] = to_radians(value, degrees);
  }
  return true;
}

void print_point(const mzchain::IntensityPair& p,
                 std::optional<double> psi) {
  std::cout << "i_upper = " << mzchain::format_float(p.upper) << "\n"
            << "i_lower = " << mzchain::format_float(p.lower) << "\n"
            << "r = " << mzchain::format_float(mzchain::r_product(p.upper, p.lower))
            << "\n";
  if (psi) {
    std::cout << "psi_case = "
              << mzchain::to_string(mzchain::psi_case(*psi, kPsiCaseDisplayTol))
              << "\n";
  }
}

int run_simulate(const SimulateOptions& opt) {
  using namespace mzchain;

  if (!opt.circuit.empty()) {
    if (opt.engine_given && opt.engine == "closed_form") {
      std::cerr << "the closed-form engine needs --n/--phi/--psi, not a "
                   "circuit file\n";
      return kExitUsage;
    }
    std::string source;
    if (!read_file(opt.circuit, source)) {
      std::cerr << "cannot read circuit file '" << opt.circuit << "'\n";
      return kExitUsage;
    }
    CircuitAst ast;
    try {
      ast = parse(source);
    } catch (const ParseError& e) {
      std::cerr << opt.circuit << ":" << e.what() << "\n";
      return kExitParseError;
    }
    Bindings bindings;
    if (!parse_bindings(opt.params, opt.degrees, bindings)) {
      return kExitUsage;
    }
    TransferMatrix2 m;
    try {
      m = compile(ast, bindings);
    } catch (const CompileError& e) {
      std::cerr << e.what() << "\n";
      return kExitCompileError;
    }
    const IntensityPair p =
        intensities(apply(m, FieldPair{{1.0, 0.0}, {0.0, 0.0}}));
    print_point(p, std::nullopt);
    return kExitOk;
  }

  if (!opt.has_n || !opt.has_phi || !opt.has_psi) {
    std::cerr << "simulate needs --n, --phi and --psi, or a --circuit file\n";
    return kExitUsage;
  }
  if (opt.n < 1) {
    std::cerr << "n must be >= 1\n";
    return kExitUsage;
  }
  if (!std::isfinite(opt.phi) || !std::isfinite(opt.psi)) {
    std::cerr << "phases must be finite\n";
    return kExitUsage;
  }
  const double phi = to_radians(opt.phi, opt.degrees);
  const double psi = to_radians(opt.psi, opt.degrees);

  std::optional<IntensityPair> closed;
  if (opt.engine != "matrix") {
    closed = chain_intensities_closed_form(opt.n, phi, psi);
    if (opt.engine == "closed_form" && !closed) {
      std::cerr << "no closed form exists for n=" << opt.n << " at psi=" << psi
                << "; use the matrix engine\n";
      return kExitUnsupported;
    }
  }

  IntensityPair p{};
  if (opt.engine == "closed_form") {
    p = *closed;
  } else {
    ChainSpec spec;
    spec.n = opt.n;
    spec.phi = phi;
    spec.psi = psi;
    p = intensities(apply(coupled_chain(spec), FieldPair{{1.0, 0.0}, {0.0, 0.0}}));
    if (closed) {
      const double dev = std::max(std::abs(p.upper - closed->upper),
                                  std::abs(p.lower - closed->lower));
      if (dev > kEngineAgreementTol) {
        std::cerr << "matrix and closed-form engines disagree by " << dev
                  << " at (n=" << opt.n << ", phi=" << phi << ", psi=" << psi
                  << ")\n";
        return kExitVerifyFailed;
      }
    }
  }
  print_point(p, psi);
  return kExitOk;
}

bool parse_phi_range(const std::string& text, bool degrees,
                     mzchain::SweepConfig& config) {
  const size_t first = text.find(':');
  const size_t second = text.find(':', first + 1);
  if (first == std::string::npos || second == std::string::npos ||
      text.find(':', second + 1) != std::string::npos) {
    std::cerr << "bad --phi-range '" << text << "': expected start:stop:points\n";
    return false;
  }
  double start = 0.0;
  double stop = 0.0;
  if (!parse_double(text.substr(0, first), start) ||
      !parse_double(text.substr(first + 1, second - first - 1), stop)) {
    std::cerr << "bad --phi-range '" << text << "': bounds must be finite reals\n";
    return false;
  }
  int points = 0;
  try {
    size_t used = 0;
    points = std::stoi(text.substr(second + 1), &used);
    if (used != text.size() - second - 1) {
      throw std::invalid_argument("trailing characters");
    }
  } catch (const std::exception&) {
    std::cerr << "bad --phi-range '" << text << "': points must be an integer\n";
    return false;
  }
  if (points < 2) {
    std::cerr << "bad --phi-range '" << text << "': needs at least 2 points\n";
    return false;
  }
  config.phi_start = to_radians(start, degrees);
  config.phi_stop = to_radians(stop, degrees);
  if (!(config.phi_start < config.phi_stop)) {
    std::cerr << "bad --phi-range '" << text << "': start must be below stop\n";
    return false;
  }
  config.phi_points = points;
  return true;
}

bool parse_psi_list(const std::string& text, bool degrees,
                    std::vector<double>& out) {
  out.clear();
  size_t begin = 0;
  while (begin <= text.size()) {
    const size_t comma = text.find(',', begin);
    const std::string item =
        text.substr(begin, comma == std::string::npos ? std::string::npos
                                                      : comma - begin);
    double value = 0.0;
    if (!parse_double(item, value)) {
      std::cerr << "bad --psi '" << text << "': '" << item
                << "' is not a finite real\n";
      return false;
    }
    out.push_back(to_radians(value, degrees));
    if (comma == std::string::npos) {
      break;
    }
    begin = comma + 1;
  }
  return !out.empty();
}

mzchain::Engine engine_from_name(const std::string& name) {
  if (name == "matrix") {
    return mzchain::Engine::matrix;
  }
  if (name == "closed_form") {
    return mzchain::Engine::closed_form;
  }
  return mzchain::Engine::both;
}

int run_sweep(const SweepOptions& opt) {
  using namespace mzchain;

  SweepConfig config;
  config.n = opt.n;
  config.engine = engine_from_name(opt.engine);
  if (!parse_phi_range(opt.phi_range, opt.degrees, config)) {
    return kExitUsage;
  }
  if (!parse_psi_list(opt.psi_list, opt.degrees, config.psi_values)) {
    return kExitUsage;
  }
  if (config.n < 1) {
    std::cerr << "n must be >= 1\n";
    return kExitUsage;
  }

  SweepResult result;
  try {
    result = sweep(config);
  } catch (const UnsupportedFormulaError& e) {
    std::cerr << e.what() << "\n";
    return kExitUnsupported;
  } catch (const VerificationError& e) {
    std::cerr << e.what() << "\n";
    return kExitVerifyFailed;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  std::ostringstream body;
  if (opt.format == "json") {
    std::vector<std::pair<double, FringeReport>> fringe;
    const size_t per_slice = result.rows.size() / config.psi_values.size();
    for (size_t s = 0; s < config.psi_values.size(); ++s) {
      const std::vector<SweepRow> slice(
          result.rows.begin() + static_cast<long>(s * per_slice),
          result.rows.begin() + static_cast<long>((s + 1) * per_slice));
      try {
        fringe.emplace_back(config.psi_values[s], fringe_report(slice));
      } catch (const std::invalid_argument&) {
        // Slice does not span a full analysable window; skip it.
      }
    }
    write_json(result, fringe, body);
  } else {
    write_csv(result.rows, body);
  }

  if (opt.output.empty()) {
    std::cout << body.str();
    return kExitOk;
  }
  std::ofstream out(opt.output, std::ios::binary);
  if (!out) {
    std::cerr << "cannot open output file '" << opt.output << "'\n";
    return kExitUnwritable;
  }
  out << body.str();
  out.flush();
  if (!out.good()) {
    std::cerr << "failed writing output file '" << opt.output << "'\n";
    return kExitUnwritable;
  }
  return kExitOk;
}

void print_formula_table(const mzchain::OracleReport& report) {
  for (const mzchain::FormulaDeviation& f : report.formulas) {
    std::printf("    %-32s max |delta| = %.3e at (n=%d, phi=%.17g, psi=%.17g)\n",
                f.formula.c_str(), f.max_abs_deviation, f.argmax_n,
                f.argmax_phi, f.argmax_psi);
  }
}

int run_verify(const VerifyOptions& opt) {
  using namespace mzchain;

  OracleReport report;
  try {
    report = verify_oracle(opt.max_n, opt.tol);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  std::printf("oracle verification\n");
  std::printf("  grid: %s\n", report.grid.c_str());
  std::printf("  tolerance: %.17g\n", report.tolerance);
  std::printf("  implemented formulas:\n");
  print_formula_table(report);
  std::printf("  overall max |delta| = %.3e at (n=%d, phi=%.17g, psi=%.17g)\n",
              report.max_abs_deviation, report.argmax_n, report.argmax_phi,
              report.argmax_psi);
  std::printf("  printed-variant errata (reported, never failures):\n");
  for (const PrintedFormulaFlag& f : report.printed_formula_flags) {
    std::printf("    %-32s at (n=%d, phi=%.17g, psi=%.17g): printed %.17g, "
                "oracle %.17g\n",
                f.formula.c_str(), f.n, f.phi, f.psi, f.printed_value,
                f.oracle_value);
  }
  std::printf("  result: %s\n", report.passed ? "PASS" : "FAIL");
  return report.passed ? kExitOk : kExitVerifyFailed;
}

int run_parse(const ParseOptions& opt) {
  using namespace mzchain;

  std::string source;
  if (!read_file(opt.circuit, source)) {
    std::cerr << "cannot read circuit file '" << opt.circuit << "'\n";
    return kExitUsage;
  }
  try {
    std::cout << pretty_print(parse(source));
  } catch (const ParseError& e) {
    std::cerr << opt.circuit << ":" << e.what() << "\n";
    return kExitParseError;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coupled Mach-Zehnder interferometer chain simulator"};
  app.require_subcommand(1);

  SimulateOptions sim;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Evaluate one operating point (parametric chain or circuit)");
  CLI::Option* sim_n = simulate->add_option("--n", sim.n, "Number of MZI blocks");
  CLI::Option* sim_phi =
      simulate->add_option("--phi", sim.phi, "MZI internal phase");
  CLI::Option* sim_psi =
      simulate->add_option("--psi", sim.psi, "Coupling phase");
  simulate->add_option("--circuit", sim.circuit, "Circuit file (.mzc)");
  simulate->add_option("--param", sim.params,
                       "Circuit parameter binding name=value (repeatable)");
  CLI::Option* sim_engine =
      simulate->add_option("--engine", sim.engine, "Evaluation engine")
          ->check(CLI::IsMember({"matrix", "closed_form", "both"}));
  simulate->add_flag("--degrees", sim.degrees,
                     "Interpret all angles as degrees");

  SweepOptions swp;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Sweep phi, emit CSV or JSON rows");
  sweep_cmd->add_option("--n", swp.n, "Number of MZI blocks")->required();
  sweep_cmd
      ->add_option("--phi-range", swp.phi_range,
                   "Endpoint-inclusive grid start:stop:points")
      ->required();
  sweep_cmd->add_option("--psi", swp.psi_list, "Comma-separated coupling phases")
      ->required();
  sweep_cmd->add_option("--engine", swp.engine, "Evaluation engine")
      ->check(CLI::IsMember({"matrix", "closed_form", "both"}));
  sweep_cmd->add_option("--format", swp.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--output", swp.output,
                        "Output file (standard output when omitted)");
  sweep_cmd->add_flag("--degrees", swp.degrees,
                      "Interpret all angles as degrees");

  VerifyOptions ver;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "Cross-check closed forms against the matrix engine");
  verify_cmd->add_option("--max-n", ver.max_n, "Largest chain length checked");
  verify_cmd->add_option("--tol", ver.tol, "Agreement tolerance");

  ParseOptions par;
  CLI::App* parse_cmd =
      app.add_subcommand("parse", "Parse a circuit and echo the canonical form");
  parse_cmd->add_option("circuit", par.circuit, "Circuit file (.mzc)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  sim.has_n = sim_n->count() > 0;
  sim.has_phi = sim_phi->count() > 0;
  sim.has_psi = sim_psi->count() > 0;
  sim.engine_given = sim_engine->count() > 0;

  try {
    if (simulate->parsed()) {
      return run_simulate(sim);
    }
    if (sweep_cmd->parsed()) {
      return run_sweep(swp);
    }
    if (verify_cmd->parsed()) {
      return run_verify(ver);
    }
    return run_parse(par);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
}
