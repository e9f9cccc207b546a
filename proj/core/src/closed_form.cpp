#include "mzchain/closed_form.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mzchain {

namespace {

constexpr double kPi = std::numbers::pi;

double parity_sign(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

void require_count(int n) {
  if (n < 1) {
    throw std::invalid_argument("chain length must be at least 1");
  }
}

}  // namespace

IntensityPair single_mzi_intensities(double phi) {
  const double c = std::cos(phi);
  return {0.5 * (1.0 - c), 0.5 * (1.0 + c)};
}

IntensityPair double_mzi_intensities(double phi, double psi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  const double upper = 0.5 * (1.0 + c * c + s * s * std::cos(psi));
  const double lower = 0.25 * (1.0 - std::cos(psi)) * (1.0 - std::cos(2.0 * phi));
  return {upper, lower};
}

IntensityPair n_chain_intensities(int n, double phi) {
  require_count(n);
  const double term = parity_sign(n) * std::cos(static_cast<double>(n) * phi);
  return {0.5 * (1.0 + term), 0.5 * (1.0 - term)};
}

TransferMatrix2 n_chain_matrix_closed_form(int n, double phi) {
  require_count(n);
  const Complex rot =
      parity_sign(n) * std::polar(1.0, static_cast<double>(n) * phi);
  const Complex diag = 0.5 * (1.0 + rot);
  const Complex off = Complex{0.0, 0.5} * (1.0 - rot);
  const double front = -parity_sign(n);  // (-1)^(n-1)
  return scaled({diag, off, -off, diag}, Complex{front, 0.0});
}

double intensity_product(int n, double phi) {
  require_count(n);
  const double s = std::sin(static_cast<double>(n) * phi);
  return s * s;
}

double r_product(double a, double b) {
  assert(a >= 0.0 && b >= 0.0);
  return 4.0 * a * b;
}

double phase_from_path_difference(double delta_l, double lambda) {
  if (!(lambda > 0.0)) {
    throw std::domain_error("wavelength must be positive");
  }
  return 2.0 * kPi * delta_l / lambda;
}

PsiCase psi_case(double psi, double tol) {
  assert(tol > 0.0);
  const double reduced = std::abs(std::remainder(psi, 2.0 * kPi));
  if (reduced <= tol) {
    return PsiCase::identity;
  }
  if (std::abs(reduced - kPi) <= tol) {
    return PsiCase::quantum;
  }
  if (std::abs(reduced - 0.5 * kPi) <= tol) {
    return PsiCase::intermediate;
  }
  return PsiCase::other;
}

const char* to_string(PsiCase c) {
  switch (c) {
    case PsiCase::identity:
      return "identity";
    case PsiCase::quantum:
      return "quantum";
    case PsiCase::intermediate:
      return "intermediate";
    default:
      return "other";
  }
}

double double_mzi_lower_printed(double phi, double psi) {
  return 0.25 * (1.0 - std::cos(phi)) * (1.0 - std::cos(psi));
}

double quarter_psi_lower_printed(double phi) {
  return 0.25 * (1.0 - std::cos(phi));
}

std::optional<IntensityPair> chain_intensities_closed_form(int n, double phi,
                                                           double psi,
                                                           double psi_tol) {
  require_count(n);
  if (n == 1) {
    return single_mzi_intensities(phi);
  }
  if (n == 2) {
    return double_mzi_intensities(phi, psi);
  }
  const double reduced = std::abs(std::remainder(psi, 2.0 * kPi));
  if (reduced <= psi_tol) {
    if (n % 2 == 0) {
      return IntensityPair{1.0, 0.0};
    }
    return single_mzi_intensities(phi);
  }
  if (std::abs(reduced - kPi) <= psi_tol) {
    return n_chain_intensities(n, phi);
  }
  return std::nullopt;
}

}  // namespace mzchain
