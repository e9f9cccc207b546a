#include "mzchain/elements.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mzchain {

namespace {

void require_finite_phase(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw std::domain_error(std::string(what) + " must be finite");
  }
}

}  // namespace

TransferMatrix2 beam_splitter() {
  const double s = 1.0 / std::numbers::sqrt2;
  return {Complex{s, 0.0}, Complex{0.0, s}, Complex{0.0, s}, Complex{s, 0.0}};
}

TransferMatrix2 phase_shifter(Arm arm, double theta) {
  require_finite_phase(theta, "phase shift");
  const Complex one{1.0, 0.0};
  const Complex rot = std::polar(1.0, theta);
  if (arm == Arm::upper) {
    return {rot, Complex{0.0, 0.0}, Complex{0.0, 0.0}, one};
  }
  return {one, Complex{0.0, 0.0}, Complex{0.0, 0.0}, rot};
}

TransferMatrix2 mzi(double phi) {
  require_finite_phase(phi, "mzi phase");
  return compose(beam_splitter(),
                 compose(phase_shifter(Arm::lower, phi), beam_splitter()));
}

TransferMatrix2 element_matrix(const Element& element) {
  return std::visit(
      [](const auto& e) -> TransferMatrix2 {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, BeamSplitter>) {
          return beam_splitter();
        } else if constexpr (std::is_same_v<T, PhaseShifter>) {
          return phase_shifter(e.arm, e.theta);
        } else {
          return mzi(e.phi);
        }
      },
      element);
}

TransferMatrix2 coupled_chain(const ChainSpec& spec) {
  if (spec.n < 1) {
    throw std::invalid_argument("chain length must be at least 1");
  }
  require_finite_phase(spec.phi, "mzi phase");
  require_finite_phase(spec.psi, "coupling phase");

  const TransferMatrix2 block = mzi(spec.phi);
  TransferMatrix2 acc = identity();
  for (int k = 1; k <= spec.n; ++k) {
    acc = compose(block, acc);
    if (k == spec.n && !spec.include_trailing_coupler) {
      break;
    }
    const Arm arm = (k % 2 == 1) ? Arm::upper : Arm::lower;
    acc = compose(phase_shifter(arm, spec.psi), acc);
  }
  return acc;
}

}  // namespace mzchain
