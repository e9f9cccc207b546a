#ifndef MZCHAIN_ELEMENTS_HPP_
#define MZCHAIN_ELEMENTS_HPP_

#include <variant>

#include "mzchain/field_algebra.hpp"

namespace mzchain {

enum class Arm { upper, lower };

// Symmetric 50:50 beam splitter, (1/sqrt(2)) [[1, i], [i, 1]].
struct BeamSplitter {};

// Phase shifter placing exp(i*theta) on one arm, identity on the other.
struct PhaseShifter {
  Arm arm = Arm::upper;
  double theta = 0.0;
};

// One Mach-Zehnder block: splitter, phase phi on the lower arm, splitter.
struct MziBlock {
  double phi = 0.0;
};

using Element = std::variant<BeamSplitter, PhaseShifter, MziBlock>;

// Arm choice for the coupling phase shifters between chained MZI blocks:
// the coupler after block k sits on the upper arm for odd k and on the
// lower arm for even k.
enum class CouplerPolicy { alternating };

// Cascade of n identical phase-phi MZI blocks joined by phase-psi
// couplers.  The coupler trailing the final block does not change output
// intensities; include_trailing_coupler keeps it in the matrix anyway so
// every block sees an identical environment.
struct ChainSpec {
  int n = 1;
  double phi = 0.0;
  double psi = 0.0;
  CouplerPolicy coupler_policy = CouplerPolicy::alternating;
  bool include_trailing_coupler = true;
};

TransferMatrix2 beam_splitter();

TransferMatrix2 phase_shifter(Arm arm, double theta);

TransferMatrix2 mzi(double phi);

TransferMatrix2 element_matrix(const Element& element);

// Transfer matrix of the full cascade described by `spec`.
// Throws std::invalid_argument when spec.n < 1 and std::domain_error when
// a phase is not finite.
TransferMatrix2 coupled_chain(const ChainSpec& spec);

}  // namespace mzchain

#endif  // MZCHAIN_ELEMENTS_HPP_
