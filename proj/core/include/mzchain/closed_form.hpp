#ifndef MZCHAIN_CLOSED_FORM_HPP_
#define MZCHAIN_CLOSED_FORM_HPP_

#include <optional>

#include "mzchain/field_algebra.hpp"

namespace mzchain {

// Analytic output intensities for the chain geometries, normalised to a
// unit-intensity source on the upper rail.  Every function here has an
// independent check against the transfer-matrix engine; see verify_oracle
// in sweep.hpp for the adjudication tooling.

// Single MZI: ((1 - cos phi)/2, (1 + cos phi)/2).
IntensityPair single_mzi_intensities(double phi);

// Two coupled MZIs:
//   I_upper = (1/2) (1 + cos^2 phi + sin^2 phi cos psi)
//   I_lower = (1/4) (1 - cos psi) (1 - cos 2 phi)
IntensityPair double_mzi_intensities(double phi, double psi);

// n-chain at coupling psi = +/- pi:
//   ((1/2)[1 + (-1)^n cos n phi], (1/2)[1 - (-1)^n cos n phi])
IntensityPair n_chain_intensities(int n, double phi);

// Matrix form of the same n-chain:
//   (1/2)(-1)^(n-1) [[1 + (-1)^n e^{in phi},  i(1 - (-1)^n e^{in phi})],
//                    [-i(1 - (-1)^n e^{in phi}), 1 + (-1)^n e^{in phi}]]
// Agrees with coupled_chain(n, phi, psi=pi) up to a global phase.
TransferMatrix2 n_chain_matrix_closed_form(int n, double phi);

// Normalized intensity product of the n-chain at psi = +/- pi:
// sin^2(n phi), in [0, 1].
double intensity_product(int n, double phi);

// R = 4ab for two output intensities a, b.
double r_product(double a, double b);

// phi (or psi) from a physical path-length difference: 2 pi dL / lambda.
// Throws std::domain_error for nonpositive lambda.
double phase_from_path_difference(double delta_l, double lambda);

// Operating regime of the coupling phase, reduced mod 2 pi:
//   identity      psi ~ 0        couplers drop out, fixed output
//   quantum       psi ~ +/- pi   n-fold fringe compression
//   intermediate  psi ~ +/- pi/2
//   other         anything else
enum class PsiCase { identity, quantum, intermediate, other };

PsiCase psi_case(double psi, double tol);

const char* to_string(PsiCase c);

// Variants of the lower-port formulas that circulate in print but are
// algebraically inconsistent with the matrix composition.  Kept only so
// the oracle report can show where they break; nothing else calls them.
double double_mzi_lower_printed(double phi, double psi);
double quarter_psi_lower_printed(double phi);

// Width of the psi window treated as an exact named case when selecting
// a closed form.  The implemented intensities are stationary in psi at 0
// and +/- pi, so a 1e-9 window perturbs them by well under 1e-12.
inline constexpr double kClosedFormPsiTol = 1e-9;

// Closed-form chain intensities wherever a formula exists:
//   n = 1            any psi (couplers never touch the populated output)
//   n = 2            any psi
//   n > 2, psi ~ 0   couplers vanish; mzi^2 = -e^{i phi} I collapses the
//                    cascade to (1, 0) for even n, one MZI for odd n
//   n > 2, psi ~ pi  n_chain_intensities
// Returns nullopt elsewhere (no formula is available for exotic psi).
std::optional<IntensityPair> chain_intensities_closed_form(
    int n, double phi, double psi, double psi_tol = kClosedFormPsiTol);

}  // namespace mzchain

#endif  // MZCHAIN_CLOSED_FORM_HPP_
