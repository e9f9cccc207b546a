#ifndef MZCHAIN_FIELD_ALGEBRA_HPP_
#define MZCHAIN_FIELD_ALGEBRA_HPP_

#include <complex>

namespace mzchain {

using Complex = std::complex<double>;

// Field amplitudes on the two rails of a two-port optical circuit.
// Intensities are |amplitude|^2, normalised so that a unit-intensity
// source entering one rail is {1, 0} or {0, 1}.
struct FieldPair {
  Complex upper{0.0, 0.0};
  Complex lower{0.0, 0.0};
};

// 2x2 complex transfer matrix acting on a FieldPair.  Row/column 0 is the
// upper rail, row/column 1 the lower.  Lossless elements are unitary.
struct TransferMatrix2 {
  Complex m00{0.0, 0.0};
  Complex m01{0.0, 0.0};
  Complex m10{0.0, 0.0};
  Complex m11{0.0, 0.0};
};

struct IntensityPair {
  double upper = 0.0;
  double lower = 0.0;
};

TransferMatrix2 identity();

// Matrix product left * right: `right` acts on the field first.
TransferMatrix2 compose(const TransferMatrix2& left, const TransferMatrix2& right);

TransferMatrix2 adjoint(const TransferMatrix2& m);

TransferMatrix2 scaled(const TransferMatrix2& m, Complex factor);

FieldPair apply(const TransferMatrix2& m, const FieldPair& in);

IntensityPair intensities(const FieldPair& field);

// Largest entrywise |a_ij - b_ij|.
double max_entry_distance(const TransferMatrix2& a, const TransferMatrix2& b);

// True when adjoint(m) * m is within `tol` of the identity, entrywise.
// tol must be positive.
bool is_unitary(const TransferMatrix2& m, double tol);

// True when m equals c * identity for some complex c, entrywise within
// `tol`.  Useful for comparing matrices up to a global phase.
bool is_proportional_to_identity(const TransferMatrix2& m, double tol);

}  // namespace mzchain

#endif  // MZCHAIN_FIELD_ALGEBRA_HPP_
