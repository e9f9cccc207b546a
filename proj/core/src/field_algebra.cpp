#include "mzchain/field_algebra.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace mzchain {

namespace {

[[maybe_unused]] bool finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

[[maybe_unused]] bool finite(const TransferMatrix2& m) {
  return finite(m.m00) && finite(m.m01) && finite(m.m10) && finite(m.m11);
}

}  // namespace

TransferMatrix2 identity() {
  return {Complex{1.0, 0.0}, Complex{0.0, 0.0}, Complex{0.0, 0.0},
          Complex{1.0, 0.0}};
}

TransferMatrix2 compose(const TransferMatrix2& left,
                        const TransferMatrix2& right) {
  assert(finite(left) && finite(right));
  return {left.m00 * right.m00 + left.m01 * right.m10,
          left.m00 * right.m01 + left.m01 * right.m11,
          left.m10 * right.m00 + left.m11 * right.m10,
          left.m10 * right.m01 + left.m11 * right.m11};
}

TransferMatrix2 adjoint(const TransferMatrix2& m) {
  return {std::conj(m.m00), std::conj(m.m10), std::conj(m.m01),
          std::conj(m.m11)};
}

TransferMatrix2 scaled(const TransferMatrix2& m, Complex factor) {
  return {factor * m.m00, factor * m.m01, factor * m.m10, factor * m.m11};
}

FieldPair apply(const TransferMatrix2& m, const FieldPair& in) {
  assert(finite(m) && finite(in.upper) && finite(in.lower));
  return {m.m00 * in.upper + m.m01 * in.lower,
          m.m10 * in.upper + m.m11 * in.lower};
}

IntensityPair intensities(const FieldPair& field) {
  assert(finite(field.upper) && finite(field.lower));
  return {std::norm(field.upper), std::norm(field.lower)};
}

double max_entry_distance(const TransferMatrix2& a, const TransferMatrix2& b) {
  return std::max({std::abs(a.m00 - b.m00), std::abs(a.m01 - b.m01),
                   std::abs(a.m10 - b.m10), std::abs(a.m11 - b.m11)});
}

bool is_unitary(const TransferMatrix2& m, double tol) {
  assert(tol > 0.0);
  return max_entry_distance(compose(adjoint(m), m), identity()) <= tol;
}

bool is_proportional_to_identity(const TransferMatrix2& m, double tol) {
  assert(tol > 0.0);
  return std::abs(m.m01) <= tol && std::abs(m.m10) <= tol &&
         std::abs(m.m00 - m.m11) <= tol;
}

}  // namespace mzchain
