#ifndef MZCHAIN_IO_HPP_
#define MZCHAIN_IO_HPP_

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "mzchain/sweep.hpp"

namespace mzchain {

// 17-significant-digit rendering used by every emitted file; round-trips
// any double exactly and is byte-stable across runs.
std::string format_float(double value);

// Header `n,phi,psi,i_upper,i_lower,r`, one row per grid point, in the
// row order produced by sweep (psi-major, phi-minor).
void write_csv(const std::vector<SweepRow>& rows, std::ostream& out);

// Object with `config`, `rows`, optional `oracle_report` (present when
// the sweep ran both engines), and `fringe_report` (one entry per psi
// slice that spans a full window; non-finite period estimates serialize
// as null).
void write_json(
    const SweepResult& result,
    const std::vector<std::pair<double, FringeReport>>& fringe_per_psi,
    std::ostream& out);

}  // namespace mzchain

#endif  // MZCHAIN_IO_HPP_
