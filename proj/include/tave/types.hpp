#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace tave {

using cxd = std::complex<double>;
using CVec = std::vector<cxd>;
using RVec = std::vector<double>;

/// Largest dimension for which dense materialization is permitted.
inline constexpr std::size_t kDenseCap = 4096;

/// Shifted spectra with |sigma + lambda| below this are treated as singular.
inline constexpr double kShiftSingularTol = 1e-14;

}  // namespace tave
