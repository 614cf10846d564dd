#pragma once

#include <gmpxx.h>

#include <vector>

namespace stabforge::exactla {

using ZVec = std::vector<mpz_class>;

/// Echelon Z-basis of the lattice spanned by the rows (zero rows dropped).
std::vector<ZVec> lattice_basis(std::vector<ZVec> rows, std::size_t ncols);

/// Z-basis of span_Q(rows) intersected with Z^ncols.
std::vector<ZVec> saturation(const std::vector<ZVec>& rows, std::size_t ncols);

}  // namespace stabforge::exactla
