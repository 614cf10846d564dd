#pragma once

#include <string>
#include <vector>

#include "stabforge/polyspace/sparse_poly.hpp"

namespace stabforge::invariants {

/// Degree-3 coefficient of the characteristic polynomial on trace-zero
/// symmetric 5x5 matrices, in the 14 coordinates d1..d4 (d5 = -(d1+..+d4))
/// followed by the upper off-diagonal entries in row order.
polyspace::SparsePoly so5_cubic();
/// The invariant cubic of sl_3 on its adjoint module (Chevalley coordinates).
polyspace::SparsePoly sl3_cubic();
/// The invariant quadric of G2 on its 7-dim module.
polyspace::SparsePoly g2_quadric();
/// The invariant cubic of F4 on its 26-dim module.
polyspace::SparsePoly f4_cubic();

std::vector<std::string> named_forms();
/// Throws ParseError for unknown names.
polyspace::SparsePoly named_form(const std::string& name);

}  // namespace stabforge::invariants
