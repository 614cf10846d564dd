#pragma once

#include <optional>
#include <string>

#include "stabforge/repforge/representation.hpp"

namespace stabforge::repforge {

/// Build a representation of the simple group `type` from a recipe:
///   natural | adjoint | spin | halfspin:+|- | highest:c1,...,cl
///   sym:d:R | wedge:d:R | tensor:R1:R2 | dual:R | twist:e:R
///   tracezero:R | modscalars:R | head | head:R
/// For exceptional types `natural` is the smallest nontrivial module (the
/// adjoint module for E8). Bare `head` is the irreducible head of the Weyl module with highest weight
/// `context`; `head:R` uses the highest weight of R.
Representation build_recipe(const std::string& type, const std::string& recipe, const Field& field,
                            std::optional<IntVec> context = std::nullopt);

/// Throws ParseError for malformed recipes; no construction happens.
void validate_recipe(const std::string& recipe);

}  // namespace stabforge::repforge
