#pragma once

#include <string>
#include <vector>

#include "stabforge/repforge/subalgebra.hpp"

namespace stabforge::invariants {

using exactla::Field;
using exactla::Scalar;
using exactla::SparseMatrix;
using exactla::Vector;
using repforge::IntVec;
using repforge::PolyMatrix;

/// A group acting linearly on k^dim, seen through the data the kernels need:
/// torus weights of the basis, Lie algebra operators and unipotent curves.
struct GroupAction {
    std::string label;
    Field field;
    std::size_t dim = 0;
    /// Weight of each basis vector for the acting torus.
    std::vector<IntVec> weights;
    /// Lie-mode operators (the whole Chevalley basis when it is available).
    std::vector<SparseMatrix> lie;
    /// One-parameter unipotent subgroups x(t), each a homomorphism from G_a.
    std::vector<PolyMatrix> curves;
    /// lie spans the image of the Lie algebra (false: only the simple generators).
    bool full_lie = false;

    /// Same action with scalars extended to `target` (prime field into an extension).
    GroupAction over(const Field& target) const;
    /// Largest t-degree of a curve.
    int curve_degree() const;
};

GroupAction action_of(const repforge::Representation& rep);
/// The subgroup of `spec` acting on the space of rep (rep over Q with a model, or
/// over a finite field with one).
GroupAction action_of(const repforge::Representation& rep, const repforge::SubalgebraSpec& spec);

/// Lie algebra of the image of the group in GL(V): closure of the curve
/// tangents and the image torus under brackets and Ad of the curves.
/// Returned as a linearly independent list over action.field.
std::vector<SparseMatrix> image_lie_algebra(const GroupAction& action);

}  // namespace stabforge::invariants
