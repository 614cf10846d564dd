#pragma once

#include <memory>
#include <string>
#include <vector>

#include "stabforge/repforge/representation.hpp"

namespace stabforge::repforge {

using exactla::Vector;

/// A subalgebra of a Chevalley algebra, given in Chevalley-basis coordinates,
/// together with unipotent elements that generate the corresponding subgroup
/// and cocharacters spanning its maximal torus.
struct SubalgebraSpec {
    std::shared_ptr<const chevalley::ChevalleyAlgebra> ambient;
    /// Closure is asserted over this field.
    Field field;
    std::vector<Vector> elements;
    std::vector<Vector> unipotents;
    /// In h_1..h_l coordinates.
    std::vector<IntVec> cocharacters;
    std::string description;
};

/// Throws ClosureFailure if the span of the elements is not bracket-closed over spec.field.
void check_closure(const SubalgebraSpec& spec);

/// Action matrices of spec.elements on the space of `rep`.
std::vector<SparseMatrix> restrict_rep(const Representation& rep, const SubalgebraSpec& spec);
/// exp(t u) for the unipotent generators, through the integral model of `rep`.
std::vector<PolyMatrix> restrict_curves(const Representation& rep, const SubalgebraSpec& spec);
/// Weights of rep's basis for the subgroup torus (one coordinate per cocharacter).
std::vector<IntVec> restrict_weights(const Representation& rep, const SubalgebraSpec& spec);

/// Root vectors of the short roots and the saturated span of their coroots.
SubalgebraSpec short_root_subalgebra(std::shared_ptr<const chevalley::ChevalleyAlgebra> alg, const Field& field);

/// Stabilizer in the ambient algebra of a vector v0 of the given representation (over Q).
SubalgebraSpec vector_stabilizer(const Representation& rep, const Vector& v0, const Field& field);

}  // namespace stabforge::repforge
