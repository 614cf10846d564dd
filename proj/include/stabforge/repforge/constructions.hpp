#pragma once

#include <memory>
#include <string>

#include <gmpxx.h>

#include "stabforge/repforge/representation.hpp"

namespace stabforge::repforge {

/// Shared, memoised Chevalley algebra of a simple type ("G2", "E8", ...).
std::shared_ptr<const chevalley::ChevalleyAlgebra> algebra_for(const std::string& type);

/// Natural module of a classical group; so-types use the split antidiagonal form.
Representation natural_rep(char label, int rank, const Field& field);
/// Gram matrix of the invariant form of natural_rep (alternating for C, symmetric otherwise).
SparseMatrix natural_form(char label, int rank, const Field& field);

/// Spin module of B_n (chirality ignored) or half-spin module of D_n
/// (chirality +1: even exterior powers, -1: odd).
Representation half_spin_rep(char label, int rank, const Field& field, int chirality = 1);

Representation adjoint_rep(std::shared_ptr<const chevalley::ChevalleyAlgebra> alg, const Field& field);

/// Weyl dimension formula.
mpz_class weyl_dimension(const rootsys::RootDatum& datum, const IntVec& highest);

/// Weyl module V(lambda) on its Kostant lattice, with the contravariant form
/// recorded in the model. Throws TooLarge above `max_dim`.
Representation weyl_module(std::shared_ptr<const chevalley::ChevalleyAlgebra> alg, const IntVec& highest,
                           const Field& field, std::size_t max_dim = 2000);

/// L(lambda): the quotient of a Weyl module over a finite field by the radical
/// of its contravariant form. Over Q the module is returned unchanged.
Representation irreducible_head(const Representation& weyl);

Representation sym_power(const Representation& rep, unsigned d);
Representation wedge_power(const Representation& rep, unsigned d);
Representation tensor(const Representation& a, const Representation& b);
Representation dual(const Representation& rep);
/// Frobenius twist by p^e; the Lie generators become zero.
Representation frobenius_twist(const Representation& rep, unsigned e);
/// Kernel of the unique invariant linear functional.
Representation trace_zero(const Representation& rep);
/// Quotient by the unique invariant line.
Representation mod_scalars(const Representation& rep);
/// Representation of the product group on A (x) B; Cartan matrices in block form.
Representation external_tensor(const Representation& a, const Representation& b);

/// The unique weight w with w + alpha_i not a weight for every i.
IntVec highest_weight_of(const Representation& rep);

}  // namespace stabforge::repforge
