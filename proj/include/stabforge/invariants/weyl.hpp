#pragma once

#include <cstdint>
#include <vector>

#include "stabforge/polyspace/sparse_poly.hpp"
#include "stabforge/rootsys/root_datum.hpp"

namespace stabforge::invariants {

using exactla::Field;
using polyspace::SparsePoly;

struct WeylInvariants {
    unsigned degree = 0;
    Field field;
    std::size_t dim = 0;
    /// Content-reduced over Q.
    std::vector<SparsePoly> basis;
    /// Unknowns of the final kernel.
    std::size_t columns = 0;
    std::vector<std::uint32_t> primes_used;
};

/// s_i on coordinates of h = sum x_j h_j, as a substitution matrix.
exactla::SparseMatrix cartan_reflection(const rootsys::RootDatum& datum, int i, const Field& field);
bool is_weyl_invariant(const SparsePoly& f, const rootsys::RootDatum& datum);

/// Degree-d W-invariant polynomials on the Cartan subalgebra: kernel of the
/// stacked conditions f o s_i - f on all degree-d monomials. Over Q the
/// kernel dimension is also checked at three primes.
WeylInvariants weyl_invariant_space(const rootsys::RootDatum& datum, unsigned d, const Field& field,
                                    std::uint64_t seed = 0);

/// Independent evaluation method, used as a cross-check.
///
/// The Dynkin diagram is split into two sets A, B with no edges inside
/// either. The reflections in A act on disjoint variables, so their joint
/// invariants have the basis x_B^b prod_{i in A} N_i^c with
/// N_i = x_i (L_i - x_i), L_i = x_i + s_i(x_i). The B reflections are imposed
/// on that basis by evaluation at random points; the evaluated kernel is an
/// upper bound, and is accepted once every basis polynomial is checked
/// W-invariant exactly.
WeylInvariants weyl_invariant_bipartite(const rootsys::RootDatum& datum, unsigned d, const Field& field,
                                        std::uint64_t seed = 0);

}  // namespace stabforge::invariants
