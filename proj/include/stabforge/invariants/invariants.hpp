#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stabforge/invariants/group_action.hpp"
#include "stabforge/polyspace/sparse_poly.hpp"

namespace stabforge::invariants {

using polyspace::SparsePoly;

enum class Mode { Lie, Group };
std::string mode_name(Mode m);
Mode parse_mode(const std::string& s);

struct InvariantSlice {
    unsigned degree = 0;
    std::size_t dim = 0;
    /// Monomials surviving the weight filter (the kernel's column count).
    std::size_t stratum = 0;
    std::vector<SparsePoly> basis;
};

struct InvariantReport {
    std::string rep;
    Mode mode = Mode::Lie;
    Field field;
    std::vector<InvariantSlice> slices;
    std::vector<std::uint32_t> primes_used;
    /// Distinct t values per curve (0 when group invariance was imposed symbolically).
    std::size_t samples_used = 0;
    std::optional<std::string> caveat;

    std::vector<std::size_t> dims() const;
};

/// Degree-d invariants. Lie mode: killed by action.lie, on monomials whose
/// weight vanishes in the field. Group mode: fixed by every curve, on
/// monomials of weight exactly zero; symbolic in t over Q, sampled at
/// max(d * curve degree, d) + 1 nonzero t values over a finite field.
/// Throws FieldTooSmall when the field has too few nonzero elements.
InvariantSlice invariant_space(const GroupAction& action, unsigned d, Mode mode, bool with_basis = true,
                               std::vector<std::uint32_t>* primes_used = nullptr);

InvariantReport invariant_report(const GroupAction& action, unsigned lo, unsigned hi, Mode mode,
                                 bool with_basis = true);

/// Distinct nonzero t values needed for group mode in degree d.
std::size_t group_samples(const GroupAction& action, unsigned d);
/// `action.field` if it can supply group_samples(action, d), else the smallest
/// extension of the same characteristic that can.
Field sampling_field(const GroupAction& action, unsigned d);

struct StabilizerReport {
    std::size_t n = 0;
    unsigned degree = 0;
    std::size_t dim = 0;
    std::vector<SparseMatrix> basis;
    bool contains_scalars = false;
    std::optional<std::size_t> expected;
    std::vector<std::uint32_t> primes_used;
};

/// Kernel of X -> D_X f on n x n matrices.
StabilizerReport stabilizer_algebra(const SparsePoly& f, bool with_basis = true);

/// Rank of the vectors Y v over a spanning list of operators.
std::size_t orbit_dim(const std::vector<SparseMatrix>& algebra, const Vector& v);
/// Over Q the full Chevalley action; over a finite field the image Lie algebra.
std::size_t orbit_dim(const GroupAction& action, const Vector& v);
/// Over a finite field: rank of `algebra` v, enlarged by tangent cones of curves
/// through a random point of the orbit (inseparable orbit maps). A lower bound
/// for the orbit dimension that reaches it for generic choices.
std::size_t orbit_dim(const GroupAction& action, const std::vector<SparseMatrix>& algebra, const Vector& v,
                      std::uint64_t seed);

struct GenericDim {
    std::size_t dim = 0;
    std::size_t max_orbit = 0;
    std::size_t hits = 0;
    std::size_t samples = 0;
    std::size_t algebra_dim = 0;
    Field field;
};

/// dim V - max orbit dimension over random points; integer coordinates in
/// [-10, 10] over Q, uniform points of an extension of order >= 10^6 otherwise.
GenericDim generic_invariant_dim(const GroupAction& action, std::size_t samples = 3, std::uint64_t seed = 0);

struct DegreeComparison {
    unsigned degree = 0;
    std::size_t full = 0;
    std::size_t sub = 0;
    bool differ() const { return full != sub; }
};

std::vector<DegreeComparison> compare_invariants(const GroupAction& full, const GroupAction& sub, unsigned lo,
                                                 unsigned hi, Mode mode);

/// f on the adjoint coordinates with every root coordinate set to zero, in
/// the coordinates of h_1..h_l.
SparsePoly chevalley_restriction(const SparsePoly& f, const chevalley::ChevalleyAlgebra& alg);

}  // namespace stabforge::invariants
