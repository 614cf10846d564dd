#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "stabforge/exactla/sparse_matrix.hpp"
#include "stabforge/rootsys/root_datum.hpp"

namespace stabforge::chevalley {

using rootsys::IntVec;

struct Term {
    int index;
    long coeff;
    bool operator==(const Term& o) const { return index == o.index && coeff == o.coeff; }
};
using Element = std::vector<Term>;

/// Simple Lie algebra in a Chevalley basis with integral structure constants.
///
/// Basis order: e_beta for positive roots (height, then lex), h_1..h_l,
/// then e_{-beta} in the same order as the positive roots.
class ChevalleyAlgebra {
public:
    explicit ChevalleyAlgebra(rootsys::RootDatum datum);
    /// Rebuild from a saved bracket table (no recomputation of constants).
    ChevalleyAlgebra(rootsys::RootDatum datum, std::vector<std::vector<Element>> table);

    const rootsys::RootDatum& datum() const { return datum_; }
    int rank() const { return datum_.rank; }
    int dim() const { return dim_; }
    int n_positive() const { return static_cast<int>(datum_.n_positive()); }

    /// Basis index of e_beta for a root index into datum().all_roots.
    int root_basis(int root) const;
    int cartan_basis(int i) const { return n_positive() + i; }
    /// Root index (into all_roots) of a basis element, -1 for Cartan elements.
    int basis_root(int b) const;
    /// Basis index of e_{alpha_i} / e_{-alpha_i}.
    int e_simple(int i) const { return root_basis(i); }
    int f_simple(int i) const { return root_basis(n_positive() + i); }
    std::string basis_label(int b) const;

    const Element& bracket(int a, int b) const { return table_[a][b]; }
    Element bracket(const Element& x, const Element& y) const;

    /// N_{r,s} for root indices with r+s a root (0 otherwise).
    long structure_constant(int r, int s) const;
    /// Length of the r-string through s below s.
    int string_down(int r, int s) const;

    /// ad(x_b) over the given field.
    exactla::SparseMatrix ad(int b, const exactla::Field& field) const;

    /// Exhaustive Jacobi check on all basis triples i < j < k.
    bool jacobi_exhaustive() const;
    /// Jacobi on `samples` random triples.
    bool jacobi_sampled(std::size_t samples, std::uint64_t seed) const;
    bool antisymmetric() const;

    std::vector<std::vector<Element>> const& table() const { return table_; }

private:
    void build();
    long pos_constant(int r, int s) const;

    rootsys::RootDatum datum_;
    int dim_ = 0;
    // N for ordered pairs of positive roots with positive sum: n_pos_[r][s].
    std::vector<std::vector<long>> n_pos_;
    std::vector<std::vector<Element>> table_;
};

/// Serialise the bracket table: {label, rank, brackets: [[i, j, [[k, c], ...]], ...]}.
std::string to_json(const ChevalleyAlgebra& alg);
ChevalleyAlgebra from_json(const std::string& text);

/// Build, or load from `<dir>/<type>.chev.json` when present (writing it otherwise).
ChevalleyAlgebra cached_chevalley(const rootsys::RootDatum& datum, const std::string& dir);

}  // namespace stabforge::chevalley
