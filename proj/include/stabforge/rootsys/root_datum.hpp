#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "stabforge/exactla/field.hpp"

namespace stabforge::rootsys {

using IntVec = std::vector<long>;
using IntMatrix = std::vector<IntVec>;

/// Root system of a simple type, roots in simple-root coordinates.
///
/// Cartan convention: cartan[i][j] = <alpha_j, alpha_i^vee>, so that
/// [h_i, e_j] = cartan[i][j] e_j. Numbering follows Bourbaki.
struct RootDatum {
    char label = 'A';
    int rank = 0;
    IntMatrix cartan;
    /// (alpha_i, alpha_i) / 2, scaled so the short roots have 1.
    IntVec half_norms;
    std::vector<IntVec> simple_roots;
    /// Positive roots ordered by height, then lexicographically.
    std::vector<IntVec> positive_roots;
    /// Positive roots followed by their negatives in the same order.
    std::vector<IntVec> all_roots;
    /// Fundamental weights in simple-root coordinates.
    std::vector<std::vector<exactla::Scalar>> fundamental_weights;
    /// Simple reflections acting on simple-root coordinates (column j = s_i(alpha_j)).
    std::vector<IntMatrix> reflections;

    std::string name() const { return std::string(1, label) + std::to_string(rank); }
    std::size_t n_roots() const { return all_roots.size(); }
    std::size_t n_positive() const { return positive_roots.size(); }
    long coxeter_number() const { return static_cast<long>(all_roots.size()) / rank; }

    /// Symmetric invariant form on simple-root coordinates.
    long inner(const IntVec& a, const IntVec& b) const;
    /// <beta, alpha_i^vee>.
    long pairing(const IntVec& beta, int i) const;
    /// Dynkin labels (<beta, alpha_i^vee>)_i.
    IntVec dynkin_labels(const IntVec& beta) const;
    /// Coroot of a root in simple-coroot coordinates.
    IntVec coroot(const IntVec& beta) const;
    /// Index in all_roots, or -1.
    int root_index(const IntVec& beta) const;
    bool is_root(const IntVec& beta) const { return root_index(beta) >= 0; }
    long height(const IntVec& beta) const;
    const IntVec& highest_root() const { return positive_roots.back(); }
    /// Image of a vector under the simple reflection s_i.
    IntVec reflect(const IntVec& beta, int i) const;
    /// Simple-root coordinates of the weight with the given Dynkin labels (rational).
    std::vector<exactla::Scalar> weight_to_roots(const IntVec& labels) const;

    std::map<IntVec, int> index;
};

RootDatum build_root_system(char label, int rank);
/// Parse "E8", "A2", "b3" style type names.
RootDatum build_root_system(const std::string& type);
std::pair<char, int> parse_type(const std::string& type);

struct PrimeTable {
    std::set<long> torsion;
    std::set<long> not_very_good;
};

/// Torsion primes (primes dividing a coefficient of the highest coroot) and
/// primes that are not very good (bad primes, plus divisors of l+1 in type A).
PrimeTable torsion_and_bad_primes(const RootDatum& datum);

/// Degrees of the fundamental Weyl invariants from a per-degree dimension
/// scan of Weyl-invariant polynomials over Q. Beyond a monomial-count cap the
/// scan stops and the remaining degrees come from the partition of positive
/// roots by height.
std::vector<long> invariant_degree_sequence(const RootDatum& datum);

/// Exponents + 1 from the height partition of the positive roots.
std::vector<long> degrees_from_heights(const RootDatum& datum);

}  // namespace stabforge::rootsys
