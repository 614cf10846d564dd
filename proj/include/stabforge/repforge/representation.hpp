#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stabforge/chevalley/chevalley_algebra.hpp"
#include "stabforge/repforge/poly_matrix.hpp"

namespace stabforge::repforge {

using rootsys::IntMatrix;
using rootsys::IntVec;

/// A rational representation on a lattice basis, with the action of every
/// Chevalley basis element, plus the map from this lattice to the basis of
/// the representation that owns it (a quotient mod p for heads).
struct IntegralModel {
    std::shared_ptr<const chevalley::ChevalleyAlgebra> alg;
    std::size_t dim = 0;
    /// action[b] acts as the Chevalley basis element b; integral.
    std::vector<SparseMatrix> action;
    std::vector<IntVec> weights;
    /// Contravariant form, block by block in basis order (empty when unknown).
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::vector<std::vector<mpz_class>>> gram;

    /// rep vector = projection * (model vector mod p); absent means identity.
    std::optional<SparseMatrix> projection;
    /// section[i] is the model basis vector mapping to rep basis vector i.
    std::vector<std::size_t> section;

    /// Matrix of an element given by its (rational) action on the model,
    /// induced on the owning representation over `field`.
    SparseMatrix induced(const SparseMatrix& y, const Field& field) const;
    PolyMatrix induced(const PolyMatrix& y, const Field& field) const;
};

/// Generator matrices of a representation of a split simple (or product of
/// simple) group over an exact field. Weights are Dynkin labels, never reduced.
struct Representation {
    std::string group;
    IntMatrix cartan;
    Field field;
    std::size_t dim = 0;
    std::vector<SparseMatrix> e, f, h;
    std::vector<IntVec> weights;
    /// x_{alpha_i}(t) and x_{-alpha_i}(t).
    std::vector<PolyMatrix> x_pos, x_neg;
    bool lattice = true;
    /// Highest weight when the representation is a Weyl module or a head.
    std::optional<IntVec> highest;
    std::shared_ptr<const IntegralModel> model;
    std::string recipe;

    int rank() const { return static_cast<int>(cartan.size()); }
    /// e_1..e_l, f_1..f_l, h_1..h_l.
    std::vector<SparseMatrix> lie_generators() const;
    std::vector<PolyMatrix> curves() const;
};

/// Reduce a rational representation (or embed a prime-field one) into `field`.
Representation change_field(const Representation& rep, const Field& field);

/// The action of every Chevalley basis element, from the integral model when
/// present, else by iterated brackets of the simple generators.
std::vector<SparseMatrix> chevalley_action(const Representation& rep, const chevalley::ChevalleyAlgebra& alg);

/// Attach an integral model (identity projection) computed by brackets; the
/// representation must be over Q. Throws IntegralityFailure.
void attach_model(Representation& rep, std::shared_ptr<const chevalley::ChevalleyAlgebra> alg);

/// Unipotent curves x_{+-alpha_i}(t) = exp(t e_i), exp(t f_i), integrality asserted.
void attach_curves(Representation& rep);

/// Weights read off the diagonal h matrices; throws if some h is not diagonal.
std::vector<IntVec> weights_from_h(const std::vector<SparseMatrix>& h);

/// [e_i, f_j] = delta_ij h_i, [h_i, e_j] = a_ij e_j, [h_i, f_j] = -a_ij f_j,
/// [h_i, h_j] = 0 and the Serre relations ad(e_i)^{1-a_ij} e_j = 0 (same for f).
bool serre_relations_hold(const Representation& rep);
/// Every curve is the identity at t = 0 with t-derivative the Lie generator,
/// except for twisted curves where the derivative vanishes.
bool curves_consistent(const Representation& rep);

std::string to_json(const Representation& rep);
Representation rep_from_json(const std::string& text);
void save_rep(const Representation& rep, const std::string& path);
Representation load_rep(const std::string& path);

}  // namespace stabforge::repforge
