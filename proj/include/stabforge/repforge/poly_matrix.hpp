#pragma once

#include <vector>

#include "stabforge/exactla/sparse_matrix.hpp"

namespace stabforge::repforge {

using exactla::Field;
using exactla::Scalar;
using exactla::SparseMatrix;

/// Square matrix whose entries are polynomials in one parameter t;
/// coeffs[k] holds the t^k coefficient. Used for unipotent curves x(t).
class PolyMatrix {
public:
    PolyMatrix() = default;
    explicit PolyMatrix(std::vector<SparseMatrix> coeffs);
    static PolyMatrix constant(const SparseMatrix& m);

    std::size_t dim() const { return coeffs_.empty() ? 0 : coeffs_[0].nrows(); }
    /// Highest power of t with a nonzero coefficient.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Field& field() const { return coeffs_.at(0).field(); }
    const std::vector<SparseMatrix>& coeffs() const { return coeffs_; }
    const SparseMatrix& coeff(std::size_t k) const { return coeffs_.at(k); }

    SparseMatrix at(const Scalar& t) const;
    PolyMatrix operator*(const PolyMatrix& o) const;
    bool operator==(const PolyMatrix& o) const { return coeffs_ == o.coeffs_; }

    /// x(-t)^T: the contragredient of a one-parameter subgroup.
    PolyMatrix dual() const;
    /// Entries raised to the q-th power, q = p^e: t -> t^q and Frobenius on coefficients.
    PolyMatrix frobenius(unsigned e) const;
    PolyMatrix reduced(const Field& target) const;
    /// Conjugate-free change of basis: left * x(t) * right.
    PolyMatrix sandwich(const SparseMatrix& left, const SparseMatrix& right) const;
    /// Lowest k >= 1 with a nonzero coefficient (0 if the curve is constant).
    std::size_t lowest_order() const;

private:
    void trim();
    std::vector<SparseMatrix> coeffs_;
};

/// sum_k t^k x^k / k! for a nilpotent rational matrix.
PolyMatrix exp_nilpotent(const SparseMatrix& x);

/// Kronecker product of matrices, and of curves (coefficients convolved).
SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);
PolyMatrix kron(const PolyMatrix& a, const PolyMatrix& b);

}  // namespace stabforge::repforge
