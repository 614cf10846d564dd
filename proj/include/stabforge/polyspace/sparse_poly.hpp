#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stabforge/exactla/sparse_matrix.hpp"
#include "stabforge/rootsys/root_datum.hpp"

namespace stabforge::polyspace {

using exactla::Field;
using exactla::Scalar;
using exactla::SparseMatrix;
using Exponent = std::vector<unsigned>;

unsigned total_degree(const Exponent& e);

/// Graded reverse lexicographic order; `operator()` is "a comes first", i.e. a > b.
struct GrevlexDesc {
    bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Polynomial in nvars variables with coefficients in a field. Terms are kept
/// in descending grevlex order with no zero coefficients.
class SparsePoly {
public:
    using Terms = std::map<Exponent, Scalar, GrevlexDesc>;

    SparsePoly() = default;
    SparsePoly(std::size_t nvars, Field field) : nvars_(nvars), field_(std::move(field)) {}

    static SparsePoly constant(std::size_t nvars, const Field& field, const Scalar& c);
    static SparsePoly variable(std::size_t nvars, const Field& field, std::size_t i);
    static SparsePoly monomial(const Field& field, const Exponent& e, const Scalar& c);

    std::size_t nvars() const { return nvars_; }
    const Field& field() const { return field_; }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// -1 for the zero polynomial.
    int degree() const;
    bool homogeneous() const;

    Scalar coeff(const Exponent& e) const;
    /// Add c (already in the field) to the coefficient of x^e.
    void add_term(const Exponent& e, const Scalar& c);

    SparsePoly operator+(const SparsePoly& o) const;
    SparsePoly operator-(const SparsePoly& o) const;
    SparsePoly operator*(const SparsePoly& o) const;
    SparsePoly scaled(const Scalar& c) const;
    SparsePoly pow(unsigned k) const;
    bool operator==(const SparsePoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const SparsePoly& o) const { return !(*this == o); }

    SparsePoly partial(std::size_t j) const;
    Scalar evaluate(const std::vector<Scalar>& point) const;
    /// Reduce a rational polynomial into a finite field.
    SparsePoly reduced(const Field& target) const;

    /// Over Q: the primitive integral multiple with positive leading coefficient.
    SparsePoly content_reduced() const;
    /// Over Q: gcd of the numerators once denominators are cleared.
    Scalar content() const;

private:
    std::size_t nvars_ = 0;
    Field field_;
    Terms terms_;
};

/// f_1(v, v'): the t-coefficient of f(v + t v'), in 2n variables (v block, then v').
SparsePoly directional_derivative(const SparsePoly& f);

/// D_X f = f_1(v, Xv) = sum_{j,k} X_jk x_k d f/d x_j.
SparsePoly derivation_action(const SparseMatrix& x, const SparsePoly& f);

/// f o g, i.e. x_j -> sum_k g_jk x_k.
SparsePoly substitute_linear(const SparsePoly& f, const SparseMatrix& g);

/// Exponent vectors of total degree d, in descending grevlex order. With
/// `weights`, keep those whose weighted sum equals `target`.
std::vector<Exponent> monomial_basis(std::size_t nvars, unsigned d,
                                     const std::vector<rootsys::IntVec>* weights = nullptr,
                                     const rootsys::IntVec* target = nullptr);

/// `<coeff> : e1 e2 ... en` per line, `#` comments.
SparsePoly parse_poly(const std::string& text, const Field& field, std::optional<std::size_t> nvars = {});
std::string format_poly(const SparsePoly& f);
SparsePoly load_poly(const std::string& path, const Field& field, std::optional<std::size_t> nvars = {});

}  // namespace stabforge::polyspace
