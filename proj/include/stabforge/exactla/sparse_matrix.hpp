#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "stabforge/exactla/field.hpp"

namespace stabforge::exactla {

using Vector = std::vector<Scalar>;

struct Triple {
    std::size_t row;
    std::size_t col;
    Scalar value;
};

/// Row-compressed sparse matrix over a declared field. Rows keep their
/// entries sorted by column with no stored zeros.
class SparseMatrix {
public:
    using Row = std::vector<std::pair<std::size_t, Scalar>>;

    SparseMatrix() = default;
    SparseMatrix(std::size_t nrows, std::size_t ncols, Field field = Field::rationals());

    static SparseMatrix identity(std::size_t n, const Field& field);
    static SparseMatrix from_triples(std::size_t nrows, std::size_t ncols, const Field& field,
                                     const std::vector<Triple>& triples);
    static SparseMatrix from_dense(const std::vector<std::vector<Scalar>>& rows, const Field& field);

    std::size_t nrows() const { return rows_.size(); }
    std::size_t ncols() const { return ncols_; }
    const Field& field() const { return field_; }
    std::size_t nnz() const;

    const Row& row(std::size_t i) const { return rows_[i]; }
    Scalar get(std::size_t i, std::size_t j) const;
    /// Overwrite one entry (value already in the field).
    void set(std::size_t i, std::size_t j, const Scalar& v);
    /// Accumulate into one entry.
    void add_to(std::size_t i, std::size_t j, const Scalar& v);
    /// Replace a row wholesale; entries must be sorted, nonzero and in the field.
    void set_row(std::size_t i, Row row);

    std::vector<Triple> triples() const;
    std::vector<std::vector<Scalar>> dense() const;

    SparseMatrix transpose() const;
    SparseMatrix operator*(const SparseMatrix& o) const;
    SparseMatrix operator+(const SparseMatrix& o) const;
    SparseMatrix operator-(const SparseMatrix& o) const;
    SparseMatrix scaled(const Scalar& c) const;
    Vector apply(const Vector& v) const;
    /// [this, o] = this*o - o*this.
    SparseMatrix commutator(const SparseMatrix& o) const;

    bool is_zero() const { return nnz() == 0; }
    bool is_diagonal() const;
    bool operator==(const SparseMatrix& o) const;
    bool operator!=(const SparseMatrix& o) const { return !(*this == o); }

    /// Image of a rational matrix in a finite field (entries must be integral at p).
    SparseMatrix reduced(const Field& target) const;
    /// Reinterpret codes of a prime-field matrix in an extension field.
    SparseMatrix embedded(const Field& target) const;
    bool is_integral() const;

private:
    std::size_t ncols_ = 0;
    Field field_;
    std::vector<Row> rows_;
};

}  // namespace stabforge::exactla
