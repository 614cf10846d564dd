#include "stabforge/exactla/sparse_matrix.hpp"

#include <algorithm>
#include <map>

#include "stabforge/errors.hpp"

namespace stabforge::exactla {

SparseMatrix::SparseMatrix(std::size_t nrows, std::size_t ncols, Field field)
    : ncols_(ncols), field_(std::move(field)), rows_(nrows) {}

SparseMatrix SparseMatrix::identity(std::size_t n, const Field& field) {
    SparseMatrix m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) m.rows_[i].emplace_back(i, field.from_int(1));
    return m;
}

SparseMatrix SparseMatrix::from_triples(std::size_t nrows, std::size_t ncols, const Field& field,
                                        const std::vector<Triple>& triples) {
    SparseMatrix m(nrows, ncols, field);
    for (const auto& t : triples) m.add_to(t.row, t.col, field.image(t.value));
    return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Scalar>>& rows, const Field& field) {
    std::size_t nc = rows.empty() ? 0 : rows[0].size();
    SparseMatrix m(rows.size(), nc, field);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != nc) throw DimensionMismatch("ragged dense matrix");
        for (std::size_t j = 0; j < nc; ++j) {
            Scalar v = field.image(rows[i][j]);
            if (sgn(v) != 0) m.rows_[i].emplace_back(j, v);
        }
    }
    return m;
}

std::size_t SparseMatrix::nnz() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
}

Scalar SparseMatrix::get(std::size_t i, std::size_t j) const {
    const auto& r = rows_.at(i);
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, std::size_t c) { return e.first < c; });
    if (it != r.end() && it->first == j) return it->second;
    return Scalar(0);
}

void SparseMatrix::set(std::size_t i, std::size_t j, const Scalar& v) {
    if (j >= ncols_) throw DimensionMismatch("column out of range");
    auto& r = rows_.at(i);
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, std::size_t c) { return e.first < c; });
    bool zero = sgn(v) == 0;
    if (it != r.end() && it->first == j) {
        if (zero)
            r.erase(it);
        else
            it->second = v;
    } else if (!zero) {
        r.insert(it, {j, v});
    }
}

void SparseMatrix::add_to(std::size_t i, std::size_t j, const Scalar& v) {
    if (sgn(v) == 0) return;
    set(i, j, field_.add(get(i, j), v));
}

void SparseMatrix::set_row(std::size_t i, Row row) { rows_.at(i) = std::move(row); }

std::vector<Triple> SparseMatrix::triples() const {
    std::vector<Triple> out;
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (const auto& [j, v] : rows_[i]) out.push_back({i, j, v});
    return out;
}

std::vector<std::vector<Scalar>> SparseMatrix::dense() const {
    std::vector<std::vector<Scalar>> out(nrows(), std::vector<Scalar>(ncols_));
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (const auto& [j, v] : rows_[i]) out[i][j] = v;
    return out;
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix t(ncols_, nrows(), field_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (const auto& [j, v] : rows_[i]) t.rows_[j].emplace_back(i, v);
    return t;
}

namespace {

// Accumulate a sparse linear combination of rows of `b` into a sorted row.
SparseMatrix::Row combine(const SparseMatrix::Row& coeffs, const SparseMatrix& b, const Field& f) {
    std::map<std::size_t, Scalar> acc;
    for (const auto& [k, a] : coeffs) {
        for (const auto& [j, v] : b.row(k)) {
            auto [it, fresh] = acc.try_emplace(j, f.mul(a, v));
            if (!fresh) it->second = f.add(it->second, f.mul(a, v));
        }
    }
    SparseMatrix::Row out;
    out.reserve(acc.size());
    for (auto& [j, v] : acc)
        if (sgn(v) != 0) out.emplace_back(j, std::move(v));
    return out;
}

SparseMatrix::Row merge(const SparseMatrix::Row& a, const SparseMatrix::Row& b, const Field& f, bool subtract) {
    SparseMatrix::Row out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, subtract ? f.neg(b[j].second) : b[j].second);
            ++j;
        } else {
            Scalar v = subtract ? f.sub(a[i].second, b[j].second) : f.add(a[i].second, b[j].second);
            if (sgn(v) != 0) out.emplace_back(a[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
    if (ncols_ != o.nrows()) throw DimensionMismatch("matrix product shapes");
    if (field_ != o.field_) throw FieldMismatch("matrix product fields");
    SparseMatrix r(nrows(), o.ncols(), field_);
    for (std::size_t i = 0; i < rows_.size(); ++i) r.rows_[i] = combine(rows_[i], o, field_);
    return r;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const {
    if (nrows() != o.nrows() || ncols_ != o.ncols_) throw DimensionMismatch("matrix sum shapes");
    SparseMatrix r(nrows(), ncols_, field_);
    for (std::size_t i = 0; i < rows_.size(); ++i) r.rows_[i] = merge(rows_[i], o.rows_[i], field_, false);
    return r;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const {
    if (nrows() != o.nrows() || ncols_ != o.ncols_) throw DimensionMismatch("matrix difference shapes");
    SparseMatrix r(nrows(), ncols_, field_);
    for (std::size_t i = 0; i < rows_.size(); ++i) r.rows_[i] = merge(rows_[i], o.rows_[i], field_, true);
    return r;
}

SparseMatrix SparseMatrix::scaled(const Scalar& c) const {
    SparseMatrix r(nrows(), ncols_, field_);
    if (sgn(c) == 0) return r;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        for (const auto& [j, v] : rows_[i]) {
            Scalar w = field_.mul(c, v);
            if (sgn(w) != 0) r.rows_[i].emplace_back(j, std::move(w));
        }
    }
    return r;
}

Vector SparseMatrix::apply(const Vector& v) const {
    if (v.size() != ncols_) throw DimensionMismatch("matrix-vector shapes");
    Vector out(nrows());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        Scalar acc = 0;
        for (const auto& [j, a] : rows_[i]) acc = field_.add(acc, field_.mul(a, v[j]));
        out[i] = acc;
    }
    return out;
}

SparseMatrix SparseMatrix::commutator(const SparseMatrix& o) const { return (*this) * o - o * (*this); }

bool SparseMatrix::is_diagonal() const {
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (const auto& e : rows_[i])
            if (e.first != i) return false;
    return true;
}

bool SparseMatrix::operator==(const SparseMatrix& o) const {
    return ncols_ == o.ncols_ && field_ == o.field_ && rows_ == o.rows_;
}

SparseMatrix SparseMatrix::reduced(const Field& target) const {
    if (field_.is_finite()) {
        if (target == field_) return *this;
        throw FieldMismatch("can only reduce rational matrices");
    }
    SparseMatrix r(nrows(), ncols_, target);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        for (const auto& [j, v] : rows_[i]) {
            Scalar w = target.image(v);
            if (sgn(w) != 0) r.rows_[i].emplace_back(j, std::move(w));
        }
    }
    return r;
}

SparseMatrix SparseMatrix::embedded(const Field& target) const {
    if (target == field_) return *this;
    if (!target.contains(field_)) throw FieldMismatch(field_.name() + " does not embed in " + target.name());
    SparseMatrix r = *this;
    r.field_ = target;
    return r;
}

bool SparseMatrix::is_integral() const {
    for (const auto& r : rows_)
        for (const auto& e : r)
            if (e.second.get_den() != 1) return false;
    return true;
}

}  // namespace stabforge::exactla
