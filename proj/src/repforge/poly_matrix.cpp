#include "stabforge/repforge/poly_matrix.hpp"

#include "stabforge/errors.hpp"

namespace stabforge::repforge {

PolyMatrix::PolyMatrix(std::vector<SparseMatrix> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw DimensionMismatch("curve without coefficients");
    trim();
}

PolyMatrix PolyMatrix::constant(const SparseMatrix& m) { return PolyMatrix({m}); }

void PolyMatrix::trim() {
    while (coeffs_.size() > 1 && coeffs_.back().is_zero()) coeffs_.pop_back();
}

SparseMatrix PolyMatrix::at(const Scalar& t) const {
    SparseMatrix acc = coeffs_.back();
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) acc = acc.scaled(t) + coeffs_[i];
    return acc;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
    std::vector<SparseMatrix> out(coeffs_.size() + o.coeffs_.size() - 1,
                                  SparseMatrix(dim(), o.coeffs_[0].ncols(), field()));
    for (std::size_t a = 0; a < coeffs_.size(); ++a) {
        if (coeffs_[a].is_zero()) continue;
        for (std::size_t b = 0; b < o.coeffs_.size(); ++b)
            if (!o.coeffs_[b].is_zero()) out[a + b] = out[a + b] + coeffs_[a] * o.coeffs_[b];
    }
    return PolyMatrix(std::move(out));
}

PolyMatrix PolyMatrix::dual() const {
    std::vector<SparseMatrix> out;
    const Field& k = field();
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        SparseMatrix m = coeffs_[i].transpose();
        out.push_back(i % 2 ? m.scaled(k.from_int(-1)) : m);
    }
    return PolyMatrix(std::move(out));
}

PolyMatrix PolyMatrix::frobenius(unsigned e) const {
    const Field& k = field();
    if (!k.is_finite()) throw TwistInCharZero("Frobenius twist needs a field of prime characteristic");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < e; ++i) q *= k.characteristic();
    std::vector<SparseMatrix> out((coeffs_.size() - 1) * q + 1, SparseMatrix(dim(), dim(), k));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        SparseMatrix m(dim(), dim(), k);
        for (const auto& t : coeffs_[i].triples()) m.set(t.row, t.col, k.pow(t.value, q));
        out[i * q] = m;
    }
    return PolyMatrix(std::move(out));
}

PolyMatrix PolyMatrix::reduced(const Field& target) const {
    std::vector<SparseMatrix> out;
    for (const auto& c : coeffs_)
        out.push_back(c.field().is_finite() && target.is_finite() ? c.embedded(target) : c.reduced(target));
    return PolyMatrix(std::move(out));
}

PolyMatrix PolyMatrix::sandwich(const SparseMatrix& left, const SparseMatrix& right) const {
    std::vector<SparseMatrix> out;
    for (const auto& c : coeffs_) out.push_back(left * c * right);
    return PolyMatrix(std::move(out));
}

std::size_t PolyMatrix::lowest_order() const {
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        if (!coeffs_[k].is_zero()) return k;
    return 0;
}

PolyMatrix exp_nilpotent(const SparseMatrix& x) {
    if (x.field().is_finite()) throw FieldMismatch("exponentials are taken over Q");
    std::vector<SparseMatrix> out{SparseMatrix::identity(x.nrows(), x.field())};
    SparseMatrix power = x;
    for (std::size_t k = 1; !power.is_zero(); ++k) {
        if (k > x.nrows()) throw Error("matrix is not nilpotent");
        out.push_back(power);
        power = (power * x).scaled(Scalar(1, static_cast<unsigned long>(k + 1)));
    }
    return PolyMatrix(std::move(out));
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
    const Field& k = a.field();
    SparseMatrix out(a.nrows() * b.nrows(), a.ncols() * b.ncols(), k);
    for (std::size_t i = 0; i < a.nrows(); ++i) {
        for (std::size_t r = 0; r < b.nrows(); ++r) {
            SparseMatrix::Row row;
            for (const auto& [j, va] : a.row(i))
                for (const auto& [c, vb] : b.row(r)) row.emplace_back(j * b.ncols() + c, k.mul(va, vb));
            out.set_row(i * b.nrows() + r, std::move(row));
        }
    }
    return out;
}

PolyMatrix kron(const PolyMatrix& a, const PolyMatrix& b) {
    const Field& k = a.field();
    std::size_t n = a.dim() * b.dim();
    std::vector<SparseMatrix> out(a.coeffs().size() + b.coeffs().size() - 1, SparseMatrix(n, n, k));
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        for (std::size_t j = 0; j < b.coeffs().size(); ++j)
            if (!a.coeff(i).is_zero() && !b.coeff(j).is_zero())
                out[i + j] = out[i + j] + kron(a.coeff(i), b.coeff(j));
    return PolyMatrix(std::move(out));
}

}  // namespace stabforge::repforge
