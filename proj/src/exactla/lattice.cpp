#include "stabforge/exactla/lattice.hpp"

#include <utility>

namespace stabforge::exactla {

namespace {

// Row echelon form by unimodular 2x2 row operations. When `inv` is given it
// holds U^{-1} for the accumulated transform U and is updated column-wise.
std::size_t echelon(std::vector<ZVec>& rows, std::size_t ncols, std::vector<ZVec>* inv) {
    std::size_t pivot = 0;
    for (std::size_t c = 0; c < ncols && pivot < rows.size(); ++c) {
        for (std::size_t r = pivot + 1; r < rows.size(); ++r) {
            if (rows[r][c] == 0) continue;
            if (rows[pivot][c] == 0) {
                std::swap(rows[pivot], rows[r]);
                if (inv)
                    for (auto& row : *inv) std::swap(row[pivot], row[r]);
                continue;
            }
            mpz_class g, s, t;
            const mpz_class x = rows[pivot][c], y = rows[r][c];
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
            mpz_class xg = x / g, yg = y / g;
            for (std::size_t k = c; k < ncols; ++k) {
                mpz_class a = rows[pivot][k], b = rows[r][k];
                rows[pivot][k] = s * a + t * b;
                rows[r][k] = xg * b - yg * a;
            }
            if (inv) {
                for (auto& row : *inv) {
                    mpz_class a = row[pivot], b = row[r];
                    row[pivot] = a * xg + b * yg;
                    row[r] = s * b - t * a;
                }
            }
        }
        if (rows[pivot][c] != 0) {
            if (rows[pivot][c] < 0) {
                for (std::size_t k = c; k < ncols; ++k) rows[pivot][k] = -rows[pivot][k];
                if (inv)
                    for (auto& row : *inv) row[pivot] = -row[pivot];
            }
            ++pivot;
        }
    }
    return pivot;
}

}  // namespace

std::vector<ZVec> lattice_basis(std::vector<ZVec> rows, std::size_t ncols) {
    std::size_t r = echelon(rows, ncols, nullptr);
    rows.resize(r);
    return rows;
}

std::vector<ZVec> saturation(const std::vector<ZVec>& rows, std::size_t ncols) {
    // Transpose, reduce U * M^T = [H; 0]; the saturated lattice is spanned by
    // the first rank columns of U^{-1}.
    std::vector<ZVec> mt(ncols, ZVec(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < ncols; ++j) mt[j][i] = rows[i][j];
    std::vector<ZVec> inv(ncols, ZVec(ncols, 0));
    for (std::size_t i = 0; i < ncols; ++i) inv[i][i] = 1;
    std::size_t r = echelon(mt, rows.size(), &inv);
    std::vector<ZVec> out(r, ZVec(ncols));
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t i = 0; i < ncols; ++i) out[k][i] = inv[i][k];
    return out;
}

}  // namespace stabforge::exactla
