#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "stabforge/exactla/mod_echelon.hpp"
#include "stabforge/exactla/sparse_matrix.hpp"

namespace stabforge::exactla {

/// Seeded stream of distinct random primes in (2^30, 2^31).
class PrimeStream {
public:
    explicit PrimeStream(std::uint64_t seed = 0) : rng_(seed) {}
    std::uint32_t next();
    std::vector<std::uint32_t> take(std::size_t n);
    const std::vector<std::uint32_t>& issued() const { return issued_; }

private:
    std::mt19937_64 rng_;
    std::vector<std::uint32_t> issued_;
};

/// Rows of a matrix reduced into a finite field, or nullopt when the prime
/// divides a denominator.
using ModBuilder = std::function<std::optional<std::vector<ModRow>>(const Zq&)>;

std::optional<std::vector<ModRow>> reduce_rows(const SparseMatrix& m, const Zq& f);
/// Rows of a finite-field matrix as ModRows.
std::vector<ModRow> mod_rows(const SparseMatrix& m);

struct RankResult {
    std::size_t rank = 0;
    std::vector<std::uint32_t> primes;
};

/// Consensus rank over the given primes (primes whose reduction is undefined
/// are skipped). Throws NoConsensus if the modular ranks disagree.
std::size_t rank_multi_prime(const SparseMatrix& m, const std::vector<std::uint32_t>& primes);

/// Rank over Q certified by agreement at `agree` primes drawn from `primes`;
/// disagreement triggers fresh primes (up to a fixed retry budget).
RankResult rational_rank(const ModBuilder& build, std::size_t ncols, PrimeStream& primes, std::size_t agree = 2);

/// Rank over the matrix's own field (rationals via two-prime consensus, seed 0).
std::size_t rank(const SparseMatrix& m);

/// Kernel of the rows over Q, as the reduced row echelon basis in natural
/// column order, by modular kernels + CRT + rational reconstruction. Each
/// candidate is accepted only after `verify` (if given) confirms it exactly.
struct RationalKernel {
    std::vector<Vector> basis;
    std::vector<std::uint32_t> primes;
};
RationalKernel rational_kernel(const ModBuilder& build, std::size_t ncols, PrimeStream& primes,
                               const std::function<bool(const std::vector<Vector>&)>& verify = {});

/// Basis of the right null space over the matrix's field. Over a finite field
/// the result is the reduced echelon basis; over Q it is the same basis,
/// reconstructed and verified exactly (m*v = 0).
std::vector<Vector> kernel_basis(const SparseMatrix& m, std::uint64_t seed = 0);

/// Reduced row echelon basis of the row span over the matrix's field.
std::vector<Vector> row_space_basis(const SparseMatrix& m, std::uint64_t seed = 0);

/// Fraction-free dense elimination over Q: exact rank oracle.
std::size_t dense_rational_rank(const std::vector<std::vector<Scalar>>& rows);
/// Exact dense kernel over Q (reduced echelon basis, natural column order).
std::vector<Vector> dense_rational_kernel(const std::vector<std::vector<Scalar>>& rows, std::size_t ncols);

/// Wang rational reconstruction of a mod m; nullopt if no fraction with
/// |num|, den <= sqrt(m/2) exists.
std::optional<Scalar> rational_reconstruct(const mpz_class& a, const mpz_class& m);

/// Divide a rational vector by the gcd of its numerators after clearing
/// denominators; the first nonzero entry is made positive.
Vector content_reduced(const Vector& v);

/// Convert between ModRow and dense vectors.
Vector to_vector(const ModRow& r, std::size_t n);
ModRow to_modrow(const Vector& v);

}  // namespace stabforge::exactla
