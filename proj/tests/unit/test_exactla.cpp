#include <doctest.h>

#include <random>

#include "stabforge/errors.hpp"
#include "stabforge/exactla/linalg.hpp"

using namespace stabforge;
using namespace stabforge::exactla;

namespace {

SparseMatrix random_product(std::mt19937_64& rng, std::size_t n, std::size_t r) {
    std::uniform_int_distribution<int> pm(0, 1);
    std::vector<std::vector<Scalar>> a(n, std::vector<Scalar>(r)), b(r, std::vector<Scalar>(n));
    for (auto& row : a)
        for (auto& v : row) v = pm(rng) ? 1 : -1;
    for (auto& row : b)
        for (auto& v : row) v = pm(rng) ? 1 : -1;
    auto fa = SparseMatrix::from_dense(a, Field::rationals());
    auto fb = SparseMatrix::from_dense(b, Field::rationals());
    return fa * fb;
}

bool kills(const SparseMatrix& m, const std::vector<Vector>& basis) {
    for (const auto& v : basis) {
        auto w = m.apply(v);
        for (const auto& x : w)
            if (sgn(x) != 0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("primality") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(2147483647ull));
    CHECK_FALSE(is_prime_u64(2147483649ull));
    CHECK_FALSE(is_prime_u64(1));
    CHECK(is_prime_u64(1000003));
    CHECK_FALSE(is_prime_u64(3215031751ull));  // strong pseudoprime to 2,3,5,7
}

TEST_CASE("field parsing and names") {
    CHECK(Field::parse("0").name() == "Q");
    CHECK(Field::parse("7").name() == "GF(7)");
    CHECK(Field::parse("GF(2^4)").order() == 16);
    CHECK_THROWS_AS(Field::parse("6"), InvalidField);
    CHECK(Field::at_least(2, 1000000).order() == (1u << 20));
}

TEST_CASE("extension field axioms") {
    for (auto [p, e] : {std::pair{2u, 5u}, {3u, 4u}, {5u, 3u}}) {
        Zq f = Zq::extension(p, e);
        std::mt19937 rng(7);
        std::uniform_int_distribution<std::uint32_t> d(0, f.order() - 1);
        for (int i = 0; i < 300; ++i) {
            auto a = d(rng), b = d(rng), c = d(rng);
            CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
            CHECK(f.add(f.sub(a, b), b) == a);
            if (a) CHECK(f.mul(a, f.inv(a)) == 1);
            CHECK(f.frobenius(f.add(a, b)) == f.add(f.frobenius(a), f.frobenius(b)));
        }
        // prime subfield embeds by code
        for (std::uint32_t a = 0; a < p; ++a)
            for (std::uint32_t b = 0; b < p; ++b) CHECK(f.mul(a, b) == (a * b) % p);
    }
}

TEST_CASE("kernel_basis examples") {
    SUBCASE("identity has empty kernel") {
        auto m = SparseMatrix::identity(2, Field::rationals());
        CHECK(kernel_basis(m).empty());
    }
    SUBCASE("single relation over GF(7)") {
        auto m = SparseMatrix::from_dense({{1, 1}}, Field::prime(7));
        auto k = kernel_basis(m);
        REQUIRE(k.size() == 1);
        CHECK(k[0] == Vector{1, 6});
    }
    SUBCASE("all-ones 3x3") {
        std::vector<std::vector<Scalar>> ones(3, std::vector<Scalar>(3, 1));
        auto m = SparseMatrix::from_dense(ones, Field::rationals());
        auto k = kernel_basis(m);
        CHECK(k.size() == 2);
        CHECK(kills(m, k));
        CHECK(k == dense_rational_kernel(ones, 3));
    }
}

TEST_CASE("rank_multi_prime examples") {
    PrimeStream ps(0);
    auto primes = ps.take(2);
    CHECK(rank_multi_prime(SparseMatrix::identity(4, Field::rationals()), primes) == 4);
    CHECK(rank_multi_prime(SparseMatrix::from_dense({{2, 4}, {1, 2}}, Field::rationals()), primes) == 1);
    std::mt19937_64 rng(11);
    auto m = random_product(rng, 50, 30);
    CHECK(dense_rational_rank(m.dense()) == 30);
    CHECK(rank_multi_prime(m, primes) == 30);
}

TEST_CASE("unlucky prime gives NoConsensus") {
    // 2^31 - 1 divides the determinant of this 2x2 matrix.
    auto m = SparseMatrix::from_dense({{1, 0}, {0, 2147483647}}, Field::rationals());
    CHECK_THROWS_AS(rank_multi_prime(m, {2147483647u, 2147483629u}), NoConsensus);
}

TEST_CASE("rank-nullity on large sparse rational matrices") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> val(-3, 3);
    std::uniform_int_distribution<std::size_t> col(0, 399);
    SparseMatrix m(300, 400, Field::rationals());
    for (std::size_t i = 0; i < 300; ++i)
        for (int k = 0; k < 4; ++k) m.add_to(i, col(rng), val(rng));
    // force dependencies
    for (std::size_t i = 250; i < 300; ++i) m.set_row(i, (m.row(i - 250)));
    auto k = kernel_basis(m);
    CHECK(kills(m, k));
    CHECK(rank(m) + k.size() == m.ncols());
}

TEST_CASE("finite field kernels, sparse path") {
    std::mt19937_64 rng(5);
    for (std::uint32_t p : {2u, 3u, 101u}) {
        Field f = Field::prime(p);
        std::uniform_int_distribution<std::uint32_t> val(0, p - 1);
        std::uniform_int_distribution<std::size_t> col(0, 299);
        SparseMatrix m(200, 300, f);
        for (std::size_t i = 0; i < 200; ++i)
            for (int k = 0; k < 5; ++k) m.add_to(i, col(rng), f.from_int(val(rng)));
        auto k = kernel_basis(m);
        CHECK(kills(m, k));
        CHECK(rank(m) + k.size() == 300);
    }
}

TEST_CASE("modular soundness on 100 random small matrices") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> val(-2, 2), dim(1, 7);
    for (int t = 0; t < 100; ++t) {
        int r = dim(rng), c = dim(rng);
        std::vector<std::vector<Scalar>> a(r, std::vector<Scalar>(c));
        for (auto& row : a)
            for (auto& v : row) v = val(rng);
        std::size_t qrank = dense_rational_rank(a);
        for (std::uint32_t p : {2u, 3u, 5u}) {
            auto m = SparseMatrix::from_dense(a, Field::prime(p));
            CHECK(rank(m) <= qrank);
        }
    }
}

TEST_CASE("determinism of rational kernels") {
    std::mt19937_64 rng(23);
    auto m = random_product(rng, 40, 25);
    SparseMatrix wide(40, 240, Field::rationals());
    for (std::size_t i = 0; i < 40; ++i)
        for (std::size_t j = 0; j < 240; ++j) wide.set(i, j, m.get(i, j % 40) * (1 + int(j / 40)));
    auto a = kernel_basis(wide, 9);
    auto b = kernel_basis(wide, 9);
    CHECK(a == b);
    CHECK(kills(wide, a));
    CHECK(a.size() == 240 - 25);
}

TEST_CASE("rational reconstruction") {
    mpz_class m = mpz_class(2147483647) * mpz_class(2147483629);
    Scalar x(-355, 113);
    mpz_class a = (x.get_num() * [&] {
        mpz_class inv, d = x.get_den();
        mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
        return inv;
    }()) % m;
    if (a < 0) a += m;
    auto r = rational_reconstruct(a, m);
    REQUIRE(r);
    CHECK(*r == x);
}

TEST_CASE("content reduction") {
    Vector v{Scalar(2, 3), Scalar(-4, 3), 0};
    CHECK(content_reduced(v) == Vector{1, -2, 0});
    CHECK(content_reduced(Vector{-6, 9}) == Vector{2, -3});
}
