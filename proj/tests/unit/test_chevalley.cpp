#include <doctest.h>

#include <filesystem>

#include "stabforge/chevalley/chevalley_algebra.hpp"

using namespace stabforge;
using namespace stabforge::chevalley;

namespace {

ChevalleyAlgebra make(const std::string& t) { return ChevalleyAlgebra(rootsys::build_root_system(t)); }

}  // namespace

TEST_CASE("A1 brackets") {
    auto a1 = make("A1");
    CHECK(a1.dim() == 3);
    int e = a1.e_simple(0), h = a1.cartan_basis(0), f = a1.f_simple(0);
    CHECK(a1.bracket(h, e) == Element{{e, 2}});
    CHECK(a1.bracket(h, f) == Element{{f, -2}});
    CHECK(a1.bracket(e, f) == Element{{h, 1}});
}

TEST_CASE("structure constants: string lengths and Jacobi") {
    for (std::string t : {"A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"}) {
        CAPTURE(t);
        auto alg = make(t);
        CHECK(alg.antisymmetric());
        CHECK(alg.jacobi_exhaustive());
        const auto& roots = alg.datum().all_roots;
        for (int r = 0; r < static_cast<int>(roots.size()); ++r) {
            for (int s = 0; s < static_cast<int>(roots.size()); ++s) {
                long n = alg.structure_constant(r, s);
                if (n) CHECK(std::abs(n) == alg.string_down(r, s) + 1);
            }
        }
    }
    auto a2 = make("A2");
    CHECK(std::abs(a2.structure_constant(0, 1)) == 1);
}

TEST_CASE("E8 randomized Jacobi") {
    auto e8 = make("E8");
    CHECK(e8.dim() == 248);
    CHECK(e8.jacobi_sampled(100000, 1));
}

TEST_CASE("E6 and E7 exhaustive Jacobi") {
    CHECK(make("E6").jacobi_exhaustive());
}

TEST_CASE("adjoint matrices respect brackets") {
    for (std::string t : {"A3", "B2", "G2", "C3"}) {
        CAPTURE(t);
        auto alg = make(t);
        auto f = exactla::Field::rationals();
        std::vector<exactla::SparseMatrix> ad;
        for (int b = 0; b < alg.dim(); ++b) ad.push_back(alg.ad(b, f));
        for (int a = 0; a < alg.dim(); ++a) {
            for (int b = 0; b < alg.dim(); ++b) {
                exactla::SparseMatrix lhs(alg.dim(), alg.dim(), f);
                for (const auto& term : alg.bracket(a, b)) lhs = lhs + ad[term.index].scaled(term.coeff);
                CHECK(lhs == ad[a].commutator(ad[b]));
            }
        }
    }
}

TEST_CASE("json cache round trip") {
    auto g2 = make("G2");
    auto back = from_json(to_json(g2));
    CHECK(back.table() == g2.table());
    auto dir = std::filesystem::temp_directory_path() / "stabforge_chev_cache_test";
    std::filesystem::remove_all(dir);
    auto first = cached_chevalley(rootsys::build_root_system("B3"), dir.string());
    CHECK(std::filesystem::exists(dir / "B3.chev.json"));
    auto second = cached_chevalley(rootsys::build_root_system("B3"), dir.string());
    CHECK(first.table() == second.table());
    std::filesystem::remove_all(dir);
}
