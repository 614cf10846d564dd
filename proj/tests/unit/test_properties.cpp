#include <doctest.h>

#include <map>
#include <random>

#include "stabforge/cli/report_json.hpp"
#include "stabforge/exactla/linalg.hpp"
#include "stabforge/invariants/invariants.hpp"
#include "stabforge/invariants/named_forms.hpp"
#include "stabforge/invariants/weyl.hpp"
#include "stabforge/papertables/tables.hpp"
#include "stabforge/repforge/constructions.hpp"
#include "stabforge/repforge/recipe.hpp"

using namespace stabforge;
using exactla::Field;
using exactla::Scalar;
using exactla::SparseMatrix;
using exactla::Vector;
using polyspace::Exponent;
using polyspace::SparsePoly;

namespace {

const Field Q = Field::rationals();

SparsePoly random_form(std::mt19937_64& rng, std::size_t n, unsigned d, const Field& k) {
    SparsePoly f(n, k);
    std::uniform_int_distribution<std::size_t> var(0, n - 1);
    for (int t = 0; t < 5; ++t) {
        Exponent e(n, 0);
        for (unsigned i = 0; i < d; ++i) ++e[var(rng)];
        f.add_term(e, k.from_int(static_cast<long long>(rng() % 19) - 9));
    }
    return f;
}

SparseMatrix random_matrix(std::mt19937_64& rng, std::size_t n, const Field& k) {
    SparseMatrix m(n, n, k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.add_to(i, j, k.from_int(static_cast<long long>(rng() % 7) - 3));
    return m;
}

Vector random_vector(std::mt19937_64& rng, std::size_t n, const Field& k) {
    Vector v(n);
    for (auto& x : v) x = k.from_int(static_cast<long long>(rng() % 21) - 10);
    return v;
}

// Columns X_i v.
SparseMatrix action_map(const std::vector<SparseMatrix>& ops, const Vector& v) {
    const Field& k = ops.at(0).field();
    SparseMatrix m(v.size(), ops.size(), k);
    for (std::size_t c = 0; c < ops.size(); ++c) {
        auto w = ops[c].apply(v);
        for (std::size_t r = 0; r < w.size(); ++r)
            if (!k.is_zero(w[r])) m.set(r, c, w[r]);
    }
    return m;
}

SparseMatrix ad_power(const SparseMatrix& x, const SparseMatrix& y, long k) {
    SparseMatrix r = y;
    for (long i = 0; i < k; ++i) r = x.commutator(r);
    return r;
}

}  // namespace

TEST_CASE("rank-nullity for orbit maps") {
    std::mt19937_64 rng(31);
    struct Case {
        std::string type, recipe;
        Field k;
    };
    for (const auto& c : {Case{"A2", "adjoint", Q}, Case{"B3", "spin", Q}, Case{"C2", "natural", Q},
                          Case{"G2", "natural", Q}, Case{"A3", "adjoint", Field::prime(2)},
                          Case{"B2", "natural", Field::prime(3)}, Case{"G2", "head:natural", Field::prime(2)}}) {
        CAPTURE(c.type + " " + c.recipe + " " + c.k.name());
        auto action = invariants::action_of(repforge::build_recipe(c.type, c.recipe, c.k));
        auto alg = invariants::image_lie_algebra(action);
        for (int trial = 0; trial < 3; ++trial) {
            auto v = random_vector(rng, action.dim, c.k);
            auto m = action_map(alg, v);
            std::size_t orbit = invariants::orbit_dim(alg, v);
            CHECK(orbit == exactla::rank(m));
            CHECK(orbit + exactla::kernel_basis(m).size() == alg.size());
            CHECK(orbit <= action.dim);
        }
    }
}

TEST_CASE("rank-nullity for stabilizers of forms") {
    for (const auto& name : {"so5_cubic", "sl3_cubic", "g2_quadric"}) {
        CAPTURE(name);
        auto f = invariants::named_form(name);
        std::size_t n = f.nvars();
        std::map<Exponent, std::size_t> row;
        std::vector<SparsePoly> cols;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                SparseMatrix e(n, n, Q);
                e.set(j, k, 1);
                cols.push_back(polyspace::derivation_action(e, f));
                for (const auto& [m, c] : cols.back().terms()) row.emplace(m, row.size());
            }
        SparseMatrix d(row.size(), cols.size(), Q);
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (const auto& [m, v] : cols[c].terms()) d.set(row.at(m), c, v);
        auto s = invariants::stabilizer_algebra(f, false);
        CHECK(s.dim + exactla::rank(d) == n * n);
    }
}

TEST_CASE("derivations: Euler, Leibniz, bracket and chain rules") {
    std::mt19937_64 rng(5);
    for (auto k : {Q, Field::prime(2), Field::prime(3), Field::prime(7)}) {
        CAPTURE(k.name());
        for (int trial = 0; trial < 15; ++trial) {
            unsigned d = 1 + trial % 5;
            auto f = random_form(rng, 4, d, k);
            auto g = random_form(rng, 4, 2, k);
            auto x = random_matrix(rng, 4, k), y = random_matrix(rng, 4, k);

            CHECK(polyspace::derivation_action(SparseMatrix::identity(4, k), f) == f.scaled(k.from_int(d)));
            CHECK(polyspace::derivation_action(x, f * g) ==
                  polyspace::derivation_action(x, f) * g + f * polyspace::derivation_action(x, g));
            auto xy = polyspace::derivation_action(x, polyspace::derivation_action(y, f));
            auto yx = polyspace::derivation_action(y, polyspace::derivation_action(x, f));
            CHECK(xy - yx == polyspace::derivation_action(y.commutator(x), f));
        }
    }

    // D_X(f o g) = (D_{g X g^-1} f) o g for g on a unipotent curve.
    auto rep = repforge::build_recipe("A2", "natural", Q);
    for (const auto& curve : rep.curves()) {
        auto g = curve.at(3), ginv = curve.at(-3);
        CHECK(g * ginv == SparseMatrix::identity(3, Q));
        auto f = random_form(rng, 3, 3, Q);
        auto x = random_matrix(rng, 3, Q);
        CHECK(polyspace::derivation_action(x, polyspace::substitute_linear(f, g)) ==
              polyspace::substitute_linear(polyspace::derivation_action(g * x * ginv, f), g));
    }
}

TEST_CASE("reflection closure of root systems") {
    for (const char* type : {"A1", "A4", "B3", "C4", "D5", "E6", "E7", "E8", "F4", "G2"}) {
        CAPTURE(type);
        auto r = rootsys::build_root_system(type);
        CHECK(r.n_roots() == 2 * r.n_positive());
        for (const auto& beta : r.all_roots) {
            rootsys::IntVec neg = beta;
            for (auto& c : neg) c = -c;
            CHECK(r.is_root(neg));
            for (int i = 0; i < r.rank; ++i) {
                auto s = r.reflect(beta, i);
                CHECK(r.is_root(s));
                CHECK(r.reflect(s, i) == beta);
                CHECK(r.height(s) - r.height(beta) == -r.pairing(beta, i) * r.height(r.all_roots[i]));
            }
        }
    }
}

TEST_CASE("Chevalley relations on generator matrices") {
    struct Case {
        std::string type, recipe;
        Field k;
    };
    for (const auto& c : {Case{"A3", "natural", Q}, Case{"B3", "spin", Field::prime(2)}, Case{"C3", "natural", Q},
                          Case{"D4", "natural", Field::prime(3)}, Case{"G2", "natural", Q},
                          Case{"F4", "natural", Field::prime(5)}, Case{"A2", "sym:2:natural", Field::prime(3)},
                          Case{"A2", "adjoint", Field::prime(2)}}) {
        CAPTURE(c.type + " " + c.recipe + " " + c.k.name());
        auto rep = repforge::build_recipe(c.type, c.recipe, c.k);
        int l = rep.rank();
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j) {
                long a = rep.cartan[i][j];
                auto efc = rep.e[i].commutator(rep.f[j]);
                CHECK(efc == (i == j ? rep.h[i] : SparseMatrix(rep.dim, rep.dim, c.k)));
                CHECK(rep.h[i].commutator(rep.e[j]) == rep.e[j].scaled(c.k.from_int(a)));
                CHECK(rep.h[i].commutator(rep.f[j]) == rep.f[j].scaled(c.k.from_int(-a)));
                CHECK(rep.h[i].commutator(rep.h[j]).is_zero());
                if (i != j) {
                    CHECK(ad_power(rep.e[i], rep.e[j], 1 - a).is_zero());
                    CHECK(ad_power(rep.f[i], rep.f[j], 1 - a).is_zero());
                }
            }
    }

    // ad is a Lie homomorphism on the whole Chevalley basis.
    auto alg = repforge::algebra_for("B2");
    for (auto k : {Q, Field::prime(2)}) {
        std::vector<SparseMatrix> ad;
        for (int b = 0; b < alg->dim(); ++b) ad.push_back(alg->ad(b, k));
        for (int a = 0; a < alg->dim(); ++a)
            for (int b = 0; b < alg->dim(); ++b) {
                SparseMatrix expect(alg->dim(), alg->dim(), k);
                for (const auto& t : alg->bracket(a, b)) expect = expect + ad[t.index].scaled(k.image(t.coeff));
                CHECK(ad[a].commutator(ad[b]) == expect);
            }
    }
}

TEST_CASE("one-parameter subgroups are additive") {
    struct Case {
        std::string type, recipe;
        Field k;
    };
    for (const auto& c : {Case{"A2", "sym:3:natural", Q}, Case{"C2", "natural", Field::prime(3)},
                          Case{"D5", "halfspin:+", Field::prime(2)}, Case{"G2", "adjoint", Q},
                          Case{"A1", "twist:1:natural", Field::prime(5)}}) {
        CAPTURE(c.type + " " + c.recipe + " " + c.k.name());
        auto rep = repforge::build_recipe(c.type, c.recipe, c.k);
        for (const auto& x : rep.curves()) {
            CHECK(x.at(c.k.from_int(0)) == SparseMatrix::identity(rep.dim, c.k));
            for (auto [s, t] : {std::pair{1, 2}, std::pair{-3, 4}, std::pair{2, 2}}) {
                auto ks = c.k.from_int(s), kt = c.k.from_int(t);
                CHECK(x.at(ks) * x.at(kt) == x.at(c.k.add(ks, kt)));
            }
        }
    }
}

TEST_CASE("json round trips") {
    auto alg = repforge::algebra_for("G2");
    auto back = chevalley::from_json(chevalley::to_json(*alg));
    CHECK(back.table() == alg->table());
    CHECK(chevalley::to_json(back) == chevalley::to_json(*alg));

    for (auto k : {Q, Field::prime(2), Field::prime(3)}) {
        auto rep = repforge::build_recipe("B2", "natural", k);
        auto r2 = repforge::rep_from_json(repforge::to_json(rep));
        CHECK(r2.dim == rep.dim);
        CHECK(r2.field == rep.field);
        CHECK(r2.e == rep.e);
        CHECK(r2.f == rep.f);
        CHECK(r2.h == rep.h);
        CHECK(r2.weights == rep.weights);
        CHECK(repforge::to_json(r2) == repforge::to_json(rep));
    }

    std::mt19937_64 rng(17);
    for (auto k : {Q, Field::prime(5)}) {
        auto f = random_form(rng, 5, 3, k);
        CHECK(cli::poly_from_json(cli::Json::parse(cli::poly_json(f).dump()), k, 5) == f);
        CHECK(polyspace::parse_poly(polyspace::format_poly(f), k, 5) == f);
    }

    auto action = invariants::action_of(repforge::build_recipe("A2", "adjoint", Q));
    auto report = invariants::invariant_report(action, 2, 3, invariants::Mode::Lie);
    auto j = cli::invariants_json(report, "A2");
    cli::check_schema(j);
    auto j2 = cli::Json::parse(j.dump());
    cli::check_schema(j2);
    CHECK(j2 == j);
    auto s = papertables::run_suite("badprimes", {});
    auto js = cli::Json::parse(s.to_json());
    cli::check_schema(js);
    CHECK(cli::Json::parse(js.dump()) == js);
}

TEST_CASE("deterministic reruns") {
    std::mt19937_64 rng(3);
    SparseMatrix m(6, 9, Q);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 9; ++j)
            if (rng() % 3 == 0) m.set(i, j, Scalar(static_cast<long>(rng() % 11) - 5));
    CHECK(exactla::kernel_basis(m, 4) == exactla::kernel_basis(m, 4));

    auto action = invariants::action_of(repforge::build_recipe("C2", "natural", Field::prime(2)));
    auto a = invariants::generic_invariant_dim(action, 3, 9), b = invariants::generic_invariant_dim(action, 3, 9);
    CHECK(a.dim == b.dim);
    CHECK(a.max_orbit == b.max_orbit);
    CHECK(a.hits == b.hits);

    auto sl3 = invariants::action_of(repforge::build_recipe("A2", "adjoint", Q));
    auto x = invariants::invariant_space(sl3, 3, invariants::Mode::Lie);
    auto y = invariants::invariant_space(sl3, 3, invariants::Mode::Lie);
    CHECK(x.basis == y.basis);

    auto w1 = invariants::weyl_invariant_space(rootsys::build_root_system("B3"), 4, Q, 2);
    auto w2 = invariants::weyl_invariant_space(rootsys::build_root_system("B3"), 4, Q, 2);
    CHECK(w1.basis == w2.basis);
}
