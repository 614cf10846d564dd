#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <map>

#include "stabforge/errors.hpp"
#include "stabforge/exactla/linalg.hpp"
#include "stabforge/repforge/constructions.hpp"
#include "stabforge/repforge/recipe.hpp"
#include "stabforge/repforge/subalgebra.hpp"

using namespace stabforge;
using namespace stabforge::repforge;
using exactla::Field;
using exactla::Scalar;
using exactla::SparseMatrix;

namespace {

const Field Q = Field::rationals();

std::size_t binom(std::size_t n, std::size_t k) {
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

bool nilpotent(const SparseMatrix& x) {
    SparseMatrix p = x;
    for (std::size_t i = 0; i < x.nrows() && !p.is_zero(); ++i) p = p * x;
    return p.is_zero();
}

void check_invariants(const Representation& rep) {
    CAPTURE(rep.recipe);
    CHECK(serre_relations_hold(rep));
    CHECK(curves_consistent(rep));
    CHECK(rep.weights.size() == rep.dim);
    for (int i = 0; i < rep.rank(); ++i) {
        CHECK(nilpotent(rep.e[i]));
        CHECK(nilpotent(rep.f[i]));
    }
}

// x(s) x(t) = x(s + t) at a few sample points.
bool one_parameter(const PolyMatrix& x, const Field& k) {
    for (long s : {1, 2, 5})
        for (long t : {3, -1})
            if (x.at(k.from_int(s)) * x.at(k.from_int(t)) != x.at(k.from_int(s + t))) return false;
    return true;
}

std::size_t radical_dim(const Representation& rep) {
    std::vector<exactla::Triple> t;
    std::size_t row = 0;
    for (const auto& m : rep.lie_generators()) {
        for (const auto& e : m.triples()) t.push_back({row + e.row, e.col, e.value});
        row += m.nrows();
    }
    return exactla::kernel_basis(SparseMatrix::from_triples(row, rep.dim, rep.field, t)).size();
}

}  // namespace

TEST_CASE("natural modules") {
    auto a1 = natural_rep('A', 1, Q);
    CHECK(a1.dim == 2);
    CHECK(a1.e[0] == SparseMatrix::from_dense({{0, 1}, {0, 0}}, Q));
    check_invariants(a1);

    for (auto [label, rank, dim] : std::vector<std::tuple<char, int, std::size_t>>{
             {'A', 3, 4}, {'B', 2, 5}, {'B', 3, 7}, {'C', 2, 4}, {'C', 3, 6}, {'D', 4, 8}, {'D', 6, 12}}) {
        CAPTURE(label);
        CAPTURE(rank);
        auto rep = natural_rep(label, rank, Q);
        CHECK(rep.dim == dim);
        check_invariants(rep);
        if (label != 'A') {
            auto j = natural_form(label, rank, Q);
            for (const auto& x : rep.lie_generators()) CHECK((x.transpose() * j + j * x).is_zero());
        }
    }
    auto c3 = natural_rep('C', 3, Q);
    auto j = natural_form('C', 3, Q);
    CHECK(j.transpose() == j.scaled(-1));

    auto d6 = natural_rep('D', 6, Field::prime(2));
    CHECK(d6.dim == 12);
    check_invariants(d6);
    CHECK_THROWS_AS(natural_rep('E', 6, Q), InvalidType);
}

TEST_CASE("spin modules") {
    auto b3 = half_spin_rep('B', 3, Q);
    CHECK(b3.dim == 8);
    check_invariants(b3);
    auto d6 = half_spin_rep('D', 6, Q, 1);
    CHECK(d6.dim == 32);
    check_invariants(d6);
    auto d5 = half_spin_rep('D', 5, Field::prime(2), -1);
    CHECK(d5.dim == 16);
    check_invariants(d5);
    // Minuscule: every weight is a Weyl conjugate of the highest, all of multiplicity one.
    std::set<IntVec> distinct(d6.weights.begin(), d6.weights.end());
    CHECK(distinct.size() == 32);
    CHECK_THROWS_AS(half_spin_rep('C', 3, Q), InvalidType);
}

TEST_CASE("adjoint modules") {
    auto a1 = adjoint_rep(algebra_for("A1"), Q);
    CHECK(a1.dim == 3);
    std::multiset<Scalar> diag;
    for (std::size_t i = 0; i < 3; ++i) diag.insert(a1.h[0].get(i, i));
    CHECK(diag == std::multiset<Scalar>{-2, 0, 2});
    check_invariants(a1);

    auto a3 = adjoint_rep(algebra_for("A3"), Field::prime(2));
    CHECK(a3.dim == 15);
    check_invariants(a3);
    CHECK(radical_dim(a3) == 1);

    auto g2 = adjoint_rep(algebra_for("G2"), Q);
    std::size_t zero = std::count(g2.weights.begin(), g2.weights.end(), IntVec{0, 0});
    CHECK(zero == 2);
}

TEST_CASE("functors") {
    auto a3 = natural_rep('A', 3, Q);
    auto w2 = wedge_power(a3, 2);
    CHECK(w2.dim == 6);
    check_invariants(w2);

    auto b2 = natural_rep('B', 2, Q);
    auto s2 = sym_power(b2, 2);
    CHECK(s2.dim == 15);
    check_invariants(s2);
    auto tz = trace_zero(s2);
    CHECK(tz.dim == 14);
    check_invariants(tz);

    auto a1 = natural_rep('A', 1, Field::prime(2));
    auto tw = tensor(a1, frobenius_twist(a1, 1));
    CHECK(tw.dim == 4);
    CHECK(curves_consistent(tw));
    CHECK(tw.x_pos[0].degree() == 3);
    CHECK_THROWS_AS(frobenius_twist(natural_rep('A', 1, Q), 1), TwistInCharZero);
    CHECK_THROWS_AS(tensor(a1, natural_rep('A', 1, Q)), FieldMismatch);

    auto c3 = natural_rep('C', 3, Field::prime(3));
    for (unsigned d = 1; d <= 3; ++d) {
        CHECK(sym_power(c3, d).dim == binom(6 + d - 1, d));
        CHECK(wedge_power(c3, d).dim == binom(6, d));
        check_invariants(sym_power(c3, d));
        check_invariants(wedge_power(c3, d));
    }
    auto dl = dual(natural_rep('A', 2, Q));
    check_invariants(dl);
    CHECK(dl.weights[0] == IntVec{-1, 0});

    // sl_4 adjoint in characteristic 2: trace-zero matrices modulo scalars.
    auto gl = tensor(natural_rep('A', 3, Field::prime(2)), dual(natural_rep('A', 3, Field::prime(2))));
    auto m0 = trace_zero(gl);
    CHECK(m0.dim == 15);
    auto mbar = mod_scalars(m0);
    CHECK(mbar.dim == 14);
    check_invariants(mbar);
}

TEST_CASE("group generators are one-parameter subgroups") {
    for (const auto& rep : {natural_rep('C', 3, Q), half_spin_rep('D', 5, Field::prime(3), 1),
                            sym_power(natural_rep('A', 2, Field::prime(5)), 3)}) {
        for (const auto& x : rep.curves()) CHECK(one_parameter(x, rep.field));
    }
}

TEST_CASE("Weyl modules") {
    CHECK(weyl_dimension(rootsys::build_root_system("E8"), {1, 0, 0, 0, 0, 0, 0, 0}) == 3875);
    CHECK(weyl_dimension(rootsys::build_root_system("E7"), {2, 0, 0, 0, 0, 0, 0}) == 7371);
    CHECK(weyl_dimension(rootsys::build_root_system("C4"), {0, 1, 0, 1}) == 792);

    auto a2 = weyl_module(algebra_for("A2"), {2, 0}, Q);
    CHECK(a2.dim == 6);
    check_invariants(a2);
    auto g2 = weyl_module(algebra_for("G2"), {2, 0}, Q);
    CHECK(g2.dim == 27);
    check_invariants(g2);
    auto f4 = weyl_module(algebra_for("F4"), {0, 0, 0, 1}, Q);
    CHECK(f4.dim == 26);
    check_invariants(f4);

    // Weight multiset is stable under every simple reflection.
    for (const auto& rep : {g2, f4}) {
        std::multiset<IntVec> w(rep.weights.begin(), rep.weights.end());
        for (int i = 0; i < rep.rank(); ++i) {
            std::multiset<IntVec> r;
            for (auto v : rep.weights) {
                long c = v[i];
                for (int j = 0; j < rep.rank(); ++j) v[j] -= c * rep.cartan[j][i];
                r.insert(v);
            }
            CHECK(r == w);
        }
    }
    CHECK_THROWS_AS(weyl_module(algebra_for("E8"), {1, 0, 0, 0, 0, 0, 0, 0}, Q), TooLarge);
}

TEST_CASE("irreducible heads") {
    auto f4 = irreducible_head(weyl_module(algebra_for("F4"), {0, 0, 0, 1}, Field::prime(3)));
    CHECK(f4.dim == 25);
    check_invariants(f4);
    auto g2 = irreducible_head(weyl_module(algebra_for("G2"), {1, 0}, Field::prime(2)));
    CHECK(g2.dim == 6);
    check_invariants(g2);
    auto a2 = irreducible_head(weyl_module(algebra_for("A2"), {1, 1}, Field::prime(3)));
    CHECK(a2.dim == 7);
    check_invariants(a2);
    auto g2p5 = irreducible_head(weyl_module(algebra_for("G2"), {1, 0}, Field::prime(5)));
    CHECK(g2p5.dim == 7);
    for (const auto& x : f4.curves()) CHECK(one_parameter(x, f4.field));
}

TEST_CASE("recipes") {
    auto p2 = Field::prime(2);
    CHECK(build_recipe("A3", "wedge:2:natural", Q).dim == 6);
    CHECK(build_recipe("B2", "tracezero:sym:2:natural", Q).dim == 14);
    CHECK(build_recipe("A1", "tensor:natural:twist:1:natural", p2).dim == 4);
    CHECK(build_recipe("D6", "halfspin:+", p2).dim == 32);
    CHECK(build_recipe("B3", "spin", Q).dim == 8);
    CHECK(build_recipe("G2", "head:natural", p2).dim == 6);
    CHECK(build_recipe("B3", "head:natural", p2).dim == 6);
    CHECK(build_recipe("C3", "head", Field::prime(3), IntVec{0, 1, 0}).dim == 13);
    CHECK(build_recipe("A2", "highest:2,0", Q).dim == 6);
    CHECK_THROWS_AS(build_recipe("A2", "sym:x:natural", Q), ParseError);
    CHECK_THROWS_AS(build_recipe("A2", "natural:extra", Q), ParseError);
    CHECK_THROWS_AS(build_recipe("A2", "bogus", Q), ParseError);
    CHECK_THROWS_AS(build_recipe("A2", "head", Q), ParseError);
    CHECK_THROWS_AS(build_recipe("A2", "twist:1:natural", Q), TwistInCharZero);
    CHECK_THROWS_AS(build_recipe("A2", "highest:1,0,0", Q), DimensionMismatch);
}

TEST_CASE("subalgebra restriction") {
    auto g2 = algebra_for("G2");
    auto spec = short_root_subalgebra(g2, Field::prime(3));
    CHECK(spec.elements.size() == 8);
    auto v7 = build_recipe("G2", "head:natural", Field::prime(3));
    CHECK(v7.dim == 7);
    auto mats = restrict_rep(v7, spec);
    CHECK(mats.size() == 8);
    CHECK(spec.unipotents.size() == 4);
    CHECK_THROWS_AS(short_root_subalgebra(g2, Q), ClosureFailure);

    auto d6 = natural_rep('D', 6, Q);
    exactla::Vector v0(12, Scalar(0));
    v0[5] = 1;
    v0[6] = 1;
    auto stab = vector_stabilizer(d6, v0, Q);
    CHECK(stab.elements.size() == 55);
    CHECK(stab.cocharacters.size() == 5);
    CHECK(stab.unipotents.size() == 10);
    auto spin = half_spin_rep('D', 6, Field::prime(2), 1);
    CHECK(restrict_rep(spin, stab).size() == 55);
    for (const auto& x : restrict_curves(spin, stab)) CHECK(one_parameter(x, spin.field));

    auto c3 = algebra_for("C3");
    auto so6 = short_root_subalgebra(c3, Field::prime(2));
    CHECK(so6.elements.size() == 15);
    auto l14 = build_recipe("C3", "head", Field::prime(2), IntVec{0, 1, 0});
    CHECK(restrict_rep(l14, so6).size() == 15);
}

TEST_CASE("rep json round trip") {
    auto rep = build_recipe("A1", "tensor:natural:twist:1:natural", Field::prime(2));
    auto back = rep_from_json(to_json(rep));
    CHECK(back.dim == rep.dim);
    CHECK(back.e == rep.e);
    CHECK(back.weights == rep.weights);
    CHECK(back.curves().size() == rep.curves().size());
    CHECK(back.x_pos[0] == rep.x_pos[0]);
    std::string path = "test_rep_roundtrip.rep.json";
    save_rep(rep, path);
    CHECK(load_rep(path).h == rep.h);
    std::remove(path.c_str());
    CHECK_THROWS_AS(rep_from_json("{\"type\": 3}"), ParseError);
}
