#include <doctest.h>

#include "stabforge/errors.hpp"
#include "stabforge/invariants/invariants.hpp"
#include "stabforge/invariants/named_forms.hpp"
#include "stabforge/invariants/weyl.hpp"
#include "stabforge/repforge/constructions.hpp"
#include "stabforge/repforge/recipe.hpp"

using namespace stabforge;
using namespace stabforge::invariants;
using exactla::Field;
using exactla::Scalar;
using polyspace::Exponent;

namespace {

const Field Q = Field::rationals();

GroupAction act(const std::string& type, const std::string& recipe, const Field& k) {
    return action_of(repforge::build_recipe(type, recipe, k));
}

SparsePoly term(const Field& k, Exponent e, long c) { return SparsePoly::monomial(k, e, k.from_int(c)); }

}  // namespace

TEST_CASE("invariant spaces") {
    auto sl3 = act("A2", "adjoint", Q);
    CHECK(invariant_report(sl3, 2, 4, Mode::Lie).dims() == std::vector<std::size_t>{1, 1, 1});
    CHECK(invariant_report(sl3, 1, 4, Mode::Group).dims() == std::vector<std::size_t>{0, 1, 1, 1});

    auto g7 = act("G2", "natural", Q);
    auto q = invariant_space(g7, 2, Mode::Group);
    REQUIRE(q.dim == 1);
    CHECK(q.basis[0].content() == 1);

    auto g6 = act("G2", "head:natural", Field::prime(2));
    CHECK(g6.dim == 6);
    CHECK_THROWS_AS(invariant_space(g6, 2, Mode::Group), FieldTooSmall);
    auto big = g6.over(sampling_field(g6, 2));
    CHECK(invariant_space(big, 2, Mode::Group).dim == 0);
    auto rep = invariant_report(big, 1, 2, Mode::Group);
    CHECK(rep.caveat.has_value());
    CHECK(rep.samples_used == group_samples(big, 2));
}

TEST_CASE("Lie invariance is weaker than group invariance at p = 2") {
    auto sl2 = act("A1", "natural", Field::prime(2));
    auto lie = invariant_space(sl2, 2, Mode::Lie);
    auto grp = invariant_space(sl2.over(sampling_field(sl2, 2)), 2, Mode::Group);
    CHECK(lie.dim == 2);
    CHECK(grp.dim == 0);
    CHECK(lie.dim > grp.dim);
}

TEST_CASE("stabilizer algebras") {
    SparsePoly sq(4, Q);
    for (std::size_t i = 0; i < 4; ++i) {
        Exponent e(4, 0);
        e[i] = 2;
        sq.add_term(e, 1);
    }
    auto s = stabilizer_algebra(sq);
    CHECK(s.dim == 6);
    CHECK_FALSE(s.contains_scalars);

    SparsePoly det = term(Q, {1, 0, 0, 1}, 1) - term(Q, {0, 1, 1, 0}, 1);
    CHECK(stabilizer_algebra(det).dim == 6);

    auto sq2 = sq.reduced(Field::prime(2));
    CHECK(stabilizer_algebra(sq2).contains_scalars);
    auto cube = term(Field::prime(3), {3, 0}, 1) + term(Field::prime(3), {0, 3}, 1);
    CHECK(stabilizer_algebra(cube).contains_scalars);

    auto f = so5_cubic();
    CHECK(f.degree() == 3);
    CHECK(f.nvars() == 14);
    auto st = stabilizer_algebra(f);
    CHECK(st.dim == 10);
    for (const auto& x : st.basis) CHECK(polyspace::derivation_action(x, f).is_zero());
}

TEST_CASE("named forms") {
    CHECK(named_forms().size() == 4);
    CHECK(named_form("g2_quadric").nvars() == 7);
    CHECK(named_form("sl3_cubic").degree() == 3);
    CHECK_THROWS_AS(named_form("e8_octic"), ParseError);
}

TEST_CASE("generators lie in the stabilizer of their invariants") {
    auto sl3 = act("A2", "adjoint", Q);
    auto cubic = invariant_space(sl3, 3, Mode::Lie).basis.at(0);
    for (const auto& x : sl3.lie) CHECK(polyspace::derivation_action(x, cubic).is_zero());
    CHECK(stabilizer_algebra(cubic).dim == 8);
}

TEST_CASE("orbit dimensions") {
    auto sl2 = act("A1", "natural", Q);
    CHECK(orbit_dim(sl2, {Scalar(1), Scalar(0)}) == 2);
    CHECK(orbit_dim(sl2, {Scalar(0), Scalar(0)}) == 0);

    auto rep = repforge::build_recipe("A2", "adjoint", Q);
    auto alg = repforge::algebra_for("A2");
    exactla::Vector h(rep.dim, Scalar(0));
    h[alg->cartan_basis(0)] = 1;
    CHECK(orbit_dim(action_of(rep), h) == 6);

    for (int n = 2; n <= 4; ++n) {
        auto a = act("A" + std::to_string(n - 1), "adjoint", Q);
        auto g = generic_invariant_dim(a, 3, 7);
        CHECK(g.dim == std::size_t(n - 1));
        CHECK(g.hits >= 2);
    }
    CHECK(generic_invariant_dim(act("D5", "halfspin:+", Q)).dim == 0);
    CHECK(generic_invariant_dim(act("D6", "halfspin:+", Q)).dim == 1);
    // Inseparable orbit map: Lie(G2) v is 5-dim but the orbit is open.
    auto g6 = act("G2", "head:natural", Field::prime(2));
    auto gen = generic_invariant_dim(g6);
    CHECK(gen.dim == 0);
    CHECK(orbit_dim(image_lie_algebra(g6.over(gen.field)),
                    exactla::Vector(6, g6.over(gen.field).field.from_code(12345))) <= 5);

    auto m0 = act("A3", "modscalars:adjoint", Field::prime(2));
    CHECK(m0.dim == 14);
    CHECK(generic_invariant_dim(m0).dim == 2);
}

TEST_CASE("subgroup comparisons") {
    auto rep = repforge::build_recipe("A2", "adjoint", Q);
    repforge::SubalgebraSpec cartan;
    cartan.ambient = repforge::algebra_for("A2");
    cartan.field = Q;
    for (int i = 0; i < 2; ++i) {
        exactla::Vector v(8, Scalar(0));
        v[cartan.ambient->cartan_basis(i)] = 1;
        cartan.elements.push_back(v);
        repforge::IntVec c(2, 0);
        c[i] = 1;
        cartan.cocharacters.push_back(c);
    }
    cartan.description = "Cartan";
    auto cmp = compare_invariants(action_of(rep), action_of(rep, cartan), 2, 2, Mode::Lie);
    CHECK(cmp[0].full == 1);
    CHECK(cmp[0].sub == 6);
    CHECK(cmp[0].differ());

    auto g2 = repforge::algebra_for("G2");
    auto v7 = repforge::build_recipe("G2", "head:natural", Field::prime(3));
    auto a2 = repforge::short_root_subalgebra(g2, Field::prime(3));
    auto full = action_of(v7);
    auto sub = action_of(v7, a2);
    Field k = sampling_field(full, 2);
    auto c = compare_invariants(full.over(k), sub.over(k), 1, 2, Mode::Group);
    CHECK(c[0].full == 0);
    CHECK(c[0].sub == 0);
    CHECK(c[1].full == 1);
    CHECK(c[1].sub == 1);
}

TEST_CASE("Chevalley restriction") {
    auto alg = repforge::algebra_for("A1");
    auto sl2 = act("A1", "adjoint", Q);
    auto killing = invariant_space(sl2, 2, Mode::Lie).basis.at(0);
    auto r = chevalley_restriction(killing, *alg);
    REQUIRE(r.size() == 1);
    CHECK(r.terms().begin()->first == Exponent{2});

    auto a2 = repforge::algebra_for("A2");
    auto cubic = invariant_space(act("A2", "adjoint", Q), 3, Mode::Lie).basis.at(0);
    auto rc = chevalley_restriction(cubic, *a2);
    CHECK_FALSE(rc.is_zero());
    CHECK(is_weyl_invariant(rc, a2->datum()));

    CHECK(chevalley_restriction(SparsePoly(8, Q), *a2).is_zero());
    CHECK_THROWS_AS(chevalley_restriction(SparsePoly(3, Q), *a2), DimensionMismatch);
}

TEST_CASE("Weyl invariants") {
    auto a2 = rootsys::build_root_system("A2");
    CHECK(weyl_invariant_space(a2, 2, Q).dim == 1);
    CHECK(weyl_invariant_space(a2, 3, Q).dim == 1);
    auto p1 = weyl_invariant_space(a2, 2, Q).basis.at(0);
    CHECK(p1.content() == 1);
    CHECK(is_weyl_invariant(p1, a2));

    for (const char* t : {"B2", "G2", "D4"}) {
        auto d = rootsys::build_root_system(t);
        for (unsigned k = 1; k <= 6; ++k) {
            CHECK(weyl_invariant_space(d, k, Q).dim == weyl_invariant_bipartite(d, k, Q).dim);
            CHECK(weyl_invariant_space(d, k, Field::prime(2)).dim ==
                  weyl_invariant_bipartite(d, k, Field::prime(2)).dim);
        }
    }
    auto e8 = rootsys::build_root_system("E8");
    CHECK(weyl_invariant_space(e8, 2, Q).dim == 1);
    CHECK(weyl_invariant_space(e8, 4, Q).dim == 1);
}

TEST_CASE("invariant degrees") {
    using V = std::vector<long>;
    CHECK(rootsys::invariant_degree_sequence(rootsys::build_root_system("A2")) == V{2, 3});
    CHECK(rootsys::invariant_degree_sequence(rootsys::build_root_system("G2")) == V{2, 6});
    CHECK(rootsys::invariant_degree_sequence(rootsys::build_root_system("F4")) == V{2, 6, 8, 12});
    CHECK(rootsys::invariant_degree_sequence(rootsys::build_root_system("D4")) == V{2, 4, 4, 6});
}
