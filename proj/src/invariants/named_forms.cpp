#include "stabforge/invariants/named_forms.hpp"

#include "stabforge/errors.hpp"
#include "stabforge/invariants/invariants.hpp"
#include "stabforge/repforge/recipe.hpp"

namespace stabforge::invariants {

using exactla::Field;

namespace {

SparsePoly lone_invariant(const std::string& type, const std::string& recipe, unsigned d) {
    auto a = action_of(repforge::build_recipe(type, recipe, Field::rationals()));
    auto s = invariant_space(a, d, Mode::Lie);
    if (s.dim != 1) throw Error(type + " " + recipe + ": expected one invariant of degree " + std::to_string(d));
    return s.basis[0];
}

}  // namespace

SparsePoly so5_cubic() {
    const Field q = Field::rationals();
    const std::size_t n = 14;
    std::vector<std::vector<SparsePoly>> s(5, std::vector<SparsePoly>(5, SparsePoly(n, q)));
    std::size_t v = 0;
    for (int i = 0; i < 4; ++i) s[i][i] = SparsePoly::variable(n, q, v++);
    s[4][4] = SparsePoly(n, q) - s[0][0] - s[1][1] - s[2][2] - s[3][3];
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) s[i][j] = s[j][i] = SparsePoly::variable(n, q, v++);
    SparsePoly f(n, q);
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b)
            for (int c = b + 1; c < 5; ++c) {
                const int i[3] = {a, b, c};
                auto m = [&](int r, int k) -> const SparsePoly& { return s[i[r]][i[k]]; };
                f = f + m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                    m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                    m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
            }
    return f;
}

SparsePoly sl3_cubic() { return lone_invariant("A2", "adjoint", 3); }
SparsePoly g2_quadric() { return lone_invariant("G2", "natural", 2); }
SparsePoly f4_cubic() { return lone_invariant("F4", "natural", 3); }

std::vector<std::string> named_forms() { return {"so5_cubic", "sl3_cubic", "g2_quadric", "f4_cubic"}; }

SparsePoly named_form(const std::string& name) {
    if (name == "so5_cubic") return so5_cubic();
    if (name == "sl3_cubic") return sl3_cubic();
    if (name == "g2_quadric") return g2_quadric();
    if (name == "f4_cubic") return f4_cubic();
    throw ParseError("unknown form '" + name + "'");
}

}  // namespace stabforge::invariants
