#include "stabforge/repforge/subalgebra.hpp"

#include <map>
#include <set>

#include "stabforge/errors.hpp"
#include "stabforge/exactla/lattice.hpp"
#include "stabforge/exactla/linalg.hpp"

namespace stabforge::repforge {

using exactla::Triple;
using exactla::ZVec;

namespace {

chevalley::Element to_element(const Vector& v) {
    chevalley::Element out;
    for (std::size_t b = 0; b < v.size(); ++b) {
        if (sgn(v[b]) == 0) continue;
        if (v[b].get_den() != 1) throw IntegralityFailure("subalgebra element is not integral");
        out.push_back({static_cast<int>(b), v[b].get_num().get_si()});
    }
    return out;
}

Vector to_vector(const chevalley::Element& e, std::size_t n) {
    Vector v(n, Scalar(0));
    for (const auto& t : e) v[t.index] += t.coeff;
    return v;
}

// Reduced row echelon basis of the span over `field`, with pivot columns.
struct Span {
    Field field;
    std::vector<Vector> rows;
    std::vector<std::size_t> pivots;

    Span(const std::vector<Vector>& vs, std::size_t n, const Field& k) : field(k) {
        std::vector<Triple> t;
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (sgn(vs[i][j])) t.push_back({i, j, k.image(vs[i][j])});
        rows = exactla::row_space_basis(SparseMatrix::from_triples(vs.size(), n, k, t));
        for (const auto& r : rows) {
            std::size_t p = 0;
            while (k.is_zero(r[p])) ++p;
            pivots.push_back(p);
        }
    }
    bool contains(Vector v) const {
        for (auto& x : v) x = field.image(x);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            Scalar c = v[pivots[i]];
            if (field.is_zero(c)) continue;
            for (std::size_t j = 0; j < v.size(); ++j)
                if (!field.is_zero(rows[i][j])) v[j] = field.sub(v[j], field.mul(c, rows[i][j]));
        }
        for (const auto& x : v)
            if (!field.is_zero(x)) return false;
        return true;
    }
};

SparseMatrix combination(const std::vector<SparseMatrix>& action, const Vector& c, const Field& k) {
    SparseMatrix out(action[0].nrows(), action[0].ncols(), k);
    for (std::size_t b = 0; b < c.size(); ++b)
        if (sgn(c[b])) {
            Scalar v = k.image(c[b]);
            if (!k.is_zero(v)) out = out + action[b].scaled(v);
        }
    return out;
}

Vector unit(std::size_t n, std::size_t b, long c = 1) {
    Vector v(n, Scalar(0));
    v[b] = c;
    return v;
}

// Positive sub-roots that are not sums of two positive sub-roots.
std::vector<std::size_t> indecomposable(const std::vector<std::vector<Scalar>>& roots) {
    std::set<std::vector<Scalar>> all(roots.begin(), roots.end());
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < roots.size(); ++a) {
        bool split = false;
        for (std::size_t b = 0; b < roots.size() && !split; ++b) {
            if (a == b) continue;
            std::vector<Scalar> rest(roots[a]);
            for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= roots[b][i];
            if (all.count(rest)) split = true;
        }
        if (!split) out.push_back(a);
    }
    return out;
}

}  // namespace

void check_closure(const SubalgebraSpec& spec) {
    const auto& alg = *spec.ambient;
    const std::size_t n = alg.dim();
    Span span(spec.elements, n, spec.field);
    for (std::size_t a = 0; a < spec.elements.size(); ++a) {
        auto ea = to_element(spec.elements[a]);
        for (std::size_t b = a + 1; b < spec.elements.size(); ++b)
            if (!span.contains(to_vector(alg.bracket(ea, to_element(spec.elements[b])), n)))
                throw ClosureFailure("bracket of elements " + std::to_string(a) + " and " + std::to_string(b) +
                                     " leaves the span over " + spec.field.name());
    }
}

std::vector<SparseMatrix> restrict_rep(const Representation& rep, const SubalgebraSpec& spec) {
    check_closure(spec);
    auto action = chevalley_action(rep, *spec.ambient);
    std::vector<SparseMatrix> out;
    for (const auto& c : spec.elements) out.push_back(combination(action, c, rep.field));
    return out;
}

std::vector<PolyMatrix> restrict_curves(const Representation& rep, const SubalgebraSpec& spec) {
    std::vector<PolyMatrix> out;
    const Field q = Field::rationals();
    for (const auto& u : spec.unipotents) {
        PolyMatrix x;
        if (rep.model) {
            x = exp_nilpotent(combination(rep.model->action, u, q));
            for (const auto& c : x.coeffs())
                if (!c.is_integral()) throw IntegralityFailure("unipotent curve is not integral");
            out.push_back(rep.model->induced(x, rep.field));
        } else if (!rep.field.is_finite()) {
            out.push_back(exp_nilpotent(combination(chevalley_action(rep, *spec.ambient), u, q)));
        } else {
            throw FieldMismatch("subgroup curves in prime characteristic need an integral model");
        }
    }
    return out;
}

std::vector<IntVec> restrict_weights(const Representation& rep, const SubalgebraSpec& spec) {
    std::vector<IntVec> out;
    for (const auto& w : rep.weights) {
        IntVec s;
        for (const auto& c : spec.cocharacters) {
            long v = 0;
            for (std::size_t i = 0; i < c.size(); ++i) v += c[i] * w[i];
            s.push_back(v);
        }
        out.push_back(s);
    }
    return out;
}

SubalgebraSpec short_root_subalgebra(std::shared_ptr<const chevalley::ChevalleyAlgebra> alg, const Field& field) {
    const auto& d = alg->datum();
    const std::size_t n = alg->dim();
    long shortest = -1;
    for (const auto& r : d.positive_roots) {
        long nr = d.inner(r, r);
        if (shortest < 0 || nr < shortest) shortest = nr;
    }
    SubalgebraSpec spec;
    spec.ambient = alg;
    spec.field = field;
    spec.description = "short root subalgebra of " + d.name();
    std::vector<ZVec> coroots;
    std::vector<std::vector<Scalar>> pos;
    std::vector<int> pos_idx;
    for (std::size_t r = 0; r < d.n_roots(); ++r) {
        if (d.inner(d.all_roots[r], d.all_roots[r]) != shortest) continue;
        spec.elements.push_back(unit(n, alg->root_basis(static_cast<int>(r))));
        if (r < d.n_positive()) {
            IntVec c = d.coroot(d.all_roots[r]);
            coroots.emplace_back(c.begin(), c.end());
            pos.emplace_back(d.all_roots[r].begin(), d.all_roots[r].end());
            pos_idx.push_back(static_cast<int>(r));
        }
    }
    for (const auto& c : exactla::saturation(coroots, d.rank)) {
        Vector v(n, Scalar(0));
        IntVec cc;
        for (int i = 0; i < d.rank; ++i) {
            v[alg->cartan_basis(i)] = Scalar(c[i]);
            cc.push_back(c[i].get_si());
        }
        spec.elements.push_back(v);
        spec.cocharacters.push_back(cc);
    }
    for (auto a : indecomposable(pos)) {
        int r = pos_idx[a];
        spec.unipotents.push_back(unit(n, alg->root_basis(r)));
        spec.unipotents.push_back(unit(n, alg->root_basis(r + static_cast<int>(d.n_positive()))));
    }
    check_closure(spec);
    return spec;
}

SubalgebraSpec vector_stabilizer(const Representation& rep, const Vector& v0, const Field& field) {
    if (rep.field.is_finite()) throw FieldMismatch("vector stabilizers are computed over Q");
    if (!rep.model) throw Error("vector_stabilizer needs a representation with an integral model");
    auto alg = rep.model->alg;
    const auto& d = alg->datum();
    const std::size_t n = alg->dim();
    auto action = chevalley_action(rep, *alg);
    std::vector<Vector> images;
    for (const auto& a : action) images.push_back(a.apply(v0));
    // Kernel of c -> sum_b c_b A_b v0.
    std::vector<Triple> t;
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t i = 0; i < rep.dim; ++i)
            if (sgn(images[b][i])) t.push_back({i, b, images[b][i]});
    auto ker = exactla::kernel_basis(SparseMatrix::from_triples(rep.dim, n, rep.field, t));
    SubalgebraSpec spec;
    spec.ambient = alg;
    spec.field = field;
    spec.description = "stabilizer of a vector in " + d.name();
    for (const auto& v : ker) spec.elements.push_back(exactla::content_reduced(v));

    // Cartan part: integral cocharacters killing v0.
    std::vector<ZVec> hk;
    {
        std::vector<Triple> th;
        for (int i = 0; i < d.rank; ++i)
            for (std::size_t r = 0; r < rep.dim; ++r) {
                const Scalar& v = images[alg->cartan_basis(i)][r];
                if (sgn(v)) th.push_back({r, static_cast<std::size_t>(i), v});
            }
        for (const auto& v : exactla::kernel_basis(SparseMatrix::from_triples(rep.dim, d.rank, rep.field, th))) {
            auto c = exactla::content_reduced(v);
            ZVec z;
            for (const auto& x : c) z.push_back(x.get_num());
            hk.push_back(z);
        }
    }
    for (const auto& c : exactla::saturation(hk, d.rank)) {
        IntVec cc;
        for (const auto& x : c) cc.push_back(x.get_si());
        spec.cocharacters.push_back(cc);
    }

    // Unipotents: root vectors killing v0, and commuting pairs whose images cancel.
    struct Cand {
        std::vector<Scalar> root;
        Vector element;
        bool positive;
    };
    std::vector<Cand> cands;
    std::set<std::vector<Scalar>> seen;
    const std::size_t np = d.n_positive();
    auto is_zero = [](const Vector& v) {
        for (const auto& x : v)
            if (sgn(x)) return false;
        return true;
    };
    for (std::size_t r = 0; r < d.n_roots(); ++r) {
        int b = alg->root_basis(static_cast<int>(r));
        std::vector<Scalar> root(d.all_roots[r].begin(), d.all_roots[r].end());
        if (is_zero(images[b])) {
            cands.push_back({root, unit(n, b), r < np});
            seen.insert(root);
            continue;
        }
        for (std::size_t s = 0; s < d.n_roots(); ++s) {
            if (s == r || (r < np) != (s < np)) continue;
            IntVec sum = d.all_roots[r];
            for (int i = 0; i < d.rank; ++i) sum[i] += d.all_roots[s][i];
            if (d.is_root(sum)) continue;
            int c = alg->root_basis(static_cast<int>(s));
            if (is_zero(images[c])) continue;
            // images[b] + x * images[c] = 0 for a scalar x.
            std::optional<Scalar> ratio;
            bool ok = true;
            for (std::size_t i = 0; i < rep.dim && ok; ++i) {
                bool zb = sgn(images[b][i]) == 0, zc = sgn(images[c][i]) == 0;
                if (zb != zc) ok = false;
                if (zb || !ok) continue;
                Scalar x = -images[b][i] / images[c][i];
                if (ratio && *ratio != x) ok = false;
                ratio = x;
            }
            if (!ok || !ratio || ratio->get_den() != 1) continue;
            std::vector<Scalar> mid(root);
            for (int i = 0; i < d.rank; ++i) mid[i] = (mid[i] + d.all_roots[s][i]) / 2;
            if (!seen.insert(mid).second) continue;
            Vector el = unit(n, b);
            el[c] = *ratio;
            cands.push_back({mid, el, r < np});
        }
    }
    std::vector<std::vector<Scalar>> pos;
    std::vector<std::size_t> pos_at;
    for (std::size_t i = 0; i < cands.size(); ++i)
        if (cands[i].positive) {
            pos.push_back(cands[i].root);
            pos_at.push_back(i);
        }
    for (auto a : indecomposable(pos)) {
        const Cand& c = cands[pos_at[a]];
        spec.unipotents.push_back(c.element);
        std::vector<Scalar> neg(c.root);
        for (auto& x : neg) x = -x;
        for (const auto& o : cands)
            if (o.root == neg) {
                spec.unipotents.push_back(o.element);
                break;
            }
    }
    check_closure(spec);
    return spec;
}

}  // namespace stabforge::repforge
