#include "stabforge/invariants/group_action.hpp"

#include <algorithm>

#include "stabforge/errors.hpp"
#include "stabforge/exactla/lattice.hpp"
#include "stabforge/exactla/linalg.hpp"
#include "stabforge/repforge/constructions.hpp"

namespace stabforge::invariants {

using exactla::ModEchelon;
using exactla::ModRow;
using exactla::Zq;

namespace {

SparseMatrix to_field(const SparseMatrix& m, const Field& field) {
    if (m.field() == field) return m;
    if (!m.field().is_finite()) return m.reduced(field);
    return m.embedded(field);
}

}  // namespace

GroupAction GroupAction::over(const Field& target) const {
    if (target == field) return *this;
    GroupAction out = *this;
    out.field = target;
    for (auto& m : out.lie) m = to_field(m, target);
    for (auto& c : out.curves) c = c.reduced(target);
    return out;
}

int GroupAction::curve_degree() const {
    int d = 0;
    for (const auto& c : curves) d = std::max(d, c.degree());
    return d;
}

GroupAction action_of(const repforge::Representation& rep) {
    GroupAction a;
    a.label = rep.recipe.empty() ? rep.group : rep.group + " " + rep.recipe;
    a.field = rep.field;
    a.dim = rep.dim;
    a.weights = rep.weights;
    a.curves = rep.curves();
    try {
        auto alg = rep.model ? rep.model->alg : repforge::algebra_for(rep.group);
        a.lie = repforge::chevalley_action(rep, *alg);
        a.full_lie = true;
    } catch (const Error&) {
        a.lie = rep.lie_generators();
        a.full_lie = false;
    }
    return a;
}

GroupAction action_of(const repforge::Representation& rep, const repforge::SubalgebraSpec& spec) {
    GroupAction a;
    a.label = rep.group + " " + rep.recipe + " | " + spec.description;
    a.field = rep.field;
    a.dim = rep.dim;
    a.weights = repforge::restrict_weights(rep, spec);
    a.lie = repforge::restrict_rep(rep, spec);
    a.curves = repforge::restrict_curves(rep, spec);
    a.full_lie = true;
    return a;
}

namespace {

// Independence bookkeeping on flattened matrices, modulo the field's prime
// (or a large prime over Q).
class SpanTracker {
public:
    SpanTracker(const Field& field, std::size_t n)
        : n_(n), zq_(field.is_finite() ? field.zq() : Zq(2147483629u)), ech_(zq_, n * n) {}

    bool add(const SparseMatrix& m) {
        ModRow r;
        for (std::size_t i = 0; i < n_; ++i) {
            for (const auto& [j, v] : m.row(i)) {
                std::uint32_t c;
                if (m.field().is_finite()) {
                    c = m.field().code(v);
                } else {
                    auto red = zq_.reduce(v);
                    if (!red) throw BadReduction("denominator divisible by the tracking prime");
                    c = *red;
                }
                if (c) r.push(static_cast<std::uint32_t>(i * n_ + j), c);
            }
        }
        if (r.empty()) return false;
        return ech_.insert(r);
    }
    std::size_t rank() const { return ech_.rank(); }

private:
    std::size_t n_;
    Zq zq_;
    ModEchelon ech_;
};

std::vector<SparseMatrix> torus_part(const GroupAction& a) {
    std::vector<SparseMatrix> out;
    if (a.weights.empty()) return out;
    const std::size_t r = a.weights[0].size();
    std::vector<exactla::ZVec> cols(r, exactla::ZVec(a.dim));
    for (std::size_t v = 0; v < a.dim; ++v)
        for (std::size_t i = 0; i < r; ++i) cols[i][v] = a.weights[v][i];
    auto basis = a.field.is_finite() ? exactla::saturation(cols, a.dim) : exactla::lattice_basis(cols, a.dim);
    for (const auto& z : basis) {
        SparseMatrix d(a.dim, a.dim, a.field);
        for (std::size_t v = 0; v < a.dim; ++v) {
            Scalar c = a.field.image(Scalar(z[v]));
            if (!a.field.is_zero(c)) d.set(v, v, c);
        }
        out.push_back(std::move(d));
    }
    return out;
}

}  // namespace

std::vector<SparseMatrix> image_lie_algebra(const GroupAction& a) {
    SpanTracker span(a.field, a.dim);
    std::vector<SparseMatrix> basis;
    auto add = [&](const SparseMatrix& m) {
        if (span.add(m)) basis.push_back(m);
    };
    for (const auto& m : a.lie) add(m);
    if (!a.field.is_finite() && a.full_lie) return basis;

    for (const auto& c : a.curves) {
        std::size_t k = c.lowest_order();
        if (k) add(c.coeff(k));
    }
    for (const auto& d : torus_part(a)) add(d);

    // x(s)^{-1} = x(-s) for one-parameter subgroups.
    std::vector<std::vector<SparseMatrix>> inverse;
    for (const auto& c : a.curves) {
        std::vector<SparseMatrix> inv;
        for (std::size_t b = 0; b < c.coeffs().size(); ++b)
            inv.push_back(b % 2 ? c.coeff(b).scaled(a.field.from_int(-1)) : c.coeff(b));
        inverse.push_back(std::move(inv));
    }
    const std::size_t cap = a.dim * a.dim;
    for (std::size_t k = 0; k < basis.size() && span.rank() < cap; ++k) {
        const SparseMatrix y = basis[k];
        for (std::size_t j = 0; j < k; ++j) add(basis[j].commutator(y));
        for (std::size_t ci = 0; ci < a.curves.size(); ++ci) {
            const auto& cs = a.curves[ci].coeffs();
            const auto& inv = inverse[ci];
            std::vector<SparseMatrix> left;
            for (const auto& c : cs) left.push_back(c * y);
            for (std::size_t deg = 1; deg + 2 <= cs.size() + inv.size(); ++deg) {
                SparseMatrix acc(a.dim, a.dim, a.field);
                for (std::size_t s = 0; s < cs.size(); ++s) {
                    if (deg < s || deg - s >= inv.size()) continue;
                    if (left[s].is_zero() || inv[deg - s].is_zero()) continue;
                    acc = acc + left[s] * inv[deg - s];
                }
                if (!acc.is_zero()) add(acc);
            }
        }
    }
    return basis;
}

}  // namespace stabforge::invariants
