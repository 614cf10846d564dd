#include <algorithm>
#include <map>
#include <random>

#include "stabforge/errors.hpp"
#include "stabforge/exactla/linalg.hpp"
#include "stabforge/invariants/invariants.hpp"

namespace stabforge::invariants {

using exactla::Zq;

StabilizerReport stabilizer_algebra(const SparsePoly& f, bool with_basis) {
    if (f.degree() < 1 || !f.homogeneous()) throw InvalidField("stabilizer needs a homogeneous nonconstant polynomial");
    const Field& k = f.field();
    const std::size_t n = f.nvars();
    StabilizerReport rep;
    rep.n = n;
    rep.degree = static_cast<unsigned>(f.degree());

    // Column j*n + kk holds x_kk * df/dx_j, the image of the matrix unit E_{j,kk}.
    std::map<polyspace::Exponent, std::size_t, polyspace::GrevlexDesc> rows;
    std::vector<exactla::Triple> triples;
    for (std::size_t j = 0; j < n; ++j) {
        SparsePoly dj = f.partial(j);
        for (const auto& [e, c] : dj.terms()) {
            for (std::size_t kk = 0; kk < n; ++kk) {
                polyspace::Exponent t = e;
                ++t[kk];
                auto [it, fresh] = rows.try_emplace(t, rows.size());
                triples.push_back({it->second, j * n + kk, c});
            }
        }
    }
    auto m = SparseMatrix::from_triples(rows.size(), n * n, k, triples);

    std::vector<exactla::Vector> kernel;
    if (k.is_finite()) {
        if (with_basis) kernel = exactla::kernel_basis(m);
        else rep.dim = n * n - exactla::rank(m);
    } else {
        exactla::PrimeStream ps(0);
        auto build = [&](const Zq& z) { return exactla::reduce_rows(m, z); };
        if (with_basis) {
            auto verify = [&](const std::vector<Vector>& basis) {
                for (const auto& v : basis)
                    for (const auto& x : m.apply(v))
                        if (sgn(x) != 0) return false;
                return true;
            };
            auto rk = exactla::rational_kernel(build, n * n, ps, verify);
            kernel = std::move(rk.basis);
            rep.primes_used = rk.primes;
        } else {
            auto rr = exactla::rational_rank(build, n * n, ps);
            rep.dim = n * n - rr.rank;
            rep.primes_used = rr.primes;
        }
    }
    if (with_basis) {
        rep.dim = kernel.size();
        for (const auto& v : kernel) {
            SparseMatrix x(n, n, k);
            for (std::size_t c = 0; c < v.size(); ++c)
                if (sgn(v[c]) != 0) x.set(c / n, c % n, v[c]);
            if (!polyspace::derivation_action(x, f).is_zero())
                throw Error("stabilizer basis matrix does not kill the polynomial");
            rep.basis.push_back(std::move(x));
        }
    }

    rep.contains_scalars = polyspace::derivation_action(SparseMatrix::identity(n, k), f).is_zero();
    std::uint32_t p = k.characteristic();
    bool divides = p != 0 && rep.degree % p == 0;
    if (rep.contains_scalars != divides) throw Error("scalar test disagrees with the characteristic");
    return rep;
}

std::size_t orbit_dim(const std::vector<SparseMatrix>& algebra, const Vector& v) {
    if (algebra.empty()) return 0;
    const Field& k = algebra[0].field();
    std::vector<std::vector<Scalar>> cols;
    std::vector<exactla::Triple> triples;
    for (std::size_t b = 0; b < algebra.size(); ++b) {
        auto w = algebra[b].apply(v);
        for (std::size_t i = 0; i < w.size(); ++i)
            if (!k.is_zero(w[i])) triples.push_back({b, i, w[i]});
    }
    auto m = SparseMatrix::from_triples(algebra.size(), v.size(), k, triples);
    return exactla::rank(m);
}

namespace {

// Matrix over a finite field as per-row (column, code) lists.
struct CodeMat {
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> rows;

    void axpy(const Zq& f, std::uint32_t c, const std::vector<std::uint32_t>& x, std::vector<std::uint32_t>& y) const {
        if (c == 0) return;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::uint32_t acc = 0;
            for (const auto& [j, v] : rows[i])
                if (x[j]) acc = f.add(acc, f.mul(v, x[j]));
            if (acc) y[i] = f.add(y[i], f.mul(c, acc));
        }
    }
};

CodeMat to_codes(const SparseMatrix& m, const Field& k) {
    CodeMat c;
    c.rows.resize(m.nrows());
    for (std::size_t i = 0; i < m.nrows(); ++i)
        for (const auto& [j, v] : m.row(i)) c.rows[i].push_back({std::uint32_t(j), k.code(v)});
    return c;
}

exactla::ModRow code_row(const std::vector<std::uint32_t>& v) {
    exactla::ModRow r;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i]) r.push(std::uint32_t(i), v[i]);
    return r;
}

}  // namespace

// Over a finite field the orbit map can be inseparable, so Lie(G) v may be
// smaller than the tangent space of the orbit. The orbit is parametrized by a
// word in the curves, phi(t) = c_L(t_L) ... c_1(t_1) v. Every curve in the
// orbit has its tangent cone inside the tangent space, so for directions d in
// the kernel of the Jacobian the lowest nonzero s-coefficient of phi(t0 + s d)
// is a further tangent vector. The result never exceeds the orbit dimension.
std::size_t orbit_dim(const GroupAction& action, const std::vector<SparseMatrix>& algebra, const Vector& v,
                      std::uint64_t seed) {
    const Field& k = action.field;
    if (!k.is_finite() || action.curves.empty()) return orbit_dim(algebra, v);
    const Zq& f = k.zq();
    const std::size_t n = action.dim;
    std::mt19937_64 rng(seed);
    auto nonzero = [&] { return std::uint32_t(1 + rng() % (f.order() - 1)); };

    const std::size_t nc = action.curves.size();
    const std::size_t len = std::max<std::size_t>(2 * algebra.size(), nc) + nc;
    std::vector<std::uint32_t> t(len);
    for (auto& x : t) x = nonzero();

    // factor(j, m) = sum_k binom(k, m) t_j^(k-m) coeff_k: the s^m part of c(t_j + s) before scaling by d^m.
    std::map<std::pair<std::size_t, int>, CodeMat> cache;
    auto factor = [&](std::size_t j, int m) -> const CodeMat& {
        auto key = std::make_pair(j, m);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        const auto& curve = action.curves[j % nc];
        SparseMatrix acc(n, n, k);
        for (int deg = m; deg <= curve.degree(); ++deg) {
            mpz_class b;
            mpz_bin_uiui(b.get_mpz_t(), deg, m);
            std::uint32_t c = f.mul(f.from_mpz(b), f.pow(t[j], deg - m));
            if (c) acc = acc + curve.coeff(deg).scaled(k.from_code(c));
        }
        return cache.emplace(key, to_codes(acc, k)).first->second;
    };
    auto degree_of = [&](std::size_t j) { return action.curves[j % nc].degree(); };

    std::vector<std::uint32_t> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = k.code(v[i]);
    std::vector<std::vector<std::uint32_t>> prefix{u};
    for (std::size_t j = 0; j < len; ++j) {
        std::vector<std::uint32_t> y(n, 0);
        factor(j, 0).axpy(f, 1, prefix.back(), y);
        prefix.push_back(std::move(y));
    }
    const auto& w = prefix.back();

    exactla::ModEchelon tangent(f, n);
    Vector wq(n);
    for (std::size_t i = 0; i < n; ++i) wq[i] = k.from_code(w[i]);
    for (const auto& a : algebra) tangent.insert(exactla::to_modrow(a.apply(wq)));

    // Jacobian column j: c_L ... c_{j+1} c_j'(t_j) prefix_j.
    std::vector<std::vector<std::uint32_t>> jac;
    for (std::size_t j = 0; j < len; ++j) {
        std::vector<std::uint32_t> y(n, 0);
        if (degree_of(j) >= 1) factor(j, 1).axpy(f, 1, prefix[j], y);
        for (std::size_t i = j + 1; i < len; ++i) {
            std::vector<std::uint32_t> z(n, 0);
            factor(i, 0).axpy(f, 1, y, z);
            y = std::move(z);
        }
        tangent.insert(code_row(y));
        jac.push_back(std::move(y));
    }
    if (tangent.full()) return n;

    std::vector<exactla::ModRow> jrows(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::uint32_t> r(len);
        for (std::size_t j = 0; j < len; ++j) r[j] = jac[j][i];
        jrows[i] = code_row(r);
    }
    auto ker = exactla::mod_kernel(f, jrows, len);
    if (ker.empty()) return tangent.rank();

    int idle = 0;
    for (int round = 0; round < 12 && idle < 2 && !tangent.full(); ++round) {
        std::vector<std::uint32_t> d(len, 0);
        for (const auto& r : ker) {
            std::uint32_t c = nonzero();
            for (std::size_t q = 0; q < r.size(); ++q) d[r.cols[q]] = f.add(d[r.cols[q]], f.mul(c, r.vals[q]));
        }
        bool gained = false;
        for (int order = 4; order <= 64; order *= 2) {
            // Truncated series in s of phi(t0 + s d).
            std::vector<std::vector<std::uint32_t>> ser(order + 1, std::vector<std::uint32_t>(n, 0));
            ser[0] = u;
            for (std::size_t j = 0; j < len; ++j) {
                std::vector<std::vector<std::uint32_t>> next(order + 1, std::vector<std::uint32_t>(n, 0));
                const int top = std::min(order, degree_of(j));
                std::uint32_t dm = 1;
                for (int m = 0; m <= top; ++m, dm = f.mul(dm, d[j])) {
                    if (m > 0 && dm == 0) break;
                    const auto& fm = factor(j, m);
                    for (int b = 0; b + m <= order; ++b) fm.axpy(f, dm, ser[b], next[b + m]);
                }
                ser = std::move(next);
            }
            int lowest = 0;
            for (int m = 1; m <= order && !lowest; ++m)
                if (std::any_of(ser[m].begin(), ser[m].end(), [](std::uint32_t x) { return x != 0; })) lowest = m;
            if (!lowest) continue;
            gained = tangent.insert(code_row(ser[lowest]));
            break;
        }
        idle = gained ? 0 : idle + 1;
    }
    return tangent.rank();
}

std::size_t orbit_dim(const GroupAction& action, const Vector& v) {
    if (!action.field.is_finite() && action.full_lie) return orbit_dim(action.lie, v);
    return orbit_dim(action, image_lie_algebra(action), v, 0);
}

GenericDim generic_invariant_dim(const GroupAction& action, std::size_t samples, std::uint64_t seed) {
    if (samples < 3) samples = 3;
    GenericDim out;
    std::vector<SparseMatrix> alg;
    GroupAction act = action;
    Field k = action.field;
    if (!k.is_finite()) {
        alg = action.full_lie ? action.lie : image_lie_algebra(action);
    } else {
        if (k.order() < 1000000) {
            if (k.degree() != 1) throw FieldMismatch("sampling needs a prime field or a large extension");
            k = Field::at_least(k.characteristic(), 1000000);
            act = action.over(k);
        }
        alg = image_lie_algebra(act);
    }
    out.field = k;
    out.algebra_dim = alg.size();

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> ranks;
    auto draw = [&]() {
        Vector v(action.dim);
        for (auto& x : v) {
            if (k.is_finite()) x = k.from_code(static_cast<std::uint32_t>(rng() % k.order()));
            else x = static_cast<long>(rng() % 21) - 10;
        }
        return v;
    };
    std::size_t target = samples;
    while (true) {
        while (ranks.size() < target) {
            auto v = draw();
            ranks.push_back(orbit_dim(act, alg, v, seed + ranks.size()));
        }
        std::size_t best = *std::max_element(ranks.begin(), ranks.end());
        std::size_t hits = std::count(ranks.begin(), ranks.end(), best);
        if (hits == ranks.size() || target >= 24) {
            out.max_orbit = best;
            out.hits = hits;
            break;
        }
        target = std::min<std::size_t>(24, target * 2);
    }
    out.samples = ranks.size();
    out.dim = action.dim - out.max_orbit;
    return out;
}

SparsePoly chevalley_restriction(const SparsePoly& f, const chevalley::ChevalleyAlgebra& alg) {
    const std::size_t n = static_cast<std::size_t>(alg.dim());
    if (f.nvars() != n) throw DimensionMismatch("polynomial is not on the adjoint coordinates");
    const int l = alg.rank();
    std::vector<std::size_t> pos(l);
    for (int i = 0; i < l; ++i) pos[i] = alg.cartan_basis(i);
    SparsePoly out(l, f.field());
    for (const auto& [e, c] : f.terms()) {
        unsigned on_cartan = 0;
        polyspace::Exponent r(l, 0);
        for (int i = 0; i < l; ++i) {
            r[i] = e[pos[i]];
            on_cartan += r[i];
        }
        if (on_cartan == polyspace::total_degree(e)) out.add_term(r, c);
    }
    return out;
}

}  // namespace stabforge::invariants
