#include "stabforge/exactla/linalg.hpp"

#include <algorithm>
#include <map>

#include "stabforge/errors.hpp"

namespace stabforge::exactla {

std::uint32_t PrimeStream::next() {
    std::uniform_int_distribution<std::uint32_t> dist((1u << 30) + 1, (1u << 31) - 1);
    while (true) {
        std::uint32_t c = dist(rng_) | 1u;
        if (!is_prime_u64(c)) continue;
        if (std::find(issued_.begin(), issued_.end(), c) != issued_.end()) continue;
        issued_.push_back(c);
        return c;
    }
}

std::vector<std::uint32_t> PrimeStream::take(std::size_t n) {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(next());
    return out;
}

std::optional<std::vector<ModRow>> reduce_rows(const SparseMatrix& m, const Zq& f) {
    std::vector<ModRow> rows(m.nrows());
    for (std::size_t i = 0; i < m.nrows(); ++i) {
        for (const auto& [j, v] : m.row(i)) {
            auto r = f.reduce(v);
            if (!r) return std::nullopt;
            if (*r) rows[i].push(static_cast<std::uint32_t>(j), *r);
        }
    }
    return rows;
}

std::vector<ModRow> mod_rows(const SparseMatrix& m) {
    std::vector<ModRow> rows(m.nrows());
    for (std::size_t i = 0; i < m.nrows(); ++i)
        for (const auto& [j, v] : m.row(i)) rows[i].push(static_cast<std::uint32_t>(j), m.field().code(v));
    return rows;
}

std::size_t rank_multi_prime(const SparseMatrix& m, const std::vector<std::uint32_t>& primes) {
    if (m.field().is_finite()) throw FieldMismatch("rank_multi_prime expects a rational matrix");
    std::optional<std::size_t> consensus;
    std::size_t used = 0;
    for (std::uint32_t p : primes) {
        if (p <= (1u << 20)) throw InvalidField("multi-prime rank needs primes above 2^20");
        Zq f(p);
        auto rows = reduce_rows(m, f);
        if (!rows) continue;
        std::size_t r = mod_rank(f, *rows, m.ncols());
        ++used;
        if (consensus && *consensus != r)
            throw NoConsensus("modular ranks " + std::to_string(*consensus) + " and " + std::to_string(r) + " differ");
        consensus = r;
    }
    if (!consensus) throw NoConsensus("no usable prime");
    (void)used;
    return *consensus;
}

RankResult rational_rank(const ModBuilder& build, std::size_t ncols, PrimeStream& primes, std::size_t agree) {
    std::map<std::size_t, std::size_t> hits;
    RankResult res;
    for (int attempt = 0; attempt < 12; ++attempt) {
        std::uint32_t p = primes.next();
        Zq f(p);
        auto rows = build(f);
        if (!rows) continue;
        std::size_t r = mod_rank(f, *rows, ncols);
        res.primes.push_back(p);
        ++hits[r];
        auto top = hits.rbegin();
        if (top->second >= agree) {
            res.rank = top->first;
            return res;
        }
    }
    throw NoConsensus("modular ranks did not stabilise");
}

std::size_t rank(const SparseMatrix& m) {
    if (m.field().is_finite()) return mod_rank(m.field().zq(), mod_rows(m), m.ncols());
    PrimeStream ps(0);
    return rational_rank([&](const Zq& f) { return reduce_rows(m, f); }, m.ncols(), ps).rank;
}

std::optional<Scalar> rational_reconstruct(const mpz_class& a, const mpz_class& m) {
    // Extended Euclid on (m, a) stopping once the remainder drops below sqrt(m/2).
    mpz_class bound;
    mpz_class half = m / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    mpz_class r0 = m, r1 = a % m;
    if (r1 < 0) r1 += m;
    mpz_class t0 = 0, t1 = 1;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1;
        mpz_class t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (t1 == 0 || abs(t1) > bound) return std::nullopt;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), t1.get_mpz_t(), m.get_mpz_t());
    if (g != 1) return std::nullopt;
    Scalar v(r1, t1);
    v.canonicalize();
    return v;
}

namespace {

struct ModKernel {
    std::uint32_t p;
    std::vector<ModRow> rows;
    std::vector<std::uint32_t> leads;
};

bool better(const ModKernel& a, const ModKernel& b) {
    if (a.rows.size() != b.rows.size()) return a.rows.size() < b.rows.size();
    return a.leads < b.leads;
}

bool same_shape(const ModKernel& a, const ModKernel& b) { return a.rows.size() == b.rows.size() && a.leads == b.leads; }

std::optional<std::vector<Vector>> reconstruct(const std::vector<const ModKernel*>& group, std::size_t ncols) {
    const std::size_t k = group.front()->rows.size();
    // Union of supports per row.
    std::vector<std::vector<std::uint32_t>> support(k);
    for (std::size_t r = 0; r < k; ++r) {
        for (const ModKernel* g : group) support[r].insert(support[r].end(), g->rows[r].cols.begin(), g->rows[r].cols.end());
        std::sort(support[r].begin(), support[r].end());
        support[r].erase(std::unique(support[r].begin(), support[r].end()), support[r].end());
    }
    std::vector<Vector> out(k, Vector(ncols));
    for (std::size_t r = 0; r < k; ++r) {
        for (std::uint32_t c : support[r]) {
            mpz_class a = 0, m = 1;
            for (const ModKernel* g : group) {
                const ModRow& row = g->rows[r];
                auto it = std::lower_bound(row.cols.begin(), row.cols.end(), c);
                std::uint32_t v = (it != row.cols.end() && *it == c) ? row.vals[it - row.cols.begin()] : 0;
                // CRT: find x = a mod m, x = v mod p.
                mpz_class pz = g->p;
                mpz_class inv;
                mpz_class mm = m % pz;
                mpz_invert(inv.get_mpz_t(), mm.get_mpz_t(), pz.get_mpz_t());
                mpz_class diff = (mpz_class(v) - a) % pz;
                if (diff < 0) diff += pz;
                mpz_class t = diff * inv % pz;
                a += m * t;
                m *= pz;
            }
            auto q = rational_reconstruct(a, m);
            if (!q) return std::nullopt;
            out[r][c] = *q;
        }
    }
    return out;
}

}  // namespace

RationalKernel rational_kernel(const ModBuilder& build, std::size_t ncols, PrimeStream& primes,
                               const std::function<bool(const std::vector<Vector>&)>& verify) {
    std::vector<ModKernel> seen;
    RationalKernel res;
    std::optional<std::vector<Vector>> previous;
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::uint32_t p = primes.next();
        Zq f(p);
        auto rows = build(f);
        if (!rows) continue;
        ModKernel mk{p, mod_kernel(f, *rows, ncols), {}};
        for (const auto& r : mk.rows) mk.leads.push_back(r.cols.front());
        res.primes.push_back(p);
        if (mk.rows.empty()) {
            res.basis.clear();
            return res;
        }
        seen.push_back(std::move(mk));
        const ModKernel* best = &seen.front();
        for (const auto& s : seen)
            if (better(s, *best)) best = &s;
        std::vector<const ModKernel*> group;
        for (const auto& s : seen)
            if (same_shape(s, *best)) group.push_back(&s);
        auto cand = reconstruct(group, ncols);
        if (!cand) continue;
        bool stable = previous && *previous == *cand;
        previous = cand;
        if (verify) {
            if (verify(*cand)) {
                res.basis = std::move(*cand);
                return res;
            }
        } else if (stable) {
            res.basis = std::move(*cand);
            return res;
        }
    }
    throw NoConsensus("rational reconstruction did not converge");
}

Vector to_vector(const ModRow& r, std::size_t n) {
    Vector v(n);
    for (std::size_t k = 0; k < r.size(); ++k) v[r.cols[k]] = r.vals[k];
    return v;
}

ModRow to_modrow(const Vector& v) {
    ModRow r;
    for (std::size_t j = 0; j < v.size(); ++j)
        if (sgn(v[j]) != 0) r.push(static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(v[j].get_num().get_ui()));
    return r;
}

namespace {

bool annihilates(const SparseMatrix& m, const std::vector<Vector>& basis) {
    for (const auto& v : basis) {
        for (std::size_t i = 0; i < m.nrows(); ++i) {
            Scalar acc = 0;
            for (const auto& [j, a] : m.row(i)) acc += a * v[j];
            if (sgn(acc) != 0) return false;
        }
    }
    return true;
}

}  // namespace

std::vector<Vector> kernel_basis(const SparseMatrix& m, std::uint64_t seed) {
    if (m.field().is_finite()) {
        auto k = mod_kernel(m.field().zq(), mod_rows(m), m.ncols());
        std::vector<Vector> out;
        for (const auto& r : k) out.push_back(to_vector(r, m.ncols()));
        return out;
    }
    if (m.ncols() < ModEchelon::kDenseThreshold && m.nrows() * m.ncols() < 40000) {
        return dense_rational_kernel(m.dense(), m.ncols());
    }
    PrimeStream ps(seed);
    return rational_kernel([&](const Zq& f) { return reduce_rows(m, f); }, m.ncols(), ps,
                           [&](const std::vector<Vector>& b) { return annihilates(m, b); })
        .basis;
}

std::vector<Vector> row_space_basis(const SparseMatrix& m, std::uint64_t seed) {
    if (m.field().is_finite()) {
        auto rows = mod_rref(m.field().zq(), mod_rows(m), m.ncols());
        std::vector<Vector> out;
        for (const auto& r : rows) out.push_back(to_vector(r, m.ncols()));
        return out;
    }
    // Row space = kernel of the kernel.
    auto k = kernel_basis(m, seed);
    if (k.empty()) {
        std::vector<Vector> out;
        for (std::size_t j = 0; j < m.ncols(); ++j) {
            Vector e(m.ncols());
            e[j] = 1;
            out.push_back(e);
        }
        return out;
    }
    return kernel_basis(SparseMatrix::from_dense(k, m.field()), seed);
}

std::size_t dense_rational_rank(const std::vector<std::vector<Scalar>>& rows) {
    if (rows.empty()) return 0;
    const std::size_t nc = rows[0].size();
    // Clear denominators row by row, then Bareiss.
    std::vector<std::vector<mpz_class>> a;
    for (const auto& r : rows) {
        mpz_class l = 1;
        for (const auto& v : r) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
        std::vector<mpz_class> ir;
        for (const auto& v : r) ir.push_back(v.get_num() * (l / v.get_den()));
        a.push_back(std::move(ir));
    }
    std::size_t rank = 0;
    mpz_class prev = 1;
    for (std::size_t c = 0; c < nc && rank < a.size(); ++c) {
        std::size_t piv = rank;
        while (piv < a.size() && a[piv][c] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t i = rank + 1; i < a.size(); ++i) {
            for (std::size_t j = c + 1; j < nc; ++j) {
                a[i][j] = (a[rank][c] * a[i][j] - a[i][c] * a[rank][j]);
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[rank][c];
        ++rank;
    }
    return rank;
}

std::vector<Vector> dense_rational_kernel(const std::vector<std::vector<Scalar>>& rows, std::size_t ncols) {
    std::vector<Vector> a = rows;
    std::vector<std::size_t> pivcol;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
        std::size_t piv = r;
        while (piv < a.size() && sgn(a[piv][c]) == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[r]);
        Scalar s = 1 / a[r][c];
        for (auto& v : a[r]) v *= s;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || sgn(a[i][c]) == 0) continue;
            Scalar m = a[i][c];
            for (std::size_t j = c; j < ncols; ++j)
                if (sgn(a[r][j]) != 0) a[i][j] -= m * a[r][j];
        }
        pivcol.push_back(c);
        ++r;
    }
    std::vector<char> is_piv(ncols, 0);
    for (auto c : pivcol) is_piv[c] = 1;
    std::vector<Vector> kernel;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_piv[f]) continue;
        Vector v(ncols);
        v[f] = 1;
        for (std::size_t i = 0; i < pivcol.size(); ++i) v[pivcol[i]] = -a[i][f];
        kernel.push_back(std::move(v));
    }
    // Bring the kernel basis itself into reduced echelon form.
    if (kernel.empty()) return kernel;
    std::vector<Vector> k = kernel;
    std::size_t kr = 0;
    for (std::size_t c = 0; c < ncols && kr < k.size(); ++c) {
        std::size_t piv = kr;
        while (piv < k.size() && sgn(k[piv][c]) == 0) ++piv;
        if (piv == k.size()) continue;
        std::swap(k[piv], k[kr]);
        Scalar s = 1 / k[kr][c];
        for (auto& v : k[kr]) v *= s;
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (i == kr || sgn(k[i][c]) == 0) continue;
            Scalar m = k[i][c];
            for (std::size_t j = c; j < ncols; ++j)
                if (sgn(k[kr][j]) != 0) k[i][j] -= m * k[kr][j];
        }
        ++kr;
    }
    return k;
}

Vector content_reduced(const Vector& v) {
    mpz_class l = 1, g = 0;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<mpz_class> ints;
    for (const auto& x : v) {
        mpz_class n = x.get_num() * (l / x.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
        ints.push_back(n);
    }
    if (g == 0) return v;
    int sign = 1;
    for (const auto& n : ints) {
        if (n != 0) {
            sign = n < 0 ? -1 : 1;
            break;
        }
    }
    Vector out;
    out.reserve(v.size());
    for (const auto& n : ints) out.emplace_back(mpz_class(n / g * sign));
    return out;
}

}  // namespace stabforge::exactla
