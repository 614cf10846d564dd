#include "stabforge/invariants/weyl.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "stabforge/errors.hpp"
#include "stabforge/exactla/linalg.hpp"

namespace stabforge::invariants {

using exactla::ModEchelon;
using exactla::ModRow;
using exactla::Scalar;
using exactla::SparseMatrix;
using exactla::Vector;
using exactla::Zq;
using polyspace::Exponent;
using rootsys::RootDatum;

SparseMatrix cartan_reflection(const RootDatum& datum, int i, const Field& field) {
    const int l = datum.rank;
    std::vector<exactla::Triple> t;
    for (int j = 0; j < l; ++j) {
        if (j != i) {
            t.push_back({std::size_t(j), std::size_t(j), field.from_int(1)});
            continue;
        }
        for (int k = 0; k < l; ++k) {
            long a = k == i ? -1 : -datum.cartan[k][i];
            if (a != 0) t.push_back({std::size_t(i), std::size_t(k), field.from_int(a)});
        }
    }
    return SparseMatrix::from_triples(l, l, field, t);
}

bool is_weyl_invariant(const SparsePoly& f, const RootDatum& datum) {
    for (int i = 0; i < datum.rank; ++i)
        if (polyspace::substitute_linear(f, cartan_reflection(datum, i, f.field())) != f) return false;
    return true;
}

namespace {

// A = colour 0, B = colour 1 of the Dynkin tree.
std::vector<int> two_colouring(const RootDatum& d) {
    std::vector<int> colour(d.rank, -1);
    colour[0] = 0;
    std::vector<int> queue{0};
    for (std::size_t q = 0; q < queue.size(); ++q) {
        int i = queue[q];
        for (int j = 0; j < d.rank; ++j) {
            if (j == i || d.cartan[i][j] == 0) continue;
            if (colour[j] < 0) {
                colour[j] = 1 - colour[i];
                queue.push_back(j);
            }
        }
    }
    return colour;
}

// One basis element: exponents of the B variables and of the N_i (i in A).
struct Shape {
    std::vector<unsigned> b, n;
};

void shapes_rec(std::size_t nb, const std::vector<unsigned>& weight, unsigned left, std::vector<unsigned>& cur,
                std::size_t pos, std::vector<Shape>& out) {
    const std::size_t total = weight.size();
    if (pos == total) {
        if (left == 0) {
            Shape s;
            s.b.assign(cur.begin(), cur.begin() + nb);
            s.n.assign(cur.begin() + nb, cur.end());
            out.push_back(std::move(s));
        }
        return;
    }
    unsigned w = weight[pos];
    for (unsigned k = 0; k * w <= left; ++k) {
        cur[pos] = k;
        shapes_rec(nb, weight, left - k * w, cur, pos + 1, out);
    }
    cur[pos] = 0;
}

struct Bipartite {
    std::vector<int> a, b;  // node lists
    // s_i fixes x_i (L_i = 0 in characteristic 2); x_i itself is then invariant.
    std::vector<bool> fixed;
    std::vector<Shape> shapes;
};

Bipartite bipartite(const RootDatum& datum, unsigned d, std::uint32_t p) {
    Bipartite bp;
    auto colour = two_colouring(datum);
    for (int i = 0; i < datum.rank; ++i) (colour[i] == 0 ? bp.a : bp.b).push_back(i);
    std::vector<unsigned> weight(bp.b.size(), 1);
    for (int i : bp.a) {
        bool zero = true;
        for (int k = 0; k < datum.rank; ++k)
            if (k != i && datum.cartan[k][i] % 2 != 0) zero = false;
        bp.fixed.push_back(p == 2 && zero);
        weight.push_back(bp.fixed.back() ? 1 : 2);
    }
    std::vector<unsigned> cur(datum.rank, 0);
    shapes_rec(bp.b.size(), weight, d, cur, 0, bp.shapes);
    return bp;
}

// L_i(x) = -sum_{k != i} a_ki x_k over a finite field.
std::uint32_t eval_L(const RootDatum& datum, const Zq& f, const std::vector<std::uint32_t>& x, int i) {
    std::uint32_t acc = 0;
    for (int k = 0; k < datum.rank; ++k) {
        if (k == i || datum.cartan[k][i] == 0) continue;
        acc = f.sub(acc, f.mul(f.from_int(datum.cartan[k][i]), x[k]));
    }
    return acc;
}

std::vector<std::uint32_t> eval_shapes(const RootDatum& datum, const Bipartite& bp, const Zq& f,
                                       const std::vector<std::uint32_t>& x, unsigned d) {
    std::vector<std::vector<std::uint32_t>> pw;
    auto powers = [&](std::uint32_t v) {
        std::vector<std::uint32_t> p(d + 1, 1);
        for (unsigned k = 1; k <= d; ++k) p[k] = f.mul(p[k - 1], v);
        return p;
    };
    for (int i : bp.b) pw.push_back(powers(x[i]));
    for (std::size_t k = 0; k < bp.a.size(); ++k) {
        int i = bp.a[k];
        pw.push_back(powers(bp.fixed[k] ? x[i] : f.mul(x[i], f.sub(eval_L(datum, f, x, i), x[i]))));
    }
    std::vector<std::uint32_t> out;
    out.reserve(bp.shapes.size());
    for (const auto& s : bp.shapes) {
        std::uint32_t v = 1;
        for (std::size_t k = 0; k < s.b.size(); ++k) v = f.mul(v, pw[k][s.b[k]]);
        for (std::size_t k = 0; k < s.n.size(); ++k) v = f.mul(v, pw[s.b.size() + k][s.n[k]]);
        out.push_back(v);
    }
    return out;
}

// Rows phi(s_b P) - phi(P) at random points until `count` rows exist.
std::vector<ModRow> evaluated_rows(const RootDatum& datum, const Bipartite& bp, const Zq& f, unsigned d,
                                   std::size_t count, std::mt19937_64& rng) {
    std::vector<ModRow> rows;
    while (rows.size() < count) {
        std::vector<std::uint32_t> x(datum.rank);
        for (auto& v : x) v = static_cast<std::uint32_t>(rng() % f.order());
        auto base = eval_shapes(datum, bp, f, x, d);
        for (int b : bp.b) {
            auto y = x;
            y[b] = f.sub(eval_L(datum, f, x, b), x[b]);
            auto moved = eval_shapes(datum, bp, f, y, d);
            ModRow r;
            for (std::size_t j = 0; j < moved.size(); ++j) {
                std::uint32_t v = f.sub(moved[j], base[j]);
                if (v) r.push(static_cast<std::uint32_t>(j), v);
            }
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

// Exact polynomials of the basis shapes.
class ShapePolys {
public:
    ShapePolys(const RootDatum& datum, const Bipartite& bp, const Field& field) : field_(field) {
        const std::size_t l = datum.rank;
        for (int i : bp.b) base_.push_back(SparsePoly::variable(l, field, i));
        for (std::size_t a = 0; a < bp.a.size(); ++a) {
            const int i = bp.a[a];
            if (bp.fixed[a]) {
                base_.push_back(SparsePoly::variable(l, field, i));
                continue;
            }
            SparsePoly L(l, field);
            for (std::size_t k = 0; k < l; ++k)
                if (int(k) != i && datum.cartan[k][i] != 0) {
                    Exponent e(l, 0);
                    e[k] = 1;
                    L.add_term(e, field.from_int(-datum.cartan[k][i]));
                }
            SparsePoly xi = SparsePoly::variable(l, field, i);
            base_.push_back(xi * (L - xi));
        }
        powers_.resize(base_.size());
    }

    SparsePoly poly(const Shape& s) {
        SparsePoly acc = SparsePoly::constant(base_[0].nvars(), field_, field_.from_int(1));
        for (std::size_t k = 0; k < s.b.size(); ++k) acc = acc * power(k, s.b[k]);
        for (std::size_t k = 0; k < s.n.size(); ++k) acc = acc * power(s.b.size() + k, s.n[k]);
        return acc;
    }

private:
    const SparsePoly& power(std::size_t k, unsigned e) {
        auto& p = powers_[k];
        if (p.empty()) p.push_back(SparsePoly::constant(base_[0].nvars(), field_, field_.from_int(1)));
        while (p.size() <= e) p.push_back(p.back() * base_[k]);
        return p[e];
    }

    Field field_;
    std::vector<SparsePoly> base_;
    std::vector<std::vector<SparsePoly>> powers_;
};

SparsePoly combine(ShapePolys& sp, const Bipartite& bp, const Vector& c, const Field& field, std::size_t l) {
    SparsePoly f(l, field);
    for (std::size_t j = 0; j < c.size(); ++j)
        if (sgn(c[j]) != 0) f = f + sp.poly(bp.shapes[j]).scaled(c[j]);
    return f;
}

constexpr std::uint64_t kEvalOrder = 1u << 20;

}  // namespace

WeylInvariants weyl_invariant_space(const RootDatum& datum, unsigned d, const Field& field, std::uint64_t seed) {
    if (d == 0) throw InvalidField("degree must be at least 1");
    const std::size_t l = datum.rank;
    auto monos = polyspace::monomial_basis(l, d);
    std::vector<exactla::Triple> t;
    std::size_t row0 = 0;
    for (int i = 0; i < datum.rank; ++i) {
        auto s = cartan_reflection(datum, i, field);
        std::map<Exponent, std::size_t, polyspace::GrevlexDesc> rows;
        for (std::size_t c = 0; c < monos.size(); ++c) {
            auto m = SparsePoly::monomial(field, monos[c], field.from_int(1));
            auto diff = polyspace::substitute_linear(m, s) - m;
            for (const auto& [e, v] : diff.terms()) {
                auto [it, fresh] = rows.try_emplace(e, row0 + rows.size());
                t.push_back({it->second, c, v});
            }
        }
        row0 += rows.size();
    }
    auto m = SparseMatrix::from_triples(row0, monos.size(), field, t);
    WeylInvariants out;
    out.degree = d;
    out.field = field;
    out.columns = monos.size();
    std::vector<Vector> kernel;
    if (field.is_finite()) {
        kernel = exactla::kernel_basis(m);
    } else {
        exactla::PrimeStream ps(seed);
        auto build = [&](const Zq& f) { return exactla::reduce_rows(m, f); };
        auto verify = [&](const std::vector<Vector>& basis) {
            for (const auto& v : basis)
                for (const auto& x : m.apply(v))
                    if (sgn(x) != 0) return false;
            return true;
        };
        auto rk = exactla::rational_kernel(build, monos.size(), ps, verify);
        kernel = std::move(rk.basis);
        out.primes_used = rk.primes;
        // The kernel dimension at each prime bounds the rational one from above.
        while (out.primes_used.size() < 3) {
            Zq f(ps.next());
            auto rows = exactla::reduce_rows(m, f);
            if (!rows) continue;
            if (monos.size() - exactla::mod_rank(f, *rows, monos.size()) != kernel.size())
                throw NoConsensus("modular Weyl-invariant dimensions disagree");
            out.primes_used.push_back(f.p());
        }
    }
    for (const auto& v : kernel) {
        SparsePoly f(l, field);
        for (std::size_t c = 0; c < v.size(); ++c)
            if (sgn(v[c]) != 0) f.add_term(monos[c], v[c]);
        out.basis.push_back(field.is_finite() ? f : f.content_reduced());
    }
    out.dim = out.basis.size();
    return out;
}

WeylInvariants weyl_invariant_bipartite(const RootDatum& datum, unsigned d, const Field& field, std::uint64_t seed) {
    if (d == 0) throw InvalidField("degree must be at least 1");
    if (datum.rank < 2) return weyl_invariant_space(datum, d, field, seed);
    const std::size_t l = datum.rank;
    Bipartite bp = bipartite(datum, d, field.characteristic());
    const std::size_t ncols = bp.shapes.size();
    const std::size_t want = ncols + 16;

    WeylInvariants out;
    out.degree = d;
    out.field = field;
    out.columns = ncols;
    std::mt19937_64 rng(seed);

    if (!field.is_finite()) {
        ShapePolys sp(datum, bp, field);
        std::vector<SparsePoly> accepted;
        auto verify = [&](const std::vector<Vector>& basis) {
            accepted.clear();
            for (const auto& c : basis) {
                auto f = combine(sp, bp, c, field, l);
                if (!is_weyl_invariant(f, datum)) return false;
                accepted.push_back(f.content_reduced());
            }
            return true;
        };
        exactla::PrimeStream ps(seed);
        auto build = [&](const Zq& f) -> std::optional<std::vector<ModRow>> {
            return evaluated_rows(datum, bp, f, d, want, rng);
        };
        auto rk = exactla::rational_kernel(build, ncols, ps, verify);
        out.basis = accepted;
        out.dim = accepted.size();
        out.primes_used = rk.primes;
        // Two more primes as a consistency check on the upper bound.
        while (out.primes_used.size() < 3) {
            Zq f(ps.next());
            std::size_t k = ncols - exactla::mod_rank(f, evaluated_rows(datum, bp, f, d, want, rng), ncols);
            if (k != out.dim) throw NoConsensus("modular Weyl-invariant dimensions disagree");
            out.primes_used.push_back(f.p());
        }
        return out;
    }

    // Small fields: evaluate over a large extension, then descend to the prime field.
    const std::uint32_t p = field.characteristic();
    Field prime = Field::prime(p);
    Field eval = field.order() >= kEvalOrder ? field : Field::at_least(p, kEvalOrder);
    const Zq& z = eval.zq();
    const Field& home = field.order() >= kEvalOrder ? field : prime;
    ShapePolys sp(datum, bp, home);
    std::vector<ModRow> rows;
    for (int round = 0; round < 8; ++round) {
        auto more = evaluated_rows(datum, bp, z, d, want, rng);
        rows.insert(rows.end(), more.begin(), more.end());
        auto ker = exactla::mod_kernel(z, rows, ncols);
        bool ok = true;
        std::vector<SparsePoly> basis;
        for (const auto& k : ker) {
            Vector c(ncols);
            for (std::size_t t = 0; t < k.size() && ok; ++t) {
                if (home == prime && k.vals[t] >= p) ok = false;
                c[k.cols[t]] = Scalar(k.vals[t]);
            }
            if (!ok) break;
            auto f = combine(sp, bp, c, home, l);
            if (!is_weyl_invariant(f, datum)) {
                ok = false;
                break;
            }
            basis.push_back(f);
        }
        if (!ok) continue;
        for (auto& f : basis) {
            if (home == field) {
                out.basis.push_back(std::move(f));
                continue;
            }
            SparsePoly g(l, field);
            for (const auto& [e, v] : f.terms()) g.add_term(e, v);
            out.basis.push_back(std::move(g));
        }
        out.dim = out.basis.size();
        return out;
    }
    throw NoConsensus("evaluated Weyl-invariant kernel did not certify");
}

}  // namespace stabforge::invariants

namespace stabforge::rootsys {

std::vector<long> invariant_degree_sequence(const RootDatum& datum) {
    constexpr std::size_t kCap = 7000;
    const auto q = exactla::Field::rationals();
    std::vector<long> found;
    // count[d] = number of monomials of degree d in generators of the found degrees.
    std::vector<long> count{1};
    auto expected = [&](unsigned d) {
        std::vector<long> c(d + 1, 0);
        c[0] = 1;
        for (long g : found)
            for (unsigned k = g; k <= d; ++k) c[k] += c[k - g];
        return c[d];
    };
    const long top = datum.coxeter_number();
    for (unsigned d = 1; d <= static_cast<unsigned>(top) && found.size() < std::size_t(datum.rank); ++d) {
        if (polyspace::monomial_basis(datum.rank, d).size() > kCap) {
            auto all = degrees_from_heights(datum);
            for (std::size_t i = 0; i < found.size(); ++i)
                if (found[i] != all[i]) throw Error("scanned degrees disagree with the height partition");
            return all;
        }
        long dim = static_cast<long>(invariants::weyl_invariant_space(datum, d, q).dim);
        for (long extra = dim - expected(d); extra > 0; --extra) found.push_back(d);
    }
    return found;
}

}  // namespace stabforge::rootsys
