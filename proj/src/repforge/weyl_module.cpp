#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <tuple>

#include "stabforge/errors.hpp"
#include "stabforge/exactla/lattice.hpp"
#include "stabforge/exactla/mod_echelon.hpp"
#include "stabforge/repforge/constructions.hpp"

namespace stabforge::repforge {

using exactla::Triple;
using exactla::ZVec;

mpz_class weyl_dimension(const rootsys::RootDatum& datum, const IntVec& highest) {
    if (highest.size() != static_cast<std::size_t>(datum.rank)) throw DimensionMismatch("highest weight length");
    Scalar dim = 1;
    for (const auto& beta : datum.positive_roots) {
        IntVec c = datum.coroot(beta);
        long num = 0, den = 0;
        for (int i = 0; i < datum.rank; ++i) {
            num += c[i] * (highest[i] + 1);
            den += c[i];
        }
        dim *= Scalar(num, den);
        dim.canonicalize();
    }
    return dim.get_num();
}

namespace {

using Dense = std::vector<std::vector<Scalar>>;  // row-major

Dense zeros(std::size_t r, std::size_t c) { return Dense(r, std::vector<Scalar>(c, Scalar(0))); }

std::vector<Scalar> mat_vec(const Dense& m, const std::vector<Scalar>& v) {
    std::vector<Scalar> out(m.size(), Scalar(0));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            if (sgn(v[j]) && sgn(m[i][j])) out[i] += m[i][j] * v[j];
    return out;
}

// X with A X = B (A: m x n of full column rank on the relevant span, B: m x k).
// Throws when some column of B is outside the column space of A.
Dense solve(const Dense& a, const Dense& b, std::size_t n) {
    std::size_t m = a.size(), k = m ? b[0].size() : 0;
    Dense aug = zeros(m, n + k);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
        for (std::size_t j = 0; j < k; ++j) aug[i][n + j] = b[i][j];
    }
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < m; ++c) {
        std::size_t r = row;
        while (r < m && sgn(aug[r][c]) == 0) ++r;
        if (r == m) continue;
        std::swap(aug[r], aug[row]);
        Scalar inv = 1 / aug[row][c];
        for (auto& v : aug[row]) v *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || sgn(aug[i][c]) == 0) continue;
            Scalar f = aug[i][c];
            for (std::size_t j = c; j < n + k; ++j)
                if (sgn(aug[row][j])) aug[i][j] -= f * aug[row][j];
        }
        piv.push_back(c);
        ++row;
    }
    for (std::size_t i = row; i < m; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (sgn(aug[i][n + j])) throw Error("inconsistent system in Weyl module construction");
    Dense x = zeros(n, k);
    for (std::size_t r = 0; r < piv.size(); ++r)
        for (std::size_t j = 0; j < k; ++j) x[piv[r]][j] = aug[r][n + j];
    return x;
}

bool integral(const std::vector<Scalar>& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.get_den() == 1; });
}

// One weight space lambda - sum k_i alpha_i of the module under construction.
struct Space {
    IntVec k;
    IntVec labels;
    std::size_t dim = 0;
    std::size_t offset = 0;
    int depth = 0;
    // e_j : this -> space(k - e_j), dim(target) x dim.
    std::map<int, Dense> e;
    // f_i : this -> space(k + e_i).
    std::map<int, Dense> f;
};

class Builder {
public:
    Builder(const chevalley::ChevalleyAlgebra& alg, const IntVec& highest)
        : d_(alg.datum()), l_(alg.rank()), highest_(highest) {}

    void run();
    Representation assemble(std::shared_ptr<const chevalley::ChevalleyAlgebra> alg);

private:
    Space* find(const IntVec& k) {
        for (long v : k)
            if (v < 0) return nullptr;
        auto it = index_.find(k);
        return it == index_.end() ? nullptr : &spaces_[it->second];
    }
    IntVec shift(IntVec k, int i, long by) const {
        k[i] += by;
        return k;
    }
    IntVec labels_of(const IntVec& k) const {
        IntVec w = highest_;
        for (int j = 0; j < l_; ++j)
            for (int i = 0; i < l_; ++i) w[j] -= k[i] * d_.cartan[j][i];
        return w;
    }
    // f_i^(a) v for v in space k; empty when the target space is absent.
    std::optional<std::vector<Scalar>> f_div(int i, long a, const IntVec& k, std::vector<Scalar> v) {
        IntVec cur = k;
        for (long s = 1; s <= a; ++s) {
            Space* sp = find(cur);
            if (!sp || !sp->f.count(i)) return std::nullopt;
            v = mat_vec(sp->f[i], v);
            for (auto& x : v) x /= s;
            cur[i] += 1;
        }
        return v;
    }
    std::optional<std::vector<Scalar>> e_apply(int j, const IntVec& k, const std::vector<Scalar>& v) {
        Space* sp = find(k);
        if (!sp || !sp->e.count(j)) return std::nullopt;
        return mat_vec(sp->e[j], v);
    }
    // Blocks of e-images for vectors in space k: (j, offset, size).
    std::vector<std::tuple<int, std::size_t, std::size_t>> blocks(const IntVec& k) {
        std::vector<std::tuple<int, std::size_t, std::size_t>> out;
        std::size_t off = 0;
        for (int j = 0; j < l_; ++j) {
            Space* up = find(shift(k, j, -1));
            if (!up) continue;
            out.emplace_back(j, off, up->dim);
            off += up->dim;
        }
        return out;
    }
    void build_depth(int depth, const std::vector<IntVec>& candidates);
    void lowering_maps(int depth);
    void gram();

    const rootsys::RootDatum& d_;
    int l_;
    IntVec highest_;
    std::vector<Space> spaces_;
    std::map<IntVec, std::size_t> index_;
    std::vector<std::vector<std::vector<mpz_class>>> gram_;
};

void Builder::run() {
    Space top;
    top.k = IntVec(l_, 0);
    top.labels = highest_;
    top.dim = 1;
    index_[top.k] = 0;
    spaces_.push_back(top);
    for (int depth = 1;; ++depth) {
        std::set<IntVec> cand;
        for (const auto& s : spaces_)
            if (s.depth == depth - 1)
                for (int i = 0; i < l_; ++i) cand.insert(shift(s.k, i, 1));
        std::size_t before = spaces_.size();
        build_depth(depth, std::vector<IntVec>(cand.begin(), cand.end()));
        lowering_maps(depth);
        if (spaces_.size() == before) break;
    }
    gram();
}

void Builder::build_depth(int depth, const std::vector<IntVec>& candidates) {
    for (const auto& k : candidates) {
        IntVec labels = labels_of(k);
        auto blk = blocks(k);
        std::size_t width = 0;
        for (const auto& [j, off, sz] : blk) width += sz;
        std::vector<ZVec> rows;
        for (int i = 0; i < l_; ++i) {
            for (long a = 1;; ++a) {
                IntVec src = shift(k, i, -a);
                Space* s = find(src);
                if (!s) break;
                long pairing = labels[i] + 2 * a;  // <mu + a alpha_i, alpha_i^vee>
                for (std::size_t b = 0; b < s->dim; ++b) {
                    std::vector<Scalar> unit(s->dim, Scalar(0));
                    unit[b] = 1;
                    std::vector<Scalar> sig(width, Scalar(0));
                    for (const auto& [j, off, sz] : blk) {
                        std::vector<Scalar> w(sz, Scalar(0));
                        IntVec up = shift(src, j, -1);
                        if (auto ev = e_apply(j, src, unit))
                            if (auto img = f_div(i, a, up, *ev))
                                for (std::size_t r = 0; r < sz; ++r) w[r] += (*img)[r];
                        if (j == i) {
                            Scalar c = pairing - a + 1;
                            if (auto img = f_div(i, a - 1, src, unit))
                                for (std::size_t r = 0; r < sz; ++r) w[r] += c * (*img)[r];
                        }
                        std::copy(w.begin(), w.end(), sig.begin() + off);
                    }
                    if (!integral(sig)) throw IntegralityFailure("divided power left the lattice");
                    ZVec z(width);
                    for (std::size_t r = 0; r < width; ++r) z[r] = sig[r].get_num();
                    rows.push_back(std::move(z));
                }
            }
        }
        auto basis = exactla::lattice_basis(std::move(rows), width);
        if (basis.empty()) continue;
        Space sp;
        sp.k = k;
        sp.labels = labels;
        sp.dim = basis.size();
        sp.depth = depth;
        for (const auto& [j, off, sz] : blk) {
            Dense e = zeros(sz, sp.dim);
            for (std::size_t c = 0; c < sp.dim; ++c)
                for (std::size_t r = 0; r < sz; ++r) e[r][c] = Scalar(basis[c][off + r]);
            sp.e[j] = std::move(e);
        }
        index_[k] = spaces_.size();
        spaces_.push_back(std::move(sp));
    }
}

void Builder::lowering_maps(int depth) {
    for (std::size_t si = 0; si < spaces_.size(); ++si) {
        if (spaces_[si].depth != depth - 1) continue;
        for (int i = 0; i < l_; ++i) {
            IntVec tk = shift(spaces_[si].k, i, 1);
            Space* t = find(tk);
            if (!t) continue;
            Space& s = spaces_[si];
            auto blk = blocks(tk);
            std::size_t width = 0;
            for (const auto& [j, off, sz] : blk) width += sz;
            // Signature matrix of the target basis (width x dim t) and of f_i v.
            Dense basis_sig = zeros(width, t->dim);
            for (const auto& [j, off, sz] : blk)
                for (std::size_t r = 0; r < sz; ++r)
                    for (std::size_t c = 0; c < t->dim; ++c) basis_sig[off + r][c] = t->e[j][r][c];
            Dense img = zeros(width, s.dim);
            for (std::size_t v = 0; v < s.dim; ++v) {
                std::vector<Scalar> unit(s.dim, Scalar(0));
                unit[v] = 1;
                for (const auto& [j, off, sz] : blk) {
                    std::vector<Scalar> w(sz, Scalar(0));
                    if (auto ev = e_apply(j, s.k, unit))
                        if (auto fv = f_div(i, 1, shift(s.k, j, -1), *ev)) w = *fv;
                    if (j == i)
                        for (std::size_t r = 0; r < sz; ++r) w[r] += s.labels[i] * unit[r];
                    for (std::size_t r = 0; r < sz; ++r) img[off + r][v] = w[r];
                }
            }
            Dense coeffs = solve(basis_sig, img, t->dim);
            for (const auto& row : coeffs)
                if (!integral(row)) throw IntegralityFailure("lowering operator is not integral");
            spaces_[si].f[i] = std::move(coeffs);
        }
    }
}

void Builder::gram() {
    gram_.resize(spaces_.size());
    gram_[0] = {{mpz_class(1)}};
    for (std::size_t si = 1; si < spaces_.size(); ++si) {
        Space& s = spaces_[si];
        // Write each basis vector as sum_i f_i z_i with z_i in space(k - e_i).
        std::vector<std::pair<int, Space*>> ups;
        std::size_t width = 0;
        for (int i = 0; i < l_; ++i)
            if (Space* u = find(shift(s.k, i, -1))) {
                ups.emplace_back(i, u);
                width += u->dim;
            }
        Dense fmat = zeros(s.dim, width);
        std::size_t off = 0;
        for (auto& [i, u] : ups) {
            for (std::size_t r = 0; r < s.dim; ++r)
                for (std::size_t c = 0; c < u->dim; ++c) fmat[r][off + c] = u->f[i][r][c];
            off += u->dim;
        }
        Dense id = zeros(s.dim, s.dim);
        for (std::size_t r = 0; r < s.dim; ++r) id[r][r] = 1;
        Dense z = solve(fmat, id, width);
        // <f_i z, y> = <z, e_i y>.
        std::vector<std::vector<Scalar>> g(s.dim, std::vector<Scalar>(s.dim, Scalar(0)));
        off = 0;
        for (auto& [i, u] : ups) {
            const auto& gu = gram_[index_[u->k]];
            const Dense& e = s.e[i];
            for (std::size_t x = 0; x < s.dim; ++x)
                for (std::size_t y = 0; y < s.dim; ++y) {
                    Scalar acc = 0;
                    for (std::size_t a = 0; a < u->dim; ++a) {
                        if (sgn(z[off + a][x]) == 0) continue;
                        for (std::size_t b = 0; b < u->dim; ++b)
                            if (sgn(e[b][y])) acc += z[off + a][x] * gu[a][b] * e[b][y];
                    }
                    g[x][y] += acc;
                }
            off += u->dim;
        }
        gram_[si].assign(s.dim, std::vector<mpz_class>(s.dim));
        for (std::size_t x = 0; x < s.dim; ++x)
            for (std::size_t y = 0; y < s.dim; ++y) {
                if (g[x][y].get_den() != 1 || g[x][y] != g[y][x])
                    throw IntegralityFailure("contravariant form is not integral and symmetric");
                gram_[si][x][y] = g[x][y].get_num();
            }
    }
}

Representation Builder::assemble(std::shared_ptr<const chevalley::ChevalleyAlgebra> alg) {
    std::size_t n = 0;
    for (auto& s : spaces_) {
        s.offset = n;
        n += s.dim;
    }
    const Field q = Field::rationals();
    Representation rep;
    rep.group = d_.name();
    rep.cartan = d_.cartan;
    rep.field = q;
    rep.dim = n;
    rep.highest = highest_;
    std::vector<std::vector<Triple>> et(l_), ft(l_), ht(l_);
    for (const auto& s : spaces_) {
        for (std::size_t c = 0; c < s.dim; ++c) {
            rep.weights.push_back(s.labels);
            for (int i = 0; i < l_; ++i)
                if (s.labels[i]) ht[i].push_back({s.offset + c, s.offset + c, Scalar(s.labels[i])});
        }
        for (const auto& [j, m] : s.e) {
            const Space& t = spaces_[index_.at(shift(s.k, j, -1))];
            for (std::size_t r = 0; r < t.dim; ++r)
                for (std::size_t c = 0; c < s.dim; ++c)
                    if (sgn(m[r][c])) et[j].push_back({t.offset + r, s.offset + c, m[r][c]});
        }
        for (const auto& [i, m] : s.f) {
            const Space& t = spaces_[index_.at(shift(s.k, i, 1))];
            for (std::size_t r = 0; r < t.dim; ++r)
                for (std::size_t c = 0; c < s.dim; ++c)
                    if (sgn(m[r][c])) ft[i].push_back({t.offset + r, s.offset + c, m[r][c]});
        }
    }
    for (int i = 0; i < l_; ++i) {
        rep.e.push_back(SparseMatrix::from_triples(n, n, q, et[i]));
        rep.f.push_back(SparseMatrix::from_triples(n, n, q, ft[i]));
        rep.h.push_back(SparseMatrix::from_triples(n, n, q, ht[i]));
    }
    attach_model(rep, alg);
    auto model = std::make_shared<IntegralModel>(*rep.model);
    for (std::size_t si = 0; si < spaces_.size(); ++si) {
        std::vector<std::size_t> idx;
        for (std::size_t c = 0; c < spaces_[si].dim; ++c) idx.push_back(spaces_[si].offset + c);
        model->blocks.push_back(idx);
        model->gram.push_back(gram_[si]);
    }
    rep.model = model;
    attach_curves(rep);
    return rep;
}

}  // namespace

Representation weyl_module(std::shared_ptr<const chevalley::ChevalleyAlgebra> alg, const IntVec& highest,
                           const Field& field, std::size_t max_dim) {
    const auto& d = alg->datum();
    for (long v : highest)
        if (v < 0) throw Error("highest weight must be dominant");
    mpz_class predicted = weyl_dimension(d, highest);
    if (predicted > max_dim)
        throw TooLarge("Weyl module of dimension " + predicted.get_str() + " exceeds the limit " +
                       std::to_string(max_dim));
    Builder b(*alg, highest);
    b.run();
    Representation rep = b.assemble(alg);
    if (rep.dim != predicted) throw Error("Weyl module dimension disagrees with the dimension formula");
    return change_field(rep, field);
}

Representation irreducible_head(const Representation& weyl) {
    if (!weyl.field.is_finite()) return weyl;
    const auto& m = weyl.model;
    if (!m || m->gram.empty() || m->projection) throw Error("irreducible_head expects a Weyl module");
    const exactla::Zq zq(weyl.field.characteristic());
    const Field fp = Field::prime(weyl.field.characteristic());
    std::vector<std::size_t> section;
    // Image of each model basis vector in the quotient, as (quotient index, coefficient) lists.
    std::vector<std::vector<std::pair<std::size_t, std::uint32_t>>> image(m->dim);
    for (std::size_t bi = 0; bi < m->blocks.size(); ++bi) {
        const auto& idx = m->blocks[bi];
        const auto& g = m->gram[bi];
        std::vector<exactla::ModRow> rows;
        for (const auto& row : g) {
            std::vector<std::pair<std::uint32_t, std::uint32_t>> ent;
            for (std::size_t c = 0; c < row.size(); ++c)
                if (auto v = zq.from_mpz(row[c])) ent.emplace_back(c, v);
            rows.push_back(exactla::make_row(ent, zq));
        }
        auto rad = exactla::mod_kernel(zq, rows, idx.size());
        std::vector<bool> pivot(idx.size(), false);
        for (const auto& r : rad) pivot[r.cols[0]] = true;
        std::map<std::size_t, std::size_t> qpos;
        for (std::size_t c = 0; c < idx.size(); ++c)
            if (!pivot[c]) {
                qpos[c] = section.size();
                image[idx[c]].push_back({section.size(), 1});
                section.push_back(idx[c]);
            }
        for (const auto& r : rad) {
            std::size_t pc = r.cols[0];
            for (std::size_t t = 1; t < r.size(); ++t)
                image[idx[pc]].push_back({qpos.at(r.cols[t]), zq.neg(r.vals[t])});
        }
    }
    std::vector<Triple> pt;
    for (std::size_t j = 0; j < m->dim; ++j)
        for (const auto& [row, v] : image[j]) pt.push_back({row, j, Scalar(v)});
    auto model = std::make_shared<IntegralModel>(*m);
    model->projection = SparseMatrix::from_triples(section.size(), m->dim, fp, pt);
    model->section = section;

    Representation out;
    out.group = weyl.group;
    out.cartan = weyl.cartan;
    out.field = weyl.field;
    out.dim = section.size();
    out.highest = weyl.highest;
    out.lattice = weyl.lattice;
    out.model = model;
    for (auto s : section) out.weights.push_back(m->weights[s]);
    const auto& alg = *m->alg;
    for (int i = 0; i < out.rank(); ++i) {
        out.e.push_back(model->induced(m->action[alg.e_simple(i)], out.field));
        out.f.push_back(model->induced(m->action[alg.f_simple(i)], out.field));
        out.h.push_back(model->induced(m->action[alg.cartan_basis(i)], out.field));
    }
    attach_curves(out);
    return out;
}

}  // namespace stabforge::repforge
