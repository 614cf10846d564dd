#include "stabforge/repforge/constructions.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <set>

#include "stabforge/errors.hpp"
#include "stabforge/exactla/linalg.hpp"
#include "stabforge/polyspace/sparse_poly.hpp"

namespace stabforge::repforge {

using exactla::Triple;
using exactla::Vector;

std::shared_ptr<const chevalley::ChevalleyAlgebra> algebra_for(const std::string& type) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const chevalley::ChevalleyAlgebra>> cache;
    auto datum = rootsys::build_root_system(type);
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[datum.name()];
    if (!slot) slot = std::make_shared<const chevalley::ChevalleyAlgebra>(std::move(datum));
    return slot;
}

namespace {

Representation finish_rational(Representation rep, const std::string& type, const Field& field) {
    rep.dim = rep.e.empty() ? 0 : rep.e[0].nrows();
    rep.weights = weights_from_h(rep.h);
    attach_model(rep, algebra_for(type));
    attach_curves(rep);
    return change_field(rep, field);
}

SparseMatrix elementary(std::size_t n, std::vector<Triple> entries) {
    return SparseMatrix::from_triples(n, n, Field::rationals(), entries);
}

}  // namespace

Representation natural_rep(char label, int rank, const Field& field) {
    auto datum = rootsys::build_root_system(label, rank);
    Representation rep;
    rep.group = datum.name();
    rep.cartan = datum.cartan;
    rep.field = Field::rationals();
    const int n = rank;
    std::size_t dim;
    switch (label) {
        case 'A': dim = n + 1; break;
        case 'B': dim = 2 * n + 1; break;
        case 'C':
        case 'D': dim = 2 * n; break;
        default: throw InvalidType(std::string("no natural module for type ") + label);
    }
    auto prime = [&](std::size_t i) { return dim - 1 - i; };
    for (int i = 0; i < n; ++i) {
        SparseMatrix e;
        std::size_t a = i, b = i + 1;
        if (label == 'A') {
            e = elementary(dim, {{a, b, 1}});
        } else if (i < n - 1) {
            e = elementary(dim, {{a, b, 1}, {prime(b), prime(a), -1}});
        } else if (label == 'B') {
            e = elementary(dim, {{a, b, 2}, {b, b + 1, 1}});
        } else if (label == 'C') {
            e = elementary(dim, {{a, prime(a), 1}});
        } else {
            e = elementary(dim, {{a - 1, prime(a), 1}, {a, prime(a - 1), -1}});
        }
        SparseMatrix f = e.transpose();
        if (label == 'B' && i == n - 1) f = elementary(dim, {{b, a, 1}, {b + 1, b, 2}});
        rep.e.push_back(e);
        rep.f.push_back(f);
        rep.h.push_back(e.commutator(f));
    }
    return finish_rational(std::move(rep), datum.name(), field);
}

SparseMatrix natural_form(char label, int rank, const Field& field) {
    std::size_t dim = label == 'B' ? 2 * rank + 1 : 2 * rank;
    if (label != 'B' && label != 'C' && label != 'D') throw InvalidType("no invariant form on the natural module");
    SparseMatrix j(dim, dim, field);
    for (std::size_t i = 0; i < dim; ++i) {
        long v = 1;
        if (label == 'C' && i >= dim / 2) v = -1;
        if (label == 'B' && i == dim / 2) v = -2;
        j.set(i, dim - 1 - i, field.from_int(v));
    }
    return j;
}

Representation half_spin_rep(char label, int rank, const Field& field, int chirality) {
    if (label != 'B' && label != 'D') throw InvalidType("spin modules exist for types B and D");
    auto datum = rootsys::build_root_system(label, rank);
    const int n = rank;
    std::vector<unsigned> masks;
    for (unsigned s = 0; s < (1u << n); ++s)
        if (label == 'B' || (std::popcount(s) % 2 == 0) == (chirality > 0)) masks.push_back(s);
    std::map<unsigned, std::size_t> index;
    for (std::size_t k = 0; k < masks.size(); ++k) index[masks[k]] = k;

    // Creation u_i and contraction iota_i on the exterior algebra (1-based i).
    struct Op {
        bool create;
        int i;
    };
    auto apply = [&](const std::vector<Op>& word, unsigned s, long& sign) -> bool {
        sign = 1;
        for (auto it = word.rbegin(); it != word.rend(); ++it) {
            unsigned bit = 1u << (it->i - 1);
            if (bool(s & bit) == it->create) return false;
            if (std::popcount(s & (bit - 1)) % 2) sign = -sign;
            s ^= bit;
        }
        return true;
    };
    auto matrix = [&](const std::vector<Op>& word) {
        std::vector<Triple> t;
        for (unsigned s : masks) {
            long sign;
            if (!apply(word, s, sign)) continue;
            unsigned img = s;
            for (const auto& op : word) img ^= 1u << (op.i - 1);
            auto it = index.find(img);
            if (it == index.end()) throw Error("spin operator leaves the chosen half");
            t.push_back({it->second, index[s], sign});
        }
        return SparseMatrix::from_triples(masks.size(), masks.size(), Field::rationals(), t);
    };
    Representation rep;
    rep.group = datum.name();
    rep.cartan = datum.cartan;
    for (int i = 1; i <= n; ++i) {
        SparseMatrix e, f;
        if (i < n) {
            e = matrix({{true, i}, {false, i + 1}});
            f = matrix({{true, i + 1}, {false, i}});
        } else if (label == 'D') {
            e = matrix({{true, n - 1}, {true, n}});
            f = matrix({{false, n}, {false, n - 1}});
        } else {
            e = matrix({{true, n}});
            f = matrix({{false, n}});
        }
        rep.e.push_back(e);
        rep.f.push_back(f);
        rep.h.push_back(e.commutator(f));
    }
    return finish_rational(std::move(rep), datum.name(), field);
}

Representation adjoint_rep(std::shared_ptr<const chevalley::ChevalleyAlgebra> alg, const Field& field) {
    const auto& d = alg->datum();
    const Field q = Field::rationals();
    Representation rep;
    rep.group = d.name();
    rep.cartan = d.cartan;
    rep.dim = alg->dim();
    auto model = std::make_shared<IntegralModel>();
    model->alg = alg;
    model->dim = rep.dim;
    for (int b = 0; b < alg->dim(); ++b) {
        model->action.push_back(alg->ad(b, q));
        int r = alg->basis_root(b);
        rep.weights.push_back(r < 0 ? IntVec(d.rank, 0) : d.dynkin_labels(d.all_roots[r]));
        model->section.push_back(b);
    }
    model->weights = rep.weights;
    for (int i = 0; i < d.rank; ++i) {
        rep.e.push_back(model->action[alg->e_simple(i)]);
        rep.f.push_back(model->action[alg->f_simple(i)]);
        rep.h.push_back(model->action[alg->cartan_basis(i)]);
    }
    rep.model = model;
    rep.highest = d.dynkin_labels(d.highest_root());
    attach_curves(rep);
    return change_field(rep, field);
}

IntVec highest_weight_of(const Representation& rep) {
    std::set<IntVec> all(rep.weights.begin(), rep.weights.end());
    std::vector<IntVec> tops;
    for (const auto& w : all) {
        bool top = true;
        for (int i = 0; i < rep.rank() && top; ++i) {
            IntVec up = w;
            for (int j = 0; j < rep.rank(); ++j) up[j] += rep.cartan[j][i];
            if (all.count(up)) top = false;
        }
        if (top) tops.push_back(w);
    }
    if (tops.size() != 1) throw Error("representation has no unique highest weight");
    return tops[0];
}

namespace {

using Poly = std::vector<Scalar>;  // coefficients in t, low to high

void poly_add_to(Poly& acc, const Poly& p, const Field& k) {
    if (acc.size() < p.size()) acc.resize(p.size(), Scalar(0));
    for (std::size_t i = 0; i < p.size(); ++i) acc[i] = k.add(acc[i], p[i]);
}

Poly poly_mul(const Poly& a, const Poly& b, const Field& k) {
    Poly out(a.size() + b.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (k.is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = k.add(out[i + j], k.mul(a[i], b[j]));
    }
    return out;
}

// Columns of a curve: column j as a list of (row, polynomial in t).
std::vector<std::map<std::size_t, Poly>> curve_columns(const PolyMatrix& x) {
    std::vector<std::map<std::size_t, Poly>> cols(x.dim());
    for (std::size_t c = 0; c < x.coeffs().size(); ++c)
        for (const auto& t : x.coeff(c).triples()) {
            Poly& p = cols[t.col][t.row];
            if (p.size() <= c) p.resize(c + 1, Scalar(0));
            p[c] = t.value;
        }
    return cols;
}

PolyMatrix assemble(std::size_t n, const Field& k, const std::vector<std::map<std::size_t, Poly>>& cols) {
    std::size_t deg = 0;
    for (const auto& col : cols)
        for (const auto& [r, p] : col) deg = std::max(deg, p.size());
    std::vector<std::vector<Triple>> trip(std::max<std::size_t>(deg, 1));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [r, p] : cols[j])
            for (std::size_t c = 0; c < p.size(); ++c)
                if (!k.is_zero(p[c])) trip[c].push_back({r, j, p[c]});
    std::vector<SparseMatrix> coeffs;
    for (auto& t : trip) coeffs.push_back(SparseMatrix::from_triples(n, n, k, t));
    return PolyMatrix(std::move(coeffs));
}

IntVec add_weights(const IntVec& a, const IntVec& b) {
    IntVec out(a);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
}

// Model for functor outputs over Q, when the input carries one.
void maybe_model(Representation& out, const Representation& in) {
    if (!out.field.is_finite() && in.model && in.model->alg && in.model->alg->rank() == out.rank())
        attach_model(out, in.model->alg);
}

Representation functor_shell(const Representation& in) {
    Representation out;
    out.group = in.group;
    out.cartan = in.cartan;
    out.field = in.field;
    out.lattice = in.lattice;
    return out;
}

}  // namespace

Representation sym_power(const Representation& rep, unsigned d) {
    const Field& k = rep.field;
    const std::size_t n = rep.dim;
    auto basis = polyspace::monomial_basis(n, d);
    std::map<polyspace::Exponent, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
    Representation out = functor_shell(rep);
    out.dim = basis.size();
    auto lie = [&](const SparseMatrix& x) {
        std::vector<Triple> t;
        // X e^m = sum_j m_j e^{m - e_j} (X e_j).
        auto xt = x.transpose();
        for (std::size_t c = 0; c < basis.size(); ++c) {
            const auto& m = basis[c];
            for (std::size_t j = 0; j < n; ++j) {
                if (!m[j]) continue;
                for (const auto& [row, v] : xt.row(j)) {
                    auto img = m;
                    --img[j];
                    ++img[row];
                    t.push_back({index.at(img), c, k.mul(v, k.from_int(m[j]))});
                }
            }
        }
        SparseMatrix s(out.dim, out.dim, k);
        for (const auto& e : t) s.add_to(e.row, e.col, e.value);
        return s;
    };
    for (const auto& x : rep.e) out.e.push_back(lie(x));
    for (const auto& x : rep.f) out.f.push_back(lie(x));
    for (const auto& x : rep.h) out.h.push_back(lie(x));
    for (const auto& m : basis) {
        IntVec w(rep.rank(), 0);
        for (std::size_t j = 0; j < n; ++j)
            for (unsigned r = 0; r < m[j]; ++r) w = add_weights(w, rep.weights[j]);
        out.weights.push_back(w);
    }
    auto group = [&](const PolyMatrix& x) {
        auto cols = curve_columns(x);
        std::vector<std::map<std::size_t, Poly>> out_cols(basis.size());
        for (std::size_t c = 0; c < basis.size(); ++c) {
            // Product of the images of the factors, as exponent -> polynomial in t.
            std::map<polyspace::Exponent, Poly> acc{{polyspace::Exponent(n, 0), Poly{k.from_int(1)}}};
            for (std::size_t j = 0; j < n; ++j) {
                for (unsigned r = 0; r < basis[c][j]; ++r) {
                    std::map<polyspace::Exponent, Poly> next;
                    for (const auto& [e, p] : acc)
                        for (const auto& [row, q] : cols[j]) {
                            auto e2 = e;
                            ++e2[row];
                            poly_add_to(next[e2], poly_mul(p, q, k), k);
                        }
                    acc = std::move(next);
                }
            }
            for (const auto& [e, p] : acc) out_cols[c][index.at(e)] = p;
        }
        return assemble(out.dim, k, out_cols);
    };
    for (const auto& x : rep.x_pos) out.x_pos.push_back(group(x));
    for (const auto& x : rep.x_neg) out.x_neg.push_back(group(x));
    maybe_model(out, rep);
    return out;
}

Representation wedge_power(const Representation& rep, unsigned d) {
    const Field& k = rep.field;
    const std::size_t n = rep.dim;
    std::vector<std::vector<std::size_t>> basis;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == d) {
            basis.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
    Representation out = functor_shell(rep);
    out.dim = basis.size();

    // Sorted insertion of e_row appended after s; empty when row already occurs.
    auto insert = [](std::vector<std::size_t> s, std::size_t row, long& sign) {
        std::size_t pos = std::lower_bound(s.begin(), s.end(), row) - s.begin();
        if (pos < s.size() && s[pos] == row) return std::vector<std::size_t>{};
        sign = (s.size() - pos) % 2 ? -1 : 1;
        s.insert(s.begin() + pos, row);
        return s;
    };
    auto lie = [&](const SparseMatrix& x) {
        auto xt = x.transpose();
        SparseMatrix out_m(out.dim, out.dim, k);
        for (std::size_t c = 0; c < basis.size(); ++c) {
            const auto& s = basis[c];
            for (std::size_t p = 0; p < s.size(); ++p) {
                std::vector<std::size_t> rest(s);
                rest.erase(rest.begin() + p);
                // e_{s_p} moved to the end first: sign (-1)^{d-1-p}.
                long base = (d - 1 - p) % 2 ? -1 : 1;
                for (const auto& [row, v] : xt.row(s[p])) {
                    long sign = 1;
                    auto img = insert(rest, row, sign);
                    if (img.empty()) continue;
                    out_m.add_to(index.at(img), c, k.mul(v, k.from_int(base * sign)));
                }
            }
        }
        return out_m;
    };
    for (const auto& x : rep.e) out.e.push_back(lie(x));
    for (const auto& x : rep.f) out.f.push_back(lie(x));
    for (const auto& x : rep.h) out.h.push_back(lie(x));
    for (const auto& s : basis) {
        IntVec w(rep.rank(), 0);
        for (auto j : s) w = add_weights(w, rep.weights[j]);
        out.weights.push_back(w);
    }
    auto group = [&](const PolyMatrix& x) {
        auto cols = curve_columns(x);
        std::vector<std::map<std::size_t, Poly>> out_cols(basis.size());
        for (std::size_t c = 0; c < basis.size(); ++c) {
            // Wedge the images left to right; each term is kept sorted.
            std::map<std::vector<std::size_t>, Poly> acc{{{}, Poly{k.from_int(1)}}};
            for (auto j : basis[c]) {
                std::map<std::vector<std::size_t>, Poly> next;
                for (const auto& [s, p] : acc)
                    for (const auto& [row, q] : cols[j]) {
                        long sign = 1;
                        auto img = insert(s, row, sign);
                        if (img.empty()) continue;
                        Poly term = poly_mul(p, q, k);
                        if (sign < 0)
                            for (auto& v : term) v = k.neg(v);
                        poly_add_to(next[img], term, k);
                    }
                acc = std::move(next);
            }
            for (const auto& [s, p] : acc) out_cols[c][index.at(s)] = p;
        }
        return assemble(out.dim, k, out_cols);
    };
    for (const auto& x : rep.x_pos) out.x_pos.push_back(group(x));
    for (const auto& x : rep.x_neg) out.x_neg.push_back(group(x));
    maybe_model(out, rep);
    return out;
}

Representation tensor(const Representation& a, const Representation& b) {
    if (a.field != b.field) throw FieldMismatch("tensor factors over different fields");
    if (a.cartan != b.cartan) throw DimensionMismatch("tensor factors for different groups");
    const Field& k = a.field;
    Representation out = functor_shell(a);
    out.lattice = a.lattice && b.lattice;
    out.dim = a.dim * b.dim;
    auto ia = SparseMatrix::identity(a.dim, k), ib = SparseMatrix::identity(b.dim, k);
    for (int i = 0; i < a.rank(); ++i) {
        out.e.push_back(kron(a.e[i], ib) + kron(ia, b.e[i]));
        out.f.push_back(kron(a.f[i], ib) + kron(ia, b.f[i]));
        out.h.push_back(kron(a.h[i], ib) + kron(ia, b.h[i]));
    }
    for (const auto& wa : a.weights)
        for (const auto& wb : b.weights) out.weights.push_back(add_weights(wa, wb));
    for (std::size_t i = 0; i < a.x_pos.size() && i < b.x_pos.size(); ++i) {
        out.x_pos.push_back(kron(a.x_pos[i], b.x_pos[i]));
        out.x_neg.push_back(kron(a.x_neg[i], b.x_neg[i]));
    }
    if (a.model && b.model && !k.is_finite()) attach_model(out, a.model->alg);
    return out;
}

Representation dual(const Representation& rep) {
    const Field& k = rep.field;
    Representation out = functor_shell(rep);
    out.dim = rep.dim;
    auto neg_t = [&](const SparseMatrix& x) { return x.transpose().scaled(k.from_int(-1)); };
    for (const auto& x : rep.e) out.e.push_back(neg_t(x));
    for (const auto& x : rep.f) out.f.push_back(neg_t(x));
    for (const auto& x : rep.h) out.h.push_back(neg_t(x));
    for (const auto& w : rep.weights) {
        IntVec m(w);
        for (auto& v : m) v = -v;
        out.weights.push_back(m);
    }
    for (const auto& x : rep.x_pos) out.x_pos.push_back(x.dual());
    for (const auto& x : rep.x_neg) out.x_neg.push_back(x.dual());
    maybe_model(out, rep);
    return out;
}

Representation frobenius_twist(const Representation& rep, unsigned e) {
    const Field& k = rep.field;
    if (!k.is_finite()) throw TwistInCharZero("Frobenius twist needs a field of prime characteristic");
    Representation out = functor_shell(rep);
    out.dim = rep.dim;
    long q = 1;
    for (unsigned i = 0; i < e; ++i) q *= k.characteristic();
    SparseMatrix zero(rep.dim, rep.dim, k);
    for (int i = 0; i < rep.rank(); ++i) {
        out.e.push_back(zero);
        out.f.push_back(zero);
        out.h.push_back(zero);
    }
    for (const auto& w : rep.weights) {
        IntVec m(w);
        for (auto& v : m) v *= q;
        out.weights.push_back(m);
    }
    if (rep.highest) {
        IntVec m(*rep.highest);
        for (auto& v : m) v *= q;
        out.highest = m;
    }
    for (const auto& x : rep.x_pos) out.x_pos.push_back(x.frobenius(e));
    for (const auto& x : rep.x_neg) out.x_neg.push_back(x.frobenius(e));
    return out;
}

namespace {

// Everything a fixed vector or functional must be killed by.
std::vector<SparseMatrix> invariance_conditions(const Representation& rep) {
    std::vector<SparseMatrix> out = rep.lie_generators();
    for (const auto& c : rep.curves())
        for (std::size_t k = 1; k < c.coeffs().size(); ++k) out.push_back(c.coeff(k));
    return out;
}

Vector unique_kernel_vector(const std::vector<SparseMatrix>& mats, std::size_t n, const Field& k, const char* what) {
    std::vector<Triple> t;
    std::size_t row = 0;
    for (const auto& m : mats) {
        for (const auto& e : m.triples()) t.push_back({row + e.row, e.col, e.value});
        row += m.nrows();
    }
    auto ker = exactla::kernel_basis(SparseMatrix::from_triples(row, n, k, t));
    if (ker.size() != 1)
        throw Error(std::string("expected a unique invariant ") + what + ", found a space of dimension " +
                    std::to_string(ker.size()));
    return ker[0];
}

std::size_t first_nonzero(const Vector& v, const Field& k) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!k.is_zero(v[i])) return i;
    throw Error("zero vector");
}

}  // namespace

Representation trace_zero(const Representation& rep) {
    const Field& k = rep.field;
    std::vector<SparseMatrix> conds;
    for (const auto& m : invariance_conditions(rep)) conds.push_back(m.transpose());
    Vector phi = unique_kernel_vector(conds, rep.dim, k, "functional");
    std::size_t j0 = first_nonzero(phi, k);
    Scalar inv0 = k.inv(phi[j0]);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < rep.dim; ++i)
        if (i != j0) keep.push_back(i);
    // Basis w_c = e_c - c_c e_{j0} of ker(phi).
    auto sub = [&](const SparseMatrix& x) {
        SparseMatrix out(keep.size(), keep.size(), k);
        for (std::size_t a = 0; a < keep.size(); ++a)
            for (std::size_t b = 0; b < keep.size(); ++b) {
                Scalar cb = k.mul(phi[keep[b]], inv0);
                Scalar v = k.sub(x.get(keep[a], keep[b]), k.mul(cb, x.get(keep[a], j0)));
                if (!k.is_zero(v)) out.set(a, b, v);
            }
        return out;
    };
    Representation out = functor_shell(rep);
    out.dim = keep.size();
    for (const auto& x : rep.e) out.e.push_back(sub(x));
    for (const auto& x : rep.f) out.f.push_back(sub(x));
    for (const auto& x : rep.h) out.h.push_back(sub(x));
    for (auto i : keep) out.weights.push_back(rep.weights[i]);
    auto sub_curve = [&](const PolyMatrix& x) {
        std::vector<SparseMatrix> c;
        for (const auto& m : x.coeffs()) c.push_back(sub(m));
        return PolyMatrix(std::move(c));
    };
    for (const auto& x : rep.x_pos) out.x_pos.push_back(sub_curve(x));
    for (const auto& x : rep.x_neg) out.x_neg.push_back(sub_curve(x));
    out.highest = rep.highest;
    maybe_model(out, rep);
    return out;
}

Representation mod_scalars(const Representation& rep) {
    const Field& k = rep.field;
    Vector v0 = unique_kernel_vector(invariance_conditions(rep), rep.dim, k, "vector");
    std::size_t j0 = first_nonzero(v0, k);
    Scalar inv0 = k.inv(v0[j0]);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < rep.dim; ++i)
        if (i != j0) keep.push_back(i);
    auto quo = [&](const SparseMatrix& x) {
        SparseMatrix out(keep.size(), keep.size(), k);
        for (std::size_t a = 0; a < keep.size(); ++a)
            for (std::size_t b = 0; b < keep.size(); ++b) {
                Scalar ra = k.mul(v0[keep[a]], inv0);
                Scalar v = k.sub(x.get(keep[a], keep[b]), k.mul(x.get(j0, keep[b]), ra));
                if (!k.is_zero(v)) out.set(a, b, v);
            }
        return out;
    };
    Representation out = functor_shell(rep);
    out.dim = keep.size();
    for (const auto& x : rep.e) out.e.push_back(quo(x));
    for (const auto& x : rep.f) out.f.push_back(quo(x));
    for (const auto& x : rep.h) out.h.push_back(quo(x));
    for (auto i : keep) out.weights.push_back(rep.weights[i]);
    auto quo_curve = [&](const PolyMatrix& x) {
        std::vector<SparseMatrix> c;
        for (const auto& m : x.coeffs()) c.push_back(quo(m));
        return PolyMatrix(std::move(c));
    };
    for (const auto& x : rep.x_pos) out.x_pos.push_back(quo_curve(x));
    for (const auto& x : rep.x_neg) out.x_neg.push_back(quo_curve(x));
    out.highest = rep.highest;
    maybe_model(out, rep);
    return out;
}

Representation external_tensor(const Representation& a, const Representation& b) {
    if (a.field != b.field) throw FieldMismatch("tensor factors over different fields");
    const Field& k = a.field;
    Representation out;
    out.group = a.group + "x" + b.group;
    out.field = k;
    out.lattice = a.lattice && b.lattice;
    out.dim = a.dim * b.dim;
    int la = a.rank(), lb = b.rank();
    out.cartan.assign(la + lb, IntVec(la + lb, 0));
    for (int i = 0; i < la; ++i)
        for (int j = 0; j < la; ++j) out.cartan[i][j] = a.cartan[i][j];
    for (int i = 0; i < lb; ++i)
        for (int j = 0; j < lb; ++j) out.cartan[la + i][la + j] = b.cartan[i][j];
    auto ia = SparseMatrix::identity(a.dim, k), ib = SparseMatrix::identity(b.dim, k);
    auto pa = PolyMatrix::constant(ia), pb = PolyMatrix::constant(ib);
    for (int i = 0; i < la; ++i) {
        out.e.push_back(kron(a.e[i], ib));
        out.f.push_back(kron(a.f[i], ib));
        out.h.push_back(kron(a.h[i], ib));
    }
    for (int i = 0; i < lb; ++i) {
        out.e.push_back(kron(ia, b.e[i]));
        out.f.push_back(kron(ia, b.f[i]));
        out.h.push_back(kron(ia, b.h[i]));
    }
    for (const auto& wa : a.weights)
        for (const auto& wb : b.weights) {
            IntVec w(wa);
            w.insert(w.end(), wb.begin(), wb.end());
            out.weights.push_back(w);
        }
    if (a.x_pos.size() == static_cast<std::size_t>(la) && b.x_pos.size() == static_cast<std::size_t>(lb)) {
        for (int i = 0; i < la; ++i) out.x_pos.push_back(kron(a.x_pos[i], pb));
        for (int i = 0; i < lb; ++i) out.x_pos.push_back(kron(pa, b.x_pos[i]));
        for (int i = 0; i < la; ++i) out.x_neg.push_back(kron(a.x_neg[i], pb));
        for (int i = 0; i < lb; ++i) out.x_neg.push_back(kron(pa, b.x_neg[i]));
    }
    return out;
}

}  // namespace stabforge::repforge
