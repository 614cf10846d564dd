#include <algorithm>
#include <unordered_map>

#include "stabforge/errors.hpp"
#include "stabforge/exactla/linalg.hpp"
#include "stabforge/invariants/invariants.hpp"

namespace stabforge::invariants {

using exactla::ModRow;
using exactla::Zq;

std::string mode_name(Mode m) { return m == Mode::Lie ? "lie" : "group"; }

Mode parse_mode(const std::string& s) {
    if (s == "lie") return Mode::Lie;
    if (s == "group") return Mode::Group;
    throw ParseError("mode must be lie or group, got '" + s + "'");
}

std::vector<std::size_t> InvariantReport::dims() const {
    std::vector<std::size_t> out;
    for (const auto& s : slices) out.push_back(s.dim);
    return out;
}

namespace {

using Mono = std::vector<std::uint32_t>;  // sorted variable indices

struct Key {
    std::uint64_t mono;
    std::uint32_t tpow;
    bool operator==(const Key& o) const { return mono == o.mono && tpow == o.tpow; }
};
struct KeyHash {
    std::size_t operator()(const Key& k) const { return std::hash<std::uint64_t>()(k.mono * 31u + k.tpow); }
};

// Coefficient arithmetic: codes of a finite field, or rationals.
struct ModArith {
    using C = std::uint32_t;
    Zq zq;
    C from(const Field& k, const Scalar& v) const { return k.code(v); }
    C from_int(long v) const { return zq.from_int(v); }
    C mul(C a, C b) const { return zq.mul(a, b); }
    void acc(C& a, C b) const { a = zq.add(a, b); }
    bool zero(C a) const { return a == 0; }
};
struct RatArith {
    using C = mpq_class;
    C from(const Field&, const Scalar& v) const { return v; }
    C from_int(long v) const { return C(v); }
    C mul(const C& a, const C& b) const { return a * b; }
    void acc(C& a, const C& b) const { a += b; }
    bool zero(const C& a) const { return sgn(a) == 0; }
};

template <class A>
struct Term {
    std::uint32_t var;
    std::uint32_t tpow;
    typename A::C c;
};

template <class A>
class Expander {
public:
    using C = typename A::C;
    Expander(const A& ar, std::size_t n, unsigned d) : ar_(ar), d_(d) {
        bits_ = 1;
        while ((std::size_t(1) << bits_) < n) ++bits_;
        if (bits_ * d > 64) throw TooLarge("monomial keys exceed 64 bits");
    }

    std::uint64_t encode(Mono m) const {
        std::sort(m.begin(), m.end());
        std::uint64_t k = 0;
        for (auto i : m) k = (k << bits_) | i;
        return k;
    }

    // Product of the forms of the variables of m.
    void product(const Mono& m, const std::vector<std::vector<Term<A>>>& forms,
                 std::unordered_map<Key, C, KeyHash>& out) {
        chosen_.assign(d_, 0);
        walk(m, forms, 0, 0, ar_.from_int(1), out);
    }

    // D_X m for X given by its rows.
    void derive(const Mono& m, const std::vector<std::vector<Term<A>>>& rows,
                std::unordered_map<Key, C, KeyHash>& out) {
        for (std::size_t p = 0; p < m.size(); ++p) {
            if (p > 0 && m[p] == m[p - 1]) continue;
            long mult = std::count(m.begin(), m.end(), m[p]);
            C a = ar_.from_int(mult);
            if (ar_.zero(a)) continue;
            for (const auto& t : rows[m[p]]) {
                Mono r = m;
                r[p] = t.var;
                C v = ar_.mul(a, t.c);
                if (ar_.zero(v)) continue;
                ar_.acc(out[Key{encode(r), 0}], v);
            }
        }
    }

private:
    void walk(const Mono& m, const std::vector<std::vector<Term<A>>>& forms, std::size_t pos, std::uint32_t tpow,
              const C& coeff, std::unordered_map<Key, C, KeyHash>& out) {
        if (pos == m.size()) {
            ar_.acc(out[Key{encode(chosen_), tpow}], coeff);
            return;
        }
        for (const auto& t : forms[m[pos]]) {
            chosen_[pos] = t.var;
            C c = ar_.mul(coeff, t.c);
            if (ar_.zero(c)) continue;
            walk(m, forms, pos + 1, tpow + t.tpow, c, out);
        }
    }

    const A& ar_;
    unsigned d_;
    unsigned bits_;
    Mono chosen_;
};

template <class A>
std::vector<std::vector<Term<A>>> forms_of(const A& ar, const SparseMatrix& m, std::uint32_t tpow = 0) {
    std::vector<std::vector<Term<A>>> out(m.nrows());
    for (std::size_t i = 0; i < m.nrows(); ++i)
        for (const auto& [j, v] : m.row(i)) out[i].push_back({static_cast<std::uint32_t>(j), tpow, ar.from(m.field(), v)});
    return out;
}

template <class A>
std::vector<std::vector<Term<A>>> forms_of(const A& ar, const PolyMatrix& x) {
    std::vector<std::vector<Term<A>>> out(x.dim());
    for (std::size_t k = 0; k < x.coeffs().size(); ++k) {
        auto f = forms_of(ar, x.coeff(k), static_cast<std::uint32_t>(k));
        for (std::size_t i = 0; i < out.size(); ++i) out[i].insert(out[i].end(), f[i].begin(), f[i].end());
    }
    return out;
}

bool weight_ok(const IntVec& w, Mode mode, std::uint32_t p) {
    for (long c : w) {
        if (mode == Mode::Lie && p != 0) {
            if (c % static_cast<long>(p) != 0) return false;
        } else if (c != 0) {
            return false;
        }
    }
    return true;
}

void enumerate(const GroupAction& a, unsigned d, Mode mode, std::size_t from, Mono& cur, IntVec& w,
               std::vector<Mono>& out) {
    if (cur.size() == d) {
        if (a.weights.empty() || weight_ok(w, mode, a.field.characteristic())) out.push_back(cur);
        return;
    }
    for (std::size_t i = from; i < a.dim; ++i) {
        cur.push_back(static_cast<std::uint32_t>(i));
        if (!a.weights.empty())
            for (std::size_t k = 0; k < w.size(); ++k) w[k] += a.weights[i][k];
        enumerate(a, d, mode, i, cur, w, out);
        if (!a.weights.empty())
            for (std::size_t k = 0; k < w.size(); ++k) w[k] -= a.weights[i][k];
        cur.pop_back();
    }
}

std::vector<Mono> stratum(const GroupAction& a, unsigned d, Mode mode) {
    std::vector<Mono> out;
    Mono cur;
    IntVec w(a.weights.empty() ? 0 : a.weights[0].size(), 0);
    enumerate(a, d, mode, 0, cur, w, out);
    return out;
}

// Condition rows, one block per operator or per (curve, sample).
template <class A>
struct Conditions {
    std::vector<std::vector<std::pair<std::uint32_t, typename A::C>>> rows;

    void absorb(std::unordered_map<Key, std::size_t, KeyHash>& index, const Key& k, std::uint32_t col,
                const typename A::C& v) {
        auto [it, fresh] = index.try_emplace(k, rows.size());
        if (fresh) rows.emplace_back();
        rows[it->second].emplace_back(col, v);
    }
};

template <class A>
Conditions<A> build_conditions(const A& ar, const GroupAction& a, unsigned d, Mode mode, const std::vector<Mono>& cols,
                               std::size_t samples) {
    Conditions<A> cond;
    Expander<A> ex(ar, a.dim, d);
    std::unordered_map<Key, typename A::C, KeyHash> buf;
    auto flush_block = [&](auto&& per_column) {
        std::unordered_map<Key, std::size_t, KeyHash> index;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            buf.clear();
            per_column(cols[c], c);
            for (const auto& [k, v] : buf)
                if (!ar.zero(v)) cond.absorb(index, k, static_cast<std::uint32_t>(c), v);
        }
    };
    if (mode == Mode::Lie) {
        for (const auto& x : a.lie) {
            if (x.is_zero()) continue;
            auto rows = forms_of(ar, x);
            flush_block([&](const Mono& m, std::size_t) { ex.derive(m, rows, buf); });
        }
        return cond;
    }
    for (const auto& x : a.curves) {
        if (x.lowest_order() == 0) continue;
        if (samples == 0) {
            // Symbolic in t: every coefficient of positive t-degree vanishes.
            auto forms = forms_of(ar, x);
            flush_block([&](const Mono& m, std::size_t) {
                ex.product(m, forms, buf);
                for (auto it = buf.begin(); it != buf.end();) it = it->first.tpow == 0 ? buf.erase(it) : std::next(it);
            });
            continue;
        }
        for (std::size_t s = 1; s <= samples; ++s) {
            auto forms = forms_of(ar, x.at(a.field.from_code(static_cast<std::uint32_t>(s))));
            flush_block([&](const Mono& m, std::size_t) {
                ex.product(m, forms, buf);
                ar.acc(buf[Key{ex.encode(m), 0}], ar.from_int(-1));
            });
        }
    }
    return cond;
}

SparsePoly to_poly(const Vector& v, const std::vector<Mono>& cols, const GroupAction& a) {
    SparsePoly f(a.dim, a.field);
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (sgn(v[c]) == 0) continue;
        polyspace::Exponent e(a.dim, 0);
        for (auto i : cols[c]) ++e[i];
        f.add_term(e, v[c]);
    }
    return f;
}

}  // namespace

std::size_t group_samples(const GroupAction& action, unsigned d) {
    return static_cast<std::size_t>(std::max<long>(static_cast<long>(d) * action.curve_degree(), d)) + 1;
}

Field sampling_field(const GroupAction& action, unsigned d) {
    if (!action.field.is_finite()) return action.field;
    std::size_t need = group_samples(action, d) + 1;
    if (action.field.order() >= need) return action.field;
    return Field::at_least(action.field.characteristic(), need);
}

InvariantSlice invariant_space(const GroupAction& a, unsigned d, Mode mode, bool with_basis,
                               std::vector<std::uint32_t>* primes_used) {
    if (d == 0) throw InvalidField("degree must be at least 1");
    InvariantSlice out;
    out.degree = d;
    auto cols = stratum(a, d, mode);
    out.stratum = cols.size();
    if (cols.empty()) return out;

    std::size_t samples = 0;
    if (mode == Mode::Group && a.field.is_finite()) {
        samples = group_samples(a, d);
        if (a.field.order() < samples + 1)
            throw FieldTooSmall(a.field.name() + " has fewer than " + std::to_string(samples) +
                                " nonzero elements; pass an extension field");
    }

    if (a.field.is_finite()) {
        ModArith ar{a.field.zq()};
        auto cond = build_conditions(ar, a, d, mode, cols, samples);
        std::vector<ModRow> rows;
        rows.reserve(cond.rows.size());
        for (auto& r : cond.rows) rows.push_back(exactla::make_row(std::move(r), ar.zq));
        if (!with_basis) {
            out.dim = cols.size() - exactla::mod_rank(ar.zq, rows, cols.size());
            return out;
        }
        auto ker = exactla::mod_kernel(ar.zq, rows, cols.size());
        out.dim = ker.size();
        for (const auto& k : ker) out.basis.push_back(to_poly(exactla::to_vector(k, cols.size()), cols, a));
        return out;
    }

    RatArith ar;
    auto cond = build_conditions(ar, a, d, mode, cols, 0);
    std::vector<exactla::Triple> triples;
    for (std::size_t i = 0; i < cond.rows.size(); ++i) {
        std::sort(cond.rows[i].begin(), cond.rows[i].end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        for (const auto& [c, v] : cond.rows[i])
            if (sgn(v) != 0) triples.push_back({i, c, v});
    }
    auto m = SparseMatrix::from_triples(cond.rows.size(), cols.size(), a.field, triples);
    exactla::PrimeStream ps(0);
    auto build = [&](const Zq& f) { return exactla::reduce_rows(m, f); };
    if (!with_basis) {
        auto rr = exactla::rational_rank(build, cols.size(), ps);
        out.dim = cols.size() - rr.rank;
        if (primes_used) *primes_used = rr.primes;
        return out;
    }
    auto verify = [&](const std::vector<Vector>& basis) {
        for (const auto& v : basis) {
            auto mv = m.apply(v);
            for (const auto& x : mv)
                if (sgn(x) != 0) return false;
        }
        return true;
    };
    auto rk = exactla::rational_kernel(build, cols.size(), ps, verify);
    if (primes_used) *primes_used = rk.primes;
    out.dim = rk.basis.size();
    for (const auto& v : rk.basis) out.basis.push_back(to_poly(exactla::content_reduced(v), cols, a));
    return out;
}

InvariantReport invariant_report(const GroupAction& action, unsigned lo, unsigned hi, Mode mode, bool with_basis) {
    InvariantReport rep;
    rep.rep = action.label;
    rep.mode = mode;
    rep.field = action.field;
    for (unsigned d = lo; d <= hi; ++d) {
        std::vector<std::uint32_t> primes;
        rep.slices.push_back(invariant_space(action, d, mode, with_basis, &primes));
        for (auto p : primes)
            if (std::find(rep.primes_used.begin(), rep.primes_used.end(), p) == rep.primes_used.end())
                rep.primes_used.push_back(p);
        if (mode == Mode::Group && action.field.is_finite())
            rep.samples_used = std::max(rep.samples_used, group_samples(action, d));
    }
    if (mode == Mode::Group && action.field.is_finite())
        rep.caveat = "invariants of the subgroup generated by the sampled unipotent elements and the torus";
    return rep;
}

std::vector<DegreeComparison> compare_invariants(const GroupAction& full, const GroupAction& sub, unsigned lo,
                                                 unsigned hi, Mode mode) {
    if (full.dim != sub.dim) throw DimensionMismatch("actions on different spaces");
    std::vector<DegreeComparison> out;
    for (unsigned d = lo; d <= hi; ++d) {
        DegreeComparison c;
        c.degree = d;
        c.full = invariant_space(full, d, mode, false).dim;
        c.sub = invariant_space(sub, d, mode, false).dim;
        out.push_back(c);
    }
    return out;
}

}  // namespace stabforge::invariants
