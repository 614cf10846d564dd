#include "stabforge/polyspace/sparse_poly.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "stabforge/errors.hpp"

namespace stabforge::polyspace {

unsigned total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0u); }

bool GrevlexDesc::operator()(const Exponent& a, const Exponent& b) const {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

SparsePoly SparsePoly::constant(std::size_t nvars, const Field& field, const Scalar& c) {
    SparsePoly p(nvars, field);
    p.add_term(Exponent(nvars, 0), field.image(c));
    return p;
}

SparsePoly SparsePoly::variable(std::size_t nvars, const Field& field, std::size_t i) {
    Exponent e(nvars, 0);
    e.at(i) = 1;
    return monomial(field, e, field.from_int(1));
}

SparsePoly SparsePoly::monomial(const Field& field, const Exponent& e, const Scalar& c) {
    SparsePoly p(e.size(), field);
    p.add_term(e, field.image(c));
    return p;
}

int SparsePoly::degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(total_degree(terms_.begin()->first));
}

bool SparsePoly::homogeneous() const {
    if (terms_.empty()) return true;
    unsigned d = total_degree(terms_.begin()->first);
    return total_degree(terms_.rbegin()->first) == d;
}

Scalar SparsePoly::coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar(0) : it->second;
}

void SparsePoly::add_term(const Exponent& e, const Scalar& c) {
    if (e.size() != nvars_) throw DimensionMismatch("exponent length");
    if (field_.is_zero(c)) return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (fresh) return;
    it->second = field_.add(it->second, c);
    if (field_.is_zero(it->second)) terms_.erase(it);
}

SparsePoly SparsePoly::operator+(const SparsePoly& o) const {
    if (o.nvars_ != nvars_) throw DimensionMismatch("polynomial rings differ");
    SparsePoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

SparsePoly SparsePoly::operator-(const SparsePoly& o) const { return *this + o.scaled(field_.from_int(-1)); }

SparsePoly SparsePoly::operator*(const SparsePoly& o) const {
    if (o.nvars_ != nvars_) throw DimensionMismatch("polynomial rings differ");
    SparsePoly r(nvars_, field_);
    Exponent e(nvars_);
    for (const auto& [a, ca] : terms_) {
        for (const auto& [b, cb] : o.terms_) {
            for (std::size_t i = 0; i < nvars_; ++i) e[i] = a[i] + b[i];
            r.add_term(e, field_.mul(ca, cb));
        }
    }
    return r;
}

SparsePoly SparsePoly::scaled(const Scalar& c) const {
    SparsePoly r(nvars_, field_);
    Scalar cc = field_.image(c);
    if (field_.is_zero(cc)) return r;
    for (const auto& [e, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, field_.mul(v, cc));
    return r;
}

SparsePoly SparsePoly::pow(unsigned k) const {
    SparsePoly r = constant(nvars_, field_, 1);
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
}

SparsePoly SparsePoly::partial(std::size_t j) const {
    SparsePoly r(nvars_, field_);
    for (const auto& [e, c] : terms_) {
        if (e[j] == 0) continue;
        Exponent f = e;
        --f[j];
        r.add_term(f, field_.mul(c, field_.from_int(e[j])));
    }
    return r;
}

Scalar SparsePoly::evaluate(const std::vector<Scalar>& point) const {
    if (point.size() != nvars_) throw DimensionMismatch("evaluation point");
    Scalar acc = field_.from_int(0);
    for (const auto& [e, c] : terms_) {
        Scalar m = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            if (e[i]) m = field_.mul(m, field_.pow(point[i], e[i]));
        acc = field_.add(acc, m);
    }
    return acc;
}

SparsePoly SparsePoly::reduced(const Field& target) const {
    SparsePoly r(nvars_, target);
    for (const auto& [e, c] : terms_) r.add_term(e, target.image(c));
    return r;
}

Scalar SparsePoly::content() const {
    if (field_.is_finite()) throw FieldMismatch("content is defined over Q");
    mpz_class num = 0, den = 1;
    for (const auto& [e, c] : terms_) {
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    }
    Scalar q(num, den);
    q.canonicalize();
    return q;
}

SparsePoly SparsePoly::content_reduced() const {
    if (terms_.empty()) return *this;
    Scalar c = content();
    if (sgn(terms_.begin()->second) < 0) c = -c;
    return scaled(1 / c);
}

SparsePoly directional_derivative(const SparsePoly& f) {
    const std::size_t n = f.nvars();
    const Field& k = f.field();
    SparsePoly out(2 * n, k);
    for (const auto& [e, c] : f.terms()) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!e[j]) continue;
            Exponent g(2 * n, 0);
            std::copy(e.begin(), e.end(), g.begin());
            --g[j];
            g[n + j] = 1;
            out.add_term(g, k.mul(c, k.from_int(e[j])));
        }
    }
    return out;
}

SparsePoly derivation_action(const SparseMatrix& x, const SparsePoly& f) {
    const std::size_t n = f.nvars();
    if (x.nrows() != n || x.ncols() != n) throw DimensionMismatch("derivation matrix size");
    const Field& k = f.field();
    SparsePoly out(n, k);
    Exponent g;
    for (const auto& [e, c] : f.terms()) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!e[j]) continue;
            Scalar cj = k.mul(c, k.from_int(e[j]));
            for (const auto& [col, v] : x.row(j)) {
                g = e;
                --g[j];
                ++g[col];
                out.add_term(g, k.mul(cj, v));
            }
        }
    }
    return out;
}

SparsePoly substitute_linear(const SparsePoly& f, const SparseMatrix& g) {
    const std::size_t n = f.nvars();
    if (g.nrows() != n || g.ncols() != n) throw DimensionMismatch("substitution matrix size");
    const Field& k = f.field();
    std::vector<SparsePoly> images;
    for (std::size_t j = 0; j < n; ++j) {
        SparsePoly lin(n, k);
        for (const auto& [col, v] : g.row(j)) {
            Exponent e(n, 0);
            e[col] = 1;
            lin.add_term(e, v);
        }
        images.push_back(lin);
    }
    SparsePoly out(n, k);
    // Cache powers of the substituted linear forms.
    std::vector<std::vector<SparsePoly>> powers(n);
    for (const auto& [e, c] : f.terms()) {
        SparsePoly term = SparsePoly::constant(n, k, 1);
        for (std::size_t j = 0; j < n; ++j) {
            if (!e[j]) continue;
            auto& pw = powers[j];
            if (pw.empty()) pw.push_back(SparsePoly::constant(n, k, 1));
            while (pw.size() <= e[j]) pw.push_back(pw.back() * images[j]);
            term = term * pw[e[j]];
        }
        out = out + term.scaled(c);
    }
    return out;
}

namespace {

void enumerate(std::size_t nvars, unsigned d, std::size_t pos, Exponent& cur, std::vector<Exponent>& out) {
    if (pos + 1 == nvars) {
        cur[pos] = d;
        out.push_back(cur);
        cur[pos] = 0;
        return;
    }
    for (unsigned k = d + 1; k-- > 0;) {
        cur[pos] = k;
        enumerate(nvars, d - k, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

}  // namespace

std::vector<Exponent> monomial_basis(std::size_t nvars, unsigned d, const std::vector<rootsys::IntVec>* weights,
                                     const rootsys::IntVec* target) {
    std::vector<Exponent> out;
    if (nvars == 0) {
        if (d == 0) out.emplace_back();
        return out;
    }
    Exponent cur(nvars, 0);
    enumerate(nvars, d, 0, cur, out);
    if (weights) {
        if (weights->size() != nvars) throw DimensionMismatch("one weight per variable");
        std::size_t r = weights->empty() ? 0 : (*weights)[0].size();
        rootsys::IntVec zero(r, 0);
        const rootsys::IntVec& want = target ? *target : zero;
        std::vector<Exponent> kept;
        rootsys::IntVec w(r);
        for (auto& e : out) {
            std::fill(w.begin(), w.end(), 0);
            for (std::size_t i = 0; i < nvars; ++i)
                if (e[i])
                    for (std::size_t k = 0; k < r; ++k) w[k] += static_cast<long>(e[i]) * (*weights)[i][k];
            if (w == want) kept.push_back(std::move(e));
        }
        out = std::move(kept);
    }
    std::sort(out.begin(), out.end(), GrevlexDesc());
    return out;
}

SparsePoly parse_poly(const std::string& text, const Field& field, std::optional<std::size_t> nvars) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::pair<Scalar, Exponent>> terms;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": missing ':'");
        std::string cs = line.substr(0, colon);
        cs.erase(0, cs.find_first_not_of(" \t"));
        cs.erase(cs.find_last_not_of(" \t") + 1);
        Scalar c = exactla::parse_scalar(cs);
        std::istringstream es(line.substr(colon + 1));
        Exponent e;
        long v;
        while (es >> v) {
            if (v < 0) throw ParseError("line " + std::to_string(lineno) + ": negative exponent");
            e.push_back(static_cast<unsigned>(v));
        }
        if (!es.eof()) throw ParseError("line " + std::to_string(lineno) + ": bad exponent");
        terms.emplace_back(c, e);
    }
    std::size_t n = nvars ? *nvars : (terms.empty() ? 0 : terms[0].second.size());
    SparsePoly f(n, field);
    for (auto& [c, e] : terms) {
        if (e.size() != n)
            throw ParseError("exponent vector of length " + std::to_string(e.size()) + ", expected " + std::to_string(n));
        f.add_term(e, field.image(c));
    }
    return f;
}

std::string format_poly(const SparsePoly& f) {
    std::ostringstream out;
    for (const auto& [e, c] : f.terms()) {
        out << exactla::format_scalar(c) << " :";
        for (unsigned v : e) out << ' ' << v;
        out << '\n';
    }
    return out.str();
}

SparsePoly load_poly(const std::string& path, const Field& field, std::optional<std::size_t> nvars) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_poly(ss.str(), field, nvars);
}

}  // namespace stabforge::polyspace
