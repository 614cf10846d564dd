#include "stabforge/exactla/field.hpp"

#include <map>
#include <mutex>
#include <regex>

#include "stabforge/errors.hpp"

namespace stabforge::exactla {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 a, u64 k, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (k) {
        if (k & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        k >>= 1;
    }
    return r;
}

std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % small == 0) return n == small;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Bases 2, 7, 61 are deterministic below 2^32; the longer list covers 2^64.
    static const u64 small_bases[] = {2, 7, 61};
    static const u64 big_bases[] = {2, 325, 9375, 28178, 450775, 9780504, 1795265022};
    auto witness = [&](u64 a) {
        a %= n;
        if (a == 0) return false;
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) return false;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) return false;
        }
        return true;
    };
    if (n < (u64(1) << 32)) {
        for (u64 a : small_bases)
            if (witness(a)) return false;
    } else {
        for (u64 a : big_bases)
            if (witness(a)) return false;
    }
    return true;
}

struct GaloisTables {
    std::uint32_t p = 0;
    unsigned e = 0;
    std::uint32_t q = 0;
    std::vector<std::uint32_t> modulus;  // low to high, monic, length e+1
    std::vector<std::uint32_t> log;      // log[code], log[0] unused
    std::vector<std::uint32_t> exp;      // exp[i] for i in [0, q-1)
    std::vector<std::uint32_t> pw;       // p^i
};

namespace {

using Poly = std::vector<std::uint32_t>;

// Multiply a * b modulo the monic polynomial m over GF(p); polys are digit vectors of length e.
Poly polymulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
    const unsigned e = static_cast<unsigned>(m.size() - 1);
    std::vector<u64> prod(2 * e, 0);
    for (unsigned i = 0; i < e; ++i) {
        if (!a[i]) continue;
        for (unsigned j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + u64(a[i]) * b[j]) % p;
    }
    for (unsigned k = 2 * e - 1; k >= e; --k) {
        u64 c = prod[k] % p;
        if (!c) continue;
        for (unsigned i = 0; i <= e; ++i) {
            u64 sub = c * m[i] % p;
            prod[k - e + i] = (prod[k - e + i] + p - sub) % p;
        }
    }
    Poly r(e);
    for (unsigned i = 0; i < e; ++i) r[i] = static_cast<std::uint32_t>(prod[i] % p);
    return r;
}

Poly polypowmod(Poly base, u64 k, const Poly& m, std::uint32_t p) {
    const unsigned e = static_cast<unsigned>(m.size() - 1);
    Poly r(e, 0);
    r[0] = 1;
    while (k) {
        if (k & 1) r = polymulmod(r, base, m, p);
        base = polymulmod(base, base, m, p);
        k >>= 1;
    }
    return r;
}

bool is_one(const Poly& a) {
    if (a[0] != 1) return false;
    for (std::size_t i = 1; i < a.size(); ++i)
        if (a[i]) return false;
    return true;
}

std::shared_ptr<const GaloisTables> build_tables(std::uint32_t p, unsigned e) {
    auto t = std::make_shared<GaloisTables>();
    t->p = p;
    t->e = e;
    u64 q = 1;
    for (unsigned i = 0; i < e; ++i) {
        t->pw.push_back(static_cast<std::uint32_t>(q));
        q *= p;
    }
    if (q > (u64(1) << 25)) throw InvalidField("extension field too large for table arithmetic");
    t->q = static_cast<std::uint32_t>(q);
    const u64 n = q - 1;
    const auto factors = prime_factors(n);

    // Search monic polynomials in lexicographic order of their lower coefficients
    // for one whose root x generates the multiplicative group.
    Poly m(e + 1, 0);
    m[e] = 1;
    Poly x(e, 0);
    if (e > 1) x[1] = 1;
    for (u64 idx = 1; idx < q; ++idx) {
        u64 v = idx;
        for (unsigned i = 0; i < e; ++i) {
            m[i] = static_cast<std::uint32_t>(v % p);
            v /= p;
        }
        if (m[0] == 0) continue;
        if (!is_one(polypowmod(x, n, m, p))) continue;
        bool primitive = true;
        for (u64 r : factors) {
            if (is_one(polypowmod(x, n / r, m, p))) {
                primitive = false;
                break;
            }
        }
        if (primitive) break;
    }
    t->modulus = m;

    t->log.assign(q, 0);
    t->exp.assign(n, 0);
    Poly cur(e, 0);
    cur[0] = 1;
    for (u64 i = 0; i < n; ++i) {
        std::uint32_t code = 0;
        for (unsigned j = 0; j < e; ++j) code += cur[j] * t->pw[j];
        t->exp[i] = code;
        t->log[code] = static_cast<std::uint32_t>(i);
        // multiply by x
        std::uint32_t top = cur[e - 1];
        for (unsigned j = e - 1; j > 0; --j) cur[j] = cur[j - 1];
        cur[0] = 0;
        if (top) {
            for (unsigned j = 0; j < e; ++j) cur[j] = static_cast<std::uint32_t>((cur[j] + u64(p - top) * m[j]) % p);
        }
    }
    return t;
}

std::shared_ptr<const GaloisTables> tables_for(std::uint32_t p, unsigned e) {
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, unsigned>, std::shared_ptr<const GaloisTables>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{p, e}];
    if (!slot) slot = build_tables(p, e);
    return slot;
}

}  // namespace

Zq::Zq(std::uint32_t p) : p_(p), e_(1), q_(p) {
    if (!is_prime_u64(p)) throw InvalidField(std::to_string(p) + " is not prime");
}

Zq Zq::extension(std::uint32_t p, unsigned e) {
    if (e == 1) return Zq(p);
    if (!is_prime_u64(p)) throw InvalidField(std::to_string(p) + " is not prime");
    if (e == 0) throw InvalidField("extension degree must be positive");
    Zq z;
    z.p_ = p;
    z.e_ = e;
    z.gf_ = tables_for(p, e);
    z.q_ = z.gf_->q;
    return z;
}

std::uint32_t Zq::add_digits(std::uint32_t a, std::uint32_t b, bool subtract) const {
    std::uint32_t r = 0, scale = 1;
    for (unsigned i = 0; i < e_; ++i) {
        std::uint32_t da = a % p_, db = b % p_;
        a /= p_;
        b /= p_;
        std::uint32_t d = subtract ? (da + p_ - db) % p_ : (da + db) % p_;
        r += d * scale;
        scale *= p_;
    }
    return r;
}

std::uint32_t Zq::mul_ext(std::uint32_t a, std::uint32_t b) const {
    if (!a || !b) return 0;
    const std::uint32_t n = q_ - 1;
    std::uint32_t s = gf_->log[a] + gf_->log[b];
    if (s >= n) s -= n;
    return gf_->exp[s];
}

std::uint32_t Zq::inv(std::uint32_t a) const {
    if (!a) throw Error("division by zero in finite field");
    if (e_ == 1) return static_cast<std::uint32_t>(powmod(a, p_ - 2, p_));
    const std::uint32_t n = q_ - 1;
    std::uint32_t l = gf_->log[a];
    return gf_->exp[l == 0 ? 0 : n - l];
}

std::uint32_t Zq::pow(std::uint32_t a, std::uint64_t k) const {
    if (k == 0) return 1;
    if (!a) return 0;
    if (e_ == 1) return static_cast<std::uint32_t>(powmod(a, k, p_));
    const u64 n = q_ - 1;
    return gf_->exp[static_cast<std::uint32_t>(u128(gf_->log[a]) * k % n)];
}

std::uint32_t Zq::from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<std::uint32_t>(r);
}

std::uint32_t Zq::from_mpz(const mpz_class& v) const {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p_);
    return static_cast<std::uint32_t>(r.get_ui());
}

std::optional<std::uint32_t> Zq::reduce(const Scalar& v) const {
    std::uint32_t den = from_mpz(v.get_den());
    if (!den) return std::nullopt;
    std::uint32_t num = from_mpz(v.get_num());
    return static_cast<std::uint32_t>(u64(num) * powmod(den, p_ - 2, p_) % p_);
}

long long Zq::symmetric(std::uint32_t a) const {
    return a > p_ / 2 ? static_cast<long long>(a) - p_ : a;
}

std::vector<std::uint32_t> Zq::modulus() const {
    if (e_ == 1) return {0, 1};
    return gf_->modulus;
}

Field Field::prime(std::uint32_t p) {
    Field f;
    f.kind_ = FieldKind::Prime;
    f.zq_ = Zq(p);
    return f;
}

Field Field::extension(std::uint32_t p, unsigned e) {
    if (e == 1) return prime(p);
    Field f;
    f.kind_ = FieldKind::Extension;
    f.zq_ = Zq::extension(p, e);
    return f;
}

Field Field::at_least(std::uint32_t p, std::uint64_t min_order) {
    if (p == 0) return rationals();
    unsigned e = 1;
    u64 q = p;
    while (q < min_order) {
        q *= p;
        ++e;
    }
    return extension(p, e);
}

Field Field::parse(const std::string& text) {
    static const std::regex bare(R"(\s*(\d+)\s*)");
    static const std::regex gfp(R"(\s*GF\((\d+)\)\s*)");
    static const std::regex gfq(R"(\s*GF\((\d+)\^(\d+)\)\s*)");
    std::smatch m;
    if (text == "Q" || text == "QQ") return rationals();
    try {
        if (std::regex_match(text, m, bare)) {
            unsigned long p = std::stoul(m[1]);
            return p == 0 ? rationals() : prime(static_cast<std::uint32_t>(p));
        }
        if (std::regex_match(text, m, gfp)) return prime(static_cast<std::uint32_t>(std::stoul(m[1])));
        if (std::regex_match(text, m, gfq))
            return extension(static_cast<std::uint32_t>(std::stoul(m[1])), static_cast<unsigned>(std::stoul(m[2])));
    } catch (const std::out_of_range&) {
    }
    throw InvalidField("cannot parse field '" + text + "'");
}

const Zq& Field::zq() const {
    if (!is_finite()) throw InvalidField("rationals have no finite arithmetic");
    return zq_;
}

std::string Field::name() const {
    switch (kind_) {
        case FieldKind::Rationals: return "Q";
        case FieldKind::Prime: return "GF(" + std::to_string(zq_.p()) + ")";
        case FieldKind::Extension: return "GF(" + std::to_string(zq_.p()) + "^" + std::to_string(zq_.degree()) + ")";
    }
    return "?";
}

Scalar Field::from_int(long long v) const {
    if (!is_finite()) return Scalar(static_cast<long>(v));
    return Scalar(zq_.from_int(v));
}

Scalar Field::image(const Scalar& v) const {
    if (!is_finite()) return v;
    auto r = zq_.reduce(v);
    if (!r) throw BadReduction(v.get_str() + " has a denominator divisible by " + std::to_string(zq_.p()));
    return Scalar(*r);
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
    if (!is_finite()) return a + b;
    return Scalar(zq_.add(code(a), code(b)));
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
    if (!is_finite()) return a - b;
    return Scalar(zq_.sub(code(a), code(b)));
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
    if (!is_finite()) return a * b;
    return Scalar(zq_.mul(code(a), code(b)));
}

Scalar Field::neg(const Scalar& a) const {
    if (!is_finite()) return -a;
    return Scalar(zq_.neg(code(a)));
}

Scalar Field::inv(const Scalar& a) const {
    if (!is_finite()) {
        if (sgn(a) == 0) throw Error("division by zero");
        return 1 / a;
    }
    return Scalar(zq_.inv(code(a)));
}

Scalar Field::pow(const Scalar& a, std::uint64_t k) const {
    if (is_finite()) return Scalar(zq_.pow(code(a), k));
    mpq_class r = 1;
    mpz_pow_ui(r.get_num_mpz_t(), a.get_num_mpz_t(), k);
    mpz_pow_ui(r.get_den_mpz_t(), a.get_den_mpz_t(), k);
    r.canonicalize();
    return r;
}

bool Field::contains(const Field& sub) const {
    if (*this == sub) return true;
    if (!is_finite() || !sub.is_finite()) return false;
    return sub.characteristic() == characteristic() && degree() % sub.degree() == 0 && sub.degree() == 1;
}

std::string format_scalar(const Scalar& v) { return v.get_str(); }

Scalar parse_scalar(const std::string& text) {
    Scalar v;
    if (v.set_str(text, 10) != 0) throw ParseError("bad rational '" + text + "'");
    v.canonicalize();
    return v;
}

}  // namespace stabforge::exactla
