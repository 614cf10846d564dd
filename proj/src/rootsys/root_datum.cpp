#include "stabforge/rootsys/root_datum.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>

#include "stabforge/errors.hpp"

namespace stabforge::rootsys {

using exactla::Scalar;

namespace {

// Simple roots as integer Euclidean vectors (exceptional types use doubled
// coordinates so that the half-integral E8/F4 vectors stay integral).
std::vector<IntVec> euclidean_simple_roots(char label, int l) {
    std::vector<IntVec> s;
    auto unit = [](int n, int i) {
        IntVec v(n, 0);
        v[i] = 1;
        return v;
    };
    auto diff = [&](int n, int i, int j) {
        IntVec v(n, 0);
        v[i] = 1;
        v[j] = -1;
        return v;
    };
    switch (label) {
        case 'A':
            for (int i = 0; i < l; ++i) s.push_back(diff(l + 1, i, i + 1));
            break;
        case 'B':
            for (int i = 0; i + 1 < l; ++i) s.push_back(diff(l, i, i + 1));
            s.push_back(unit(l, l - 1));
            break;
        case 'C': {
            for (int i = 0; i + 1 < l; ++i) s.push_back(diff(l, i, i + 1));
            IntVec v = unit(l, l - 1);
            v[l - 1] = 2;
            s.push_back(v);
            break;
        }
        case 'D': {
            for (int i = 0; i + 1 < l; ++i) s.push_back(diff(l, i, i + 1));
            IntVec v(l, 0);
            v[l - 2] = 1;
            v[l - 1] = 1;
            s.push_back(v);
            break;
        }
        case 'E': {
            s.push_back({1, -1, -1, -1, -1, -1, -1, 1});
            s.push_back({2, 2, 0, 0, 0, 0, 0, 0});
            for (int i = 0; i < 6; ++i) {
                IntVec v(8, 0);
                v[i + 1] = 2;
                v[i] = -2;
                s.push_back(v);
            }
            s.resize(l);
            break;
        }
        case 'F':
            s = {{0, 2, -2, 0}, {0, 0, 2, -2}, {0, 0, 0, 2}, {1, -1, -1, -1}};
            break;
        case 'G':
            s = {{1, -1, 0}, {-2, 1, 1}};
            break;
    }
    return s;
}

long dot(const IntVec& a, const IntVec& b) {
    long r = 0;
    for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

bool valid_type(char label, int l) {
    switch (label) {
        case 'A': return l >= 1;
        case 'B':
        case 'C': return l >= 2;
        case 'D': return l >= 3;
        case 'E': return l >= 6 && l <= 8;
        case 'F': return l == 4;
        case 'G': return l == 2;
        default: return false;
    }
}

std::vector<long> prime_divisors(long n) {
    std::vector<long> out;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

long RootDatum::inner(const IntVec& a, const IntVec& b) const {
    long r = 0;
    for (int i = 0; i < rank; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j < rank; ++j)
            if (b[j]) r += a[i] * b[j] * half_norms[i] * cartan[i][j];
    }
    return r;
}

long RootDatum::pairing(const IntVec& beta, int i) const {
    long r = 0;
    for (int j = 0; j < rank; ++j) r += beta[j] * cartan[i][j];
    return r;
}

IntVec RootDatum::dynkin_labels(const IntVec& beta) const {
    IntVec out(rank);
    for (int i = 0; i < rank; ++i) out[i] = pairing(beta, i);
    return out;
}

IntVec RootDatum::coroot(const IntVec& beta) const {
    long n = inner(beta, beta);
    IntVec out(rank);
    for (int j = 0; j < rank; ++j) out[j] = beta[j] * 2 * half_norms[j] / n;
    return out;
}

int RootDatum::root_index(const IntVec& beta) const {
    auto it = index.find(beta);
    return it == index.end() ? -1 : it->second;
}

long RootDatum::height(const IntVec& beta) const { return std::accumulate(beta.begin(), beta.end(), 0L); }

IntVec RootDatum::reflect(const IntVec& beta, int i) const {
    IntVec out = beta;
    out[i] -= pairing(beta, i);
    return out;
}

std::vector<Scalar> RootDatum::weight_to_roots(const IntVec& labels) const {
    std::vector<Scalar> out(rank, 0);
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) out[j] += labels[i] * fundamental_weights[i][j];
    return out;
}

RootDatum build_root_system(char label, int l) {
    label = static_cast<char>(std::toupper(static_cast<unsigned char>(label)));
    if (!valid_type(label, l)) throw InvalidType(std::string(1, label) + std::to_string(l));
    RootDatum d;
    d.label = label;
    d.rank = l;
    auto eu = euclidean_simple_roots(label, l);
    d.cartan.assign(l, IntVec(l));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) d.cartan[i][j] = 2 * dot(eu[i], eu[j]) / dot(eu[i], eu[i]);
    long shortest = dot(eu[0], eu[0]);
    for (const auto& v : eu) shortest = std::min(shortest, dot(v, v));
    for (const auto& v : eu) d.half_norms.push_back(dot(v, v) / shortest);

    for (int i = 0; i < l; ++i) {
        IntVec v(l, 0);
        v[i] = 1;
        d.simple_roots.push_back(v);
    }

    // Root strings: beta + alpha_i is a root iff p - <beta, alpha_i^vee> > 0,
    // where p is the largest k with beta - k alpha_i a root.
    std::set<IntVec> found(d.simple_roots.begin(), d.simple_roots.end());
    std::deque<IntVec> queue(d.simple_roots.begin(), d.simple_roots.end());
    while (!queue.empty()) {
        IntVec beta = queue.front();
        queue.pop_front();
        for (int i = 0; i < l; ++i) {
            if (beta == d.simple_roots[i]) continue;
            int p = 0;
            IntVec down = beta;
            while (true) {
                down[i] -= 1;
                if (!found.count(down)) break;
                ++p;
            }
            if (p - d.pairing(beta, i) > 0) {
                IntVec up = beta;
                up[i] += 1;
                if (found.insert(up).second) queue.push_back(up);
            }
        }
    }
    d.positive_roots.assign(found.begin(), found.end());
    std::sort(d.positive_roots.begin(), d.positive_roots.end(), [&](const IntVec& a, const IntVec& b) {
        long ha = d.height(a), hb = d.height(b);
        if (ha != hb) return ha < hb;
        return a > b;
    });
    d.all_roots = d.positive_roots;
    for (const auto& r : d.positive_roots) {
        IntVec n(r);
        for (auto& x : n) x = -x;
        d.all_roots.push_back(n);
    }
    for (std::size_t k = 0; k < d.all_roots.size(); ++k) d.index[d.all_roots[k]] = static_cast<int>(k);

    // Fundamental weights: columns of the inverse Cartan matrix.
    std::vector<std::vector<Scalar>> a(l, std::vector<Scalar>(2 * l, 0));
    for (int i = 0; i < l; ++i) {
        for (int j = 0; j < l; ++j) a[i][j] = d.cartan[i][j];
        a[i][l + i] = 1;
    }
    for (int c = 0; c < l; ++c) {
        int piv = c;
        while (a[piv][c] == 0) ++piv;
        std::swap(a[piv], a[c]);
        Scalar s = 1 / a[c][c];
        for (auto& x : a[c]) x *= s;
        for (int r = 0; r < l; ++r) {
            if (r == c || a[r][c] == 0) continue;
            Scalar m = a[r][c];
            for (int k = 0; k < 2 * l; ++k) a[r][k] -= m * a[c][k];
        }
    }
    d.fundamental_weights.assign(l, std::vector<Scalar>(l));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) d.fundamental_weights[i][j] = a[j][l + i];

    for (int i = 0; i < l; ++i) {
        IntMatrix s(l, IntVec(l, 0));
        for (int j = 0; j < l; ++j) {
            IntVec img = d.reflect(d.simple_roots[j], i);
            for (int k = 0; k < l; ++k) s[k][j] = img[k];
        }
        d.reflections.push_back(s);
    }
    return d;
}

std::pair<char, int> parse_type(const std::string& type) {
    if (type.size() < 2) throw InvalidType("'" + type + "'");
    char label = static_cast<char>(std::toupper(static_cast<unsigned char>(type[0])));
    int rank = 0;
    try {
        std::size_t used = 0;
        rank = std::stoi(type.substr(1), &used);
        if (used != type.size() - 1) throw InvalidType("'" + type + "'");
    } catch (const std::logic_error&) {
        throw InvalidType("'" + type + "'");
    }
    if (!valid_type(label, rank)) throw InvalidType("'" + type + "'");
    return {label, rank};
}

RootDatum build_root_system(const std::string& type) {
    auto [label, rank] = parse_type(type);
    return build_root_system(label, rank);
}

PrimeTable torsion_and_bad_primes(const RootDatum& d) {
    PrimeTable t;
    const IntVec& theta = d.highest_root();
    for (long c : d.coroot(theta))
        for (long p : prime_divisors(c)) t.torsion.insert(p);
    for (long c : theta)
        for (long p : prime_divisors(c)) t.not_very_good.insert(p);
    if (d.label == 'A')
        for (long p : prime_divisors(d.rank + 1)) t.not_very_good.insert(p);
    return t;
}

std::vector<long> degrees_from_heights(const RootDatum& d) {
    // The number of positive roots of height k is a non-increasing sequence;
    // its dual partition gives the exponents.
    std::map<long, long> per_height;
    for (const auto& r : d.positive_roots) ++per_height[d.height(r)];
    std::vector<long> degrees;
    long top = per_height.rbegin()->first;
    for (long k = 1; k <= top; ++k) {
        long drop = per_height[k] - (per_height.count(k + 1) ? per_height[k + 1] : 0);
        for (long j = 0; j < drop; ++j) degrees.push_back(k + 1);
    }
    std::sort(degrees.begin(), degrees.end());
    return degrees;
}

}  // namespace stabforge::rootsys
