#include "stabforge/chevalley/chevalley_algebra.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "stabforge/errors.hpp"

namespace stabforge::chevalley {

using exactla::Scalar;

namespace {
Scalar frac(long a, long b) {
    Scalar q(a, b);
    q.canonicalize();
    return q;
}
}  // namespace

ChevalleyAlgebra::ChevalleyAlgebra(rootsys::RootDatum datum) : datum_(std::move(datum)) {
    dim_ = static_cast<int>(datum_.n_roots()) + datum_.rank;
    build();
}

ChevalleyAlgebra::ChevalleyAlgebra(rootsys::RootDatum datum, std::vector<std::vector<Element>> table)
    : datum_(std::move(datum)), table_(std::move(table)) {
    dim_ = static_cast<int>(datum_.n_roots()) + datum_.rank;
    if (static_cast<int>(table_.size()) != dim_) throw DimensionMismatch("bracket table size");
    const int np = n_positive();
    n_pos_.assign(np, std::vector<long>(np, 0));
    for (int r = 0; r < np; ++r) {
        for (int s = 0; s < np; ++s) {
            for (const auto& t : table_[root_basis(r)][root_basis(s)]) n_pos_[r][s] = t.coeff;
        }
    }
}

int ChevalleyAlgebra::root_basis(int root) const {
    const int np = n_positive();
    return root < np ? root : root + rank();
}

int ChevalleyAlgebra::basis_root(int b) const {
    const int np = n_positive();
    if (b < np) return b;
    if (b < np + rank()) return -1;
    return b - rank();
}

std::string ChevalleyAlgebra::basis_label(int b) const {
    int r = basis_root(b);
    if (r < 0) return "h" + std::to_string(b - n_positive() + 1);
    std::string s = "e[";
    const auto& v = datum_.all_roots[r];
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

int ChevalleyAlgebra::string_down(int r, int s) const {
    const auto& a = datum_.all_roots[r];
    IntVec b = datum_.all_roots[s];
    int p = 0;
    while (true) {
        for (std::size_t i = 0; i < b.size(); ++i) b[i] -= a[i];
        if (!datum_.is_root(b)) break;
        ++p;
    }
    return p;
}

long ChevalleyAlgebra::pos_constant(int r, int s) const { return n_pos_[r][s]; }

long ChevalleyAlgebra::structure_constant(int r, int s) const {
    const int np = n_positive();
    const auto& roots = datum_.all_roots;
    IntVec sum(rank());
    for (int i = 0; i < rank(); ++i) sum[i] = roots[r][i] + roots[s][i];
    int t_idx = datum_.root_index(sum);
    if (t_idx < 0) return 0;
    auto neg = [&](int k) { return k < np ? k + np : k - np; };
    bool rp = r < np, sp = s < np;
    if (rp && sp) return pos_constant(r, s);
    if (!rp && !sp) return -structure_constant(neg(r), neg(s));
    if (!rp && sp) return -structure_constant(s, r);
    // r positive, s negative; t = -(r+s).
    int t = neg(t_idx);
    long nr = datum_.inner(roots[r], roots[r]);
    long ns = datum_.inner(roots[s], roots[s]);
    long nt = datum_.inner(roots[t], roots[t]);
    Scalar v;
    if (t_idx < np) {
        // r+s positive, t negative: N_{r,s} = -|t|^2/|r|^2 N_{-s,-t}.
        v = frac(-nt, nr) * structure_constant(neg(s), neg(t));
    } else {
        // r+s negative, t positive: N_{r,s} = |t|^2/|s|^2 N_{t,r}.
        v = frac(nt, ns) * structure_constant(t, r);
    }
    if (v.get_den() != 1) throw IntegralityFailure("non-integral structure constant");
    return v.get_num().get_si();
}

void ChevalleyAlgebra::build() {
    const auto& d = datum_;
    const int np = n_positive();
    const int l = rank();
    const auto& roots = d.all_roots;
    n_pos_.assign(np, std::vector<long>(np, 0));

    auto sum_index = [&](int a, int b) {
        IntVec s(l);
        for (int i = 0; i < l; ++i) s[i] = roots[a][i] + roots[b][i];
        return d.root_index(s);
    };
    auto norm = [&](int a) { return d.inner(roots[a], roots[a]); };

    for (int xi = 0; xi < np; ++xi) {
        // Decompositions xi = zeta + eta with zeta before eta.
        std::vector<std::pair<int, int>> pairs;
        for (int z = 0; z < xi; ++z) {
            IntVec rest(l);
            for (int i = 0; i < l; ++i) rest[i] = roots[xi][i] - roots[z][i];
            int e = d.root_index(rest);
            if (e >= 0 && e < np && z < e) pairs.emplace_back(z, e);
        }
        if (pairs.empty()) continue;
        auto [alpha, beta] = pairs.front();
        long nab = string_down(alpha, beta) + 1;
        n_pos_[alpha][beta] = nab;
        n_pos_[beta][alpha] = -nab;
        const int ma = alpha + np, mb = beta + np;  // -alpha, -beta
        for (std::size_t k = 1; k < pairs.size(); ++k) {
            auto [zeta, eta] = pairs[k];
            Scalar acc = 0;
            int ea = sum_index(eta, ma);
            if (ea >= 0) acc += frac(structure_constant(eta, ma) * structure_constant(zeta, mb), norm(ea));
            int za = sum_index(zeta, ma);
            if (za >= 0) acc += frac(structure_constant(ma, zeta) * structure_constant(eta, mb), norm(za));
            Scalar v = acc * norm(xi) / nab;
            if (v.get_den() != 1) throw IntegralityFailure("non-integral structure constant");
            long n = v.get_num().get_si();
            n_pos_[zeta][eta] = n;
            n_pos_[eta][zeta] = -n;
        }
    }

    table_.assign(dim_, std::vector<Element>(dim_));
    const int nr = static_cast<int>(roots.size());
    for (int r = 0; r < nr; ++r) {
        int br = root_basis(r);
        for (int s = 0; s < nr; ++s) {
            int bs = root_basis(s);
            int t = sum_index(r, s);
            if (t >= 0) {
                table_[br][bs] = {{root_basis(t), structure_constant(r, s)}};
            } else if ((r < np ? r + np : r - np) == s) {
                // [e_r, e_{-r}] = h_r, the coroot of r.
                IntVec co = d.coroot(roots[r]);
                Element h;
                for (int i = 0; i < l; ++i)
                    if (co[i]) h.push_back({cartan_basis(i), co[i]});
                table_[br][bs] = h;
            }
        }
        for (int i = 0; i < l; ++i) {
            long c = d.pairing(roots[r], i);
            if (c) {
                table_[cartan_basis(i)][br] = {{br, c}};
                table_[br][cartan_basis(i)] = {{br, -c}};
            }
        }
    }
}

Element ChevalleyAlgebra::bracket(const Element& x, const Element& y) const {
    std::map<int, long> acc;
    for (const auto& a : x)
        for (const auto& b : y)
            for (const auto& t : table_[a.index][b.index]) acc[t.index] += a.coeff * b.coeff * t.coeff;
    Element out;
    for (auto [k, c] : acc)
        if (c) out.push_back({k, c});
    return out;
}

exactla::SparseMatrix ChevalleyAlgebra::ad(int b, const exactla::Field& field) const {
    exactla::SparseMatrix m(dim_, dim_, field);
    for (int j = 0; j < dim_; ++j)
        for (const auto& t : table_[b][j]) m.add_to(t.index, j, field.from_int(t.coeff));
    return m;
}

namespace {

Element combine(const Element& a, const Element& b, const Element& c) {
    std::map<int, long> acc;
    for (const Element* e : {&a, &b, &c})
        for (const auto& t : *e) acc[t.index] += t.coeff;
    Element out;
    for (auto [k, v] : acc)
        if (v) out.push_back({k, v});
    return out;
}

}  // namespace

bool ChevalleyAlgebra::antisymmetric() const {
    for (int a = 0; a < dim_; ++a) {
        for (int b = 0; b < dim_; ++b) {
            Element neg = table_[b][a];
            for (auto& t : neg) t.coeff = -t.coeff;
            std::sort(neg.begin(), neg.end(), [](const Term& x, const Term& y) { return x.index < y.index; });
            Element pos = table_[a][b];
            std::sort(pos.begin(), pos.end(), [](const Term& x, const Term& y) { return x.index < y.index; });
            if (!(pos == neg)) return false;
        }
    }
    return true;
}

bool ChevalleyAlgebra::jacobi_exhaustive() const {
    for (int i = 0; i < dim_; ++i) {
        for (int j = i + 1; j < dim_; ++j) {
            for (int k = j + 1; k < dim_; ++k) {
                Element x{{i, 1}}, y{{j, 1}}, z{{k, 1}};
                Element s = combine(bracket(x, bracket(y, z)), bracket(y, bracket(z, x)), bracket(z, bracket(x, y)));
                if (!s.empty()) return false;
            }
        }
    }
    return true;
}

bool ChevalleyAlgebra::jacobi_sampled(std::size_t samples, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, dim_ - 1);
    for (std::size_t n = 0; n < samples; ++n) {
        Element x{{pick(rng), 1}}, y{{pick(rng), 1}}, z{{pick(rng), 1}};
        Element s = combine(bracket(x, bracket(y, z)), bracket(y, bracket(z, x)), bracket(z, bracket(x, y)));
        if (!s.empty()) return false;
    }
    return true;
}

std::string to_json(const ChevalleyAlgebra& alg) {
    nlohmann::json j;
    j["label"] = std::string(1, alg.datum().label);
    j["rank"] = alg.rank();
    j["schema_version"] = STABFORGE_SCHEMA_VERSION;
    nlohmann::json br = nlohmann::json::array();
    for (int a = 0; a < alg.dim(); ++a) {
        for (int b = a + 1; b < alg.dim(); ++b) {
            const auto& e = alg.bracket(a, b);
            if (e.empty()) continue;
            nlohmann::json terms = nlohmann::json::array();
            for (const auto& t : e) terms.push_back({t.index, t.coeff});
            br.push_back({a, b, terms});
        }
    }
    j["brackets"] = br;
    return j.dump();
}

ChevalleyAlgebra from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    std::string label = j.at("label");
    int rank = j.at("rank");
    auto datum = rootsys::build_root_system(label[0], rank);
    int dim = static_cast<int>(datum.n_roots()) + rank;
    std::vector<std::vector<Element>> table(dim, std::vector<Element>(dim));
    for (const auto& entry : j.at("brackets")) {
        int a = entry.at(0), b = entry.at(1);
        if (a < 0 || b < 0 || a >= dim || b >= dim) throw ParseError("bracket index out of range");
        Element e, ne;
        for (const auto& t : entry.at(2)) {
            e.push_back({t.at(0).get<int>(), t.at(1).get<long>()});
            ne.push_back({t.at(0).get<int>(), -t.at(1).get<long>()});
        }
        table[a][b] = e;
        table[b][a] = ne;
    }
    return ChevalleyAlgebra(std::move(datum), std::move(table));
}

ChevalleyAlgebra cached_chevalley(const rootsys::RootDatum& datum, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::path path = fs::path(dir) / (datum.name() + ".chev.json");
    if (fs::exists(path)) {
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        return from_json(ss.str());
    }
    ChevalleyAlgebra alg(datum);
    fs::create_directories(dir);
    std::ofstream out(path);
    out << to_json(alg);
    return alg;
}

}  // namespace stabforge::chevalley
