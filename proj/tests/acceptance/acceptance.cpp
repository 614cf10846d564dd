// Acceptance run: one PASS/FAIL line per criterion.
//
// Exit status is 0 when every criterion passes or fails with exactly the
// pinned discrepancy below; any other outcome (a new failure, a changed
// computed value, or a pinned failure that starts passing) exits 1.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "stabforge/cli/report_json.hpp"
#include "stabforge/errors.hpp"
#include "stabforge/exactla/linalg.hpp"
#include "stabforge/invariants/invariants.hpp"
#include "stabforge/invariants/named_forms.hpp"
#include "stabforge/invariants/weyl.hpp"
#include "stabforge/papertables/tables.hpp"
#include "stabforge/repforge/constructions.hpp"
#include "stabforge/repforge/recipe.hpp"

using namespace stabforge;
using exactla::Field;
using exactla::Scalar;
using exactla::SparseMatrix;
using polyspace::Exponent;
using polyspace::SparsePoly;

namespace {

// Runtime budgets in seconds. Every count below is compared exactly.
const std::map<int, double> kBudget = {{1, 1}, {2, 1}, {3, 60}, {4, 600}, {5, 1800}, {6, 1800}, {7, 1200}, {8, 120}};
// Least number of primes behind a rational rank or kernel dimension.
constexpr std::size_t kStabilizerPrimes = 2;
constexpr std::size_t kWeylPrimes = 3;

// Mismatch signatures of failures that are known and analysed.
const std::map<int, std::string> kPinned = {
    {4, "g2_quadric=21"},
    {5, "GF(2)=3 GF(3)=3"},
};

const Field Q = Field::rationals();

struct Tally {
    std::ostringstream detail;
    std::vector<std::string> bad;

    template <class T>
    void expect(const std::string& what, const T& got, const T& want) {
        detail << what << "=" << got << " ";
        if (!(got == want)) {
            std::ostringstream s;
            s << what << "=" << got;
            bad.push_back(s.str());
        }
    }
    void require(const std::string& what, bool ok) {
        if (!ok) bad.push_back(what);
    }
    std::string mismatch() const {
        std::string s;
        for (const auto& b : bad) s += (s.empty() ? "" : " ") + b;
        return s;
    }
};

std::string join(const std::vector<std::size_t>& v) {
    std::string s;
    for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s;
}

std::size_t poly_rank(const std::vector<SparsePoly>& fs) {
    std::map<Exponent, std::size_t> row;
    for (const auto& f : fs)
        for (const auto& [e, c] : f.terms()) row.emplace(e, row.size());
    SparseMatrix m(row.size(), fs.size(), fs.at(0).field());
    for (std::size_t c = 0; c < fs.size(); ++c)
        for (const auto& [e, v] : fs[c].terms()) m.set(row.at(e), c, v);
    return exactla::rank(m);
}

SparsePoly random_form(std::mt19937_64& rng, std::size_t n, unsigned d, const Field& k) {
    SparsePoly f(n, k);
    for (int t = 0; t < 6; ++t) {
        Exponent e(n, 0);
        for (unsigned i = 0; i < d; ++i) ++e[rng() % n];
        f.add_term(e, k.from_int(static_cast<long long>(rng() % 19) - 9));
    }
    return f;
}

// Number of monomials of degree d in free generators of degrees 2..n.
std::size_t free_count(unsigned n, unsigned d) {
    std::vector<std::size_t> c(d + 1, 0);
    c[0] = 1;
    for (unsigned g = 2; g <= n; ++g)
        for (unsigned k = g; k <= d; ++k) c[k] += c[k - g];
    return c[d];
}

void suite_rows(Tally& t, const std::string& table, const std::vector<std::uint32_t>& chars) {
    auto s = papertables::run_suite(table, chars, {0, 1});
    std::size_t failed = 0;
    for (const auto& r : s.rows)
        if (!r.pass) {
            ++failed;
            t.bad.push_back(r.id + "@" + std::to_string(r.characteristic));
        }
    t.detail << table << " rows=" << s.rows.size() << " failed=" << failed << " skipped=" << s.skipped.size()
             << " ";
    t.require(table + " empty", !s.rows.empty());
}

void criterion1(Tally& t) {
    suite_rows(t, "badprimes", {});
    auto e8 = rootsys::build_root_system("E8");
    auto primes = rootsys::torsion_and_bad_primes(e8);
    t.expect("E8 roots", e8.n_roots(), std::size_t(240));
    t.expect("coxeter", e8.coxeter_number(), 30L);
    t.require("E8 torsion", primes.torsion == std::set<long>{2, 3, 5});
}

void criterion2(Tally& t) {
    std::mt19937_64 rng(2);
    for (auto k : {Q, Field::prime(2), Field::prime(3)}) {
        std::size_t ok = 0, vanish = 0;
        for (int i = 0; i < 50; ++i) {
            unsigned d = 1 + i % 6;
            auto f = random_form(rng, 5, d, k);
            if (f.is_zero()) f = SparsePoly::monomial(k, Exponent{d, 0, 0, 0, 0}, k.from_int(1));
            auto df = polyspace::derivation_action(SparseMatrix::identity(5, k), f);
            bool divides = k.characteristic() && d % k.characteristic() == 0;
            ok += df == f.scaled(k.from_int(d)) && df.is_zero() == divides;
            vanish += df.is_zero();
        }
        t.expect(k.name() + " euler", ok, std::size_t(50));
        std::size_t want = 0;
        if (k.characteristic())
            for (int i = 0; i < 50; ++i) want += (1 + i % 6) % k.characteristic() == 0;
        t.expect(k.name() + " vanishing", vanish, want);
    }
}

void criterion3(Tally& t) {
    for (unsigned n = 2; n <= 5; ++n) {
        std::string type = "A" + std::to_string(n - 1);
        auto action = invariants::action_of(repforge::build_recipe(type, "adjoint", Q));
        t.expect("sl" + std::to_string(n) + " generic", invariants::generic_invariant_dim(action, 3, 0).dim,
                 std::size_t(n - 1));
        auto dims = invariants::invariant_report(action, 2, n + 1, invariants::Mode::Lie, false).dims();
        std::vector<std::size_t> want;
        for (unsigned d = 2; d <= n + 1; ++d) want.push_back(free_count(n, d));
        t.detail << "[" << join(dims) << "] ";
        if (dims != want) t.bad.push_back("sl" + std::to_string(n) + " dims=" + join(dims));
        for (unsigned d = 2; d <= n; ++d) t.require("sl" + std::to_string(n) + " degree " + std::to_string(d),
                                                    dims[d - 2] >= 1);
    }
    auto m0 = invariants::action_of(repforge::build_recipe("A3", "modscalars:adjoint", Field::prime(2)));
    t.expect("M0 dim", m0.dim, std::size_t(14));
    t.expect("M0 generic", invariants::generic_invariant_dim(m0, 3, 0).dim, std::size_t(2));
}

void criterion4(Tally& t) {
    const std::vector<std::pair<std::string, std::size_t>> forms = {
        {"so5_cubic", 10}, {"sl3_cubic", 8}, {"g2_quadric", 14}, {"f4_cubic", 52}};
    for (const auto& [name, want] : forms) {
        auto s = invariants::stabilizer_algebra(invariants::named_form(name), false);
        t.expect(name, s.dim, want);
        t.require(name + " primes", s.primes_used.size() >= kStabilizerPrimes);
    }
}

void criterion5(Tally& t) {
    auto e8 = rootsys::build_root_system("E8");
    auto q = invariants::weyl_invariant_space(e8, 8, Q, 0);
    t.expect("Q", q.dim, std::size_t(2));
    t.require("Q primes", q.primes_used.size() >= kWeylPrimes);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto k = Field::prime(p);
        t.expect(k.name(), invariants::weyl_invariant_space(e8, 8, k, 0).dim, std::size_t(2));
    }
    auto quad = invariants::weyl_invariant_space(e8, 2, Q, 0);
    if (quad.dim != 1 || q.basis.size() != 2) {
        t.bad.push_back("octic basis unavailable");
        return;
    }
    auto p4 = quad.basis[0].pow(4);
    std::size_t pair = 0;
    for (const auto& g : q.basis) pair = std::max(pair, poly_rank({p4, g.content_reduced()}));
    t.expect("rank(p1^4, g)", pair, std::size_t(2));
    for (const auto& g : q.basis) t.require("W-invariant", invariants::is_weyl_invariant(g, e8));
}

void criterion6(Tally& t) {
    suite_rows(t, "dim0", {0, 2, 3, 5});
    suite_rows(t, "dim1", {0, 2, 3, 5});
}

void criterion7(Tally& t) {
    auto s = papertables::run_suite("sameinv", {0, 2, 3, 5}, {0, 1});
    std::size_t failed = 0;
    for (const auto& r : s.rows)
        if (!r.pass) {
            ++failed;
            t.bad.push_back(r.id + "@" + std::to_string(r.characteristic));
        }
    t.detail << "sameinv rows=" << s.rows.size() << " failed=" << failed << " ";
    auto find = [&](const std::string& prefix, std::uint32_t p) -> const papertables::VerificationResult* {
        for (const auto& r : s.rows)
            if (r.id.rfind(prefix, 0) == 0 && r.characteristic == p) return &r;
        return nullptr;
    };
    for (std::uint32_t p : {0u, 2u}) t.require("spin pair " + std::to_string(p), find("sameinv-1/", p));
    t.require("G2 pair at 3", find("sameinv-2/", 3));
    t.require("sp6 pair at 2", find("sameinv-3/C3", 2));
    auto tw = find("sameinv-5/A1", 2);
    t.require("twisted pair at 2", tw);
    if (tw) t.expect("twisted", tw->computed, std::string("H 0,1 / G 0,1"));
}

void criterion8(Tally& t) {
    std::mt19937_64 rng(8);
    std::size_t checks = 0;
    auto check = [&](const std::string& what, bool ok) {
        ++checks;
        t.require(what, ok);
    };

    // Orbit map rank plus kernel equals the algebra dimension.
    for (auto [type, recipe, k] : {std::tuple{"A2", "adjoint", Q}, std::tuple{"B3", "spin", Q},
                                   std::tuple{"A3", "adjoint", Field::prime(2)}}) {
        auto action = invariants::action_of(repforge::build_recipe(type, recipe, k));
        auto alg = invariants::image_lie_algebra(action);
        exactla::Vector v(action.dim);
        for (auto& x : v) x = k.from_int(static_cast<long long>(rng() % 21) - 10);
        SparseMatrix m(action.dim, alg.size(), k);
        for (std::size_t c = 0; c < alg.size(); ++c) {
            auto w = alg[c].apply(v);
            for (std::size_t r = 0; r < w.size(); ++r)
                if (!k.is_zero(w[r])) m.set(r, c, w[r]);
        }
        check(std::string("rank-nullity ") + type,
              invariants::orbit_dim(alg, v) + exactla::kernel_basis(m).size() == alg.size());
    }

    for (auto k : {Q, Field::prime(2), Field::prime(3)}) {
        for (int i = 0; i < 10; ++i) {
            auto f = random_form(rng, 4, 3, k), g = random_form(rng, 4, 2, k);
            SparseMatrix x(4, 4, k);
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) x.add_to(a, b, k.from_int(static_cast<long long>(rng() % 7) - 3));
            check("leibniz " + k.name(), polyspace::derivation_action(x, f * g) ==
                                             polyspace::derivation_action(x, f) * g +
                                                 f * polyspace::derivation_action(x, g));
        }
    }
    auto a2 = repforge::build_recipe("A2", "natural", Q);
    for (const auto& c : a2.curves()) {
        auto g = c.at(2), gi = c.at(-2);
        auto f = random_form(rng, 3, 3, Q);
        SparseMatrix x(3, 3, Q);
        x.set(0, 1, 1);
        x.set(2, 0, -2);
        check("chain", polyspace::derivation_action(x, polyspace::substitute_linear(f, g)) ==
                           polyspace::substitute_linear(polyspace::derivation_action(g * x * gi, f), g));
    }

    for (const char* type : {"B4", "E8", "F4", "G2"}) {
        auto r = rootsys::build_root_system(type);
        bool closed = true;
        for (const auto& beta : r.all_roots)
            for (int i = 0; i < r.rank; ++i) closed = closed && r.is_root(r.reflect(beta, i));
        check(std::string("reflection closure ") + type, closed);
    }

    for (auto [type, recipe, k] : {std::tuple{"C3", "natural", Q}, std::tuple{"B3", "spin", Field::prime(2)},
                                   std::tuple{"G2", "adjoint", Field::prime(3)},
                                   std::tuple{"F4", "natural", Field::prime(5)}}) {
        auto rep = repforge::build_recipe(type, recipe, k);
        check(std::string("serre ") + type, repforge::serre_relations_hold(rep));
        bool additive = true;
        for (const auto& x : rep.curves())
            additive = additive && x.at(k.from_int(2)) * x.at(k.from_int(5)) == x.at(k.from_int(7));
        check(std::string("additivity ") + type, additive);
    }

    auto alg = repforge::algebra_for("F4");
    check("chevalley json", chevalley::from_json(chevalley::to_json(*alg)).table() == alg->table());
    auto rep = repforge::build_recipe("D4", "natural", Field::prime(2));
    auto back = repforge::rep_from_json(repforge::to_json(rep));
    check("rep json", back.e == rep.e && back.f == rep.f && back.h == rep.h);
    auto f = invariants::named_form("sl3_cubic");
    check("poly json", cli::poly_from_json(cli::Json::parse(cli::poly_json(f).dump()), Q, 8) == f);
    auto bp = cli::Json::parse(papertables::run_suite("badprimes", {}).to_json());
    cli::check_schema(bp);
    check("report json", cli::Json::parse(bp.dump()) == bp);

    auto m0 = invariants::action_of(repforge::build_recipe("A3", "modscalars:adjoint", Field::prime(2)));
    auto g1 = invariants::generic_invariant_dim(m0, 2, 4), g2 = invariants::generic_invariant_dim(m0, 2, 4);
    check("rerun generic", g1.dim == g2.dim && g1.max_orbit == g2.max_orbit && g1.hits == g2.hits);
    auto sl3 = invariants::action_of(repforge::build_recipe("A2", "adjoint", Q));
    check("rerun basis", invariants::invariant_space(sl3, 3, invariants::Mode::Lie).basis ==
                             invariants::invariant_space(sl3, 3, invariants::Mode::Lie).basis);
    t.detail << "checks=" << checks << " ";
}

}  // namespace

int main() {
    const std::vector<std::pair<int, std::function<void(Tally&)>>> criteria = {
        {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
        {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8}};
    int unexpected = 0;
    for (const auto& [n, run] : criteria) {
        Tally t;
        auto start = std::chrono::steady_clock::now();
        try {
            run(t);
        } catch (const std::exception& e) {
            t.bad.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        double budget = kBudget.at(n);
        if (secs > budget) t.bad.push_back("over budget");
        bool pass = t.bad.empty();
        std::string note;
        if (!pass) {
            auto pinned = kPinned.find(n);
            if (pinned != kPinned.end() && pinned->second == t.mismatch())
                note = " (pinned discrepancy)";
            else
                ++unexpected;
        } else if (kPinned.count(n)) {
            note = " (pinned discrepancy no longer reproduces)";
            ++unexpected;
        }
        std::cout << "criterion " << n << ": " << (pass ? "PASS" : "FAIL") << note << "  " << t.detail.str();
        if (!pass) std::cout << "| mismatch: " << t.mismatch() << " ";
        std::cout << "| " << std::fixed << std::setprecision(2) << secs << "s of " << std::setprecision(0) << budget
                  << "s" << std::endl;
    }
    return unexpected ? 1 : 0;
}
