#include "stabforge/papertables/tables.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "stabforge/errors.hpp"
#include "stabforge/invariants/invariants.hpp"
#include "stabforge/repforge/constructions.hpp"
#include "stabforge/repforge/recipe.hpp"

namespace stabforge::papertables {

using exactla::Field;
using exactla::Scalar;
using invariants::GroupAction;
using invariants::Mode;

namespace {

using Chars = std::function<bool(std::uint32_t)>;

Chars any_char() {
    return [](std::uint32_t) { return true; };
}
Chars only(std::uint32_t q) {
    return [q](std::uint32_t p) { return p == q; };
}
Chars positive() {
    return [](std::uint32_t p) { return p != 0; };
}
Chars except(std::vector<std::uint32_t> bad) {
    return [bad](std::uint32_t p) { return std::find(bad.begin(), bad.end(), p) == bad.end(); };
}

Instance inst(std::string type, std::string recipe, std::size_t dim, int n = 0) {
    Instance i;
    i.type = std::move(type);
    i.recipe = std::move(recipe);
    i.dim = dim;
    i.n = n;
    return i;
}

TableEntry row(std::string table, std::string id, std::string group, std::string rep, std::string chars,
               Chars allows, Check check, std::vector<Instance> instances) {
    TableEntry e;
    e.table = std::move(table);
    e.id = std::move(id);
    e.group = std::move(group);
    e.rep = std::move(rep);
    e.chars = std::move(chars);
    e.allows = std::move(allows);
    e.check = check;
    e.instances = std::move(instances);
    return e;
}

TableEntry off_desk(TableEntry e, std::string reason) {
    e.desk_scale = false;
    e.reason = std::move(reason);
    return e;
}

void dim0_rows(std::vector<TableEntry>& r) {
    const auto C = Check::GenericZero;
    r.push_back(row("dim0", "dim0-1", "A_n", "lambda1", "all", any_char(), C,
                    {inst("A1", "natural", 2, 1), inst("A2", "natural", 3, 2)}));
    r.push_back(row("dim0", "dim0-2", "A_n (even n >= 4)", "lambda2", "all", any_char(), C,
                    {inst("A4", "wedge:2:natural", 10, 4), inst("A6", "wedge:2:natural", 21, 6)}));
    r.push_back(row("dim0", "dim0-3", "B_n", "lambda1", "2", only(2), C,
                    {inst("B2", "head:natural", 4, 2), inst("B3", "head:natural", 6, 3)}));
    r.push_back(row("dim0", "dim0-4", "C_n", "lambda1", "all", any_char(), C,
                    {inst("C2", "natural", 4, 2), inst("C3", "natural", 6, 3)}));
    r.push_back(row("dim0", "dim0-5", "D5", "half-spin", "all", any_char(), C, {inst("D5", "halfspin:+", 16, 5)}));
    r.push_back(row("dim0", "dim0-6", "G2", "lambda1", "2", only(2), C, {inst("G2", "head:natural", 6, 2)}));
}

void dim1_rows(std::vector<TableEntry>& r) {
    const auto Q = Check::Quadric;
    int k = 0;
    auto add = [&](std::string group, std::string rep, std::string chars, Chars allows, std::vector<Instance> is) {
        r.push_back(row("dim1", "dim1-" + std::to_string(++k), std::move(group), std::move(rep),
                        std::move(chars), std::move(allows), Q, std::move(is)));
    };
    add("B_n", "lambda1", "!= 2", except({2}), {inst("B2", "natural", 5, 2), inst("B3", "natural", 7, 3)});
    add("D_n", "lambda1", "all", any_char(), {inst("D4", "natural", 8, 4), inst("D5", "natural", 10, 5)});
    add("A1", "2 lambda1", "!= 2", except({2}), {inst("A1", "sym:2:natural", 3, 1)});
    add("A5", "lambda3", "2", only(2), {inst("A5", "wedge:3:natural", 20, 5)});
    add("B3", "lambda3", "all", any_char(), {inst("B3", "spin", 8, 3)});
    add("C3", "lambda3", "2", only(2), {inst("C3", "head:highest:0,0,1", 8, 3)});
    add("D6", "half-spin", "2", only(2), {inst("D6", "halfspin:+", 32, 6)});
    add("E7", "lambda7", "2", only(2), {inst("E7", "natural", 56, 7)});
    add("A1", "lambda1 + p^i lambda1", "= p != 0", positive(),
        {inst("A1", "tensor:natural:twist:1:natural", 4, 1), inst("A1", "tensor:natural:twist:2:natural", 4, 2)});
    add("A2", "lambda1 + lambda2", "3", only(3), {inst("A2", "head:adjoint", 7, 2)});
    add("A3", "lambda2", "all", any_char(), {inst("A3", "wedge:2:natural", 6, 3)});
    add("B4", "lambda4", "all", any_char(), {inst("B4", "spin", 16, 4)});
    add("B5", "lambda5", "2", only(2), {inst("B5", "spin", 32, 5)});
    add("C3", "lambda2", "3", only(3), {inst("C3", "head:highest:0,1,0", 13, 3)});
    add("G2", "lambda1", "!= 2", except({2}), {inst("G2", "natural", 7, 2)});
    add("F4", "lambda4", "3", only(3), {inst("F4", "head:natural", 25, 4)});
}

void cubic_rows(std::vector<TableEntry>& r) {
    const auto C = Check::CubicStabilizer;
    int k = 0;
    auto add = [&](std::string type, std::string rep, std::string recipe, std::size_t dim, std::string chars,
                   std::vector<std::uint32_t> bad) {
        auto e = row("cubic", "cubic-" + std::to_string(++k), type, std::move(rep), std::move(chars), except(std::move(bad)),
                     C, {inst(type, std::move(recipe), dim)});
        if (dim > kGuardRail)
            e = off_desk(std::move(e), "dimension " + std::to_string(dim) + " is above the guard rail of " +
                                           std::to_string(kGuardRail));
        else if (dim > 100)
            e = off_desk(std::move(e), "cubic invariants in " + std::to_string(dim) +
                                           " variables and a stabilizer kernel with " + std::to_string(dim * dim) +
                                           " unknowns are beyond desk scale");
        r.push_back(std::move(e));
    };
    add("A2", "2 lambda1", "highest:2,0", 6, "!= 2", {2});
    add("C4", "2 lambda2", "highest:0,2,0,0", 308, "!= 2,3,5", {2, 3, 5});
    add("C4", "2 lambda4", "highest:0,0,0,2", 594, "!= 2,5,7", {2, 5, 7});
    add("C4", "lambda2 + lambda4", "highest:0,1,0,1", 792, "!= 2,3,7", {2, 3, 7});
    add("E7", "2 lambda1", "highest:2,0,0,0,0,0,0", 7371, "!= 2,5,19", {2, 5, 19});
    add("E7", "lambda2 + lambda7", "highest:0,1,0,0,0,0,1", 40755, "!= 2,3,7", {2, 3, 7});
    add("E8", "lambda1", "highest:1,0,0,0,0,0,0,0", 3875, "!= 2", {2});
    add("F4", "lambda4", "highest:0,0,0,1", 26, "!= 3", {3});
    add("F4", "lambda1 + lambda4", "highest:1,0,0,1", 1053, "!= 2", {2});
    add("G2", "2 lambda1", "highest:2,0", 27, "!= 2,7", {2, 7});
    add("G2", "2 lambda2", "highest:0,2", 77, "!= 2,3", {2, 3});
}

std::vector<std::size_t> first_at(unsigned through, unsigned d) {
    std::vector<std::size_t> v(through, 0);
    v[d - 1] = 1;
    return v;
}

void sameinv_rows(std::vector<TableEntry>& r) {
    const auto S = Check::SameInvariants;
    auto spin = inst("D6", "halfspin:+", 32, 6);
    spin.through = 4;
    auto e = row("sameinv", "sameinv-1", "Spin11 < HSpin12", "half-spin", "all", any_char(), S, {spin});
    e.pair = Pair::SpinInHalfSpin;
    e.profile = [](std::uint32_t p, const Instance&) {
        return p == 2 ? std::vector<std::size_t>{0, 1, 0, 1} : first_at(4, 4);
    };
    r.push_back(e);

    auto g2 = inst("G2", "head:natural", 7, 2);
    g2.through = 2;
    e = row("sameinv", "sameinv-2", "PGL3 < G2", "lambda1", "3", only(3), S, {g2});
    e.pair = Pair::ShortRootsG2;
    e.profile = [](std::uint32_t, const Instance&) { return first_at(2, 2); };
    r.push_back(e);

    auto c3 = inst("C3", "head:highest:0,1,0", 14, 3);
    c3.through = 3;
    auto c4 = inst("C4", "head:highest:0,1,0,0", 26, 4);
    c4.through = 4;
    e = row("sameinv", "sameinv-3", "SO_2n < Sp_2n", "lambda2", "2", only(2), S, {c3, c4});
    e.pair = Pair::ShortRootsC;
    // Generators in degrees 2..n for odd n; no degree data for even n.
    e.profile = [](std::uint32_t, const Instance& i) {
        std::vector<std::size_t> v;
        if (i.n % 2 == 0) return v;
        v.assign(i.through, 0);
        for (unsigned d = 2; d <= i.through && d <= unsigned(i.n); ++d) v[d - 1] = 1;
        return v;
    };
    r.push_back(e);

    r.push_back(off_desk(row("sameinv", "sameinv-4", "SO8 or Sp8 < F4", "lambda4", "2", only(2), S,
                             {inst("F4", "head:natural", 26, 4)}),
                         "needs the char-2 embeddings of C4 and D4 in F4, which are not constructed"));

    std::vector<Instance> tw;
    for (int n : {2, 3}) {
        auto i = inst("A" + std::to_string(n - 1), "tensor:natural:twist:1:natural", std::size_t(n * n), n);
        i.through = n;
        tw.push_back(i);
    }
    e = row("sameinv", "sameinv-5", "SL_n < SL_n x SL_n", "W (x) W^[p]", "!= 0", positive(), S, tw);
    e.pair = Pair::TwistedDiagonal;
    e.profile = [](std::uint32_t, const Instance& i) { return first_at(i.through, i.n); };
    r.push_back(e);
}

void badprime_rows(std::vector<TableEntry>& r) {
    int k = 0;
    auto add = [&](std::string group, std::vector<Instance> is) {
        r.push_back(row("badprimes", "badprimes-" + std::to_string(++k), std::move(group), "-", "-", any_char(),
                        Check::PrimeTable, std::move(is)));
    };
    auto pt = [](std::string type, std::set<long> t, std::set<long> nvg) {
        auto i = inst(type, "", 0);
        i.torsion = std::move(t);
        i.not_very_good = std::move(nvg);
        return i;
    };
    // A_l: divisors of l + 1.
    add("A_l", {pt("A3", {}, {2}), pt("A5", {}, {2, 3})});
    add("B_l (l >= 3)", {pt("B3", {2}, {2}), pt("B4", {2}, {2})});
    add("C_l", {pt("C2", {}, {2}), pt("C3", {}, {2})});
    add("D_l (l >= 4)", {pt("D4", {2}, {2}), pt("D5", {2}, {2})});
    add("E6", {pt("E6", {2, 3}, {2, 3})});
    add("E7", {pt("E7", {2, 3}, {2, 3})});
    add("E8", {pt("E8", {2, 3, 5}, {2, 3, 5})});
    add("F4", {pt("F4", {2, 3}, {2, 3})});
    add("G2", {pt("G2", {2}, {2, 3})});
}

std::vector<TableEntry> build_registry() {
    std::vector<TableEntry> r;
    dim0_rows(r);
    dim1_rows(r);
    cubic_rows(r);
    sameinv_rows(r);
    badprime_rows(r);
    return r;
}

Field field_of(std::uint32_t p) { return p ? Field::prime(p) : Field::rationals(); }

std::string join(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

std::string set_str(const std::set<long>& s) {
    std::string out = "{";
    for (auto it = s.begin(); it != s.end(); ++it) out += (it == s.begin() ? "" : ",") + std::to_string(*it);
    return out + "}";
}

void add_primes(std::vector<std::uint32_t>& out, const std::vector<std::uint32_t>& in) {
    for (auto q : in)
        if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
}

// Over a finite field the group conditions are sampled, which may need a larger field.
GroupAction sampled(const GroupAction& a, unsigned d) {
    if (!a.field.is_finite()) return a;
    return a.over(invariants::sampling_field(a, d));
}

repforge::Representation build(const Instance& i, const Field& k) {
    return repforge::build_recipe(i.type, i.recipe, k, i.highest);
}

void generic_zero(const Instance& i, std::uint32_t p, const Options& opt, VerificationResult& res) {
    auto rep = build(i, field_of(p));
    auto g = invariants::generic_invariant_dim(invariants::action_of(rep), 3, opt.seed);
    res.expected = "dim V = " + std::to_string(i.dim) + ", generic_invariant_dim = 0";
    res.computed = "dim V = " + std::to_string(rep.dim) + ", generic_invariant_dim = " + std::to_string(g.dim);
    res.pass = rep.dim == i.dim && g.dim == 0;
}

void quadric(const Instance& i, std::uint32_t p, const Options& opt, VerificationResult& res) {
    auto rep = build(i, field_of(p));
    auto a = invariants::action_of(rep);
    auto g = invariants::generic_invariant_dim(a, 3, opt.seed);
    auto q = invariants::invariant_space(sampled(a, 2), 2, Mode::Group, false, &res.primes);
    res.expected = "dim V = " + std::to_string(i.dim) + ", generic_invariant_dim = 1, degree-2 dim = 1";
    res.computed = "dim V = " + std::to_string(rep.dim) + ", generic_invariant_dim = " + std::to_string(g.dim) +
                   ", degree-2 dim = " + std::to_string(q.dim);
    res.pass = rep.dim == i.dim && g.dim == 1 && q.dim == 1;
}

// The stabilizer dimension is upper semicontinuous, so the minimum over a few
// random invariant cubics is the generic value.
void cubic(const Instance& i, std::uint32_t p, const Options& opt, VerificationResult& res) {
    auto rep = build(i, field_of(p));
    auto a = invariants::action_of(rep);
    const std::size_t dim_g = repforge::algebra_for(i.type)->dim();
    auto s = p ? invariants::invariant_space(sampled(a, 3), 3, Mode::Group, true, &res.primes)
               : invariants::invariant_space(a, 3, Mode::Lie, true, &res.primes);
    // In characteristic p the stabilizer scheme need not be smooth, so its Lie
    // algebra is only reported there.
    res.expected = "dim V = " + std::to_string(i.dim) + ", cubic invariants >= 1";
    if (!p) res.expected += ", stabilizer dim = dim G = " + std::to_string(dim_g);
    std::size_t best = 0;
    if (s.dim > 0) {
        const Field& k = s.basis[0].field();
        std::mt19937_64 rng(opt.seed);
        const int tries = s.dim == 1 ? 1 : 4;
        best = SIZE_MAX;
        for (int t = 0; t < tries; ++t) {
            auto f = s.basis[0];
            if (s.dim > 1) {
                f = polyspace::SparsePoly(rep.dim, k);
                for (const auto& b : s.basis) {
                    Scalar c = k.is_finite() ? k.from_code(std::uint32_t(1 + rng() % (k.order() - 1)))
                                             : Scalar(long(1 + rng() % 97));
                    // c may be an extension code, so no scaled() (it maps through image()).
                    for (const auto& [e, v] : b.terms()) f.add_term(e, k.mul(v, c));
                }
            }
            auto st = invariants::stabilizer_algebra(f, false);
            add_primes(res.primes, st.primes_used);
            best = std::min(best, st.dim);
        }
    }
    res.computed = "dim V = " + std::to_string(rep.dim) + ", cubic invariants = " + std::to_string(s.dim) +
                   ", stabilizer dim = " + (s.dim ? std::to_string(best) : "-");
    res.pass = rep.dim == i.dim && s.dim >= 1 && (p || best == dim_g);
}

void same_invariants(const TableEntry& e, const Instance& i, std::uint32_t p, VerificationResult& res) {
    const Field k = field_of(p);
    GroupAction full, sub;
    switch (e.pair) {
        case Pair::SpinInHalfSpin: {
            auto nat = repforge::build_recipe(i.type, "natural", Field::rationals());
            exactla::Vector v0(nat.dim, Scalar(0));
            // A nonsingular vector: e_n + e_{n+1} pair under the split form.
            v0[nat.dim / 2 - 1] = 1;
            v0[nat.dim / 2] = 1;
            auto rep = build(i, k);
            full = invariants::action_of(rep);
            sub = invariants::action_of(rep, repforge::vector_stabilizer(nat, v0, k));
            break;
        }
        case Pair::ShortRootsG2:
        case Pair::ShortRootsC: {
            auto rep = build(i, k);
            full = invariants::action_of(rep);
            sub = invariants::action_of(rep, repforge::short_root_subalgebra(repforge::algebra_for(i.type), k));
            break;
        }
        case Pair::TwistedDiagonal: {
            auto nat = repforge::build_recipe(i.type, "natural", k);
            full = invariants::action_of(repforge::external_tensor(nat, nat));
            sub = invariants::action_of(build(i, k));
            break;
        }
        case Pair::None:
            throw Error("row " + e.id + " has no subgroup pair");
    }
    if (p) {
        Field big = invariants::sampling_field(full, i.through);
        Field other = invariants::sampling_field(sub, i.through);
        if (other.order() > big.order()) big = other;
        full = full.over(big);
        sub = sub.over(big);
    }
    auto cmp = invariants::compare_invariants(full, sub, 1, i.through, Mode::Group);
    std::vector<std::size_t> h, g;
    bool equal = true;
    for (const auto& c : cmp) {
        h.push_back(c.full);
        g.push_back(c.sub);
        equal = equal && !c.differ();
    }
    auto want = e.profile ? e.profile(p, i) : std::vector<std::size_t>{};
    res.expected = "equal dims in degrees 1.." + std::to_string(i.through);
    if (!want.empty()) res.expected += ", dims " + join(want);
    res.computed = "H " + join(h) + " / G " + join(g);
    res.pass = full.dim == i.dim && equal && (want.empty() || h == want);
}

void prime_table(const Instance& i, VerificationResult& res) {
    auto t = rootsys::torsion_and_bad_primes(rootsys::build_root_system(i.type));
    res.expected = "torsion " + set_str(i.torsion) + ", not very good " + set_str(i.not_very_good);
    res.computed = "torsion " + set_str(t.torsion) + ", not very good " + set_str(t.not_very_good);
    res.pass = t.torsion == i.torsion && t.not_very_good == i.not_very_good;
}

}  // namespace

const std::vector<TableEntry>& registry() {
    static const std::vector<TableEntry> r = build_registry();
    return r;
}

std::vector<std::string> table_names() { return {"dim0", "dim1", "cubic", "sameinv", "badprimes"}; }

std::vector<const TableEntry*> table_entries(const std::string& table) {
    auto names = table_names();
    if (std::find(names.begin(), names.end(), table) == names.end()) throw ParseError("unknown table '" + table + "'");
    std::vector<const TableEntry*> out;
    for (const auto& e : registry())
        if (e.table == table) out.push_back(&e);
    return out;
}

VerificationResult verify_entry(const TableEntry& entry, const Instance& inst, std::uint32_t p, const Options& opt) {
    if (!entry.desk_scale) throw SkippedGuardRail(entry.id + ": " + entry.reason);
    if (inst.dim > kGuardRail) throw SkippedGuardRail(entry.id + ": dimension " + std::to_string(inst.dim));
    VerificationResult res;
    res.id = entry.id + "/" + inst.type + (inst.recipe.empty() ? "" : ":" + inst.recipe);
    res.group = entry.group;
    res.rep = entry.rep;
    res.characteristic = p;
    const auto t0 = std::chrono::steady_clock::now();
    switch (entry.check) {
        case Check::GenericZero: generic_zero(inst, p, opt, res); break;
        case Check::Quadric: quadric(inst, p, opt, res); break;
        case Check::CubicStabilizer: cubic(inst, p, opt, res); break;
        case Check::SameInvariants: same_invariants(entry, inst, p, res); break;
        case Check::PrimeTable: prime_table(inst, res); break;
    }
    if (p) add_primes(res.primes, {p});
    std::sort(res.primes.begin(), res.primes.end());
    res.ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

bool SuiteSummary::pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const VerificationResult& r) { return r.pass; });
}

std::string SuiteSummary::to_json() const {
    nlohmann::ordered_json j;
    j["schema_version"] = STABFORGE_SCHEMA_VERSION;
    j["table"] = table;
    j["seed"] = seed;
    j["primes"] = primes;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json o;
        o["id"] = r.id;
        o["group"] = r.group;
        o["rep"] = r.rep;
        o["char"] = r.characteristic;
        o["expected"] = r.expected;
        o["computed"] = r.computed;
        o["pass"] = r.pass;
        o["ms"] = r.ms;
        j["rows"].push_back(o);
    }
    j["skipped"] = nlohmann::ordered_json::array();
    for (const auto& s : skipped) j["skipped"].push_back({{"id", s.id}, {"reason", s.reason}});
    j["pass"] = pass();
    return j.dump(2);
}

SuiteSummary run_suite(const std::string& table, const std::vector<std::uint32_t>& chars, const Options& opt) {
    struct Job {
        const TableEntry* entry;
        const Instance* inst;
        std::uint32_t p;
    };
    SuiteSummary s;
    s.table = table;
    s.seed = opt.seed;
    std::vector<Job> jobs;
    for (const auto* e : table_entries(table)) {
        if (!e->desk_scale) {
            s.skipped.push_back({e->id, e->reason});
            continue;
        }
        for (const auto& i : e->instances) {
            if (e->check == Check::PrimeTable) {
                jobs.push_back({e, &i, 0});
                continue;
            }
            for (auto p : chars)
                if (e->allows(p)) jobs.push_back({e, &i, p});
        }
    }

    std::vector<VerificationResult> out(jobs.size());
    std::vector<std::exception_ptr> err(jobs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k; (k = next++) < jobs.size();) {
            try {
                out[k] = verify_entry(*jobs[k].entry, *jobs[k].inst, jobs[k].p, opt);
            } catch (...) {
                err[k] = std::current_exception();
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(opt.threads, unsigned(jobs.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    for (std::size_t k = 0; k < jobs.size(); ++k) {
        if (err[k]) std::rethrow_exception(err[k]);
        add_primes(s.primes, out[k].primes);
        s.rows.push_back(std::move(out[k]));
    }
    std::sort(s.primes.begin(), s.primes.end());
    return s;
}

}  // namespace stabforge::papertables
