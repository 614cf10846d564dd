#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "stabforge/cli/report_json.hpp"
#include "stabforge/errors.hpp"
#include "stabforge/papertables/tables.hpp"
#include "stabforge/repforge/recipe.hpp"

using namespace stabforge;
using cli::Json;
using exactla::Field;

namespace {

const char* kGrammar = R"(recipes: natural | adjoint | spin | halfspin:+|- | highest:c1,...,cl | head | head:R
         sym:d:R | wedge:d:R | tensor:R1:R2 | dual:R | twist:e:R | tracezero:R | modscalars:R
types:   A1.., B2.., C2.., D3.., E6, E7, E8, F4, G2
fields:  --char 0 (rationals), a prime p, or GF(p^e)
)";

struct Output {
    std::string path;

    void attach(CLI::App* sub) {
        sub->add_option("--json", path, "write JSON here (stdout when no path is given)")->expected(0, 1);
    }
    void emit(const Json& j, CLI::App* sub) const {
        std::string text = j.dump(2) + "\n";
        if (sub->count("--json") && !path.empty()) {
            std::ofstream out(path);
            if (!out) throw ParseError("cannot write " + path);
            out << text;
        } else {
            std::cout << text;
        }
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stabforge: invariants and stabilizers of group representations"};
    app.set_version_flag("--version", std::string(STABFORGE_SCHEMA_VERSION));
    app.require_subcommand(1);
    app.fallthrough();
    app.footer(kGrammar);

    std::uint64_t seed = 0;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    app.add_option("--seed", seed, "random seed")->capture_default_str();
    app.add_option("--threads", threads, "worker threads");

    auto* rs = app.add_subcommand("root-system", "root datum, torsion and bad primes");
    std::string rs_type;
    Output rs_out;
    rs->add_option("type", rs_type)->required();
    rs_out.attach(rs);

    auto* inv = app.add_subcommand("invariants", "per-degree invariant dimensions");
    std::string group, recipe, ch = "0", degrees = "1..2", mode = "lie";
    bool generic = false, no_basis = false;
    Output inv_out;
    inv->add_option("--group", group)->required();
    inv->add_option("--rep", recipe)->required();
    inv->add_option("--char", ch)->capture_default_str();
    inv->add_option("--degrees", degrees, "a..b or d")->capture_default_str();
    inv->add_option("--mode", mode, "lie | group")->capture_default_str();
    inv->add_flag("--generic", generic, "also report the generic invariant dimension");
    inv->add_flag("--no-basis", no_basis, "dimensions only");
    inv_out.attach(inv);

    auto* st = app.add_subcommand("stabilizer", "Lie algebra of the stabilizer of a form");
    std::string poly_path, st_char = "0";
    std::size_t nvars = 0;
    Output st_out;
    st->add_option("--poly", poly_path, "one term per line: coeff : e1 ... en")->required();
    st->add_option("--nvars", nvars);
    st->add_option("--char", st_char)->capture_default_str();
    st_out.attach(st);

    auto* wi = app.add_subcommand("weyl-invariants", "Weyl-group invariants on the Cartan subalgebra");
    std::string wi_type, wi_char = "0";
    unsigned wi_degree = 2;
    Output wi_out;
    wi->add_option("type", wi_type)->required();
    wi->add_option("--degree", wi_degree)->required();
    wi->add_option("--char", wi_char)->capture_default_str();
    wi_out.attach(wi);

    auto* vt = app.add_subcommand("verify-table", "check the rows of a classification table");
    std::string table, chars = "0,2,3,5";
    Output vt_out;
    vt->add_option("table", table, "dim0 | dim1 | cubic | sameinv | badprimes")->required();
    vt->add_option("--chars", chars)->capture_default_str();
    vt_out.attach(vt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        std::cerr << app.help();
        return 2;
    }

    try {
        if (*rs) {
            rs_out.emit(cli::root_system_json(rootsys::build_root_system(rs_type)), rs);
        } else if (*inv) {
            auto [lo, hi] = cli::parse_degrees(degrees);
            auto m = invariants::parse_mode(mode);
            Field k = Field::parse(ch);
            auto action = invariants::action_of(repforge::build_recipe(group, recipe, k));
            auto run = m == invariants::Mode::Group ? action.over(invariants::sampling_field(action, hi)) : action;
            auto j = cli::invariants_json(invariants::invariant_report(run, lo, hi, m, !no_basis), group);
            if (generic) j["generic"] = cli::generic_json(invariants::generic_invariant_dim(action, 3, seed));
            inv_out.emit(j, inv);
        } else if (*st) {
            Field k = Field::parse(st_char);
            auto f = polyspace::load_poly(poly_path, k, nvars ? std::optional<std::size_t>(nvars) : std::nullopt);
            st_out.emit(cli::stabilizer_json(invariants::stabilizer_algebra(f, false), k), st);
        } else if (*wi) {
            auto w = invariants::weyl_invariant_space(rootsys::build_root_system(wi_type), wi_degree,
                                                      Field::parse(wi_char), seed);
            wi_out.emit(cli::weyl_json(w, wi_type), wi);
        } else if (*vt) {
            papertables::Options opt{seed, threads};
            auto s = papertables::run_suite(table, cli::parse_chars(chars), opt);
            auto j = Json::parse(s.to_json());
            vt_out.emit(j, vt);
            if (vt->count("--json") && !vt_out.path.empty()) {
                std::size_t failed = 0;
                for (const auto& r : s.rows) failed += !r.pass;
                std::cout << table << ": " << s.rows.size() << " rows, " << failed << " failed, " << s.skipped.size()
                          << " skipped\n";
            }
            return s.pass() ? 0 : 1;
        }
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n" << kGrammar;
        return 2;
    } catch (const InvalidType& e) {
        std::cerr << e.what() << "\n" << kGrammar;
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 0;
}
