#include "stabforge/cli/report_json.hpp"

#include <sstream>

#include "stabforge/errors.hpp"

namespace stabforge::cli {

using exactla::Field;
using exactla::Scalar;

namespace {

Json header(const std::string& command) {
    Json j;
    j["schema_version"] = STABFORGE_SCHEMA_VERSION;
    j["command"] = command;
    return j;
}

unsigned parse_unsigned(const std::string& s, const std::string& what) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("bad " + what + " '" + s + "'");
    return static_cast<unsigned>(std::stoul(s));
}

}  // namespace

Json poly_json(const polyspace::SparsePoly& f) {
    Json terms = Json::array();
    for (const auto& [e, c] : f.terms()) terms.push_back({{"coeff", exactla::format_scalar(c)}, {"exp", e}});
    return terms;
}

polyspace::SparsePoly poly_from_json(const Json& j, const Field& field, std::size_t nvars) {
    if (!j.is_array()) throw ParseError("polynomial must be a term array");
    polyspace::SparsePoly f(nvars, field);
    for (const auto& t : j) {
        Scalar c = exactla::parse_scalar(t.at("coeff").get<std::string>());
        f.add_term(t.at("exp").get<polyspace::Exponent>(), field.is_finite() ? field.from_code(c.get_num().get_ui()) : c);
    }
    return f;
}

Json root_system_json(const rootsys::RootDatum& d) {
    auto j = header("root-system");
    auto t = rootsys::torsion_and_bad_primes(d);
    j["label"] = d.name();
    j["rank"] = d.rank;
    j["cartan"] = d.cartan;
    j["n_roots"] = d.n_roots();
    j["coxeter"] = d.coxeter_number();
    j["torsion_primes"] = t.torsion;
    j["not_very_good"] = t.not_very_good;
    j["degrees"] = rootsys::invariant_degree_sequence(d);
    return j;
}

Json invariants_json(const invariants::InvariantReport& r, const std::string& group) {
    auto j = header("invariants");
    j["group"] = group;
    j["rep"] = r.rep;
    j["mode"] = invariants::mode_name(r.mode);
    j["char"] = r.field.characteristic();
    j["field"] = r.field.name();
    j["dims"] = r.dims();
    j["slices"] = Json::array();
    for (const auto& s : r.slices) {
        Json o;
        o["degree"] = s.degree;
        o["dim"] = s.dim;
        o["stratum"] = s.stratum;
        o["basis"] = Json::array();
        for (const auto& f : s.basis) o["basis"].push_back(poly_json(f));
        j["slices"].push_back(o);
    }
    j["primes"] = r.primes_used;
    j["samples"] = r.samples_used;
    j["caveat"] = r.caveat ? Json(*r.caveat) : Json(nullptr);
    return j;
}

Json stabilizer_json(const invariants::StabilizerReport& r, const Field& field) {
    auto j = header("stabilizer");
    j["field"] = field.name();
    j["nvars"] = r.n;
    j["degree"] = r.degree;
    j["stabilizer_dim"] = r.dim;
    j["contains_scalars"] = r.contains_scalars;
    j["primes"] = r.primes_used;
    return j;
}

Json weyl_json(const invariants::WeylInvariants& w, const std::string& type) {
    auto j = header("weyl-invariants");
    j["type"] = type;
    j["degree"] = w.degree;
    j["field"] = w.field.name();
    j["dim"] = w.dim;
    j["columns"] = w.columns;
    j["primes"] = w.primes_used;
    j["basis"] = Json::array();
    for (const auto& f : w.basis) j["basis"].push_back(poly_json(f));
    return j;
}

Json generic_json(const invariants::GenericDim& g) {
    Json j;
    j["dim"] = g.dim;
    j["max_orbit"] = g.max_orbit;
    j["hits"] = g.hits;
    j["samples"] = g.samples;
    j["algebra_dim"] = g.algebra_dim;
    j["field"] = g.field.name();
    return j;
}

void check_schema(const Json& j) {
    if (!j.is_object() || j.value("schema_version", "") != STABFORGE_SCHEMA_VERSION)
        throw ParseError("missing or foreign schema_version");
    static const std::map<std::string, std::vector<const char*>> keys = {
        {"root-system", {"label", "rank", "cartan", "n_roots", "coxeter", "torsion_primes", "not_very_good", "degrees"}},
        {"invariants", {"group", "rep", "mode", "char", "field", "dims", "slices", "primes"}},
        {"stabilizer", {"field", "nvars", "degree", "stabilizer_dim", "contains_scalars", "primes"}},
        {"weyl-invariants", {"type", "degree", "field", "dim", "basis", "primes"}},
        {"verify-table", {"table", "rows", "seed", "primes", "skipped", "pass"}},
    };
    std::string cmd = j.contains("command") ? j["command"].get<std::string>() : "verify-table";
    auto it = keys.find(cmd);
    if (it == keys.end()) throw ParseError("unknown command '" + cmd + "'");
    for (const char* k : it->second)
        if (!j.contains(k)) throw ParseError(cmd + " report lacks '" + k + "'");
    if (cmd == "verify-table")
        for (const auto& r : j["rows"])
            for (const char* k : {"id", "group", "rep", "char", "expected", "computed", "pass", "ms"})
                if (!r.contains(k)) throw ParseError("table row lacks '" + std::string(k) + "'");
}

std::pair<unsigned, unsigned> parse_degrees(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) {
        unsigned d = parse_unsigned(text, "degree");
        return {d, d};
    }
    unsigned lo = parse_unsigned(text.substr(0, dots), "degree");
    unsigned hi = parse_unsigned(text.substr(dots + 2), "degree");
    if (lo > hi) throw ParseError("empty degree range " + text);
    return {lo, hi};
}

std::vector<std::uint32_t> parse_chars(const std::string& text) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        unsigned p = parse_unsigned(item, "characteristic");
        if (p != 0 && !exactla::is_prime_u64(p)) throw InvalidField(item + " is not prime");
        out.push_back(p);
    }
    if (out.empty()) throw ParseError("no characteristics");
    return out;
}

}  // namespace stabforge::cli
