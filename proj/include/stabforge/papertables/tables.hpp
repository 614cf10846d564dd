#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stabforge/rootsys/root_datum.hpp"

namespace stabforge::papertables {

using rootsys::IntVec;

/// Representations above this dimension are not constructed.
constexpr std::size_t kGuardRail = 2000;

enum class Check {
    GenericZero,      // generic_invariant_dim = 0
    Quadric,          // generic_invariant_dim = 1 and one quadratic invariant
    CubicStabilizer,  // one cubic invariant whose stabilizer has dimension dim G
    SameInvariants,   // equal invariant dimensions for a subgroup pair
    PrimeTable,       // torsion and not-very-good primes
};

/// Which subgroup a SameInvariants row compares against.
enum class Pair { None, SpinInHalfSpin, ShortRootsG2, ShortRootsC, TwistedDiagonal };

/// One instance of a row (a rank family is instantiated at two members).
struct Instance {
    std::string type;
    std::string recipe;
    std::optional<IntVec> highest;
    std::size_t dim = 0;
    int n = 0;
    /// SameInvariants: compare degrees 1..through.
    unsigned through = 0;
    /// PrimeTable rows.
    std::set<long> torsion, not_very_good;
};

struct TableEntry {
    std::string table;
    std::string id;
    std::string group;
    std::string rep;
    std::string chars;
    std::function<bool(std::uint32_t)> allows;
    Check check = Check::GenericZero;
    std::vector<Instance> instances;
    bool desk_scale = true;
    std::string reason;

    Pair pair = Pair::None;
    /// Expected invariant dimensions in degrees 1..through, per characteristic
    /// (empty when the row states no degree data).
    std::function<std::vector<std::size_t>(std::uint32_t p, const Instance&)> profile;
};

const std::vector<TableEntry>& registry();
std::vector<std::string> table_names();
/// Rows of one table in registry order; throws ParseError for unknown names.
std::vector<const TableEntry*> table_entries(const std::string& table);

struct Options {
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct VerificationResult {
    std::string id;
    std::string group;
    std::string rep;
    std::uint32_t characteristic = 0;
    std::string expected;
    std::string computed;
    bool pass = false;
    long ms = 0;
    std::vector<std::uint32_t> primes;
};

/// Runs one instance of a desk-scale row in characteristic p.
/// Throws SkippedGuardRail for rows marked desk_scale = false.
VerificationResult verify_entry(const TableEntry& entry, const Instance& inst, std::uint32_t p,
                                const Options& opt = {});

struct Skipped {
    std::string id;
    std::string reason;
};

struct SuiteSummary {
    std::string table;
    std::uint64_t seed = 0;
    std::vector<VerificationResult> rows;
    std::vector<Skipped> skipped;
    std::vector<std::uint32_t> primes;

    bool pass() const;
    std::string to_json() const;
};

/// Every desk-scale row of `table` in every listed characteristic its
/// constraint allows (badprimes ignores the list).
SuiteSummary run_suite(const std::string& table, const std::vector<std::uint32_t>& chars, const Options& opt = {});

}  // namespace stabforge::papertables
