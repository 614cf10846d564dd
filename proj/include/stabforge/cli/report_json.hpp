#pragma once

#include <string>

#include <json.hpp>

#include "stabforge/invariants/invariants.hpp"
#include "stabforge/invariants/weyl.hpp"
#include "stabforge/rootsys/root_datum.hpp"

namespace stabforge::cli {

using Json = nlohmann::ordered_json;

/// Terms as [{"coeff": "a/b", "exp": [..]}], coefficients as exact strings.
Json poly_json(const polyspace::SparsePoly& f);
polyspace::SparsePoly poly_from_json(const Json& j, const exactla::Field& field, std::size_t nvars);

Json root_system_json(const rootsys::RootDatum& d);
Json invariants_json(const invariants::InvariantReport& r, const std::string& group);
Json stabilizer_json(const invariants::StabilizerReport& r, const exactla::Field& field);
Json weyl_json(const invariants::WeylInvariants& w, const std::string& type);
Json generic_json(const invariants::GenericDim& g);

/// Throws ParseError unless `j` carries the schema version and the keys
/// required for its "command".
void check_schema(const Json& j);

/// "a..b" or "d".
std::pair<unsigned, unsigned> parse_degrees(const std::string& text);
/// "0,2,3,5".
std::vector<std::uint32_t> parse_chars(const std::string& text);

}  // namespace stabforge::cli
