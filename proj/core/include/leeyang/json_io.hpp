#pragma once

// JSON schemas for polynomials, domains, operators, physical systems and
// reports. Parsers throw FormatError naming the offending location.
//
//   complex    2.5 | [re, im]
//   poly       {"nvars": n, "terms": [{"exp": [..], "coef": complex}, ..]}
//   domain     {"kind": "half_plane", "theta": t, "offset": complex}
//              {"kind": "disc" | "disc_exterior", "center": complex, "radius": r}
//   operator   {"kappa": [..], "nvars_out": m, "name": s,
//               "action": [{"alpha": [..], "image": poly}, ..]}
//              {"builtin": name, ..parameters}
//   spins      {"n": n, "J": [[..], ..]}
//   graph      {"n": n, "edges": [[i, j, lambda], ..]}
//   couplings  {"n": n, "a": [[complex, ..], ..]}
// Indices are 0-based.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "leeyang/composition.hpp"
#include "leeyang/domains.hpp"
#include "leeyang/operators.hpp"
#include "leeyang/oracle.hpp"
#include "leeyang/poly.hpp"
#include "leeyang/statmech.hpp"

namespace leeyang {

using Json = nlohmann::ordered_json;

/// Throws FormatError with the byte offset on malformed input.
Json parse_json(const std::string& text);
Json read_json_file(const std::filesystem::path& path);

Complex complex_from_json(const Json& j, const std::string& where = "$");
Json to_json(Complex c);

MultiPoly poly_from_json(const Json& j, const std::string& where = "$");
Json to_json(const MultiPoly& f);

CircularDomain domain_from_json(const Json& j, const std::string& where = "$");
Json to_json(const CircularDomain& d);

LinearOperator operator_from_json(const Json& j, const std::string& where = "$");
Json to_json(const LinearOperator& t);

SpinSystem spin_system_from_json(const Json& j, const std::string& where = "$");
Json to_json(const SpinSystem& s);

WeightedGraph graph_from_json(const Json& j, const std::string& where = "$");
Json to_json(const WeightedGraph& g);

std::vector<std::vector<Complex>> couplings_from_json(const Json& j, const std::string& where = "$");

Json to_json(const MoebiusMap& m);
Json to_json(const StabilityVerdict& v);
Json to_json(const MembershipVerdict& v);
Json to_json(const SymbolReport& r);
Json to_json(const GraceReport& r);
Json to_json(const GraceCampaignReport& r);
Json to_json(const LeeYangReport& r);
Json to_json(const HeilmannLiebReport& r);
Json to_json(const CircleTheoremReport& r);

/// Deterministic two-space-indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace leeyang
