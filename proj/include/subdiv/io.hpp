#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "subdiv/checks.hpp"
#include "subdiv/ehrhart.hpp"

namespace subdiv {

using Json = nlohmann::json;

// Malformed input: wrong types, missing keys, unknown names.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json read_json_file(const std::string& path);

// {"elements": [...], "covers": [[a, b], ...], "rank": {name: r}}; without
// "rank", minimal elements get rank 0.
RankedPoset poset_from_json(const Json& j);
Json poset_to_json(const RankedPoset& p);

// {"gamma": poset, "base": poset, "sigma": {gamma element: base element},
//  "geometric": bool, "regular": bool}
Sfs sfs_from_json(const Json& j);
Json sfs_to_json(const Sfs& s);

// {"dim": d, "vertices": [[...]], "lattice_basis": [[...]]}; "dim" is the
// ambient dimension. Coordinates are integers, or rationals written "p/q"
// when a lattice basis is given; the polytope is stored in lattice
// coordinates.
struct PolytopeInput {
    LatticePolytope polytope;
    std::optional<Lattice> lattice;
    std::vector<std::string> warnings;
};
PolytopeInput polytope_from_json(const Json& j);

// A polytope object with optional "points", "cells" (index lists into
// "points", or into "vertices" without it, or explicit coordinate lists),
// "heights" (one per point) and "regular". Neither cells nor heights gives
// the trivial subdivision. "coarse" may hold a second subdivision of the same
// polytope that this one refines.
struct ComplexInput {
    CellComplex complex;
    std::optional<CellComplex> coarse;
    std::vector<std::string> warnings;
};
ComplexInput complex_from_json(const Json& j, bool force_regular = false);
Json complex_to_json(const CellComplex& c);

// {"text": "...", "terms": [{"coefficient": "c", "exponents": {"u": 1}}]}
Json poly_to_json(const LaurentPoly& p);
LaurentPoly poly_from_json(const Json& j);

Json diamond_to_json(const Diamond& d);
Json report_to_json(const Report& r);

}  // namespace subdiv
