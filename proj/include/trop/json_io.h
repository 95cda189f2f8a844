#pragma once
// JSON encoding of the core objects.  Integers are decimal strings and
// rationals are "p/q" strings ("p" when the denominator is 1), so values
// survive round trips exactly.  Structural problems raise SchemaError.

#include <string>

#include "json.hpp"
#include "trop/fan.h"
#include "trop/monodromy.h"
#include "trop/polyhedron.h"
#include "trop/relative.h"
#include "trop/resolution.h"

namespace trop {

using Json = nlohmann::ordered_json;

Json load_json_file(const std::string& path);

Json int_to_json(const Int& v);
Int int_from_json(const Json& j);
Json rat_to_json(const Rat& v);
Rat rat_from_json(const Json& j);

// {"dim": n, "vertices": [[..]], "recession": [[..]]}; a missing recession
// field means the positive orthant (the Newton-germ default); an empty
// polyhedron is {"dim": n, "empty": true}
Json poly_to_json(const Poly& p);
Poly poly_from_json(const Json& j);

// {"rays": [[..]], "lin": [[..]]}, either list may be absent
Json cone_to_json(const Cone& c);
Cone cone_from_json(const Json& j, int n);

// {"dim": n, "k": k, "ambient": cone, "cells": [{"gens", "lin", "weight"}]}
Json fan_to_json(const Fan& f);
Fan fan_from_json(const Json& j);

// {"A": polyhedron, "B": polyhedron}
Json relpoly_to_json(const RelPoly& rp);
RelPoly relpoly_from_json(const Json& j);

// {"dim": n, "fan": [cone..], "strata": [{"M","H","E","euler"}],
//  "compact": [..]}; H, E and compact entries are plain indices
Json resolution_to_json(const ResolutionData& rd);
ResolutionData resolution_from_json(const Json& j);

// {"factors": {"2": "1", ..}, "display": "(1-t^2)^1 .."}
Json zeta_to_json(const ZetaFactors& z);

}  // namespace trop
