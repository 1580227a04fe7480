#pragma once

#include <string>

#include <json.hpp>

#include "mapvir/classify.hpp"

namespace mapvir {

using Json = nlohmann::ordered_json;

/// Reads and parses a JSON file; ValidationError names the path on failure.
Json load_json(const std::string& path);

/// Scalars are strings "p/q" (or "p"); plain JSON integers are accepted too.
Scalar scalar_from_json(const Json& j, const std::string& field);
Json scalar_to_json(const Scalar& s);

/// {"kind":"product_local","factors":[{"point":"0","order":2}]},
/// {"kind":"structure_constants","dim":d,"unit":[...],"tensor":[[[...]]],"labels":[...]},
/// {"kind":"polynomial","window":[0,D]}, {"kind":"laurent","window":[-D,D]},
/// plus {"kind":"rationals"} and {"kind":"univariate_quotient","modulus":"t^2+1"}.
AlgebraPtr algebra_from_json(const Json& j);
Json algebra_to_json(const Algebra& a);

/// {"d0":{"1":"3","t":"0"},"c":{"1":"1/2"}} keyed by basis labels (values not
/// given are zero), or {"d0_seq":[...],"c_seq":[...],"exact_ideal":"t-2"} for
/// polynomial/laurent algebras.
FunctionalPtr functional_from_json(const Json& j, const AlgebraPtr& algebra);
Json functional_to_json(const Functional& phi);

/// {"variant":"verma"|"irreducible","phi":{...},"colors":[lo,hi]},
/// {"variant":"int_series_eval","a":"1/2","b":"1/3","point":"0","window":[-20,20]},
/// {"variant":"generalized_eval","point":"0","order":2,"inner":{...}} (inner over A/m^order),
/// {"variant":"tensor","factors":[...]}.
ModuleHandlePtr module_from_json(const Json& j, const AlgebraPtr& algebra);

Json metadata(const Algebra& a);
Json weight_table_to_json(const WeightTable& t);
Json annihilator_to_json(const AnnihilatorReport& r);
Json classification_to_json(const ClassificationRecord& r, bool explain);
Json profile_to_json(const TrichotomyProfile& p);

}  // namespace mapvir
