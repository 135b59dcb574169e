#pragma once

// JSON forms of the domain types. Rationals are "p/q" strings; object keys
// come out sorted, so dump_canonical is byte-stable and round-trips exactly.

#include <string>
#include <vector>

#include <json.hpp>

#include "hodgebox/cubefam.hpp"
#include "hodgebox/diffop.hpp"
#include "hodgebox/exactlin.hpp"
#include "hodgebox/fedotov.hpp"
#include "hodgebox/hypmat.hpp"
#include "hodgebox/mixvol.hpp"

namespace hodgebox {

using Json = nlohmann::json;

Json rationals_to_json(const RatVector& v);
RatVector rationals_from_json(const Json& j);

Json matrix_to_json(const RatMatrix& m);
RatMatrix matrix_from_json(const Json& j);

/// { "n": int, "widths": [...], "offset": [...] }
Json box_to_json(const BoxBody& b);
BoxBody box_from_json(const Json& j);

/// { "n": int, "entries": [{ "body": box, "multiplicity": int }, ...] }
Json tuple_to_json(const BodyTuple& t);
BodyTuple tuple_from_json(const Json& j);

/// { "n": int, "k": int, "terms": [{ "S": [indices], "c": "p/q" }, ...] }
Json operator_to_json(const SlabOperator& op);
SlabOperator operator_from_json(const Json& j);

/// { "I": [indices], "det": "p/q" }
Json violation_to_json(const Violation& v);
Violation violation_from_json(const Json& j);

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

/// Matrix input for the shephard command: { "n", "k", "bodies": [box], "C": [box] }.
/// "k" is optional and defaults to 1.
FedotovMatrix matrix_input_from_json(const Json& j, std::size_t threads = 1);

std::string dump_canonical(const Json& j);

}  // namespace hodgebox
