#pragma once

#include <json.hpp>

#include "kleinian/series.hpp"

namespace kleinian {

// {"vars": [...], "weights": [...], "capped": [...],
//  "terms": [{"coeff": "p/q", "exps": [...]}, ...]}
// Terms are emitted in the deterministic graded-lex order.
nlohmann::json poly_to_json(const GradedPoly& p);
GradedPoly poly_from_json(const nlohmann::json& j);

nlohmann::json series_to_json(const Series& s);  // adds "cap"
Series series_from_json(const nlohmann::json& j);

}  // namespace kleinian
