#pragma once

#include <json.hpp>

#include "crgeom/exterior/form.hpp"
#include "crgeom/exterior/vector_field.hpp"

namespace crgeom::exterior {

/// {"degree": k, "terms": [{"index": ["dt", "dz1"], "coeff": "<expr>"}]}
nlohmann::json form_to_json(const Form& w);
Form form_from_json(const nlohmann::json& j, int arity);

nlohmann::json field_to_json(const VectorField& x);

}  // namespace crgeom::exterior
