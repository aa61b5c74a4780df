#pragma once

#include <string>

#include <json.hpp>

#include "nodal/construct.hpp"
#include "nodal/normality.hpp"

namespace nodal {

using json = nlohmann::ordered_json;

// Point sets: {"field": "...", "ambient_dim": N,
//              "points": [{"label": ..., "coords": ["...", ...]}, ...]}
json to_json(const PointSet& points);
PointSet point_set_from_json(const json& j);

// Forms: {"dim": N, "degree": d, "terms": [{"exp": [...], "coeff": "..."}]}
// The field comes from the surrounding document.
json to_json(const HomogeneousForm& form);
HomogeneousForm form_from_json(const json& j, const FieldSpec& field);

// Instances: {"n": ..., "field": ..., "form": ... | null, "nodes": ...,
//             "provenance": ..., "notes": [...]}
json to_json(const NodalInstance& inst);
NodalInstance instance_from_json(const json& j);

json to_json(const NormalityReport& r);
json to_json(const FactorialityVerdict& v);
json to_json(const EkReport& r);
json to_json(const BeseReport& r);
json to_json(const PositionReport& r);
json to_json(const FuzzReport& r);
json to_json(const ConfigurationProfile& p);
json to_json(const SeparatorCertificate& c);

void save_json(const json& j, const std::string& path);
json load_json(const std::string& path);  // ParseError on bad input

void save_instance(const NodalInstance& inst, const std::string& path);
NodalInstance load_instance(const std::string& path);

}  // namespace nodal
