#pragma once

#include <json.hpp>

#include "fracgeom/geometry.hpp"
#include "fracgeom/interaction.hpp"
#include "fracgeom/set_descriptor.hpp"

namespace fracgeom {

using json = nlohmann::json;

json to_json(const SetDescriptor& s);
SetDescriptor set_from_json(const json& j);

json to_json(const BoxDomain& d);
BoxDomain domain_from_json(const json& j);

json to_json(const PerimeterReport& r);

}  // namespace fracgeom
