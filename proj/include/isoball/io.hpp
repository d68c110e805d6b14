#pragma once

#include <json.hpp>

#include "isoball/maps.hpp"
#include "isoball/monodromy.hpp"
#include "isoball/solver.hpp"
#include "isoball/verify.hpp"

namespace isoball {

using json = nlohmann::ordered_json;

json to_json(cplx z);
cplx cplx_from_json(const json& j);

json to_json(const Series& s);
Series series_from_json(const json& j);

json to_json(const ProductSpace& space);
ProductSpace product_space_from_json(const json& j);

json to_json(const KernelSpec& spec);
KernelSpec kernel_spec_from_json(const json& j);

json to_json(const UnitaryMatrix& u);
UnitaryMatrix unitary_from_json(const json& j);

// Map descriptors: {"kind":"pth_root","p":4}, {"kind":"diagonal","p":3},
// {"kind":"sharp","outer":...,"inner":...,"slot":2},
// {"kind":"catalog","form":"bidisk-3","params":[0.3]},
// {"kind":"solved","zeta":[0.2,0]} or {"kind":"solved","unitary":[[...]]}.
IsometryMap map_from_json(const json& j, int order = kDefaultOrder);

json to_json(const SolvedIsometry& s);
json to_json(const ResidualReport& r);
json to_json(const PropernessReport& r);
json to_json(const CongruenceVerdict& v);
json to_json(const RigidityReport& r);
json to_json(const SheetingReport& r);

}  // namespace isoball
