#pragma once

#include <json.hpp>

#include "opal/algebras.hpp"
#include "opal/fincat.hpp"
#include "opal/operads.hpp"
#include "opal/sites.hpp"

namespace opal {

using Json = nlohmann::json;

Json category_to_json(const FinCategory& c);
FinCategory category_from_json(const Json& j);

// site = category + either "orth" pair generators or "config" generators
Json orth_to_json(const OrthRelation& o);
Json config_to_json(const ConfiguredStructure& k);
OrthRelation orth_from_json(const Json& j, const FinCategory& c);
ConfiguredStructure config_from_json(const Json& j, const FinCategory& c);

Json operad_to_json(const SetOperad& o);
SetOperad operad_from_json(const Json& j);

Json algebra_to_json(const VectAlgebra& x);
VectAlgebra algebra_from_json(const Json& j, const SetOperad& o);

Json aqft_to_json(const AqftModel& m);
AqftModel aqft_from_json(const Json& j, const FinCategory& c);

Json matrix_to_json(const QMat& m);
QMat matrix_from_json(const Json& j);

Json report_to_json(const CheckReport& r);

}  // namespace opal
