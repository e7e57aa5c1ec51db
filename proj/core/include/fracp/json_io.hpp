#pragma once

#include <json.hpp>

#include "fracp/eigensolver.hpp"
#include "fracp/nonlinear.hpp"
#include "fracp/verifiers.hpp"
#include "fracp/weight_classes.hpp"

namespace fracp {

// Serialized field names are part of the external interface; keep them fixed.

nlohmann::json to_json(const AdmissibilityCertificate& c);
nlohmann::json to_json(const Refusal& r);
nlohmann::json to_json(const EigenResult& r);
nlohmann::json to_json(const SolveResult& r);
nlohmann::json to_json(const HardyReport& r);
nlohmann::json to_json(const MoserCertificate& c);
nlohmann::json to_json(const ScalingReport& r);

}  // namespace fracp
