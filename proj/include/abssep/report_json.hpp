#pragma once

#include "json.hpp"

#include "abssep/criteria.hpp"
#include "abssep/oracle.hpp"

namespace abssep {

nlohmann::json to_json(const CriterionOutcome& outcome);
CriterionOutcome outcome_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Report& report);
/// Inverse of to_json(Report); throws OutOfRange on a malformed document.
Report report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FalsifierResult& result);
nlohmann::json to_json(const XWitness& witness);

}  // namespace abssep
