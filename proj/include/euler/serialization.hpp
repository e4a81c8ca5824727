#pragma once

#include <string>

#include <json.hpp>

#include "euler/agent.hpp"
#include "euler/environments.hpp"
#include "euler/harness.hpp"
#include "euler/mdp.hpp"

namespace euler {

// MDP schema: {"S","A","H","transitions":[[[p...]...]...],
//              "rewards":[[{"kind","mean"|"value"}...]...],"start":[...]}.
// Doubles round-trip exactly (shortest-representation encoding).
void to_json(nlohmann::json& j, const RewardModel& r);
void from_json(const nlohmann::json& j, RewardModel& r);
void to_json(nlohmann::json& j, const TabularMDP& mdp);
void from_json(const nlohmann::json& j, TabularMDP& mdp);

// EnvSpec schema: tagged by "kind" in
// {"chain","bandit","det-chain","sparse","random"}.
void to_json(nlohmann::json& j, const EnvSpec& spec);
void from_json(const nlohmann::json& j, EnvSpec& spec);

// Config schema mirrors ExperimentConfig field names.
void to_json(nlohmann::json& j, const ExperimentConfig& config);
void from_json(const nlohmann::json& j, ExperimentConfig& config);

// Checkpoint/inspection dumps.
void to_json(nlohmann::json& j, const SufficientStats& stats);
void from_json(const nlohmann::json& j, SufficientStats& stats);
void to_json(nlohmann::json& j, const ValueBracket& bracket);
void from_json(const nlohmann::json& j, ValueBracket& bracket);

/// Diagnostics document emitted next to every trace:
/// {"environmental_norm","max_return","successor_range","value_range",
///  "bound_problem_dep","bound_max_return","bound_worst_case","constants":{...}}
nlohmann::json diagnostics_json(const MdpDiagnostics& d, const BoundValues& b,
                                const BonusConstants& c);

} // namespace euler
