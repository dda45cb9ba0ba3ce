#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "xplan/grounding/model.hpp"
#include "xplan/planner/planner.hpp"
#include "xplan/simulator/simulator.hpp"

namespace xplan::io {

/// Whole-file read/write; failures throw IoError naming the path.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

/// Fluents, actions and initial state; per-(s, a) rewards and successor
/// distributions are included when the state space has at most
/// `max_transition_states` states.
nlohmann::json ground_dump(const grounding::GroundedModel& model, std::uint64_t max_transition_states = 4096);

/// {"fluent label": "value name", ...} in slot order.
nlohmann::json state_json(const grounding::GroundedModel& model, const grounding::GroundState& s);

nlohmann::json plan_json(const grounding::GroundedModel& model, const planner::PlanTrace& trace);
/// One compact JSON object per step.
std::string plan_jsonl(const grounding::GroundedModel& model, const planner::PlanTrace& trace);
/// Header comment plus one `step  reward  action` line per step.
std::string plan_text(const grounding::GroundedModel& model, const planner::PlanTrace& trace);

/// {"stages": {"<stage>": {"<state index>": {"action": ..., "index": ...}}}}
nlohmann::json policy_json(const grounding::GroundedModel& model, const planner::Policy& policy);
/// {"stages": {"<stage>": {"<state index>": value}}}
nlohmann::json values_json(const planner::ValueTable& values);

nlohmann::json batch_json(const simulator::BatchReport& report);
/// episode,seed,return,explain_step,match_<fluent>... one row per episode.
std::string batch_csv(const simulator::BatchReport& report);

/// `value` printed in the shortest form that reads back exactly.
std::string number(double value);

} // namespace xplan::io
