#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "xplan/grounding/model.hpp"

namespace xplan::planner {

using grounding::ActionId;
using grounding::GroundedModel;
using grounding::GroundState;

/// Optimal values by stage (steps to go), keyed by state index. Stage 0 is all zeros.
struct ValueTable {
    std::vector<std::unordered_map<std::uint64_t, double>> stages;

    int horizon() const { return static_cast<int>(stages.size()) - 1; }
    std::optional<double> value(int stage, std::uint64_t state) const;
};

/// Greedy actions by stage, keyed by state index; stage 0 is empty.
struct Policy {
    std::vector<std::unordered_map<std::uint64_t, ActionId>> stages;

    std::optional<ActionId> action(int stage, std::uint64_t state) const;
};

struct ViOptions {
    std::uint64_t state_cap = 1000000; // total (state, stage) entries
    int threads = 1;
};

struct ViResult {
    ValueTable values;
    Policy policy;
    std::uint64_t entries = 0; // (state, stage) pairs solved
};

/// Finite-horizon value iteration over the states reachable from the initial
/// state. Ties in the argmax go to the lowest action index. Results do not
/// depend on `threads`. Throws CapExceeded when the reachable (state, stage)
/// count exceeds options.state_cap.
ViResult value_iteration(const GroundedModel& model, const ViOptions& options = {});

struct Backup {
    double value = 0.0;
    ActionId action = grounding::kNoop;
};

/// One Bellman backup of `s` at `stage` (>= 1) against values.stages[stage - 1].
/// Throws PolicyError if a successor is missing from the table.
Backup bellman_backup(const GroundedModel& model, const ValueTable& values, int stage, const GroundState& s);

struct OracleOptions {
    std::uint64_t node_cap = 10000000;
    bool memoize = false;
};

struct OracleResult {
    double value = 0.0;
    std::uint64_t nodes = 0;
};

/// Exhaustive max/expectation recursion from `s0` for `horizon` steps.
/// Throws CapExceeded once more than options.node_cap nodes are visited.
OracleResult expectimax_oracle(const GroundedModel& model, const GroundState& s0, int horizon,
                               const OracleOptions& options = {});

struct PlanStep {
    int stage = 0; // steps to go when the action is taken
    GroundState state;
    ActionId action = grounding::kNoop;
    double reward = 0.0;
    GroundState next_state;
    double probability = 1.0; // of next_state given (state, action)
};

struct PlanTrace {
    std::vector<PlanStep> steps;
    double total_return = 0.0; // discounted
};

/// Chooses an action given the state and the number of steps to go.
using Actor = std::function<ActionId(const GroundState&, int stage)>;

enum class Successors { most_likely, sampled };

struct ExtractOptions {
    Successors mode = Successors::most_likely;
    std::uint64_t seed = 0; // sampled mode only
};

/// Follows `actor` from `s0` for the model's horizon. Most-likely mode takes the
/// highest-probability successor (lowest state index on ties); sampled mode
/// draws successors with sample_next.
PlanTrace rollout(const GroundedModel& model, const Actor& actor, const GroundState& s0,
                  const ExtractOptions& options = {});

/// rollout() driven by a policy; throws PolicyError at a state the policy does not cover.
PlanTrace extract_plan(const GroundedModel& model, const Policy& policy, const GroundState& s0,
                       const ExtractOptions& options = {});

Actor policy_actor(const GroundedModel& model, const Policy& policy);

} // namespace xplan::planner
