#pragma once

#include <cmath>
#include <cstdint>

#include "xplan/planner/planner.hpp"

namespace xplan::planner {

struct UctOptions {
    double exploration = std::sqrt(2.0);
};

/// Monte-Carlo tree search from `s` with `stage` steps to go. Each of the
/// `budget` simulations descends by UCB1 (untried actions first, in index
/// order; mean returns rescaled to [0,1] by the node's observed return range),
/// expands one node, and finishes with a uniformly random rollout over
/// applicable actions. Returns the most visited root action, lowest index on
/// ties. Deterministic in (model, s, stage, budget, seed).
ActionId sampling_plan(const GroundedModel& model, const GroundState& s, int stage, std::uint64_t budget,
                       std::uint64_t seed, const UctOptions& options = {});

/// Actor that replans at every step with seed derive_seed(seed, stage).
Actor uct_actor(const GroundedModel& model, std::uint64_t budget, std::uint64_t seed,
                const UctOptions& options = {});

} // namespace xplan::planner
