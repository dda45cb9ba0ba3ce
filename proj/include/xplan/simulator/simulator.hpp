#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "xplan/planner/planner.hpp"
#include "xplan/planner/uct.hpp"

namespace xplan::simulator {

using grounding::GroundedModel;

/// Builds the actor for one episode from that episode's actor seed, so
/// stateful actors (random, UCT) never share generators across episodes.
using ActorFactory = std::function<planner::Actor(std::uint64_t actor_seed)>;

ActorFactory policy_actor(const GroundedModel& model, const planner::Policy& policy);
ActorFactory uct_actor(const GroundedModel& model, std::uint64_t budget, const planner::UctOptions& options = {});
/// Uniform over applicable actions.
ActorFactory random_actor(const GroundedModel& model);

struct EpisodeReport {
    std::uint64_t seed = 0;
    planner::PlanTrace trace;
    double total_return = 0.0;
    /// Step index of the first explanation, if any.
    std::optional<std::size_t> explain_step;
    /// Per linked preference fluent (E_r, E_dl, E_d, E_s for the librarian):
    /// whether the explanation chose the value the fluent held when it was given.
    std::vector<bool> matches;
};

/// One horizon-length episode. Successors are drawn with Rng(seed); the actor
/// is built from derive_seed(seed, 1).
EpisodeReport run_episode(const GroundedModel& model, const ActorFactory& actor, std::uint64_t seed);

struct BatchReport {
    std::uint64_t base_seed = 0;
    std::vector<std::uint64_t> seeds; // seeds[i] = derive_seed(base_seed, i)
    std::vector<double> returns;
    std::vector<std::optional<std::size_t>> explain_steps;
    std::vector<std::vector<bool>> matches;
    double mean_return = 0.0;
    double stddev = 0.0; // sample standard deviation; 0 for one episode
    std::size_t explained_episodes = 0;
    std::vector<std::string> match_fluents;
    std::vector<double> match_rates; // over episodes with an explanation

    std::size_t episodes() const { return returns.size(); }
};

/// Runs n >= 1 episodes; with threads > 1 episodes run concurrently but the
/// report is identical to the sequential one.
BatchReport evaluate_policy(const GroundedModel& model, const ActorFactory& actor, std::size_t n,
                            std::uint64_t base_seed, int threads = 1);

} // namespace xplan::simulator
