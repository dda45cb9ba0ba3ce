#include "xplan/errors.hpp"
#include "xplan/planner/planner.hpp"

namespace xplan::planner {

PlanTrace rollout(const GroundedModel& model, const Actor& actor, const GroundState& s0,
                  const ExtractOptions& options) {
    PlanTrace trace;
    Rng rng(options.seed);
    GroundState s = s0;
    double weight = 1.0;
    for (int stage = model.horizon(); stage >= 1; --stage) {
        PlanStep step;
        step.stage = stage;
        step.state = s;
        step.action = actor(s, stage);
        if (!model.applicable(s, step.action)) {
            throw PolicyError("action " + model.actions().at(static_cast<std::size_t>(step.action)).label() +
                              " is not applicable in " + model.describe(s));
        }
        if (options.mode == Successors::sampled) {
            grounding::Sample smp = grounding::sample_next(model, s, step.action, rng);
            step.reward = smp.reward;
            step.next_state = std::move(smp.next);
            step.probability = -1.0;
            for (const auto& succ : grounding::transition_distribution(model, s, step.action)) {
                if (succ.state == step.next_state) step.probability = succ.probability;
            }
        } else {
            step.reward = model.reward(s, step.action);
            auto dist = grounding::transition_distribution(model, s, step.action);
            const grounding::Successor* best = &dist.front();
            for (const auto& succ : dist) {
                if (succ.probability > best->probability) best = &succ;
            }
            step.next_state = best->state;
            step.probability = best->probability;
        }
        trace.total_return += weight * step.reward;
        weight *= model.discount();
        s = step.next_state;
        trace.steps.push_back(std::move(step));
    }
    return trace;
}

Actor policy_actor(const GroundedModel& model, const Policy& policy) {
    return [&model, &policy](const GroundState& s, int stage) {
        auto a = policy.action(stage, model.state_index(s));
        if (!a) {
            throw PolicyError("policy has no action for " + model.describe(s) + " with " + std::to_string(stage) +
                              " steps to go");
        }
        return *a;
    };
}

PlanTrace extract_plan(const GroundedModel& model, const Policy& policy, const GroundState& s0,
                       const ExtractOptions& options) {
    return rollout(model, policy_actor(model, policy), s0, options);
}

} // namespace xplan::planner
