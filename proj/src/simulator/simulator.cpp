#include "xplan/simulator/simulator.hpp"

#include <cmath>
#include <memory>
#include <thread>

#include "xplan/errors.hpp"

namespace xplan::simulator {

ActorFactory policy_actor(const GroundedModel& model, const planner::Policy& policy) {
    return [&model, &policy](std::uint64_t) { return planner::policy_actor(model, policy); };
}

ActorFactory uct_actor(const GroundedModel& model, std::uint64_t budget, const planner::UctOptions& options) {
    return [&model, budget, options](std::uint64_t seed) { return planner::uct_actor(model, budget, seed, options); };
}

ActorFactory random_actor(const GroundedModel& model) {
    return [&model](std::uint64_t seed) {
        auto rng = std::make_shared<Rng>(seed);
        return planner::Actor([&model, rng](const grounding::GroundState& s, int) {
            auto actions = model.applicable_actions(s);
            return actions[uniform_index(*rng, actions.size())];
        });
    };
}

EpisodeReport run_episode(const GroundedModel& model, const ActorFactory& actor, std::uint64_t seed) {
    EpisodeReport out;
    out.seed = seed;
    planner::ExtractOptions opts{planner::Successors::sampled, seed};
    out.trace = planner::rollout(model, actor(derive_seed(seed, 1)), model.initial_state(), opts);
    out.total_return = out.trace.total_return;
    for (std::size_t i = 0; i < out.trace.steps.size(); ++i) {
        const auto& step = out.trace.steps[i];
        const auto& action = model.actions()[static_cast<std::size_t>(step.action)];
        if (!action.is_explain()) continue;
        out.explain_step = i;
        for (const auto& link : action.preference_links) {
            out.matches.push_back(step.state.values[static_cast<std::size_t>(link.slot)] == link.value);
        }
        break;
    }
    return out;
}

BatchReport evaluate_policy(const GroundedModel& model, const ActorFactory& actor, std::size_t n,
                            std::uint64_t base_seed, int threads) {
    if (n == 0) throw InputError("episode count must be at least 1");
    BatchReport out;
    out.base_seed = base_seed;
    for (std::size_t i = 0; i < n; ++i) out.seeds.push_back(derive_seed(base_seed, i));

    std::vector<EpisodeReport> episodes(n);
    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), n);
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](std::size_t w) {
        try {
            for (std::size_t i = w; i < n; i += workers) episodes[i] = run_episode(model, actor, out.seeds[i]);
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    // Link names from the first explain action in the model.
    for (const auto& a : model.actions()) {
        if (!a.is_explain()) continue;
        for (const auto& l : a.preference_links) out.match_fluents.push_back(l.fluent);
        break;
    }
    std::vector<double> hits(out.match_fluents.size(), 0.0);
    double sum = 0.0;
    for (const auto& e : episodes) {
        out.returns.push_back(e.total_return);
        out.explain_steps.push_back(e.explain_step);
        out.matches.push_back(e.matches);
        sum += e.total_return;
        if (!e.explain_step) continue;
        ++out.explained_episodes;
        for (std::size_t k = 0; k < e.matches.size() && k < hits.size(); ++k) hits[k] += e.matches[k] ? 1.0 : 0.0;
    }
    out.mean_return = sum / static_cast<double>(n);
    if (n > 1) {
        double ss = 0.0;
        for (double r : out.returns) ss += (r - out.mean_return) * (r - out.mean_return);
        out.stddev = std::sqrt(ss / static_cast<double>(n - 1));
    }
    for (double h : hits) {
        out.match_rates.push_back(out.explained_episodes ? h / static_cast<double>(out.explained_episodes) : 0.0);
    }
    return out;
}

} // namespace xplan::simulator
