#include <algorithm>
#include <thread>
#include <unordered_set>

#include "xplan/errors.hpp"
#include "xplan/planner/planner.hpp"

namespace xplan::planner {

std::optional<double> ValueTable::value(int stage, std::uint64_t state) const {
    if (stage < 0 || stage >= static_cast<int>(stages.size())) return std::nullopt;
    const auto& m = stages[static_cast<std::size_t>(stage)];
    auto it = m.find(state);
    if (it == m.end()) return std::nullopt;
    return it->second;
}

std::optional<ActionId> Policy::action(int stage, std::uint64_t state) const {
    if (stage < 0 || stage >= static_cast<int>(stages.size())) return std::nullopt;
    const auto& m = stages[static_cast<std::size_t>(stage)];
    auto it = m.find(state);
    if (it == m.end()) return std::nullopt;
    return it->second;
}

namespace {

std::uint64_t checked_index(const GroundedModel& model, const GroundState& s) {
    if (!model.state_count()) {
        throw CapExceeded("state space", UINT64_MAX, static_cast<std::uint64_t>(INT64_MAX));
    }
    return model.state_index(s);
}

/// Runs fn(i) for i in [0, n) on up to `threads` workers; each index is
/// handled exactly once and results go to caller-owned slots.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn fn) {
    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

} // namespace

Backup bellman_backup(const GroundedModel& model, const ValueTable& values, int stage, const GroundState& s) {
    const auto& next_values = values.stages.at(static_cast<std::size_t>(stage - 1));
    Backup best;
    bool first = true;
    for (ActionId a : model.applicable_actions(s)) {
        double q = model.reward(s, a);
        double future = 0.0;
        for (const auto& succ : grounding::transition_distribution(model, s, a)) {
            auto it = next_values.find(model.state_index(succ.state));
            if (it == next_values.end()) {
                throw PolicyError("no stage-" + std::to_string(stage - 1) + " value for successor " +
                                  model.describe(succ.state));
            }
            future += succ.probability * it->second;
        }
        q += model.discount() * future;
        if (first || q > best.value) {
            best = {q, a};
            first = false;
        }
    }
    return best;
}

ViResult value_iteration(const GroundedModel& model, const ViOptions& options) {
    const int h = std::max(model.horizon(), 0);
    ViResult out;
    out.values.stages.resize(static_cast<std::size_t>(h) + 1);
    out.policy.stages.resize(static_cast<std::size_t>(h) + 1);

    // layers[t]: sorted indices of states reachable after exactly t steps.
    std::vector<std::vector<std::uint64_t>> layers(static_cast<std::size_t>(h) + 1);
    layers[0].push_back(checked_index(model, model.initial_state()));
    std::uint64_t entries = 1;
    for (int t = 0; t < h; ++t) {
        const auto& cur = layers[static_cast<std::size_t>(t)];
        std::vector<std::vector<std::uint64_t>> found(cur.size());
        parallel_for(cur.size(), options.threads, [&](std::size_t i) {
            GroundState s = model.state_at(cur[i]);
            for (ActionId a : model.applicable_actions(s)) {
                for (const auto& succ : grounding::transition_distribution(model, s, a)) {
                    found[i].push_back(model.state_index(succ.state));
                }
            }
        });
        std::unordered_set<std::uint64_t> seen;
        auto& next = layers[static_cast<std::size_t>(t) + 1];
        for (const auto& f : found) {
            for (std::uint64_t idx : f) {
                if (!seen.insert(idx).second) continue;
                next.push_back(idx);
                if (++entries > options.state_cap) throw CapExceeded("state-stage", entries, options.state_cap);
            }
        }
        std::sort(next.begin(), next.end());
    }
    out.entries = entries;

    for (std::uint64_t idx : layers[static_cast<std::size_t>(h)]) out.values.stages[0][idx] = 0.0;
    for (int stage = 1; stage <= h; ++stage) {
        const auto& layer = layers[static_cast<std::size_t>(h - stage)];
        std::vector<Backup> results(layer.size());
        parallel_for(layer.size(), options.threads, [&](std::size_t i) {
            results[i] = bellman_backup(model, out.values, stage, model.state_at(layer[i]));
        });
        auto& v = out.values.stages[static_cast<std::size_t>(stage)];
        auto& p = out.policy.stages[static_cast<std::size_t>(stage)];
        v.reserve(layer.size());
        p.reserve(layer.size());
        for (std::size_t i = 0; i < layer.size(); ++i) {
            v[layer[i]] = results[i].value;
            p[layer[i]] = results[i].action;
        }
    }
    return out;
}

} // namespace xplan::planner
