#include "xplan/planner/uct.hpp"

#include <algorithm>
#include <map>

namespace xplan::planner {

namespace {

struct TreeNode {
    std::vector<ActionId> actions; // applicable, ascending
    std::vector<std::uint64_t> counts;
    std::vector<double> totals;
    std::uint64_t visits = 0;
    std::size_t untried = 0; // actions[untried..] have never been taken
    double min_return = 0.0;  // over all returns backed up through this node
    double max_return = 0.0;
    std::map<std::pair<std::size_t, GroundState>, std::size_t> children;
};

class Uct {
public:
    Uct(const GroundedModel& model, std::uint64_t seed, const UctOptions& options)
        : model_(model), rng_(seed), options_(options) {}

    ActionId search(const GroundState& root, int stage, std::uint64_t budget) {
        if (stage <= 0) return grounding::kNoop;
        nodes_.clear();
        nodes_.push_back(make_node(root));
        for (std::uint64_t i = 0; i < budget; ++i) simulate(root, stage);

        const TreeNode& r = nodes_.front();
        std::size_t best = 0;
        for (std::size_t k = 1; k < r.actions.size(); ++k) {
            if (r.counts[k] > r.counts[best]) best = k;
        }
        return r.actions[best];
    }

private:
    struct Edge {
        std::size_t node;
        std::size_t slot;
        double reward;
    };

    TreeNode make_node(const GroundState& s) const {
        TreeNode n;
        n.actions = model_.applicable_actions(s);
        n.counts.assign(n.actions.size(), 0);
        n.totals.assign(n.actions.size(), 0.0);
        return n;
    }

    std::size_t select(const TreeNode& n) const {
        double log_n = std::log(static_cast<double>(n.visits));
        // Means rescaled to [0,1] by the node's observed return range, so the
        // exploration constant has the same meaning for any reward scale.
        double span = n.max_return - n.min_return;
        std::size_t best = 0;
        double best_score = 0.0;
        for (std::size_t k = 0; k < n.actions.size(); ++k) {
            double count = static_cast<double>(n.counts[k]);
            double mean = n.totals[k] / count;
            double exploit = span > 0.0 ? (mean - n.min_return) / span : 0.0;
            double score = exploit + options_.exploration * std::sqrt(log_n / count);
            if (k == 0 || score > best_score) {
                best = k;
                best_score = score;
            }
        }
        return best;
    }

    double random_rollout(GroundState s, int steps) {
        double total = 0.0;
        double weight = 1.0;
        for (; steps > 0; --steps) {
            auto actions = model_.applicable_actions(s);
            ActionId a = actions[uniform_index(rng_, actions.size())];
            grounding::Sample smp = grounding::sample_next(model_, s, a, rng_);
            total += weight * smp.reward;
            weight *= model_.discount();
            s = std::move(smp.next);
        }
        return total;
    }

    void simulate(const GroundState& root, int stage) {
        std::vector<Edge> path;
        std::size_t node = 0;
        GroundState s = root;
        int steps = stage;
        double tail = 0.0;
        while (steps > 0) {
            bool fresh = nodes_[node].untried < nodes_[node].actions.size();
            std::size_t slot = fresh ? nodes_[node].untried++ : select(nodes_[node]);
            ActionId a = nodes_[node].actions[slot];
            grounding::Sample smp = grounding::sample_next(model_, s, a, rng_);
            path.push_back({node, slot, smp.reward});
            s = std::move(smp.next);
            --steps;
            if (steps == 0) break;

            auto key = std::make_pair(slot, s);
            auto it = nodes_[node].children.find(key);
            if (it != nodes_[node].children.end() && !fresh) {
                node = it->second;
                continue;
            }
            if (it == nodes_[node].children.end()) {
                std::size_t child = nodes_.size();
                nodes_.push_back(make_node(s));
                nodes_[node].children.emplace(std::move(key), child);
            }
            tail = random_rollout(s, steps);
            break;
        }
        double g = tail;
        for (auto e = path.rbegin(); e != path.rend(); ++e) {
            g = e->reward + model_.discount() * g;
            TreeNode& n = nodes_[e->node];
            if (n.visits == 0) {
                n.min_return = n.max_return = g;
            } else {
                n.min_return = std::min(n.min_return, g);
                n.max_return = std::max(n.max_return, g);
            }
            ++n.visits;
            ++n.counts[e->slot];
            n.totals[e->slot] += g;
        }
    }

    const GroundedModel& model_;
    Rng rng_;
    UctOptions options_;
    std::vector<TreeNode> nodes_;
};

} // namespace

ActionId sampling_plan(const GroundedModel& model, const GroundState& s, int stage, std::uint64_t budget,
                       std::uint64_t seed, const UctOptions& options) {
    Uct uct(model, seed, options);
    return uct.search(s, stage, std::max<std::uint64_t>(budget, 1));
}

Actor uct_actor(const GroundedModel& model, std::uint64_t budget, std::uint64_t seed, const UctOptions& options) {
    return [&model, budget, seed, options](const GroundState& s, int stage) {
        return sampling_plan(model, s, stage, budget, derive_seed(seed, static_cast<std::uint64_t>(stage)), options);
    };
}

} // namespace xplan::planner
