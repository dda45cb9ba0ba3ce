#include <map>

#include "xplan/errors.hpp"
#include "xplan/planner/planner.hpp"

namespace xplan::planner {

namespace {

class Expectimax {
public:
    Expectimax(const GroundedModel& model, const OracleOptions& options) : model_(model), options_(options) {}

    double value(const GroundState& s, int steps) {
        if (++nodes_ > options_.node_cap) throw CapExceeded("oracle node", nodes_, options_.node_cap);
        if (steps <= 0) return 0.0;
        std::map<GroundState, double>* memo = nullptr;
        if (options_.memoize) {
            memo = &memo_[steps];
            auto it = memo->find(s);
            if (it != memo->end()) return it->second;
        }
        double best = 0.0;
        bool first = true;
        for (ActionId a : model_.applicable_actions(s)) {
            double q = model_.reward(s, a);
            double future = 0.0;
            for (const auto& succ : grounding::transition_distribution(model_, s, a)) {
                future += succ.probability * value(succ.state, steps - 1);
            }
            q += model_.discount() * future;
            if (first || q > best) {
                best = q;
                first = false;
            }
        }
        if (memo) (*memo)[s] = best;
        return best;
    }

    std::uint64_t nodes() const { return nodes_; }

private:
    const GroundedModel& model_;
    OracleOptions options_;
    std::uint64_t nodes_ = 0;
    std::map<int, std::map<GroundState, double>> memo_;
};

} // namespace

OracleResult expectimax_oracle(const GroundedModel& model, const GroundState& s0, int horizon,
                               const OracleOptions& options) {
    Expectimax search(model, options);
    OracleResult out;
    out.value = search.value(s0, horizon);
    out.nodes = search.nodes();
    return out;
}

} // namespace xplan::planner
