#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xplan/attributes.hpp"
#include "xplan/lang/validate.hpp"
#include "xplan/rng.hpp"

namespace xplan::grounding {

/// Partition of ground fluents. Robot and preference fluents together form the state.
enum class FluentRole { robot_state, preference_state, action, non_fluent };

std::string_view to_string(FluentRole r);

struct GroundFluent {
    std::string name;
    std::vector<std::string> args;
    FluentRole role = FluentRole::robot_state;
    int id = 0;    // dense, contiguous from 0 within `role`
    int slot = -1; // position in GroundState::values; state fluents only
    std::vector<std::string> value_names; // bool: {false,true}; enum: its values; empty for real

    int range() const { return static_cast<int>(value_names.size()); }
    /// `name` or `name(a, b)`
    std::string label() const;
};

struct GroundState {
    std::vector<int> values;

    auto operator<=>(const GroundState&) const = default;
    bool operator==(const GroundState&) const = default;
};

using ActionId = int;
inline constexpr ActionId kNoop = 0;

/// Binds an action argument to the preference fluent whose value set it ranges over.
struct PreferenceLink {
    int slot = -1;  // preference fluent's state slot
    int value = 0;  // value chosen by the action
    std::string fluent;
};

struct GroundAction {
    ActionId index = 0;
    std::string name; // template name, "noop" for the no-op
    std::vector<std::string> args;
    std::vector<int> arg_values;
    /// Set for `explain` actions whose arguments name one value of each attribute.
    std::optional<ExplanationAttributes> explanation;
    std::vector<PreferenceLink> preference_links;

    bool is_noop() const { return index == kNoop; }
    bool is_explain() const { return name == "explain"; }
    /// `noop`, `pick_up`, `move(start_location, book_location)`
    std::string label() const;
};

struct GroundOptions {
    std::uint64_t max_actions = 100000;
};

namespace detail {
class Program;
}

/// A factored MDP over enumerable states. Immutable after ground(); copies share
/// the compiled expression program and are safe to use from several threads.
class GroundedModel {
public:
    const std::vector<GroundFluent>& state_fluents() const { return state_fluents_; }
    const std::vector<GroundFluent>& non_fluents() const { return non_fluents_; }
    const std::vector<GroundAction>& actions() const { return actions_; }
    const GroundState& initial_state() const { return initial_state_; }
    int horizon() const { return horizon_; }
    double discount() const { return discount_; }
    const std::string& domain_name() const { return domain_name_; }
    const std::string& instance_name() const { return instance_name_; }

    /// Product of state-fluent ranges, if it fits in 63 bits.
    std::optional<std::uint64_t> state_count() const { return state_count_; }

    /// Mixed-radix index with slot 0 most significant. Requires state_count().
    std::uint64_t state_index(const GroundState& s) const;
    GroundState state_at(std::uint64_t index) const;

    bool is_valid(const GroundState& s) const;

    /// The no-op is always applicable; other actions must satisfy every precondition.
    bool applicable(const GroundState& s, ActionId a) const;
    std::vector<ActionId> applicable_actions(const GroundState& s) const;

    /// Distribution of one state fluent's next value given (s, a); `out` is resized
    /// to the fluent's range.
    void fluent_distribution(int slot, const GroundState& s, ActionId a, std::vector<double>& out) const;

    /// The value `slot` takes with certainty, or nullopt when its CPF is stochastic at (s, a).
    std::optional<int> deterministic_value(int slot, const GroundState& s, ActionId a) const;

    double reward(const GroundState& s, ActionId a) const;

    /// Numeric value of a ground non-fluent, by index into non_fluents().
    double non_fluent_value(std::size_t index) const { return non_fluent_values_.at(index); }

    /// Copy with a different horizon (dynamics unchanged).
    GroundedModel with_horizon(int horizon) const;

    std::string describe(const GroundState& s) const;

    /// Slot of a parameterless state fluent by name.
    std::optional<int> slot_of(const std::string& fluent) const;

private:
    friend GroundedModel ground(const lang::CheckedModel&, const GroundOptions&);

    std::string domain_name_;
    std::string instance_name_;
    std::vector<GroundFluent> state_fluents_;
    std::vector<GroundFluent> non_fluents_;
    std::vector<double> non_fluent_values_;
    std::vector<GroundAction> actions_;
    GroundState initial_state_;
    int horizon_ = 0;
    double discount_ = 1.0;
    std::optional<std::uint64_t> state_count_;
    std::vector<std::uint64_t> strides_;
    std::shared_ptr<const detail::Program> program_;
    std::vector<int> cpf_roots_;          // per slot
    int reward_root_ = -1;
    std::vector<int> precondition_roots_;
};

/// Expands the checked model over its objects and enum values. Throws CapExceeded
/// if the ground action count (including the no-op) exceeds options.max_actions.
GroundedModel ground(const lang::CheckedModel& model, const GroundOptions& options = {});

struct Successor {
    GroundState state;
    double probability = 0.0;
};

/// Exact joint next-state distribution: product of the per-fluent CPF
/// distributions, which are independent given (s, a). Successors appear in
/// ascending state-index order; exactly-zero probabilities are omitted.
std::vector<Successor> transition_distribution(const GroundedModel& model, const GroundState& s, ActionId a);

struct Sample {
    GroundState next;
    double reward = 0.0;
};

/// Draws the next state fluent by fluent; one uniform draw per stochastic
/// fluent, in slot order. Same law as transition_distribution.
Sample sample_next(const GroundedModel& model, const GroundState& s, ActionId a, Rng& rng);

double reward_of(const GroundedModel& model, const GroundState& s, ActionId a);

} // namespace xplan::grounding
