#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "xplan/attributes.hpp"
#include "xplan/lang/ast.hpp"
#include "xplan/lang/validate.hpp"
#include "xplan/preference/profile.hpp"

namespace xplan::scenario {

/// Parameters of the robot-librarian delivery task: fetch a book from
/// book_location and hand it to the visitor, explaining itself if it runs late.
struct LibrarianConfig {
    std::vector<std::string> locations{"start_location", "book_location", "visitor_location"};
    std::string start = "start_location";
    std::string book = "book_location";
    std::string visitor = "visitor_location";
    /// Directed moves allowed; empty means every ordered pair of distinct locations.
    std::vector<std::pair<std::string, std::string>> adjacency;

    /// `late` holds from this step on (steps counted from 0).
    int deadline = 3;
    int horizon = 8;
    double discount = 1.0;

    double handover_reward = 10.0;
    double step_cost = 0.1;      // charged every step until the book is delivered
    double match_bonus = 1.0;    // per explanation attribute matching the preference
    double explain_reward = 0.0; // base reward of any explanation

    preference::PreferenceProfile profile;
    /// Initial preference values; defaults to the profile's most likely tuple.
    std::optional<ExplanationAttributes> initial_preferences;
    preference::UserContext initial_context = preference::UserContext::calm;

    ExplanationAttributes effective_initial_preferences() const;
};

/// Checks locations, roles, adjacency, deadline, rewards, the profile, and
/// that the horizon admits a delivery. Throws InputError.
void check_config(const LibrarianConfig& config);

/// Fewest steps to pick up the book and hand it over (moves + pick_up + hand_over);
/// nullopt if the visitor cannot be reached via book_location.
std::optional<int> minimal_plan_length(const LibrarianConfig& config);

struct LibrarianFiles {
    lang::DomainModel domain;
    lang::InstanceModel instance;
    std::string domain_text;
    std::string instance_text;
};

/// Generates the domain and instance. Only locations, deadline and whether the
/// profile is context-conditioned shape the domain; all numbers live in the
/// instance's non-fluents.
LibrarianFiles build_librarian(const LibrarianConfig& config);

/// Parses and validates the generated text.
lang::CheckedModel check_librarian(const LibrarianFiles& files);

/// Defaults for the worked example: deadline 3, horizon 5, frozen preferences
/// (visual, poor, long, global).
LibrarianConfig worked_example_config();

/// Keys: locations, start, book, visitor, adjacency ([[from, to], ...]),
/// deadline, horizon, discount, handover_reward, step_cost, match_bonus,
/// explain_reward, profile (see profile_from_json), initial_preferences
/// ({E_r, E_dl, E_d, E_s}), initial_context. Unknown keys throw InputError.
LibrarianConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const LibrarianConfig& config);

} // namespace xplan::scenario
