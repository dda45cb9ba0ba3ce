#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "xplan/attributes.hpp"
#include "xplan/lang/ast.hpp"

namespace xplan::preference {

enum class UserContext { calm, confused, stressed };

inline constexpr std::array<UserContext, 3> kAllContexts{UserContext::calm, UserContext::confused,
                                                         UserContext::stressed};

std::string_view to_string(UserContext c);
std::optional<UserContext> parse_context(std::string_view s);

/// One probability per attribute; the complementary value gets 1 - p.
struct AttributeProbabilities {
    double p_textual = 0.3; // P(E_r = textual)
    double p_rich = 0.3;    // P(E_dl = rich)
    double p_short = 0.3;   // P(E_d = short)
    double p_local = 0.3;   // P(E_s = local)

    bool operator==(const AttributeProbabilities&) const = default;
};

struct PreferenceProfile {
    AttributeProbabilities base;
    double persistence = 0.9;
    /// Per-context overrides. Contexts absent from a non-empty table fall back to `base`.
    std::map<UserContext, AttributeProbabilities> context_table;

    bool operator==(const PreferenceProfile&) const = default;

    const AttributeProbabilities& probabilities(UserContext c) const;
    bool context_conditioned() const { return !context_table.empty(); }
};

/// Throws InputError naming the first parameter outside [0,1].
void check_profile(const PreferenceProfile& profile);

/// confused: p_rich and p_textual halfway to 1; stressed: p_short halfway to 1; calm: base.
std::map<UserContext, AttributeProbabilities> default_context_table(const AttributeProbabilities& base);

/// Static description of one preference fluent.
struct PreferenceAttribute {
    std::string fluent;                // "E_r"
    std::array<std::string, 2> values; // declaration order
    int favoured = 0;                  // index of the value the stored probability refers to
    std::string parameter;             // non-fluent name, "p_textual"
};

/// E_r, E_dl, E_d, E_s in that order.
const std::array<PreferenceAttribute, 4>& preference_attributes();

double probability_of(const AttributeProbabilities& p, std::size_t attribute);

/// The value each attribute takes most likely (ties at 0.5 resolve to the favoured value).
ExplanationAttributes most_likely(const AttributeProbabilities& p);

inline constexpr const char* kContextFluent = "user_context";
inline constexpr const char* kContextType = "context_t";
inline constexpr const char* kPersistenceParameter = "persistence";

/// `p_textual_ctx` for `p_textual`.
std::string context_parameter(const std::string& parameter);

// Domain fragments. The four preference fluents are declared in cstate form
// (enum type plus state fluent of the same name); the probability parameters
// are real non-fluents so instances can retune them.
std::vector<lang::EnumDecl> preference_enums();
std::vector<lang::FluentDecl> preference_fluents();
lang::EnumDecl context_enum();
lang::FluentDecl context_fluent();
/// Defaults are those of a default-constructed profile, so the domain text does
/// not depend on the numbers an instance assigns.
std::vector<lang::FluentDecl> preference_parameter_decls(bool context_conditioned);

/// Drift CPFs: keep the current value with probability `persistence`, otherwise
/// redraw from the attribute's Bernoulli parameter (selected by user context
/// when the profile is context-conditioned).
std::vector<lang::Cpf> emit_preference_cpfs(const PreferenceProfile& profile);

std::vector<lang::Assignment> nonfluent_assignments(const PreferenceProfile& profile);

/// A complete `non-fluents { ... };` block.
std::string emit_nonfluents(const PreferenceProfile& profile);

/// Sum over attributes of bonus * P(preference == chosen value).
double expected_match_reward(const PreferenceProfile& profile, const ExplanationAttributes& attrs,
                             double bonus_per_attribute);
double expected_match_reward(const PreferenceProfile& profile, UserContext context,
                             const ExplanationAttributes& attrs, double bonus_per_attribute);

/// Keys: p_textual, p_rich, p_short, p_local, persistence, contexts.{calm,confused,stressed}.
/// Missing keys keep their defaults; unknown keys and out-of-range values throw InputError.
PreferenceProfile profile_from_json(const nlohmann::json& j);
nlohmann::json profile_to_json(const PreferenceProfile& profile);

} // namespace xplan::preference
