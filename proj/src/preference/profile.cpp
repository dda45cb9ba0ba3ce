#include "xplan/preference/profile.hpp"

#include <cmath>

#include "xplan/errors.hpp"
#include "xplan/lang/printer.hpp"

namespace xplan::preference {

namespace mk = lang::make;

std::string_view to_string(UserContext c) {
    switch (c) {
    case UserContext::calm: return "calm";
    case UserContext::confused: return "confused";
    case UserContext::stressed: return "stressed";
    }
    return "?";
}

std::optional<UserContext> parse_context(std::string_view s) {
    for (UserContext c : kAllContexts) {
        if (to_string(c) == s) return c;
    }
    return std::nullopt;
}

const AttributeProbabilities& PreferenceProfile::probabilities(UserContext c) const {
    auto it = context_table.find(c);
    return it == context_table.end() ? base : it->second;
}

namespace {

void check_probability(double p, const std::string& what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InputError(what + " = " + lang::format_number(p) + " is not a probability in [0,1]");
    }
}

void check_probabilities(const AttributeProbabilities& p, const std::string& prefix) {
    check_probability(p.p_textual, prefix + "p_textual");
    check_probability(p.p_rich, prefix + "p_rich");
    check_probability(p.p_short, prefix + "p_short");
    check_probability(p.p_local, prefix + "p_local");
}

double halfway_to_one(double p) { return p + (1.0 - p) / 2.0; }

} // namespace

void check_profile(const PreferenceProfile& profile) {
    check_probabilities(profile.base, "");
    check_probability(profile.persistence, "persistence");
    for (const auto& [ctx, p] : profile.context_table) {
        check_probabilities(p, "contexts." + std::string(to_string(ctx)) + ".");
    }
}

std::map<UserContext, AttributeProbabilities> default_context_table(const AttributeProbabilities& base) {
    AttributeProbabilities confused = base;
    confused.p_rich = halfway_to_one(base.p_rich);
    confused.p_textual = halfway_to_one(base.p_textual);
    AttributeProbabilities stressed = base;
    stressed.p_short = halfway_to_one(base.p_short);
    return {{UserContext::calm, base}, {UserContext::confused, confused}, {UserContext::stressed, stressed}};
}

const std::array<PreferenceAttribute, 4>& preference_attributes() {
    static const std::array<PreferenceAttribute, 4> attrs{{
        {"E_r", {"textual", "visual"}, 0, "p_textual"},
        {"E_dl", {"rich", "poor"}, 0, "p_rich"},
        {"E_d", {"long", "short"}, 1, "p_short"},
        {"E_s", {"local", "global"}, 0, "p_local"},
    }};
    return attrs;
}

double probability_of(const AttributeProbabilities& p, std::size_t attribute) {
    switch (attribute) {
    case 0: return p.p_textual;
    case 1: return p.p_rich;
    case 2: return p.p_short;
    case 3: return p.p_local;
    }
    throw std::out_of_range("attribute index");
}

namespace {

/// Index (0 or 1) of the value `attrs` picks for attribute i.
int chosen_index(const ExplanationAttributes& attrs, std::size_t i) {
    switch (i) {
    case 0: return static_cast<int>(attrs.representation);
    case 1: return static_cast<int>(attrs.detail);
    case 2: return static_cast<int>(attrs.duration);
    default: return static_cast<int>(attrs.scope);
    }
}

} // namespace

ExplanationAttributes most_likely(const AttributeProbabilities& p) {
    const auto& attrs = preference_attributes();
    std::array<int, 4> idx{};
    for (std::size_t i = 0; i < 4; ++i) {
        int fav = attrs[i].favoured;
        idx[i] = probability_of(p, i) >= 0.5 ? fav : 1 - fav;
    }
    return ExplanationAttributes{static_cast<Representation>(idx[0]), static_cast<Detail>(idx[1]),
                                 static_cast<Duration>(idx[2]), static_cast<Scope>(idx[3])};
}

std::string context_parameter(const std::string& parameter) { return parameter + "_ctx"; }

std::vector<lang::EnumDecl> preference_enums() {
    std::vector<lang::EnumDecl> out;
    for (const auto& a : preference_attributes()) {
        lang::EnumDecl e;
        e.name = a.fluent;
        e.values = {a.values[0], a.values[1]};
        e.from_state_block = true;
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<lang::FluentDecl> preference_fluents() {
    std::vector<lang::FluentDecl> out;
    for (const auto& a : preference_attributes()) {
        lang::FluentDecl f;
        f.name = a.fluent;
        f.kind = lang::FluentKind::state;
        f.type = {lang::ValueKind::enumeration, a.fluent};
        f.default_value = lang::EnumLiteral{a.values[0]};
        f.preference = true;
        out.push_back(std::move(f));
    }
    return out;
}

lang::EnumDecl context_enum() {
    lang::EnumDecl e;
    e.name = kContextType;
    for (UserContext c : kAllContexts) e.values.emplace_back(to_string(c));
    return e;
}

lang::FluentDecl context_fluent() {
    lang::FluentDecl f;
    f.name = kContextFluent;
    f.kind = lang::FluentKind::state;
    f.type = {lang::ValueKind::enumeration, kContextType};
    f.default_value = lang::EnumLiteral{"calm"};
    return f;
}

namespace {

lang::FluentDecl real_nonfluent(std::string name, double dflt, std::vector<std::string> params = {}) {
    lang::FluentDecl f;
    f.name = std::move(name);
    f.kind = lang::FluentKind::non_fluent;
    f.type = {lang::ValueKind::real, ""};
    f.params = std::move(params);
    f.default_value = dflt;
    return f;
}

} // namespace

std::vector<lang::FluentDecl> preference_parameter_decls(bool context_conditioned) {
    const PreferenceProfile defaults;
    std::vector<lang::FluentDecl> out;
    for (std::size_t i = 0; i < 4; ++i) {
        out.push_back(real_nonfluent(preference_attributes()[i].parameter, probability_of(defaults.base, i)));
    }
    out.push_back(real_nonfluent(kPersistenceParameter, defaults.persistence));
    if (context_conditioned) {
        for (std::size_t i = 0; i < 4; ++i) {
            out.push_back(real_nonfluent(context_parameter(preference_attributes()[i].parameter),
                                         probability_of(defaults.base, i), {kContextType}));
        }
    }
    return out;
}

namespace {

/// `if (E == @v0) then Discrete(E, ...) else Discrete(E, ...)` with the
/// redraw probability of the favoured value given by `p`.
lang::ExprPtr drift(const PreferenceAttribute& a, const lang::ExprPtr& p) {
    auto keep = mk::fluent(kPersistenceParameter);
    auto move = mk::sub(mk::number(1.0), mk::fluent(kPersistenceParameter));
    auto p_fav = p;
    auto p_other = mk::sub(mk::number(1.0), p);
    // Probability of value k when redrawing.
    auto redraw = [&](int k) { return k == a.favoured ? p_fav : p_other; };

    auto from = [&](int current) {
        std::vector<lang::DiscreteBranch> branches;
        for (int k = 0; k < 2; ++k) {
            lang::ExprPtr moved = mk::mul(move, redraw(k));
            branches.push_back({a.values[static_cast<std::size_t>(k)], k == current ? mk::add(keep, moved) : moved});
        }
        return mk::discrete(a.fluent, std::move(branches));
    };
    return mk::if_then_else(mk::eq(mk::fluent(a.fluent), mk::enum_value(a.values[0])), from(0), from(1));
}

} // namespace

std::vector<lang::Cpf> emit_preference_cpfs(const PreferenceProfile& profile) {
    std::vector<lang::Cpf> out;
    for (const auto& a : preference_attributes()) {
        lang::Cpf cpf;
        cpf.target = a.fluent;
        if (!profile.context_conditioned()) {
            cpf.body = drift(a, mk::fluent(a.parameter));
        } else {
            // Nested on the context so each Discrete has constant parameters.
            auto ctx_drift = [&](UserContext c) {
                return drift(a, mk::fluent(context_parameter(a.parameter), {mk::enum_value(std::string(to_string(c)))}));
            };
            auto is = [](UserContext c) {
                return mk::eq(mk::fluent(kContextFluent), mk::enum_value(std::string(to_string(c))));
            };
            cpf.body = mk::if_then_else(
                is(UserContext::calm), ctx_drift(UserContext::calm),
                mk::if_then_else(is(UserContext::confused), ctx_drift(UserContext::confused),
                                 ctx_drift(UserContext::stressed)));
        }
        out.push_back(std::move(cpf));
    }
    return out;
}

std::vector<lang::Assignment> nonfluent_assignments(const PreferenceProfile& profile) {
    std::vector<lang::Assignment> out;
    for (std::size_t i = 0; i < 4; ++i) {
        out.push_back({preference_attributes()[i].parameter, {}, probability_of(profile.base, i), {}});
    }
    out.push_back({kPersistenceParameter, {}, profile.persistence, {}});
    if (profile.context_conditioned()) {
        for (std::size_t i = 0; i < 4; ++i) {
            for (UserContext c : kAllContexts) {
                out.push_back({context_parameter(preference_attributes()[i].parameter),
                               {std::string(to_string(c))},
                               probability_of(profile.probabilities(c), i),
                               {}});
            }
        }
    }
    return out;
}

std::string emit_nonfluents(const PreferenceProfile& profile) {
    return lang::print_nonfluents_block(nonfluent_assignments(profile));
}

double expected_match_reward(const PreferenceProfile& profile, UserContext context,
                             const ExplanationAttributes& attrs, double bonus_per_attribute) {
    const AttributeProbabilities& p = profile.probabilities(context);
    double total = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        double fav = probability_of(p, i);
        bool picks_favoured = chosen_index(attrs, i) == preference_attributes()[i].favoured;
        total += bonus_per_attribute * (picks_favoured ? fav : 1.0 - fav);
    }
    return total;
}

double expected_match_reward(const PreferenceProfile& profile, const ExplanationAttributes& attrs,
                             double bonus_per_attribute) {
    PreferenceProfile base_only = profile;
    base_only.context_table.clear();
    return expected_match_reward(base_only, UserContext::calm, attrs, bonus_per_attribute);
}

namespace {

double read_probability(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number()) throw InputError("profile key '" + key + "' must be a number");
    double p = v.get<double>();
    check_probability(p, key);
    return p;
}

void read_probabilities(const nlohmann::json& j, AttributeProbabilities& p, const std::string& prefix,
                        bool allow_extra) {
    if (!j.is_object()) throw InputError("profile section '" + prefix + "' must be an object");
    for (const auto& [key, v] : j.items()) {
        if (key == "p_textual") p.p_textual = read_probability(v, prefix + key);
        else if (key == "p_rich") p.p_rich = read_probability(v, prefix + key);
        else if (key == "p_short") p.p_short = read_probability(v, prefix + key);
        else if (key == "p_local") p.p_local = read_probability(v, prefix + key);
        else if (!allow_extra) throw InputError("unknown profile key '" + prefix + key + "'");
    }
}

nlohmann::json probabilities_json(const AttributeProbabilities& p) {
    return {{"p_textual", p.p_textual}, {"p_rich", p.p_rich}, {"p_short", p.p_short}, {"p_local", p.p_local}};
}

} // namespace

PreferenceProfile profile_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("preference profile must be a JSON object");
    PreferenceProfile out;
    read_probabilities(j, out.base, "", true);
    for (const auto& [key, v] : j.items()) {
        if (key == "p_textual" || key == "p_rich" || key == "p_short" || key == "p_local") continue;
        if (key == "persistence") {
            out.persistence = read_probability(v, key);
        } else if (key == "contexts") {
            if (!v.is_object()) throw InputError("profile key 'contexts' must be an object");
            for (const auto& [name, probs] : v.items()) {
                auto ctx = parse_context(name);
                if (!ctx) throw InputError("unknown user context 'contexts." + name + "' (expected calm, confused or stressed)");
                AttributeProbabilities p = out.base;
                read_probabilities(probs, p, "contexts." + name + ".", false);
                out.context_table[*ctx] = p;
            }
        } else {
            throw InputError("unknown profile key '" + key + "'");
        }
    }
    return out;
}

nlohmann::json profile_to_json(const PreferenceProfile& profile) {
    nlohmann::json j = probabilities_json(profile.base);
    j["persistence"] = profile.persistence;
    if (profile.context_conditioned()) {
        nlohmann::json ctx = nlohmann::json::object();
        for (const auto& [c, p] : profile.context_table) ctx[std::string(to_string(c))] = probabilities_json(p);
        j["contexts"] = ctx;
    }
    return j;
}

} // namespace xplan::preference
