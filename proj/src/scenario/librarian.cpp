#include "xplan/scenario/librarian.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "xplan/errors.hpp"
#include "xplan/lang/parser.hpp"
#include "xplan/lang/printer.hpp"

namespace xplan::scenario {

namespace mk = lang::make;
using preference::preference_attributes;

namespace {

constexpr int kMaxDeadline = 10000;

const char* const kLocationType = "location";
const char* const kCounterType = "counter";

bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string step_value(int k) { return "step_" + std::to_string(k); }

std::set<std::pair<std::string, std::string>> edges(const LibrarianConfig& c) {
    std::set<std::pair<std::string, std::string>> out;
    if (c.adjacency.empty()) {
        for (const auto& a : c.locations) {
            for (const auto& b : c.locations) {
                if (a != b) out.emplace(a, b);
            }
        }
    } else {
        out.insert(c.adjacency.begin(), c.adjacency.end());
    }
    return out;
}

std::optional<int> distance(const LibrarianConfig& c, const std::string& from, const std::string& to) {
    auto e = edges(c);
    std::map<std::string, int> dist{{from, 0}};
    std::deque<std::string> queue{from};
    while (!queue.empty()) {
        std::string at = queue.front();
        queue.pop_front();
        if (at == to) return dist[at];
        for (const auto& [a, b] : e) {
            if (a == at && !dist.count(b)) {
                dist[b] = dist[at] + 1;
                queue.push_back(b);
            }
        }
    }
    return std::nullopt;
}

} // namespace

ExplanationAttributes LibrarianConfig::effective_initial_preferences() const {
    return initial_preferences ? *initial_preferences : preference::most_likely(profile.base);
}

std::optional<int> minimal_plan_length(const LibrarianConfig& config) {
    auto to_book = distance(config, config.start, config.book);
    auto to_visitor = distance(config, config.book, config.visitor);
    if (!to_book || !to_visitor) return std::nullopt;
    return *to_book + *to_visitor + 2;
}

void check_config(const LibrarianConfig& c) {
    if (c.locations.size() < 3) throw InputError("librarian config needs at least 3 locations");
    std::set<std::string> names;
    for (const auto& l : c.locations) {
        if (!is_identifier(l)) throw InputError("location '" + l + "' is not a valid identifier");
        if (!names.insert(l).second) throw InputError("location '" + l + "' is listed twice");
        if (l.rfind("step_", 0) == 0) throw InputError("location '" + l + "' clashes with the step counter values");
    }
    for (const auto& a : preference_attributes()) {
        for (const auto& v : a.values) {
            if (names.count(v)) throw InputError("location '" + v + "' clashes with a preference value");
        }
    }
    for (auto ctx : preference::kAllContexts) {
        if (names.count(std::string(preference::to_string(ctx)))) {
            throw InputError("location '" + std::string(preference::to_string(ctx)) + "' clashes with a user context");
        }
    }
    for (const auto* role : {&c.start, &c.book, &c.visitor}) {
        if (!names.count(*role)) throw InputError("role location '" + *role + "' is not among the locations");
    }
    if (c.start == c.book || c.book == c.visitor || c.start == c.visitor) {
        throw InputError("start, book and visitor locations must be distinct");
    }
    for (const auto& [a, b] : c.adjacency) {
        if (!names.count(a) || !names.count(b)) throw InputError("adjacency edge " + a + " -> " + b + " names an unknown location");
        if (a == b) throw InputError("adjacency edge " + a + " -> " + b + " is a self-loop");
    }
    if (c.deadline < 1 || c.deadline > kMaxDeadline) {
        throw InputError("deadline must be in [1, " + std::to_string(kMaxDeadline) + "], got " + std::to_string(c.deadline));
    }
    if (!(c.discount > 0.0 && c.discount <= 1.0)) throw InputError("discount must be in (0, 1]");
    preference::check_profile(c.profile);
    auto len = minimal_plan_length(c);
    if (!len) throw InputError("the visitor cannot be reached from the start via the book location");
    if (c.horizon < *len) {
        throw InputError("horizon " + std::to_string(c.horizon) + " is shorter than the minimal delivery plan (" +
                         std::to_string(*len) + " steps)");
    }
}

namespace {

lang::FluentDecl fluent_decl(std::string name, lang::FluentKind kind, lang::ValueType type,
                             lang::LiteralValue dflt, std::vector<std::string> params = {}) {
    lang::FluentDecl f;
    f.name = std::move(name);
    f.kind = kind;
    f.type = std::move(type);
    f.default_value = std::move(dflt);
    f.params = std::move(params);
    return f;
}

const lang::ValueType kBool{lang::ValueKind::boolean, ""};
const lang::ValueType kReal{lang::ValueKind::real, ""};

lang::ValueType enum_type(const std::string& name) { return {lang::ValueKind::enumeration, name}; }

lang::Cpf cpf(std::string target, lang::ExprPtr body) {
    lang::Cpf c;
    c.target = std::move(target);
    c.body = std::move(body);
    return c;
}

std::vector<lang::TypedVariable> explain_vars() {
    return {{"r", "E_r"}, {"dl", "E_dl"}, {"d", "E_d"}, {"s", "E_s"}};
}

lang::ExprPtr explain_call() {
    return mk::fluent("explain", {mk::var("r"), mk::var("dl"), mk::var("d"), mk::var("s")});
}

lang::DomainModel librarian_domain(const LibrarianConfig& c) {
    lang::DomainModel d;
    d.name = "librarian";
    d.requirements = {"reward-deterministic", "preconditions"};

    lang::EnumDecl loc{kLocationType, c.locations, false, {}};
    lang::EnumDecl counter{kCounterType, {}, false, {}};
    for (int k = 0; k <= c.deadline; ++k) counter.values.push_back(step_value(k));
    d.enums = {loc, counter, preference::context_enum()};
    for (auto& e : preference::preference_enums()) d.enums.push_back(std::move(e));

    using lang::FluentKind;
    // Preference state first, then the robot's task state.
    for (auto& f : preference::preference_fluents()) d.fluents.push_back(std::move(f));
    d.fluents.push_back(fluent_decl("robot_at", FluentKind::state, enum_type(kLocationType),
                                    lang::EnumLiteral{c.locations.front()}));
    d.fluents.push_back(fluent_decl("holding_book", FluentKind::state, kBool, false));
    d.fluents.push_back(fluent_decl("delivered", FluentKind::state, kBool, false));
    d.fluents.push_back(fluent_decl("late", FluentKind::state, kBool, false));
    d.fluents.push_back(fluent_decl("explained", FluentKind::state, kBool, false));
    d.fluents.push_back(fluent_decl("step", FluentKind::state, enum_type(kCounterType), lang::EnumLiteral{step_value(0)}));
    d.fluents.push_back(preference::context_fluent());

    d.fluents.push_back(fluent_decl("move", FluentKind::action, kBool, false, {kLocationType, kLocationType}));
    d.fluents.push_back(fluent_decl("pick_up", FluentKind::action, kBool, false));
    d.fluents.push_back(fluent_decl("hand_over", FluentKind::action, kBool, false));
    d.fluents.push_back(fluent_decl("explain", FluentKind::action, kBool, false, {"E_r", "E_dl", "E_d", "E_s"}));

    const LibrarianConfig defaults;
    d.fluents.push_back(fluent_decl("handover_reward", FluentKind::non_fluent, kReal, defaults.handover_reward));
    d.fluents.push_back(fluent_decl("step_cost", FluentKind::non_fluent, kReal, defaults.step_cost));
    d.fluents.push_back(fluent_decl("match_bonus", FluentKind::non_fluent, kReal, defaults.match_bonus));
    d.fluents.push_back(fluent_decl("explain_reward", FluentKind::non_fluent, kReal, defaults.explain_reward));
    d.fluents.push_back(fluent_decl("connected", FluentKind::non_fluent, kBool, true, {kLocationType, kLocationType}));
    for (auto& f : preference::preference_parameter_decls(c.profile.context_conditioned())) d.fluents.push_back(std::move(f));

    // CPFs, in state declaration order.
    for (auto& p : preference::emit_preference_cpfs(c.profile)) d.cpfs.push_back(std::move(p));

    lang::ExprPtr at = mk::kron_delta(mk::fluent("robot_at"));
    for (auto it = c.locations.rbegin(); it != c.locations.rend(); ++it) {
        auto arrives = mk::aggregate(lang::AggregateOp::exists, {{"f", kLocationType}},
                                     mk::fluent("move", {mk::var("f"), mk::enum_value(*it)}));
        at = mk::if_then_else(arrives, mk::kron_delta(mk::enum_value(*it)), at);
    }
    d.cpfs.push_back(cpf("robot_at", at));
    d.cpfs.push_back(cpf("holding_book", mk::kron_delta(mk::land(mk::lor(mk::fluent("holding_book"), mk::fluent("pick_up")),
                                                                 mk::lnot(mk::fluent("hand_over"))))));
    d.cpfs.push_back(cpf("delivered", mk::kron_delta(mk::lor(mk::fluent("delivered"), mk::fluent("hand_over")))));
    d.cpfs.push_back(cpf("late", mk::kron_delta(mk::lor(
                                     mk::fluent("late"), mk::eq(mk::fluent("step"), mk::enum_value(step_value(c.deadline - 1)))))));
    d.cpfs.push_back(cpf("explained", mk::kron_delta(mk::lor(
                                          mk::fluent("explained"),
                                          mk::aggregate(lang::AggregateOp::exists, explain_vars(), explain_call())))));
    // Saturating counter: step_k -> step_{k+1}, step_D stays.
    lang::ExprPtr step = mk::kron_delta(mk::enum_value(step_value(c.deadline)));
    for (int k = c.deadline - 1; k >= 0; --k) {
        step = mk::if_then_else(mk::eq(mk::fluent("step"), mk::enum_value(step_value(k))),
                                mk::kron_delta(mk::enum_value(step_value(k + 1))), step);
    }
    d.cpfs.push_back(cpf("step", step));
    d.cpfs.push_back(cpf(preference::kContextFluent, mk::kron_delta(mk::fluent(preference::kContextFluent))));

    auto step_penalty = mk::if_then_else(mk::lnot(mk::fluent("delivered")),
                                         mk::unary(lang::UnaryOp::negate, mk::fluent("step_cost")), mk::number(0));
    auto delivery = mk::if_then_else(mk::fluent("hand_over"), mk::fluent("handover_reward"), mk::number(0));
    lang::ExprPtr matches;
    for (const auto& v : explain_vars()) {
        auto m = mk::eq(mk::fluent(v.type), mk::var(v.name));
        matches = matches ? mk::add(matches, m) : m;
    }
    auto explanation = mk::aggregate(
        lang::AggregateOp::sum, explain_vars(),
        mk::mul(explain_call(), mk::add(mk::fluent("explain_reward"), mk::mul(mk::fluent("match_bonus"), matches))));
    d.reward = mk::add(mk::add(step_penalty, delivery), explanation);

    auto undelivered = mk::lnot(mk::fluent("delivered"));
    auto at_loc = [](const std::string& l) { return mk::eq(mk::fluent("robot_at"), mk::enum_value(l)); };
    d.preconditions.push_back(mk::aggregate(
        lang::AggregateOp::forall, {{"f", kLocationType}, {"t", kLocationType}},
        mk::implies(mk::fluent("move", {mk::var("f"), mk::var("t")}),
                    mk::land(mk::land(mk::land(mk::eq(mk::fluent("robot_at"), mk::var("f")), mk::neq(mk::var("f"), mk::var("t"))),
                                      mk::fluent("connected", {mk::var("f"), mk::var("t")})),
                             undelivered))));
    d.preconditions.push_back(mk::implies(
        mk::fluent("pick_up"), mk::land(mk::land(at_loc(c.book), mk::lnot(mk::fluent("holding_book"))), undelivered)));
    d.preconditions.push_back(mk::implies(
        mk::fluent("hand_over"), mk::land(mk::land(at_loc(c.visitor), mk::fluent("holding_book")), undelivered)));
    d.preconditions.push_back(mk::aggregate(
        lang::AggregateOp::forall, explain_vars(),
        mk::implies(explain_call(), mk::land(mk::land(mk::land(mk::fluent("late"), mk::lnot(mk::fluent("explained"))),
                                                      undelivered),
                                             at_loc(c.visitor)))));
    return d;
}

lang::Assignment assign(std::string fluent, lang::LiteralValue v, std::vector<std::string> args = {}) {
    return {std::move(fluent), std::move(args), std::move(v), {}};
}

std::string attribute_value(const ExplanationAttributes& a, std::size_t i) {
    switch (i) {
    case 0: return std::string(to_string(a.representation));
    case 1: return std::string(to_string(a.detail));
    case 2: return std::string(to_string(a.duration));
    default: return std::string(to_string(a.scope));
    }
}

lang::InstanceModel librarian_instance(const LibrarianConfig& c) {
    lang::InstanceModel m;
    m.name = "librarian_inst";
    m.domain_name = "librarian";
    m.horizon = c.horizon;
    m.discount = c.discount;

    m.non_fluents.push_back(assign("handover_reward", c.handover_reward));
    m.non_fluents.push_back(assign("step_cost", c.step_cost));
    m.non_fluents.push_back(assign("match_bonus", c.match_bonus));
    m.non_fluents.push_back(assign("explain_reward", c.explain_reward));
    for (auto& a : preference::nonfluent_assignments(c.profile)) m.non_fluents.push_back(std::move(a));
    if (!c.adjacency.empty()) {
        auto e = edges(c);
        for (const auto& a : c.locations) {
            for (const auto& b : c.locations) {
                if (a != b && !e.count({a, b})) m.non_fluents.push_back(assign("connected", false, {a, b}));
            }
        }
    }

    ExplanationAttributes prefs = c.effective_initial_preferences();
    for (std::size_t i = 0; i < 4; ++i) {
        m.init_state.push_back(assign(preference_attributes()[i].fluent, lang::EnumLiteral{attribute_value(prefs, i)}));
    }
    m.init_state.push_back(assign("robot_at", lang::EnumLiteral{c.start}));
    m.init_state.push_back(
        assign(preference::kContextFluent, lang::EnumLiteral{std::string(preference::to_string(c.initial_context))}));
    return m;
}

} // namespace

LibrarianFiles build_librarian(const LibrarianConfig& config) {
    check_config(config);
    LibrarianFiles out;
    out.domain = librarian_domain(config);
    out.instance = librarian_instance(config);
    out.domain_text = lang::pretty_print(out.domain);
    out.instance_text = lang::pretty_print(out.instance);
    return out;
}

lang::CheckedModel check_librarian(const LibrarianFiles& files) {
    return lang::validate(lang::parse_domain(files.domain_text), lang::parse_instance(files.instance_text));
}

LibrarianConfig worked_example_config() {
    LibrarianConfig c;
    c.deadline = 3;
    c.horizon = 5;
    c.profile.persistence = 1.0;
    c.initial_preferences =
        ExplanationAttributes{Representation::visual, Detail::poor, Duration::long_, Scope::global};
    return c;
}

namespace {

template <class T>
T read(const nlohmann::json& v, const std::string& key) {
    try {
        return v.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw InputError("config key '" + key + "' has the wrong type");
    }
}

} // namespace

LibrarianConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("librarian config must be a JSON object");
    LibrarianConfig c;
    // The profile first: partial initial_preferences start from its most likely tuple.
    if (j.contains("profile")) c.profile = preference::profile_from_json(j["profile"]);
    for (const auto& [key, v] : j.items()) {
        if (key == "profile") continue;
        if (key == "locations") c.locations = read<std::vector<std::string>>(v, key);
        else if (key == "start") c.start = read<std::string>(v, key);
        else if (key == "book") c.book = read<std::string>(v, key);
        else if (key == "visitor") c.visitor = read<std::string>(v, key);
        else if (key == "adjacency") {
            for (const auto& e : read<std::vector<std::vector<std::string>>>(v, key)) {
                if (e.size() != 2) throw InputError("config key 'adjacency' entries must be [from, to] pairs");
                c.adjacency.emplace_back(e[0], e[1]);
            }
        } else if (key == "deadline") c.deadline = read<int>(v, key);
        else if (key == "horizon") c.horizon = read<int>(v, key);
        else if (key == "discount") c.discount = read<double>(v, key);
        else if (key == "handover_reward") c.handover_reward = read<double>(v, key);
        else if (key == "step_cost") c.step_cost = read<double>(v, key);
        else if (key == "match_bonus") c.match_bonus = read<double>(v, key);
        else if (key == "explain_reward") c.explain_reward = read<double>(v, key);
        else if (key == "initial_context") {
            auto ctx = preference::parse_context(read<std::string>(v, key));
            if (!ctx) throw InputError("config key 'initial_context' must be calm, confused or stressed");
            c.initial_context = *ctx;
        } else if (key == "initial_preferences") {
            if (!v.is_object()) throw InputError("config key 'initial_preferences' must be an object");
            ExplanationAttributes a = c.effective_initial_preferences();
            for (const auto& [fluent, value] : v.items()) {
                std::string s = read<std::string>(value, "initial_preferences." + fluent);
                bool ok = false;
                if (fluent == "E_r") { auto x = parse_representation(s); ok = x.has_value(); if (ok) a.representation = *x; }
                else if (fluent == "E_dl") { auto x = parse_detail(s); ok = x.has_value(); if (ok) a.detail = *x; }
                else if (fluent == "E_d") { auto x = parse_duration(s); ok = x.has_value(); if (ok) a.duration = *x; }
                else if (fluent == "E_s") { auto x = parse_scope(s); ok = x.has_value(); if (ok) a.scope = *x; }
                else throw InputError("unknown config key 'initial_preferences." + fluent + "'");
                if (!ok) throw InputError("'" + s + "' is not a value of " + fluent);
            }
            c.initial_preferences = a;
        } else {
            throw InputError("unknown config key '" + key + "'");
        }
    }
    return c;
}

nlohmann::json config_to_json(const LibrarianConfig& c) {
    nlohmann::json j;
    j["locations"] = c.locations;
    j["start"] = c.start;
    j["book"] = c.book;
    j["visitor"] = c.visitor;
    if (!c.adjacency.empty()) {
        nlohmann::json edges = nlohmann::json::array();
        for (const auto& [a, b] : c.adjacency) edges.push_back({a, b});
        j["adjacency"] = edges;
    }
    j["deadline"] = c.deadline;
    j["horizon"] = c.horizon;
    j["discount"] = c.discount;
    j["handover_reward"] = c.handover_reward;
    j["step_cost"] = c.step_cost;
    j["match_bonus"] = c.match_bonus;
    j["explain_reward"] = c.explain_reward;
    j["profile"] = preference::profile_to_json(c.profile);
    ExplanationAttributes a = c.effective_initial_preferences();
    j["initial_preferences"] = {{"E_r", to_string(a.representation)},
                                {"E_dl", to_string(a.detail)},
                                {"E_d", to_string(a.duration)},
                                {"E_s", to_string(a.scope)}};
    j["initial_context"] = preference::to_string(c.initial_context);
    return j;
}

} // namespace xplan::scenario
