#include "xplan/io/export.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

#include "xplan/errors.hpp"
#include "xplan/lang/printer.hpp"

namespace xplan::io {

using nlohmann::json;

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
    return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("error while writing '" + path.string() + "'");
}

std::string number(double value) { return lang::format_number(value); }

json state_json(const grounding::GroundedModel& model, const grounding::GroundState& s) {
    json out = json::object();
    const auto& fluents = model.state_fluents();
    for (std::size_t i = 0; i < fluents.size(); ++i) {
        out[fluents[i].label()] = fluents[i].value_names[static_cast<std::size_t>(s.values[i])];
    }
    return out;
}

json ground_dump(const grounding::GroundedModel& model, std::uint64_t max_transition_states) {
    json out;
    out["domain"] = model.domain_name();
    out["instance"] = model.instance_name();
    out["horizon"] = model.horizon();
    out["discount"] = model.discount();
    if (model.state_count()) out["state_count"] = *model.state_count();

    json fluents = json::array();
    for (const auto& f : model.state_fluents()) {
        fluents.push_back({{"slot", f.slot}, {"label", f.label()}, {"role", std::string(to_string(f.role))},
                           {"id", f.id}, {"values", f.value_names}});
    }
    out["state_fluents"] = fluents;

    json nonf = json::array();
    for (std::size_t i = 0; i < model.non_fluents().size(); ++i) {
        const auto& f = model.non_fluents()[i];
        nonf.push_back({{"id", f.id}, {"label", f.label()}, {"value", model.non_fluent_value(i)}});
    }
    out["non_fluents"] = nonf;

    json actions = json::array();
    for (const auto& a : model.actions()) {
        json entry = {{"index", a.index}, {"label", a.label()}};
        if (a.explanation) entry["explanation"] = a.explanation->to_string();
        actions.push_back(entry);
    }
    out["actions"] = actions;
    out["initial_state"] = state_json(model, model.initial_state());
    if (model.state_count()) out["initial_state_index"] = model.state_index(model.initial_state());

    if (model.state_count() && *model.state_count() <= max_transition_states) {
        json transitions = json::array();
        for (std::uint64_t idx = 0; idx < *model.state_count(); ++idx) {
            grounding::GroundState s = model.state_at(idx);
            for (grounding::ActionId a : model.applicable_actions(s)) {
                json succ = json::array();
                for (const auto& x : grounding::transition_distribution(model, s, a)) {
                    succ.push_back({{"state", model.state_index(x.state)}, {"probability", x.probability}});
                }
                transitions.push_back({{"state", idx}, {"action", a}, {"reward", model.reward(s, a)},
                                       {"successors", succ}});
            }
        }
        out["transitions"] = transitions;
    }
    return out;
}

namespace {

json step_json(const grounding::GroundedModel& model, const planner::PlanStep& step, std::size_t t) {
    return {{"t", t},
            {"stage", step.stage},
            {"action", model.actions()[static_cast<std::size_t>(step.action)].label()},
            {"action_index", step.action},
            {"reward", step.reward},
            {"probability", step.probability},
            {"state", state_json(model, step.state)},
            {"next_state", state_json(model, step.next_state)}};
}

} // namespace

json plan_json(const grounding::GroundedModel& model, const planner::PlanTrace& trace) {
    json steps = json::array();
    for (std::size_t t = 0; t < trace.steps.size(); ++t) steps.push_back(step_json(model, trace.steps[t], t));
    return {{"domain", model.domain_name()},
            {"instance", model.instance_name()},
            {"horizon", model.horizon()},
            {"total_return", trace.total_return},
            {"steps", steps}};
}

std::string plan_jsonl(const grounding::GroundedModel& model, const planner::PlanTrace& trace) {
    std::string out;
    for (std::size_t t = 0; t < trace.steps.size(); ++t) out += step_json(model, trace.steps[t], t).dump() + "\n";
    return out;
}

std::string plan_text(const grounding::GroundedModel& model, const planner::PlanTrace& trace) {
    std::ostringstream out;
    out << "# " << model.domain_name() << " / " << model.instance_name() << ", horizon " << model.horizon()
        << ", return " << number(trace.total_return) << '\n';
    out << "step  reward  action\n";
    for (std::size_t t = 0; t < trace.steps.size(); ++t) {
        const auto& s = trace.steps[t];
        out << std::left << std::setw(4) << t << "  " << std::setw(6) << number(s.reward) << "  "
            << model.actions()[static_cast<std::size_t>(s.action)].label() << '\n';
    }
    return out.str();
}

namespace {

/// Map entries sorted by state index.
template <class V>
std::vector<std::pair<std::uint64_t, V>> sorted(const std::unordered_map<std::uint64_t, V>& m) {
    std::vector<std::pair<std::uint64_t, V>> out(m.begin(), m.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

} // namespace

json policy_json(const grounding::GroundedModel& model, const planner::Policy& policy) {
    json stages = json::object();
    for (std::size_t k = 1; k < policy.stages.size(); ++k) {
        json entries = json::object();
        for (const auto& [idx, a] : sorted(policy.stages[k])) {
            entries[std::to_string(idx)] = {{"action", model.actions()[static_cast<std::size_t>(a)].label()}, {"index", a}};
        }
        stages[std::to_string(k)] = entries;
    }
    return {{"stages", stages}};
}

json values_json(const planner::ValueTable& values) {
    json stages = json::object();
    for (std::size_t k = 0; k < values.stages.size(); ++k) {
        json entries = json::object();
        for (const auto& [idx, v] : sorted(values.stages[k])) entries[std::to_string(idx)] = v;
        stages[std::to_string(k)] = entries;
    }
    return {{"stages", stages}};
}

json batch_json(const simulator::BatchReport& r) {
    json rates = json::object();
    for (std::size_t i = 0; i < r.match_fluents.size(); ++i) rates[r.match_fluents[i]] = r.match_rates[i];
    json episodes = json::array();
    for (std::size_t i = 0; i < r.episodes(); ++i) {
        json e = {{"episode", i}, {"seed", r.seeds[i]}, {"return", r.returns[i]}};
        e["explain_step"] = r.explain_steps[i] ? json(*r.explain_steps[i]) : json(nullptr);
        json m = json::object();
        for (std::size_t k = 0; k < r.matches[i].size() && k < r.match_fluents.size(); ++k) {
            m[r.match_fluents[k]] = static_cast<bool>(r.matches[i][k]);
        }
        e["matches"] = m;
        episodes.push_back(e);
    }
    return {{"episodes", r.episodes()},
            {"base_seed", r.base_seed},
            {"mean_return", r.mean_return},
            {"stddev", r.stddev},
            {"explained_episodes", r.explained_episodes},
            {"match_rates", rates},
            {"per_episode", episodes}};
}

std::string batch_csv(const simulator::BatchReport& r) {
    std::ostringstream out;
    out << "episode,seed,return,explain_step";
    for (const auto& f : r.match_fluents) out << ",match_" << f;
    out << '\n';
    for (std::size_t i = 0; i < r.episodes(); ++i) {
        out << i << ',' << r.seeds[i] << ',' << number(r.returns[i]) << ',';
        if (r.explain_steps[i]) out << *r.explain_steps[i];
        for (std::size_t k = 0; k < r.match_fluents.size(); ++k) {
            out << ',';
            if (k < r.matches[i].size()) out << (r.matches[i][k] ? 1 : 0);
        }
        out << '\n';
    }
    return out.str();
}

} // namespace xplan::io
