// Acceptance gate: runs every criterion at its stated tolerance and prints one
// [PASS]/[FAIL] line per criterion. Exit status is non-zero if any fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "random_model.hpp"
#include "xplan/cli/cli.hpp"
#include "xplan/lang/parser.hpp"
#include "xplan/lang/validate.hpp"
#include "xplan/planner/planner.hpp"
#include "xplan/planner/uct.hpp"
#include "xplan/preference/profile.hpp"
#include "xplan/scenario/librarian.hpp"
#include "xplan/simulator/simulator.hpp"

namespace fs = std::filesystem;
using namespace xplan;
using grounding::GroundedModel;
using grounding::GroundState;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

const char* kListing = R"(
domain listing {
    cstate Fluent {
        E_r : {textual, visual};
        E_dl : {rich, poor};
        E_d : {long, short};
        E_s : {local, global};
    };
    cpfs {
        E_r' = KronDelta(E_r);
        E_dl' = KronDelta(E_dl);
        E_d' = KronDelta(E_d);
        E_s' = KronDelta(E_s);
    };
    reward = 0;
}
)";

double root_value(const GroundedModel& m, const planner::ViResult& r) {
    return *r.values.value(m.horizon(), m.state_index(m.initial_state()));
}

/// Number of distinct joint assignments of the preference fluents over the whole state space.
std::size_t preference_space(const GroundedModel& m) {
    std::vector<int> slots;
    for (const auto& f : m.state_fluents()) {
        if (f.role == grounding::FluentRole::preference_state) slots.push_back(f.slot);
    }
    std::set<std::vector<int>> seen;
    for (std::uint64_t i = 0; i < *m.state_count(); ++i) {
        GroundState s = m.state_at(i);
        std::vector<int> key;
        for (int slot : slots) key.push_back(s.values[static_cast<std::size_t>(slot)]);
        seen.insert(key);
    }
    return seen.size();
}

Outcome listing_reproduction() {
    lang::DomainModel d = lang::parse_domain(kListing);
    const std::vector<std::pair<std::string, std::vector<std::string>>> expected{
        {"E_r", {"textual", "visual"}}, {"E_dl", {"rich", "poor"}}, {"E_d", {"long", "short"}}, {"E_s", {"local", "global"}}};
    for (const auto& [name, values] : expected) {
        const lang::FluentDecl* f = lang::find_fluent(d, name);
        if (!f || f->type.kind != lang::ValueKind::enumeration) return {false, name + " missing or not an enum"};
        const lang::EnumDecl* e = lang::find_enum(d, f->type.enum_name);
        if (!e || e->values != values) return {false, name + " has the wrong value set"};
    }
    GroundedModel m = xplan::testing::ground_text(kListing, "instance i { domain = listing; horizon = 1; }");
    std::size_t listing_space = preference_space(m);
    std::size_t librarian_space = preference_space(xplan::testing::ground_librarian({}));
    bool ok = listing_space == 16 && librarian_space == 16 && m.state_fluents().size() == 4;
    return {ok, "value sets exact; joint preference space " + std::to_string(listing_space) + " (listing), " +
                    std::to_string(librarian_space) + " (librarian)"};
}

Outcome normalization() {
    std::uint64_t pairs = 0;
    double worst = 0.0;
    bool negative = false;
    auto sweep = [&](const GroundedModel& m) {
        for (std::uint64_t i = 0; i < *m.state_count(); ++i) {
            GroundState s = m.state_at(i);
            for (const auto& a : m.actions()) {
                double total = 0.0;
                for (const auto& n : grounding::transition_distribution(m, s, a.index)) {
                    negative |= n.probability < 0.0;
                    total += n.probability;
                }
                worst = std::max(worst, std::abs(total - 1.0));
                ++pairs;
            }
        }
    };
    sweep(xplan::testing::ground_librarian({}));
    for (std::uint64_t seed = 0; seed < 50; ++seed) sweep(xplan::testing::ground_random(seed));
    std::ostringstream d;
    d << pairs << " (s,a) pairs over the librarian and 50 random models, max |sum - 1| = " << worst;
    return {!negative && worst <= 1e-9 && pairs >= 1000, d.str()};
}

Outcome oracle_equivalence() {
    planner::OracleOptions memo;
    memo.memoize = true;
    double worst = 0.0;
    std::vector<GroundedModel> models;
    for (int h = 1; h <= 6; ++h) models.push_back(xplan::testing::ground_librarian({}).with_horizon(h));
    std::size_t largest = 0;
    for (std::uint64_t seed = 1000; seed < 1020; ++seed) {
        models.push_back(xplan::testing::ground_random(seed));
        largest = std::max<std::size_t>(largest, *models.back().state_count());
    }
    for (const auto& m : models) {
        double vi = root_value(m, planner::value_iteration(m));
        double oracle = planner::expectimax_oracle(m, m.initial_state(), m.horizon(), memo).value;
        worst = std::max(worst, std::abs(vi - oracle));
    }
    std::ostringstream d;
    d << "librarian horizons 1-6 and 20 random models (<= " << largest << " states), max |V_VI - V_oracle| = " << worst;
    return {worst <= 1e-9 && largest <= 1000, d.str()};
}

Outcome plan_reproduction() {
    GroundedModel m = xplan::testing::ground_librarian(scenario::worked_example_config());
    planner::PlanTrace t = planner::extract_plan(m, planner::value_iteration(m).policy, m.initial_state());
    std::vector<std::string> got;
    for (const auto& step : t.steps) got.push_back(m.actions()[static_cast<std::size_t>(step.action)].label());
    const std::vector<std::string> expected{"move(start_location, book_location)", "pick_up",
                                            "move(book_location, visitor_location)", "explain(visual, poor, long, global)",
                                            "hand_over"};
    std::string joined;
    for (const auto& g : got) joined += (joined.empty() ? "" : " ; ") + g;
    return {got == expected, joined};
}

Outcome preference_alignment() {
    // Ten grid levels strictly away from 1/2, combined into 100 profiles.
    std::vector<double> levels;
    for (int k = 0; k < 10; ++k) levels.push_back(0.05 + 0.1 * k);
    int agree = 0;
    for (int i = 0; i < 100; ++i) {
        scenario::LibrarianConfig c;
        c.profile.persistence = 1.0;
        c.profile.base = {levels[static_cast<std::size_t>(i % 10)], levels[static_cast<std::size_t>(i / 10)],
                          levels[static_cast<std::size_t>((3 * i + 1) % 10)], levels[static_cast<std::size_t>((7 * i + 4) % 10)]};
        ExplanationAttributes best;
        double best_value = -1.0;
        for (const auto& attrs : ExplanationAttributes::all()) {
            double v = preference::expected_match_reward(c.profile, attrs, c.match_bonus);
            if (v > best_value) {
                best_value = v;
                best = attrs;
            }
        }
        GroundedModel m = xplan::testing::ground_librarian(c);
        planner::PlanTrace t = planner::extract_plan(m, planner::value_iteration(m).policy, m.initial_state());
        std::optional<ExplanationAttributes> chosen;
        for (const auto& step : t.steps) {
            const auto& a = m.actions()[static_cast<std::size_t>(step.action)];
            if (a.is_explain()) chosen = a.explanation;
        }
        agree += chosen && *chosen == best;
    }
    return {agree == 100, std::to_string(agree) + "/100 profiles explain with the brute-force argmax"};
}

Outcome sampling_consistency() {
    GroundedModel m = xplan::testing::ground_librarian({});
    planner::ViResult r = planner::value_iteration(m);
    GroundState s0 = m.initial_state();
    double best = root_value(m, r);
    std::set<grounding::ActionId> optimal;
    for (grounding::ActionId a : m.applicable_actions(s0)) {
        double q = grounding::reward_of(m, s0, a);
        for (const auto& n : grounding::transition_distribution(m, s0, a)) {
            q += m.discount() * n.probability * *r.values.value(m.horizon() - 1, m.state_index(n.state));
        }
        if (std::abs(q - best) <= 1e-9) optimal.insert(a);
    }
    std::vector<int> agreement;
    for (std::uint64_t budget : {100ULL, 1000ULL, 10000ULL}) {
        int agree = 0;
        for (std::uint64_t trial = 0; trial < 20; ++trial) {
            agree += optimal.count(planner::sampling_plan(m, s0, m.horizon(), budget, derive_seed(2024, trial))) > 0;
        }
        agreement.push_back(agree);
    }
    bool monotone = agreement[0] <= agreement[1] && agreement[1] <= agreement[2];
    std::ostringstream d;
    d << "agreement with VI over 20 seeds: " << agreement[0] << ", " << agreement[1] << ", " << agreement[2]
      << " at budgets 1e2, 1e3, 1e4";
    return {monotone && agreement[2] >= 19, d.str()};
}

Outcome monte_carlo() {
    const std::size_t n = 10000;
    std::ostringstream d;
    bool ok = true;
    auto check = [&](const std::string& name, const GroundedModel& m) {
        planner::ViResult r = planner::value_iteration(m);
        double v = root_value(m, r);
        simulator::BatchReport b = simulator::evaluate_policy(m, simulator::policy_actor(m, r.policy), n, 31337, 4);
        // A zero-variance return makes 3 sigma / sqrt(n) zero; allow rounding in the mean.
        double band = std::max(3.0 * b.stddev / std::sqrt(static_cast<double>(n)), 1e-9);
        bool pass = std::abs(b.mean_return - v) <= band;
        ok &= pass;
        d << name << " |" << b.mean_return << " - " << v << "| <= " << band << (pass ? "" : " (violated)") << "; ";
    };
    check("librarian", xplan::testing::ground_librarian({}));
    int random_pass = 0;
    for (std::uint64_t seed = 2000; seed < 2005; ++seed) {
        GroundedModel m = xplan::testing::ground_random(seed);
        planner::ViResult r = planner::value_iteration(m);
        simulator::BatchReport b = simulator::evaluate_policy(m, simulator::policy_actor(m, r.policy), n, seed, 4);
        double band = std::max(3.0 * b.stddev / std::sqrt(static_cast<double>(n)), 1e-9);
        bool pass = std::abs(b.mean_return - root_value(m, r)) <= band;
        random_pass += pass;
        ok &= pass;
    }
    d << random_pass << "/5 random models within 3 sigma/sqrt(n)";
    return {ok, d.str()};
}

Outcome reproducibility() {
    fs::path root = xplan::testing::scratch_dir("acceptance_repro");
    scenario::LibrarianFiles files = scenario::build_librarian({});
    xplan::testing::write_file(root / "domain.xrddl", files.domain_text);
    xplan::testing::write_file(root / "instance.xrddl", files.instance_text);
    xplan::testing::write_file(root / "config.json", R"({"profile": {"p_textual": 0.8}, "deadline": 2})");
    const std::string dom = (root / "domain.xrddl").string();
    const std::string inst = (root / "instance.xrddl").string();
    const std::string out = (root / "out").string();

    const std::vector<std::vector<std::string>> commands{
        {"gen-librarian", "--config", (root / "config.json").string(), "--out", out},
        {"ground", "--domain", dom, "--instance", inst, "--out", out},
        {"plan", "--domain", dom, "--instance", inst, "--out", out},
        {"plan", "--domain", dom, "--instance", inst, "--out", out, "--planner", "sample", "--budget", "10000", "--seed", "7"},
        {"plan", "--domain", dom, "--instance", inst, "--out", out, "--mode", "sampled", "--seed", "3", "--threads", "4"},
        {"simulate", "--domain", dom, "--instance", inst, "--out", out, "--episodes", "2000", "--seed", "5", "--traces",
         "--threads", "4"},
        {"simulate", "--domain", dom, "--instance", inst, "--out", out, "--episodes", "2000", "--seed", "5", "--actor",
         "random"},
        {"simulate", "--domain", dom, "--instance", inst, "--out", out, "--episodes", "10", "--seed", "5", "--actor",
         "sample", "--budget", "200"},
        {"oracle", "--domain", dom, "--instance", inst, "--horizon", "5"},
    };
    auto snapshot = [&](const std::vector<std::string>& args) {
        fs::remove_all(out);
        std::ostringstream so, se;
        int code = cli::run(args, so, se);
        std::vector<std::string> bytes{std::to_string(code), so.str(), se.str()};
        if (fs::exists(out)) {
            std::vector<fs::path> paths;
            for (const auto& e : fs::directory_iterator(out)) paths.push_back(e.path());
            std::sort(paths.begin(), paths.end());
            for (const auto& p : paths) bytes.push_back(p.filename().string() + "\n" + xplan::testing::read_file(p));
        }
        return bytes;
    };
    int identical = 0;
    std::string failures;
    for (const auto& args : commands) {
        auto first = snapshot(args);
        auto second = snapshot(args);
        if (first == second && first[0] == "0") ++identical;
        else failures += " " + args[0];
    }
    fs::remove_all(root);
    std::string detail = std::to_string(identical) + "/" + std::to_string(commands.size()) +
                         " seeded commands byte-identical across two runs";
    if (!failures.empty()) detail += "; differing or failing:" + failures;
    return {identical == static_cast<int>(commands.size()), detail};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 listing reproduction", listing_reproduction},
        {"2 transition normalization", normalization},
        {"3 value iteration equals expectimax oracle", oracle_equivalence},
        {"4 worked-example plan", plan_reproduction},
        {"5 explanation matches preference argmax", preference_alignment},
        {"6 sampling planner consistency", sampling_consistency},
        {"7 Monte-Carlo estimate of V(s0)", monte_carlo},
        {"8 seeded command reproducibility", reproducibility},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += !o.pass;
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail << " (" << std::fixed
                  << std::setprecision(1) << seconds << " s)" << std::defaultfloat << std::setprecision(6) << '\n';
    }
    return failed == 0 ? 0 : 1;
}
