#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "random_model.hpp"
#include "xplan/errors.hpp"
#include "xplan/simulator/simulator.hpp"

using namespace xplan;
using namespace xplan::simulator;
using grounding::GroundedModel;
using xplan::testing::ground_librarian;

namespace {

bool same_trace(const planner::PlanTrace& a, const planner::PlanTrace& b) {
    if (a.steps.size() != b.steps.size() || a.total_return != b.total_return) return false;
    for (std::size_t k = 0; k < a.steps.size(); ++k) {
        const auto& x = a.steps[k];
        const auto& y = b.steps[k];
        if (x.stage != y.stage || x.state != y.state || x.action != y.action || x.reward != y.reward ||
            x.next_state != y.next_state) {
            return false;
        }
    }
    return true;
}

bool same_report(const BatchReport& a, const BatchReport& b) {
    return a.seeds == b.seeds && a.returns == b.returns && a.explain_steps == b.explain_steps && a.matches == b.matches &&
           a.mean_return == b.mean_return && a.stddev == b.stddev && a.match_rates == b.match_rates;
}

} // namespace

TEST_CASE("deterministic model: an episode is the most-likely plan") {
    GroundedModel m = ground_librarian(scenario::worked_example_config());
    planner::ViResult r = planner::value_iteration(m);
    planner::PlanTrace plan = planner::extract_plan(m, r.policy, m.initial_state());
    for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
        EpisodeReport e = run_episode(m, simulator::policy_actor(m, r.policy), seed);
        CHECK(same_trace(e.trace, plan));
        CHECK(e.total_return == plan.total_return);
        REQUIRE(e.explain_step);
        CHECK(*e.explain_step == 3);
        CHECK(e.matches == std::vector<bool>{true, true, true, true});
    }
}

TEST_CASE("frozen preferences with decisive probabilities: every attribute matches") {
    Rng rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        scenario::LibrarianConfig c;
        c.profile.persistence = 1.0;
        auto decisive = [&] { return uniform_index(rng, 2) == 0 ? 0.1 + 0.3 * uniform01(rng) : 0.6 + 0.3 * uniform01(rng); };
        c.profile.base = {decisive(), decisive(), decisive(), decisive()};
        GroundedModel m = ground_librarian(c);
        planner::ViResult r = planner::value_iteration(m);
        BatchReport b = evaluate_policy(m, simulator::policy_actor(m, r.policy), 20, static_cast<std::uint64_t>(trial));
        CHECK(b.explained_episodes == 20);
        for (double rate : b.match_rates) CHECK(rate == 1.0);
    }
}

TEST_CASE("same seed, same episode") {
    GroundedModel m = ground_librarian({});
    planner::ViResult r = planner::value_iteration(m);
    std::vector<ActorFactory> actors{simulator::policy_actor(m, r.policy), random_actor(m), simulator::uct_actor(m, 50)};
    for (const ActorFactory& actor : actors) {
        EpisodeReport a = run_episode(m, actor, 1234);
        EpisodeReport b = run_episode(m, actor, 1234);
        CHECK(same_trace(a.trace, b.trace));
        CHECK(a.matches == b.matches);
    }
}

TEST_CASE("match indicators exist exactly when an explanation was given") {
    GroundedModel m = ground_librarian({});
    BatchReport b = evaluate_policy(m, random_actor(m), 300, 5);
    std::size_t explained = 0;
    for (std::size_t i = 0; i < b.episodes(); ++i) {
        CHECK(b.explain_steps[i].has_value() == !b.matches[i].empty());
        if (b.explain_steps[i]) {
            ++explained;
            CHECK(b.matches[i].size() == 4);
        }
    }
    CHECK(explained == b.explained_episodes);
    CHECK(explained > 0);
    CHECK(b.match_fluents == std::vector<std::string>{"E_r", "E_dl", "E_d", "E_s"});
    for (double rate : b.match_rates) {
        CHECK(rate >= 0.0);
        CHECK(rate <= 1.0);
    }
}

TEST_CASE("matches compare against the preferences before the step") {
    GroundedModel m = ground_librarian({});
    planner::ViResult r = planner::value_iteration(m);
    BatchReport b = evaluate_policy(m, simulator::policy_actor(m, r.policy), 200, 77);
    for (std::size_t i = 0; i < b.episodes(); ++i) {
        EpisodeReport e = run_episode(m, simulator::policy_actor(m, r.policy), b.seeds[i]);
        if (!e.explain_step) continue;
        const auto& step = e.trace.steps[*e.explain_step];
        const auto& action = m.actions()[static_cast<std::size_t>(step.action)];
        for (std::size_t k = 0; k < action.preference_links.size(); ++k) {
            const auto& link = action.preference_links[k];
            CHECK(e.matches[k] == (step.state.values[static_cast<std::size_t>(link.slot)] == link.value));
        }
    }
}

TEST_CASE("one episode: the batch is that episode") {
    GroundedModel m = ground_librarian({});
    auto actor = random_actor(m);
    BatchReport b = evaluate_policy(m, actor, 1, 42);
    EpisodeReport e = run_episode(m, actor, derive_seed(42, 0));
    REQUIRE(b.episodes() == 1);
    CHECK(b.seeds[0] == derive_seed(42, 0));
    CHECK(b.mean_return == e.total_return);
    CHECK(b.stddev == 0.0);
    CHECK(b.matches[0] == e.matches);
    CHECK(b.explain_steps[0] == e.explain_step);
}

TEST_CASE("batch statistics") {
    GroundedModel m = ground_librarian({});
    BatchReport b = evaluate_policy(m, random_actor(m), 500, 3);
    double mean = 0.0;
    for (double r : b.returns) mean += r;
    mean /= static_cast<double>(b.episodes());
    double ss = 0.0;
    for (double r : b.returns) ss += (r - mean) * (r - mean);
    CHECK(b.mean_return == doctest::Approx(mean).epsilon(1e-12));
    CHECK(b.stddev == doctest::Approx(std::sqrt(ss / static_cast<double>(b.episodes() - 1))).epsilon(1e-12));
    for (std::size_t i = 0; i < b.episodes(); ++i) CHECK(b.seeds[i] == derive_seed(3, i));
}

TEST_CASE("threads do not change the report") {
    GroundedModel m = ground_librarian({});
    planner::ViResult r = planner::value_iteration(m);
    std::vector<ActorFactory> actors{simulator::policy_actor(m, r.policy), random_actor(m)};
    for (const ActorFactory& actor : actors) {
        BatchReport one = evaluate_policy(m, actor, 400, 9, 1);
        BatchReport many = evaluate_policy(m, actor, 400, 9, 4);
        CHECK(same_report(one, many));
    }
}

TEST_CASE("property: the mean return converges to the optimal value") {
    for (std::uint64_t seed = 600; seed < 615; ++seed) {
        GroundedModel m = xplan::testing::ground_random(seed);
        planner::ViResult r = planner::value_iteration(m);
        double v = *r.values.value(m.horizon(), m.state_index(m.initial_state()));
        const std::size_t n = 4000;
        BatchReport b = evaluate_policy(m, simulator::policy_actor(m, r.policy), n, seed);
        double band = std::max(3.0 * b.stddev / std::sqrt(static_cast<double>(n)), 1e-9);
        INFO("seed " << seed << " V " << v << " mean " << b.mean_return << " band " << band);
        CHECK(std::abs(b.mean_return - v) <= band);
    }
}

TEST_CASE("property: the optimal policy dominates a random actor") {
    std::vector<GroundedModel> suite{ground_librarian({}), ground_librarian(scenario::worked_example_config())};
    for (std::uint64_t seed = 700; seed < 710; ++seed) suite.push_back(xplan::testing::ground_random(seed));
    for (const auto& m : suite) {
        planner::ViResult r = planner::value_iteration(m);
        BatchReport opt = evaluate_policy(m, simulator::policy_actor(m, r.policy), 2000, 1);
        BatchReport rnd = evaluate_policy(m, random_actor(m), 2000, 1);
        CHECK(opt.mean_return >= rnd.mean_return);
    }
}

TEST_CASE("a policy that misses a reached state is an error") {
    GroundedModel m = ground_librarian({});
    planner::Policy empty;
    empty.stages.resize(static_cast<std::size_t>(m.horizon()) + 1);
    CHECK_THROWS_AS(run_episode(m, simulator::policy_actor(m, empty), 1), PolicyError);
}
