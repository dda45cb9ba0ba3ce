#include "xplan/cli/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <ostream>

#include <CLI11.hpp>

#include "xplan/errors.hpp"
#include "xplan/grounding/model.hpp"
#include "xplan/io/export.hpp"
#include "xplan/lang/diagnostic.hpp"
#include "xplan/lang/parser.hpp"
#include "xplan/lang/validate.hpp"
#include "xplan/planner/planner.hpp"
#include "xplan/planner/uct.hpp"
#include "xplan/scenario/librarian.hpp"
#include "xplan/simulator/simulator.hpp"

namespace xplan::cli {

namespace fs = std::filesystem;

namespace {

struct ModelArgs {
    std::string domain;
    std::string instance;
    std::uint64_t action_cap = grounding::GroundOptions{}.max_actions;
    int horizon = -1; // -1: keep the instance's horizon
};

struct Options {
    ModelArgs model;
    std::string out_dir;
    std::uint64_t seed = 0;
    CLI::Option* seed_opt = nullptr;
    int threads = 1;
    std::uint64_t state_cap = planner::ViOptions{}.state_cap;
    std::uint64_t node_cap = planner::OracleOptions{}.node_cap;

    // plan
    std::string planner = "vi";
    std::uint64_t budget = 10000;
    std::string mode = "most-likely";

    // simulate
    std::size_t episodes = 1000;
    std::string actor = "policy";
    bool write_traces = false;

    // oracle
    bool exhaustive = false;

    // gen-librarian
    std::string config;
};

void add_model_options(CLI::App* cmd, Options& o, bool with_horizon) {
    cmd->add_option("--domain", o.model.domain, "Domain file (.xrddl)")->required();
    cmd->add_option("--instance", o.model.instance, "Instance file (.xrddl)")->required();
    cmd->add_option("--action-cap", o.model.action_cap, "Maximum ground actions, including the no-op");
    if (with_horizon) {
        cmd->add_option("--horizon", o.model.horizon, "Override the instance horizon")->check(CLI::NonNegativeNumber);
    }
}

lang::CheckedModel load_checked(const ModelArgs& m) {
    std::string domain_text = io::read_text_file(m.domain);
    std::string instance_text = io::read_text_file(m.instance);
    return lang::validate(lang::parse_domain(domain_text), lang::parse_instance(instance_text));
}

grounding::GroundedModel load_model(const ModelArgs& m) {
    grounding::GroundOptions go;
    go.max_actions = m.action_cap;
    grounding::GroundedModel g = grounding::ground(load_checked(m), go);
    return m.horizon >= 0 ? g.with_horizon(m.horizon) : g;
}

std::uint64_t require_seed(const Options& o, const std::string& why) {
    if (!o.seed_opt || o.seed_opt->count() == 0) throw InputError(why + " requires an explicit --seed");
    return o.seed;
}

fs::path output_dir(const Options& o) {
    if (o.out_dir.empty()) throw InputError("--out is required");
    std::error_code ec;
    fs::create_directories(o.out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + o.out_dir + "': " + ec.message());
    return fs::path(o.out_dir);
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

int cmd_validate(const Options& o, std::ostream&) {
    // Grounding as well catches the action cap and non-fluent evaluation errors.
    load_model(o.model);
    return kOk;
}

int cmd_ground(const Options& o, std::ostream& out) {
    grounding::GroundedModel g = load_model(o.model);
    std::string text = dump(io::ground_dump(g));
    if (o.out_dir.empty()) {
        out << text;
        return kOk;
    }
    fs::path path = output_dir(o) / "ground.json";
    io::write_text_file(path, text);
    out << g.actions().size() << " ground actions, " << g.state_fluents().size() << " state fluents; wrote "
        << path.string() << '\n';
    return kOk;
}

int cmd_plan(const Options& o, std::ostream& out) {
    if (o.planner != "vi" && o.planner != "sample") throw InputError("--planner must be vi or sample");
    if (o.mode != "most-likely" && o.mode != "sampled") throw InputError("--mode must be most-likely or sampled");
    planner::ExtractOptions extract;
    if (o.mode == "sampled") {
        extract.mode = planner::Successors::sampled;
        extract.seed = require_seed(o, "--mode sampled");
    }
    std::uint64_t uct_seed = o.planner == "sample" ? require_seed(o, "--planner sample") : 0;
    fs::path dir = output_dir(o);
    grounding::GroundedModel g = load_model(o.model);

    planner::PlanTrace trace;
    std::string detail;
    if (o.planner == "vi") {
        planner::ViOptions vo;
        vo.state_cap = o.state_cap;
        vo.threads = o.threads;
        planner::ViResult vi = planner::value_iteration(g, vo);
        trace = planner::extract_plan(g, vi.policy, g.initial_state(), extract);
        io::write_text_file(dir / "policy.json", dump(io::policy_json(g, vi.policy)));
        io::write_text_file(dir / "values.json", dump(io::values_json(vi.values)));
        auto v0 = vi.values.value(g.horizon(), g.state_index(g.initial_state()));
        detail = "V(s0) = " + io::number(v0.value_or(0.0)) + ", " + std::to_string(vi.entries) + " state-stage entries";
    } else {
        trace = planner::rollout(g, planner::uct_actor(g, o.budget, uct_seed), g.initial_state(), extract);
        detail = "budget " + std::to_string(o.budget) + ", seed " + std::to_string(uct_seed);
    }
    io::write_text_file(dir / "plan.json", dump(io::plan_json(g, trace)));
    io::write_text_file(dir / "plan.jsonl", io::plan_jsonl(g, trace));
    io::write_text_file(dir / "plan.txt", io::plan_text(g, trace));
    out << "planner " << o.planner << ": " << trace.steps.size() << " steps, return " << io::number(trace.total_return)
        << " (" << detail << "); wrote " << (dir / "plan.txt").string() << '\n';
    return kOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
    std::uint64_t seed = require_seed(o, "simulate");
    if (o.episodes == 0) throw InputError("--episodes must be at least 1");
    if (o.actor != "policy" && o.actor != "sample" && o.actor != "random") {
        throw InputError("--actor must be policy, sample or random");
    }
    fs::path dir = output_dir(o);
    grounding::GroundedModel g = load_model(o.model);

    planner::ViResult vi;
    simulator::ActorFactory actor;
    if (o.actor == "policy") {
        planner::ViOptions vo;
        vo.state_cap = o.state_cap;
        vo.threads = o.threads;
        vi = planner::value_iteration(g, vo);
        actor = simulator::policy_actor(g, vi.policy);
    } else if (o.actor == "sample") {
        actor = simulator::uct_actor(g, o.budget);
    } else {
        actor = simulator::random_actor(g);
    }
    simulator::BatchReport report = simulator::evaluate_policy(g, actor, o.episodes, seed, o.threads);
    io::write_text_file(dir / "report.json", dump(io::batch_json(report)));
    io::write_text_file(dir / "report.csv", io::batch_csv(report));
    if (o.write_traces) {
        std::string lines;
        for (std::size_t i = 0; i < report.episodes(); ++i) {
            simulator::EpisodeReport e = simulator::run_episode(g, actor, report.seeds[i]);
            nlohmann::json trace = io::plan_json(g, e.trace);
            for (auto step : trace["steps"]) {
                step["episode"] = i;
                lines += step.dump() + "\n";
            }
        }
        io::write_text_file(dir / "traces.jsonl", lines);
    }
    out << report.episodes() << " episodes (" << o.actor << "): mean return " << io::number(report.mean_return)
        << ", stddev " << io::number(report.stddev) << ", explained " << report.explained_episodes << "; wrote "
        << (dir / "report.json").string() << '\n';
    return kOk;
}

int cmd_oracle(const Options& o, std::ostream& out) {
    grounding::GroundedModel g = load_model(o.model);
    planner::OracleOptions oo;
    oo.node_cap = o.node_cap;
    oo.memoize = !o.exhaustive;
    planner::OracleResult r = planner::expectimax_oracle(g, g.initial_state(), g.horizon(), oo);
    out << io::number(r.value) << '\n';
    return kOk;
}

int cmd_gen_librarian(const Options& o, std::ostream& out) {
    scenario::LibrarianConfig config;
    if (!o.config.empty()) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(io::read_text_file(o.config));
        } catch (const nlohmann::json::parse_error& e) {
            throw InputError("config '" + o.config + "' is not valid JSON: " + e.what());
        }
        config = scenario::config_from_json(j);
    }
    scenario::LibrarianFiles files = scenario::build_librarian(config);
    scenario::check_librarian(files);
    fs::path dir = output_dir(o);
    io::write_text_file(dir / "domain.xrddl", files.domain_text);
    io::write_text_file(dir / "instance.xrddl", files.instance_text);
    out << "wrote " << (dir / "domain.xrddl").string() << " and " << (dir / "instance.xrddl").string() << '\n';
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Plan explanations for a robot under uncertain user preferences", "xplan"};
    app.require_subcommand(1);
    Options o;

    auto* validate = app.add_subcommand("validate", "Parse and validate a domain/instance pair");
    add_model_options(validate, o, false);

    auto* ground = app.add_subcommand("ground", "Dump the ground model as JSON");
    add_model_options(ground, o, true);
    ground->add_option("--out", o.out_dir, "Write ground.json here instead of standard output");

    auto* plan = app.add_subcommand("plan", "Solve and write the plan trace");
    add_model_options(plan, o, true);
    plan->add_option("--out", o.out_dir, "Output directory")->required();
    plan->add_option("--planner", o.planner, "vi (exact) or sample (UCT)");
    plan->add_option("--budget", o.budget, "UCT simulations per decision")->check(CLI::PositiveNumber);
    plan->add_option("--mode", o.mode, "Successor choice: most-likely or sampled");

    auto* simulate = app.add_subcommand("simulate", "Run seeded episodes and report returns");
    add_model_options(simulate, o, true);
    simulate->add_option("--out", o.out_dir, "Output directory")->required();
    simulate->add_option("--episodes", o.episodes, "Number of episodes");
    simulate->add_option("--actor", o.actor, "policy (value iteration), sample (UCT) or random");
    simulate->add_option("--budget", o.budget, "UCT simulations per decision")->check(CLI::PositiveNumber);
    simulate->add_flag("--traces", o.write_traces, "Also write every episode's steps to traces.jsonl");

    auto* oracle = app.add_subcommand("oracle", "Exact optimal value by exhaustive search");
    add_model_options(oracle, o, true);
    oracle->add_flag("--exhaustive", o.exhaustive, "Disable memoization of repeated (state, depth) nodes");

    auto* gen = app.add_subcommand("gen-librarian", "Generate the librarian domain and instance");
    gen->add_option("--config", o.config, "JSON configuration (defaults when omitted)");
    gen->add_option("--out", o.out_dir, "Output directory")->required();

    for (auto* cmd : {plan, simulate}) {
        cmd->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
        cmd->add_option("--state-cap", o.state_cap, "Maximum (state, stage) entries for value iteration");
    }
    plan->add_option("--seed", o.seed, "Seed for randomized planning");
    auto* plan_seed = plan->get_option("--seed");
    auto* sim_seed = simulate->add_option("--seed", o.seed, "Base seed of the episode schedule");
    oracle->add_option("--node-cap", o.node_cap, "Maximum search nodes");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInput;
    }
    if (plan->parsed()) o.seed_opt = plan_seed;
    if (simulate->parsed()) o.seed_opt = sim_seed;

    try {
        if (validate->parsed()) return cmd_validate(o, out);
        if (ground->parsed()) return cmd_ground(o, out);
        if (plan->parsed()) return cmd_plan(o, out);
        if (simulate->parsed()) return cmd_simulate(o, out);
        if (oracle->parsed()) return cmd_oracle(o, out);
        if (gen->parsed()) return cmd_gen_librarian(o, out);
    } catch (const lang::ValidationError& e) {
        for (const auto& d : e.diagnostics()) err << d.format() << '\n';
        return kInput;
    } catch (const lang::ParseError& e) {
        err << e.diagnostic().format() << '\n';
        return kInput;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInput;
    } catch (const EvalError& e) {
        err << "error: " << e.what() << '\n';
        return kInput;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kCap;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kInternal;
}

} // namespace xplan::cli
