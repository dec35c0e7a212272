#include "omega/cli.hpp"
#include "omega/error.hpp"
#include "omega/hoa.hpp"
#include "omega/mdp_json.hpp"
#include "omega/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

namespace omega {
namespace {

struct Common {
    std::string mdp;
    std::string hoa;
    std::vector<double> zeta;
    std::uint64_t seed = 0;
    std::string out;
    double tol = 1e-10;
    bool assume_gfm = false;
    bool complete_automaton = false;
    bool timing = false;
};

struct Options {
    Common common;
    std::string mode = "total";
    std::size_t max_iter = 1'000'000;
    bool full = false;
    // learn
    LearnConfig learn;
    std::string curve;
    // verify
    std::size_t policies = 50;
    std::size_t tail_episodes = 10'000;
    double identity_tol = 1e-8;
    double bound_tol = 1e-9;
    double prob1_tol = 1e-6;
    double theorem3_tol = 1e-12;
    // sweep
    std::string grid;
    std::string csv;
};

void add_common(CLI::App* app, Common& c, bool needs_mdp, bool needs_hoa) {
    auto* m = app->add_option("--mdp", c.mdp, "MDP file (JSON)");
    auto* h = app->add_option("--hoa", c.hoa, "Buchi automaton (HOA subset)");
    if (needs_mdp) m->required();
    if (needs_hoa) h->required();
    app->add_option("--zeta", c.zeta, "zeta value(s), comma separated")->delimiter(',');
    app->add_option("--seed", c.seed, "random seed");
    app->add_option("--out", c.out, "write the JSON report here instead of stdout");
    app->add_option("--tol", c.tol, "solver tolerance");
    app->add_flag("--assume-gfm", c.assume_gfm, "treat a nondeterministic automaton as good-for-MDPs");
    app->add_flag("--complete-automaton", c.complete_automaton, "add a rejecting trap state for missing transitions");
    app->add_flag("--timing", c.timing, "record wall-clock time in the report");
}

Nba load_automaton(const Common& c) {
    Nba a = load_hoa(c.hoa);
    if (c.assume_gfm) a.gfm_asserted = true;
    if (c.complete_automaton) a = complete_with_trap(a);
    return a;
}

ProductMdp load_product(const Common& c, bool full = false) {
    const Mdp m = load_mdp(c.mdp);
    require_valid(m);
    return build_product(m, load_automaton(c), ProductOptions{!full});
}

double single_zeta(const Common& c, double fallback) {
    if (c.zeta.empty()) return fallback;
    if (c.zeta.size() > 1) throw SemanticError(SemanticError::Kind::InvalidArgument, "expected a single --zeta value");
    return c.zeta.front();
}

std::vector<double> parse_grid(const std::string& spec) {
    // lo:hi:step, inclusive of hi up to rounding; values rounded to 12 digits.
    std::vector<double> out;
    std::istringstream is(spec);
    double lo, hi, step;
    char c1, c2;
    if (!(is >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0.0))
        throw SemanticError(SemanticError::Kind::InvalidArgument, "grid must look like lo:hi:step");
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) out.push_back(std::round((lo + static_cast<double>(i) * step) * 1e12) / 1e12);
    return out;
}

SolveOptions solve_options(const Options& o) {
    SolveOptions s;
    s.tol = o.common.tol;
    s.max_iter = o.max_iter;
    return s;
}

Json inputs_json(const Common& c) {
    Json j = Json::object();
    if (!c.mdp.empty()) j["mdp"] = c.mdp;
    if (!c.hoa.empty()) j["hoa"] = c.hoa;
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write " + path);
    f << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reward shaping for omega-regular objectives on MDPs", "omega-shape"};
    app.require_subcommand(1);
    Options o;

    auto* validate_cmd = app.add_subcommand("validate", "check an MDP and/or automaton file");
    add_common(validate_cmd, o.common, false, false);

    auto* product_cmd = app.add_subcommand("product", "build the product (or, with --zeta, a shaped model)");
    add_common(product_cmd, o.common, true, true);
    product_cmd->add_option("--mode", o.mode, "reach | total | biased");
    product_cmd->add_flag("--full", o.full, "keep unreachable product states");

    auto* solve_cmd = app.add_subcommand("solve", "optimal values and strategy of a shaped model");
    add_common(solve_cmd, o.common, true, true);
    solve_cmd->add_option("--mode", o.mode, "reach | total | biased");
    solve_cmd->add_option("--max-iter", o.max_iter, "value iteration limit");

    auto* oracle_cmd = app.add_subcommand("oracle", "end components and Buchi satisfaction probabilities");
    add_common(oracle_cmd, o.common, true, true);

    auto* learn_cmd = app.add_subcommand("learn", "tabular Q-learning on the shaped model");
    add_common(learn_cmd, o.common, true, true);
    learn_cmd->add_option("--mode", o.mode, "total | reach | biased (biased learns through the total-reward simulator)");
    learn_cmd->add_option("--episodes", o.learn.episodes, "number of episodes");
    learn_cmd->add_option("--alpha0", o.learn.alpha0, "initial learning rate");
    learn_cmd->add_option("--epsilon0", o.learn.epsilon0, "initial exploration rate");
    learn_cmd->add_option("--epsilon-final", o.learn.epsilon_final, "final exploration rate");
    learn_cmd->add_option("--max-steps", o.learn.max_steps, "episode step cap");
    learn_cmd->add_flag("--optimistic", o.learn.optimistic, "initialize q at the value bound");
    learn_cmd->add_option("--curve", o.curve, "write the per-episode learning curve as CSV");

    auto* verify_cmd = app.add_subcommand("verify", "check the shaping identities on an instance");
    add_common(verify_cmd, o.common, true, true);
    verify_cmd->add_option("--policies", o.policies, "random positional strategies per zeta");
    verify_cmd->add_option("--tail-episodes", o.tail_episodes, "Monte Carlo episodes for the tail check");
    verify_cmd->add_option("--identity-tol", o.identity_tol);
    verify_cmd->add_option("--bound-tol", o.bound_tol);
    verify_cmd->add_option("--prob1-tol", o.prob1_tol);
    verify_cmd->add_option("--theorem3-tol", o.theorem3_tol);

    auto* sweep_cmd = app.add_subcommand("sweep", "greedy total-reward strategy versus the Buchi optimum over a zeta grid");
    add_common(sweep_cmd, o.common, true, true);
    sweep_cmd->add_option("--grid", o.grid, "lo:hi:step (alternative to --zeta)");
    sweep_cmd->add_option("--csv", o.csv, "write the sweep as CSV");

    std::vector<std::string> argv_store{"omega-shape"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    const auto started = std::chrono::steady_clock::now();
    CLI::App* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    Json config = Json::object();
    Json result;
    int code = kExitOk;

    try {
        if (name == "validate") {
            if (o.common.mdp.empty() && o.common.hoa.empty())
                throw SemanticError(SemanticError::Kind::InvalidArgument, "validate needs --mdp and/or --hoa");
            result = Json::object();
            if (!o.common.mdp.empty()) {
                const auto diags = validate(load_mdp(o.common.mdp));
                result["mdp"]["diagnostics"] = diags;
                if (!diags.empty()) code = kExitValidation;
            }
            if (!o.common.hoa.empty()) {
                const Nba a = load_automaton(o.common);
                auto& h = result["hoa"];
                h["states"] = a.num_states;
                h["transitions"] = a.transitions.size();
                h["accepting"] = a.num_accepting();
                h["deterministic"] = is_deterministic(a);
                h["complete"] = is_complete(a);
                h["gfm_asserted"] = a.gfm_asserted;
            }
        } else if (name == "product") {
            const auto p = load_product(o.common, o.full);
            config["full"] = o.full;
            if (o.common.zeta.empty()) {
                result = product_to_json(p);
            } else {
                const double zeta = single_zeta(o.common, 0.9);
                config["zeta"] = zeta;
                config["mode"] = o.mode;
                result = augmented_to_json(augment(p, zeta, parse_mode(o.mode)));
            }
        } else if (name == "solve") {
            const double zeta = single_zeta(o.common, 0.9);
            config["zeta"] = zeta;
            config["mode"] = o.mode;
            config["tol"] = o.common.tol;
            config["max_iter"] = o.max_iter;
            const auto model = augment(load_product(o.common), zeta, parse_mode(o.mode));
            result = solve_to_json(model, solve_optimal(model, solve_options(o)));
        } else if (name == "oracle") {
            const auto p = load_product(o.common);
            result = oracle_to_json(p, buchi_value(p));
        } else if (name == "learn") {
            o.learn.zeta = single_zeta(o.common, 0.9);
            o.learn.seed = o.common.seed;
            o.learn.mode = parse_mode(o.mode);
            config["zeta"] = o.learn.zeta;
            config["mode"] = o.mode;
            config["episodes"] = o.learn.episodes;
            config["max_steps"] = o.learn.max_steps;
            config["alpha0"] = o.learn.alpha0;
            config["alpha_visits"] = o.learn.alpha_visits;
            config["epsilon0"] = o.learn.epsilon0;
            config["epsilon_final"] = o.learn.epsilon_final;
            config["optimistic"] = o.learn.optimistic;
            config["seed"] = o.learn.seed;
            const auto r = train(load_product(o.common), o.learn);
            result = learn_to_json(r);
            if (!o.curve.empty()) {
                std::ostringstream csv;
                write_curve_csv(csv, r.curve);
                write_text(o.curve, csv.str());
            }
        } else if (name == "verify") {
            VerifyOptions v;
            if (!o.common.zeta.empty()) v.zetas = o.common.zeta;
            v.random_policies = o.policies;
            v.seed = o.common.seed;
            v.identity_tol = o.identity_tol;
            v.bound_tol = o.bound_tol;
            v.prob1_tol = o.prob1_tol;
            v.theorem3_tol = o.theorem3_tol;
            v.tail_episodes = o.tail_episodes;
            v.solve = solve_options(o);
            config["zetas"] = v.zetas;
            config["policies"] = v.random_policies;
            config["seed"] = v.seed;
            config["tail_episodes"] = v.tail_episodes;
            config["identity_tol"] = v.identity_tol;
            config["bound_tol"] = v.bound_tol;
            config["prob1_tol"] = v.prob1_tol;
            config["theorem3_tol"] = v.theorem3_tol;
            const auto report = verify(load_product(o.common), v);
            result = verify_to_json(report);
            if (!report.pass()) code = kExitVerificationFailed;
        } else if (name == "sweep") {
            std::vector<double> grid = o.common.zeta;
            if (!o.grid.empty()) grid = parse_grid(o.grid);
            if (grid.empty()) grid = parse_grid("0.1:0.9:0.1");
            config["grid"] = grid;
            const auto report = sweep(load_product(o.common), grid, 1e-9, solve_options(o));
            result = sweep_to_json(report);
            if (!o.csv.empty()) {
                std::ostringstream csv;
                write_sweep_csv(csv, report);
                write_text(o.csv, csv.str());
            }
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const SemanticError& e) {
        using K = SemanticError::Kind;
        err << "error: " << e.what() << "\n";
        switch (e.kind) {
        case K::InvalidArgument: return kExitUsage;
        case K::AlphabetMismatch:
        case K::IncompleteAutomaton:
        case K::SubStochasticPair: return kExitValidation;
        default: return kExitParse;
        }
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ConvergenceError& e) {
        err << "convergence error: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }

    Json envelope;
    envelope["command"] = name;
    envelope["inputs"] = inputs_json(o.common);
    envelope["config"] = std::move(config);
    envelope["result"] = std::move(result);
    if (o.common.timing) {
        const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
        envelope["timing"]["elapsed_ms"] = ms;
    } else {
        envelope["timing"] = nullptr;
    }
    const std::string text = envelope.dump(2) + "\n";
    if (o.common.out.empty()) {
        out << text;
    } else {
        try {
            write_text(o.common.out, text);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return kExitInternal;
        }
    }
    return code;
}

}  // namespace omega
