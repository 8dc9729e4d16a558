#include "mpg/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

namespace mpg::cli {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<OriginalId> region_ids(const Game& g, const VertexSet& s) {
    std::vector<OriginalId> ids;
    for (Vertex v : s.members()) ids.push_back(g.original_id(v));
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::string brace_list(const std::vector<OriginalId>& ids) {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < ids.size(); ++i) out << (i ? ", " : "") << ids[i];
    out << '}';
    return out.str();
}

// Runs body(i) for i in [0, count) on `jobs` threads.
template <typename F>
void parallel_for(std::size_t count, std::size_t jobs, F&& body) {
    jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < jobs; ++w)
        workers.emplace_back([&, w] {
            try {
                for (std::size_t i; (i = next++) < count;) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
                next = count;
            }
        });
    for (auto& t : workers) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

nlohmann::json stats_json(const Stats& s) {
    return {{"recursive_calls", s.recursive_calls},
            {"loop_iterations", s.loop_iterations},
            {"escapes_fixed", s.escapes_fixed},
            {"bulk_fixed", s.bulk_fixed},
            {"attractor_calls", s.attractor_calls},
            {"potential_reductions", s.potential_reductions},
            {"max_depth", s.max_depth},
            {"remembered_reductions", s.remembered_reductions},
            {"inclusion_checks", s.inclusion_checks}};
}

std::optional<AssertionLevel> env_assertions() {
    if (const char* v = std::getenv("MPG_ASSERT")) {
        auto level = parse_assertion_level(v);
        if (!level) throw CLI::ValidationError("MPG_ASSERT", std::string("unknown level ") + v);
        return level;
    }
    return std::nullopt;
}

struct SolverFlags {
    std::string policy = "smaller-zone";
    bool opt_init = true, opt_bulk = true, remember = true, strict = false;
    std::string assertions = "cheap";

    void attach(CLI::App* cmd) {
        cmd->add_option("--policy", policy, "smaller-zone|always-n|always-p|larger-zone|init-set-size")
            ->check(CLI::IsMember({"smaller-zone", "always-n", "always-p", "larger-zone", "init-set-size"}));
        cmd->add_flag("--opt-init,!--no-opt-init", opt_init, "initialise F with the safe set");
        cmd->add_flag("--opt-bulk,!--no-opt-bulk", opt_bulk, "fix all good escapes at once");
        cmd->add_flag("--remember-potentials,!--no-remember-potentials", remember,
                      "reuse the previous subgame potential");
        cmd->add_flag("--strict-threshold", strict, "value 0 goes to Max");
        cmd->add_option("--assert", assertions, "off|cheap|full")->check(CLI::IsMember({"off", "cheap", "full"}));
    }

    SolverConfig config() const {
        SolverConfig cfg;
        cfg.policy = *parse_policy(policy);
        cfg.opt_init = opt_init;
        cfg.opt_bulk = opt_bulk;
        cfg.remember_potentials = remember;
        cfg.threshold_mode = strict ? ThresholdMode::strict : ThresholdMode::weak;
        cfg.assertions = env_assertions().value_or(*parse_assertion_level(assertions));
        return cfg;
    }
};

std::vector<bool> toggle_values(const std::string& s) {
    if (s == "both") return {false, true};
    return {s == "on"};
}

int cmd_solve(const std::string& path, const SolverFlags& flags, bool json, std::ostream& out) {
    const Game g = parse_game(read_file(path));
    const SolverConfig cfg = flags.config();
    const SolveResult res = solve_threshold(g, cfg);
    if (json) {
        out << solve_report(g, res, cfg.threshold_mode).dump(2) << '\n';
        return ok;
    }
    out << "min_region = " << brace_list(region_ids(g, res.min_region)) << '\n';
    out << "max_region = " << brace_list(region_ids(g, res.max_region)) << '\n';
    out << "potential (" << (cfg.threshold_mode == ThresholdMode::weak ? "weak" : "strict")
        << "-preprocessed game):\n"
        << serialize_potential(g, res.potential);
    for (const auto* strategy : {&res.min_strategy, &res.max_strategy}) {
        out << (strategy == &res.min_strategy ? "min_strategy:" : "max_strategy:");
        for (const auto& [v, id] : *strategy) out << ' ' << g.original_id(v) << "->" << g.original_id(g.edge(id).dst);
        out << '\n';
    }
    return ok;
}

int cmd_values(const std::string& path, const SolverFlags& flags, bool json, std::ostream& out) {
    const Game g = parse_game(read_file(path));
    const ValueResult vr = solve_values(g, flags.config());
    nlohmann::json doc = nlohmann::json::object();
    std::vector<Vertex> order(g.n());
    for (Vertex v = 0; v < g.n(); ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g.original_id(a) < g.original_id(b); });
    for (Vertex v : order) {
        if (json) doc[std::to_string(g.original_id(v))] = vr.values[v].str();
        else out << g.original_id(v) << ' ' << vr.values[v].str() << '\n';
    }
    if (json) out << nlohmann::json{{"values", doc}, {"threshold_solves", vr.threshold_solves}}.dump(2) << '\n';
    return ok;
}

Game maybe_preprocess(const Game& g, const std::string& mode) {
    if (mode == "weak") return preprocess_no_zero_cycles(g, ThresholdMode::weak);
    if (mode == "strict") return preprocess_no_zero_cycles(g, ThresholdMode::strict);
    return g;
}

int cmd_zones(const std::string& path, const std::string& preprocess, std::ostream& out) {
    const Game g = maybe_preprocess(parse_game(read_file(path)), preprocess);
    out << zones_report(g, compute_zones(g)).dump(2) << '\n';
    return ok;
}

int cmd_check(const std::string& path, const std::string& potential_path, const std::string& preprocess,
              std::ostream& out) {
    const Game g = maybe_preprocess(parse_game(read_file(path)), preprocess);
    const Potential phi = parse_potential(read_file(potential_path), g);
    const Game reweighted = apply_potential(g, phi);
    const Zones z = compute_zones(reweighted);
    const bool reduced = is_reduced(reweighted, z);
    nlohmann::json doc = zones_report(reweighted, z);
    doc["min_region"] = region_ids(g, z.zn);
    doc["max_region"] = region_ids(g, z.zp);
    out << doc.dump(2) << '\n';
    return reduced ? ok : disagreement;
}

int cmd_bench(const std::vector<BenchInstance>& instances, const std::vector<SolverConfig>& configs,
              const std::string& csv_path, std::size_t jobs, std::ostream& out) {
    const auto records = run_bench(instances, configs, jobs);
    if (csv_path.empty() || csv_path == "-") {
        write_bench_csv(out, records);
    } else {
        std::ofstream f(csv_path);
        if (!f) throw std::runtime_error("cannot write " + csv_path);
        write_bench_csv(f, records);
        out << records.size() << " records written to " << csv_path << '\n';
    }
    return ok;
}

std::vector<BenchInstance> load_corpus(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw std::runtime_error("not a directory: " + dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".mpg") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<BenchInstance> out;
    for (const auto& p : files) out.push_back({p.stem().string(), parse_game(read_file(p.string()))});
    return out;
}

}  // namespace

std::vector<SolverConfig> all_configs(AssertionLevel assertions) {
    std::vector<SolverConfig> out;
    for (auto policy : {ChoicePolicy::smaller_zone, ChoicePolicy::always_n, ChoicePolicy::always_p,
                        ChoicePolicy::larger_zone, ChoicePolicy::init_set_size})
        for (bool init : {false, true})
            for (bool bulk : {false, true})
                for (bool remember : {false, true}) {
                    SolverConfig cfg;
                    cfg.policy = policy;
                    cfg.opt_init = init;
                    cfg.opt_bulk = bulk;
                    cfg.remember_potentials = remember;
                    cfg.assertions = assertions;
                    out.push_back(cfg);
                }
    return out;
}

std::string describe(const SolverConfig& cfg) {
    std::ostringstream out;
    out << "policy=" << to_string(cfg.policy) << " opt_init=" << cfg.opt_init << " opt_bulk=" << cfg.opt_bulk
        << " remember=" << cfg.remember_potentials
        << " threshold=" << (cfg.threshold_mode == ThresholdMode::weak ? "weak" : "strict");
    return out.str();
}

DiffOutcome run_diff(const DiffOptions& opts, const ThresholdSolver& solver) {
    const auto configs = all_configs(opts.assertions);
    std::vector<std::string> failures(opts.count);
    parallel_for(opts.count, opts.jobs, [&](std::size_t i) {
        const std::uint64_t seed = opts.seed + i;
        const Game g = gen_random(corpus_params(seed, opts.max_n, opts.max_out_degree, opts.weight_bound, opts.model));
        const BruteForceResult expected = brute_force_solve(g, opts.budget, ThresholdMode::weak);
        for (const SolverConfig& cfg : configs) {
            const SolveResult got = solver(g, cfg);
            if (got.min_region == expected.min_region) continue;
            std::ostringstream msg;
            msg << "# disagreement: seed " << seed << ", " << describe(cfg) << '\n'
                << "# solver min_region = " << brace_list(region_ids(g, got.min_region)) << '\n'
                << "# oracle min_region = " << brace_list(region_ids(g, expected.min_region)) << '\n'
                << serialize_game(g);
            failures[i] = msg.str();
            return;
        }
    });
    DiffOutcome outcome;
    outcome.count = opts.count;
    for (const auto& f : failures) {
        if (f.empty()) ++outcome.agree;
        else if (outcome.counterexample.empty()) outcome.counterexample = f;
    }
    return outcome;
}

std::string result_hash(const Game& g, const SolveResult& res) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    for (OriginalId id : region_ids(g, res.min_region)) mix(id);
    mix(~std::uint64_t{0});
    for (OriginalId id : region_ids(g, res.max_region)) mix(id);
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

std::vector<BenchRecord> run_bench(const std::vector<BenchInstance>& instances,
                                   const std::vector<SolverConfig>& configs, std::size_t jobs) {
    std::vector<BenchRecord> records(instances.size() * configs.size());
    parallel_for(records.size(), jobs, [&](std::size_t k) {
        const BenchInstance& inst = instances[k / configs.size()];
        const SolverConfig& cfg = configs[k % configs.size()];
        const auto start = std::chrono::steady_clock::now();
        const SolveResult res = solve_threshold(inst.game, cfg);
        const auto stop = std::chrono::steady_clock::now();
        BenchRecord& r = records[k];
        r.instance = inst.id;
        r.n = inst.game.n();
        r.m = inst.game.m();
        r.max_weight = inst.game.max_abs_weight();
        r.config = cfg;
        r.wall_us = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::microseconds>(stop - start).count());
        r.stats = res.stats;
        r.result_hash = result_hash(inst.game, res);
    });
    return records;
}

const char* const bench_csv_header =
    "instance,n,m,W,policy,opt_init,opt_bulk,remember,wall_us,recursive_calls,loop_iterations,"
    "escapes_fixed,bulk_fixed,attractor_calls,potential_reductions,max_depth,result_hash";

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
    out << bench_csv_header << '\n';
    for (const auto& r : records) {
        const Stats& s = r.stats;
        out << r.instance << ',' << r.n << ',' << r.m << ',' << r.max_weight << ',' << to_string(r.config.policy)
            << ',' << r.config.opt_init << ',' << r.config.opt_bulk << ',' << r.config.remember_potentials << ','
            << r.wall_us << ',' << s.recursive_calls << ',' << s.loop_iterations << ',' << s.escapes_fixed << ','
            << s.bulk_fixed << ',' << s.attractor_calls << ',' << s.potential_reductions << ',' << s.max_depth
            << ',' << r.result_hash << '\n';
    }
}

nlohmann::json solve_report(const Game& g, const SolveResult& res, ThresholdMode mode) {
    nlohmann::json potential = nlohmann::json::object();
    for (Vertex v = 0; v < g.n(); ++v) potential[std::to_string(g.original_id(v))] = potential_at(res.potential, v);
    auto strategy_json = [&](const std::map<Vertex, EdgeId>& s) {
        nlohmann::json j = nlohmann::json::object();
        for (const auto& [v, id] : s) {
            const Edge& e = g.edge(id);
            j[std::to_string(g.original_id(v))] = {{"to", g.original_id(e.dst)}, {"weight", e.weight}};
        }
        return j;
    };
    return {{"threshold_mode", mode == ThresholdMode::weak ? "weak" : "strict"},
            {"min_region", region_ids(g, res.min_region)},
            {"max_region", region_ids(g, res.max_region)},
            {"potential", potential},
            {"min_strategy", strategy_json(res.min_strategy)},
            {"max_strategy", strategy_json(res.max_strategy)},
            {"stats", stats_json(res.stats)}};
}

nlohmann::json zones_report(const Game& g, const Zones& z) {
    return {{"N", region_ids(g, z.negative)}, {"Z", region_ids(g, z.zero)}, {"P", region_ids(g, z.positive)},
            {"ZN", region_ids(g, z.zn)},      {"ZP", region_ids(g, z.zp)},   {"reduced", is_reduced(g, z)}};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Mean-payoff game solver"};
    app.require_subcommand(1);

    std::string game_path, potential_path, preprocess = "none", csv_path, corpus_dir, output;
    bool json = false;
    SolverFlags flags;

    auto* solve = app.add_subcommand("solve", "winning regions, certificate and strategies");
    solve->add_option("game", game_path)->required();
    solve->add_flag("--json", json);
    flags.attach(solve);

    auto* values = app.add_subcommand("values", "exact mean-payoff values");
    values->add_option("game", game_path)->required();
    values->add_flag("--json", json);
    values->add_option("--policy", flags.policy)
        ->check(CLI::IsMember({"smaller-zone", "always-n", "always-p", "larger-zone", "init-set-size"}));

    auto* zones = app.add_subcommand("zones", "zones N, Z, P, ZN, ZP as JSON");
    zones->add_option("game", game_path)->required();
    zones->add_option("--preprocess", preprocess, "none|weak|strict")->check(CLI::IsMember({"none", "weak", "strict"}));

    auto* check = app.add_subcommand("check", "verify a potential file as a certificate");
    check->add_option("game", game_path)->required();
    check->add_option("potential", potential_path)->required();
    bool strict_check = false, raw = false;
    check->add_flag("--strict-threshold", strict_check, "check against the strict preprocessing");
    check->add_flag("--no-preprocess", raw, "check the game as given");

    GenParams gen_params;
    std::string min_fraction = "1/2", model = "uniform";
    std::size_t plant = 0;
    auto* gen = app.add_subcommand("gen", "generate a random game");
    gen->add_option("--n", gen_params.n);
    gen->add_option("--min-degree", gen_params.min_out_degree);
    gen->add_option("--max-degree", gen_params.max_out_degree);
    gen->add_option("--weight-bound", gen_params.weight_bound);
    gen->add_option("--min-fraction", min_fraction, "probability of Min ownership as p/q");
    gen->add_option("--model", model)->check(CLI::IsMember({"uniform", "cycle-heavy", "layered"}));
    gen->add_option("--seed", gen_params.seed);
    gen->add_option("--plant-zero-cycle", plant, "add a zero-weight cycle of this length");
    gen->add_option("-o,--output", output);

    DiffOptions diff_opts;
    std::string diff_assert = "cheap";
    bool inject_fault = false;
    auto* diff = app.add_subcommand("diff", "compare against the brute-force oracle");
    diff->add_option("--seed", diff_opts.seed);
    diff->add_option("--count", diff_opts.count);
    diff->add_option("--max-n", diff_opts.max_n);
    diff->add_option("--max-degree", diff_opts.max_out_degree);
    diff->add_option("--weight-bound", diff_opts.weight_bound);
    diff->add_option("--budget", diff_opts.budget);
    diff->add_option("--jobs", diff_opts.jobs);
    diff->add_option("--model", model)->check(CLI::IsMember({"uniform", "cycle-heavy", "layered"}));
    diff->add_option("--assert", diff_assert)->check(CLI::IsMember({"off", "cheap", "full"}));
    diff->add_flag("--inject-fault", inject_fault)->group("");

    std::vector<std::string> policies{"smaller-zone"};
    std::string init_mode = "on", bulk_mode = "on", remember_mode = "on", bench_assert = "cheap";
    std::size_t bench_count = 10, jobs = 1;
    GenParams bench_params;
    bench_params.n = 100;
    auto* bench = app.add_subcommand("bench", "time the solver and emit CSV");
    bench->add_option("--corpus", corpus_dir, "directory of .mpg files");
    bench->add_option("--count", bench_count, "generated instances when no corpus is given");
    bench->add_option("--n", bench_params.n);
    bench->add_option("--max-degree", bench_params.max_out_degree);
    bench->add_option("--weight-bound", bench_params.weight_bound);
    bench->add_option("--model", model)->check(CLI::IsMember({"uniform", "cycle-heavy", "layered"}));
    bench->add_option("--seed", bench_params.seed);
    bench->add_option("--csv", csv_path, "output path, '-' for stdout");
    bench->add_option("--policy", policies)
        ->check(CLI::IsMember({"smaller-zone", "always-n", "always-p", "larger-zone", "init-set-size"}));
    const auto toggle = CLI::IsMember({"on", "off", "both"});
    bench->add_option("--opt-init", init_mode)->check(toggle);
    bench->add_option("--opt-bulk", bulk_mode)->check(toggle);
    bench->add_option("--remember-potentials", remember_mode)->check(toggle);
    bench->add_option("--assert", bench_assert)->check(CLI::IsMember({"off", "cheap", "full"}));
    bench->add_option("--jobs", jobs);

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    }

    try {
        if (*solve) return cmd_solve(game_path, flags, json, out);
        if (*values) return cmd_values(game_path, flags, json, out);
        if (*zones) return cmd_zones(game_path, preprocess, out);
        if (*check) return cmd_check(game_path, potential_path, raw ? "none" : strict_check ? "strict" : "weak", out);
        if (*gen) {
            const auto slash = min_fraction.find('/');
            if (slash == std::string::npos) throw std::invalid_argument("--min-fraction must be p/q");
            gen_params.min_fraction_num = std::stoull(min_fraction.substr(0, slash));
            gen_params.min_fraction_den = std::stoull(min_fraction.substr(slash + 1));
            gen_params.model = *parse_model(model);
            Game g = gen_random(gen_params);
            if (plant) {
                SplitMix64 rng(gen_params.seed ^ 0x5a5a5a5a5a5a5a5aULL);
                g = plant_zero_cycle(g, plant, false, rng);
            }
            if (output.empty()) {
                out << serialize_game(g);
            } else {
                std::ofstream f(output);
                if (!f) throw std::runtime_error("cannot write " + output);
                f << serialize_game(g);
            }
            return ok;
        }
        if (*diff) {
            diff_opts.model = *parse_model(model);
            diff_opts.assertions = env_assertions().value_or(*parse_assertion_level(diff_assert));
            ThresholdSolver solver = solve_threshold;
            if (inject_fault)
                solver = [](const Game& g, const SolverConfig& cfg) {
                    SolveResult r = solve_threshold(g, cfg);
                    if (!r.min_region.erase(0)) r.min_region.insert(0);
                    return r;
                };
            const DiffOutcome o = run_diff(diff_opts, solver);
            if (!o.counterexample.empty()) {
                out << o.counterexample;
                out << o.agree << '/' << o.count << " agree\n";
                return disagreement;
            }
            out << o.agree << '/' << o.count << " agree\n";
            return ok;
        }
        if (*bench) {
            std::vector<BenchInstance> instances;
            if (!corpus_dir.empty()) {
                instances = load_corpus(corpus_dir);
            } else {
                bench_params.model = *parse_model(model);
                for (std::size_t i = 0; i < bench_count; ++i) {
                    GenParams p = bench_params;
                    p.seed = bench_params.seed + i;
                    instances.push_back({"gen-" + std::to_string(p.seed), gen_random(p)});
                }
            }
            std::vector<SolverConfig> configs;
            const AssertionLevel level = env_assertions().value_or(*parse_assertion_level(bench_assert));
            for (const auto& name : policies)
                for (bool init : toggle_values(init_mode))
                    for (bool bulk : toggle_values(bulk_mode))
                        for (bool remember : toggle_values(remember_mode)) {
                            SolverConfig cfg;
                            cfg.policy = *parse_policy(name);
                            cfg.opt_init = init;
                            cfg.opt_bulk = bulk;
                            cfg.remember_potentials = remember;
                            cfg.assertions = level;
                            configs.push_back(cfg);
                        }
            return cmd_bench(instances, configs, csv_path, jobs, out);
        }
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << '\n';
        return internal_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    }
    return input_error;
}

}  // namespace mpg::cli
