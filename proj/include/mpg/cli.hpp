#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "mpg/generators.hpp"
#include "mpg/oracles.hpp"
#include "mpg/solver.hpp"

namespace mpg::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { ok = 0, disagreement = 1, input_error = 2, internal_error = 3 };

/// Entry point; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Every policy × opt_init × opt_bulk × remember_potentials combination.
std::vector<SolverConfig> all_configs(AssertionLevel assertions = AssertionLevel::cheap);

std::string describe(const SolverConfig& cfg);

using ThresholdSolver = std::function<SolveResult(const Game&, const SolverConfig&)>;

struct DiffOptions {
    std::uint64_t seed = 0;
    std::size_t count = 100;
    std::size_t max_n = 8;
    std::size_t max_out_degree = 3;
    Weight weight_bound = 4;
    GenModel model = GenModel::uniform;
    std::uint64_t budget = default_budget;
    std::size_t jobs = 1;
    AssertionLevel assertions = AssertionLevel::cheap;
};

struct DiffOutcome {
    std::size_t count = 0;
    std::size_t agree = 0;
    /// Game file and both answers for the first disagreeing instance.
    std::string counterexample;
};

/// Compares `solver` under all configurations with brute_force_solve on a generated corpus.
DiffOutcome run_diff(const DiffOptions& opts, const ThresholdSolver& solver = solve_threshold);

struct BenchInstance {
    std::string id;
    Game game;
};

struct BenchRecord {
    std::string instance;
    std::size_t n = 0, m = 0;
    Weight max_weight = 0;
    SolverConfig config;
    std::uint64_t wall_us = 0;
    Stats stats;
    std::string result_hash;
};

std::vector<BenchRecord> run_bench(const std::vector<BenchInstance>& instances,
                                   const std::vector<SolverConfig>& configs, std::size_t jobs = 1);

extern const char* const bench_csv_header;
void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);

/// FNV-1a over the region partition by original id.
std::string result_hash(const Game& g, const SolveResult& res);

nlohmann::json solve_report(const Game& g, const SolveResult& res, ThresholdMode mode);
nlohmann::json zones_report(const Game& g, const Zones& z);

}  // namespace mpg::cli
