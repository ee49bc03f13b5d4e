#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dwsc/operators.hpp"
#include "dwsc/pipeline.hpp"

namespace dwsc {

enum class Ablation { Full, NoLocalSearch, Type1Only, Type2Only };

// How often the local-search probability is rolled: for every offspring, or
// once per generation for a single randomly chosen offspring.
enum class LsGranularity { PerIndividual, PerGeneration };

struct RunConfig {
    std::size_t population_size = 100;
    std::size_t generations = 100;
    double p_crossover = 0.95;
    double p_mutation = 0.05;
    double p_local_search = 0.05;
    std::size_t neighborhood_size = 20;  // even
    std::size_t elitism = 2;
    std::size_t tournament_k = 2;
    std::uint64_t seed = 1;
    Ablation ablation = Ablation::Full;
    EqInterpretation eq_interpretation = EqInterpretation::Once;
    ProviderChoice provider_choice = ProviderChoice::Earliest;
    LsGranularity ls_granularity = LsGranularity::PerIndividual;

    // Throws std::invalid_argument on out-of-range values.
    void validate() const;
};

struct GenerationRow {
    std::size_t generation = 0;
    double best_f = 0.0;
    double mean_f = 0.0;
    double std_f = 0.0;
    std::int64_t elapsed_ms = 0;  // cumulative wall clock when the row was recorded
    std::uint64_t ls_t1_improved = 0;
    std::uint64_t ls_t2_improved = 0;
    std::uint64_t ls_none = 0;
};

struct RunResult {
    Genome best;  // best individual ever observed
    std::vector<GenerationRow> rows;
    RunConfig config;
    std::string instance_digest;
    double time_bound = 0.0;
    double cost_bound = 0.0;
    std::uint64_t clamp_count = 0;
    std::uint64_t audit_violations = 0;
    std::uint64_t ls_t1_total = 0;
    std::uint64_t ls_t2_total = 0;
    std::uint64_t ls_none_total = 0;
    std::int64_t wall_clock_ms = 0;
};

struct EvolveOptions {
    unsigned threads = 0;  // 0: default_threads()
    // Validates every individual of every generation against the full set of
    // workflow invariants and the fitness range; violations are counted in
    // RunResult::audit_violations.
    bool audit = false;
};

// Population of uniformly random full-repository permutations, each decoded,
// stripped and evaluated. Throws InfeasibleError when the instance cannot
// satisfy its task.
std::vector<Genome> init_population(const EvalContext& ctx, const RunConfig& config,
                                    unsigned threads);

// Generational loop: elites carried unchanged, the remainder bred by
// tournament selection, crossover, mutation and bottleneck local search.
// Deterministic for a fixed (instance, config), independent of thread count.
RunResult evolve(const ProblemInstance& instance, const RunConfig& config,
                 const EvolveOptions& options = {});

}  // namespace dwsc
