#include "dwsc/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dwsc/bundle.hpp"
#include "dwsc/parallel.hpp"
#include "dwsc/util.hpp"

namespace dwsc {
namespace {

// Sub-seed tags so that every operator pipeline draws from its own stream.
constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kBreedStream = 2;
constexpr std::uint64_t kGenLsStream = 3;

struct SlotOutput {
    Genome child[2];
    ImprovementKind improved[2] = {ImprovementKind::None, ImprovementKind::None};
    bool ls_invoked[2] = {false, false};
};

void count_ls(const LocalSearchResult& r, bool& invoked, ImprovementKind& kind) {
    invoked = true;
    kind = r.improved_by;
}

double mean_of(const std::vector<Genome>& pop) {
    double sum = 0.0;
    for (const Genome& g : pop) sum += g.fit->fitness;
    return sum / static_cast<double>(pop.size());
}

GenerationRow make_row(std::size_t gen, const std::vector<Genome>& pop, std::int64_t elapsed_ms) {
    GenerationRow row;
    row.generation = gen;
    row.elapsed_ms = elapsed_ms;
    row.best_f = pop.front().fit->fitness;
    double mean = mean_of(pop);
    double var = 0.0;
    for (const Genome& g : pop) {
        double f = g.fit->fitness;
        row.best_f = std::min(row.best_f, f);
        var += (f - mean) * (f - mean);
    }
    row.mean_f = mean;
    row.std_f = std::sqrt(var / static_cast<double>(pop.size()));
    return row;
}

}  // namespace

void RunConfig::validate() const {
    if (population_size == 0) throw std::invalid_argument("population_size must be >= 1");
    if (elitism > population_size)
        throw std::invalid_argument("elitism cannot exceed population_size");
    if (tournament_k == 0 || tournament_k > population_size)
        throw std::invalid_argument("tournament_k must be in [1, population_size]");
    for (double p : {p_crossover, p_mutation, p_local_search})
        if (p < 0.0 || p > 1.0) throw std::invalid_argument("probabilities must be in [0, 1]");
    if (neighborhood_size == 0 || neighborhood_size % 2 != 0)
        throw std::invalid_argument("neighborhood_size must be a positive even number");
}

std::vector<Genome> init_population(const EvalContext& ctx, const RunConfig& config,
                                    unsigned threads) {
    const std::size_t n = ctx.instance.size();
    std::vector<Genome> pop(config.population_size);
    parallel_for(config.population_size, threads, [&](std::size_t slot) {
        Rng rng(derive_seed(config.seed, 0, slot, kInitStream));
        std::vector<ServiceId> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        rng.shuffle(perm);
        pop[slot] = make_individual(std::move(perm), ctx, rng);
    });
    return pop;
}

RunResult evolve(const ProblemInstance& instance, const RunConfig& config,
                 const EvolveOptions& options) {
    config.validate();
    if (!instance.finalized()) throw std::invalid_argument("instance not finalized");
    if (!forward_feasible(instance))
        throw InfeasibleError("task outputs are not reachable from the task inputs");

    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed_ms = [&] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    };

    const unsigned threads = options.threads ? options.threads : default_threads();
    Evaluator evaluator(instance, config.eq_interpretation);
    EvalContext ctx{instance, evaluator, config.provider_choice};

    std::atomic<std::uint64_t> audit_violations{0};
    auto audit_population = [&](const std::vector<Genome>& pop) {
        if (!options.audit) return;
        parallel_for(pop.size(), threads, [&](std::size_t i) {
            const Genome& g = pop[i];
            bool bad = !g.dag || !g.fit || g.fit->fitness < 0.0 || g.fit->fitness > 1.0 ||
                       !validate_dag(*g.dag, instance).empty();
            if (bad) audit_violations.fetch_add(1, std::memory_order_relaxed);
        });
    };

    RunResult result;
    result.config = config;
    result.instance_digest = instance_digest(instance);
    result.time_bound = evaluator.time_bound();
    result.cost_bound = evaluator.cost_bound();

    std::vector<Genome> pop = init_population(ctx, config, threads);
    audit_population(pop);

    auto update_best = [&](const std::vector<Genome>& candidates) {
        for (const Genome& g : candidates)
            if (!result.best.fit || g.fit->fitness < result.best.fit->fitness) result.best = g;
    };
    update_best(pop);
    result.rows.push_back(make_row(0, pop, elapsed_ms()));

    const bool t1_enabled =
        config.ablation == Ablation::Full || config.ablation == Ablation::Type1Only;
    const bool t2_enabled =
        config.ablation == Ablation::Full || config.ablation == Ablation::Type2Only;
    const bool ls_enabled = config.ablation != Ablation::NoLocalSearch;

    for (std::size_t gen = 1; gen <= config.generations; ++gen) {
        // Elites: lowest fitness first, ties by population index.
        std::vector<std::size_t> ranked(pop.size());
        std::iota(ranked.begin(), ranked.end(), 0);
        std::stable_sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
            return pop[a].fit->fitness < pop[b].fit->fitness;
        });

        std::vector<Genome> next;
        next.reserve(config.population_size);
        for (std::size_t i = 0; i < config.elitism; ++i) next.push_back(pop[ranked[i]]);

        const std::size_t remainder = config.population_size - config.elitism;
        const std::size_t pairs = (remainder + 1) / 2;
        std::vector<SlotOutput> slots(pairs);
        parallel_for(pairs, threads, [&](std::size_t slot) {
            Rng rng(derive_seed(config.seed, gen, slot, kBreedStream));
            SlotOutput& out = slots[slot];
            std::size_t i1 = tournament_select(pop, config.tournament_k, rng);
            std::size_t i2 = tournament_select(pop, config.tournament_k, rng);
            if (rng.bernoulli(config.p_crossover)) {
                auto [c1, c2] = crossover(pop[i1], pop[i2], ctx);
                out.child[0] = std::move(c1);
                out.child[1] = std::move(c2);
            } else {
                out.child[0] = pop[i1];
                out.child[1] = pop[i2];
            }
            for (int j = 0; j < 2; ++j) {
                Genome& c = out.child[j];
                if (rng.bernoulli(config.p_mutation))
                    c = make_individual(mutate(c.sequence, instance.size(), rng), ctx, rng);
                else if (!c.dag)  // undecodable crossover child: repair
                    c = make_individual(c.sequence, ctx, rng);
                if (ls_enabled && config.ls_granularity == LsGranularity::PerIndividual &&
                    rng.bernoulli(config.p_local_search)) {
                    auto r = local_search(c, ctx, config.neighborhood_size, t1_enabled, t2_enabled,
                                          rng);
                    c = std::move(r.genome);
                    count_ls(r, out.ls_invoked[j], out.improved[j]);
                }
            }
        });

        GenerationRow row;
        for (std::size_t slot = 0; slot < pairs; ++slot) {
            for (int j = 0; j < 2 && next.size() < config.population_size; ++j) {
                if (slots[slot].ls_invoked[j]) {
                    switch (slots[slot].improved[j]) {
                        case ImprovementKind::TypeI: ++row.ls_t1_improved; break;
                        case ImprovementKind::TypeII: ++row.ls_t2_improved; break;
                        case ImprovementKind::None: ++row.ls_none; break;
                    }
                }
                next.push_back(std::move(slots[slot].child[j]));
            }
        }

        if (ls_enabled && config.ls_granularity == LsGranularity::PerGeneration && remainder > 0) {
            Rng rng(derive_seed(config.seed, gen, 0, kGenLsStream));
            if (rng.bernoulli(config.p_local_search)) {
                std::size_t idx =
                    config.elitism + static_cast<std::size_t>(rng.uniform_index(remainder));
                auto r = local_search(next[idx], ctx, config.neighborhood_size, t1_enabled,
                                      t2_enabled, rng);
                next[idx] = std::move(r.genome);
                switch (r.improved_by) {
                    case ImprovementKind::TypeI: ++row.ls_t1_improved; break;
                    case ImprovementKind::TypeII: ++row.ls_t2_improved; break;
                    case ImprovementKind::None: ++row.ls_none; break;
                }
            }
        }

        pop = std::move(next);
        audit_population(pop);
        update_best(pop);

        GenerationRow stats = make_row(gen, pop, elapsed_ms());
        stats.ls_t1_improved = row.ls_t1_improved;
        stats.ls_t2_improved = row.ls_t2_improved;
        stats.ls_none = row.ls_none;
        result.rows.push_back(stats);
        result.ls_t1_total += row.ls_t1_improved;
        result.ls_t2_total += row.ls_t2_improved;
        result.ls_none_total += row.ls_none;
    }

    result.clamp_count = evaluator.clamp_count();
    result.audit_violations = audit_violations.load();
    result.wall_clock_ms = elapsed_ms();
    return result;
}

}  // namespace dwsc
