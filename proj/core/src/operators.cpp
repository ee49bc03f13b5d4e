#include "dwsc/operators.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "dwsc/util.hpp"

namespace dwsc {
namespace {

std::unordered_map<ServiceId, std::size_t> position_map(const std::vector<ServiceId>& sequence) {
    std::unordered_map<ServiceId, std::size_t> pos;
    pos.reserve(sequence.size());
    for (std::size_t i = 0; i < sequence.size(); ++i) pos.emplace(sequence[i], i);
    return pos;
}

}  // namespace

std::size_t tournament_select(const std::vector<Genome>& population, std::size_t k, Rng& rng) {
    if (k == 0 || k > population.size())
        throw std::invalid_argument("tournament size must be in [1, population size]");
    auto picks = rng.sample_indices(population.size(), k);
    std::size_t best = picks[0];
    for (std::size_t i = 1; i < picks.size(); ++i) {
        std::size_t cand = picks[i];
        double bf = population[best].fitness_or_worst();
        double cf = population[cand].fitness_or_worst();
        if (cf < bf || (cf == bf && cand < best)) best = cand;
    }
    return best;
}

std::vector<ServiceId> lcs(const std::vector<ServiceId>& a, const std::vector<ServiceId>& b) {
    const std::size_t n = a.size(), m = b.size();
    if (n == 0 || m == 0) return {};
    std::vector<std::uint32_t> dp((n + 1) * (m + 1), 0);
    auto at = [m](std::size_t i, std::size_t j) { return i * (m + 1) + j; };
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= m; ++j)
            dp[at(i, j)] = a[i - 1] == b[j - 1]
                               ? dp[at(i - 1, j - 1)] + 1
                               : std::max(dp[at(i - 1, j)], dp[at(i, j - 1)]);
    std::vector<ServiceId> out;
    out.reserve(dp[at(n, m)]);
    std::size_t i = n, j = m;
    while (i > 0 && j > 0) {
        if (a[i - 1] == b[j - 1]) {
            out.push_back(a[i - 1]);
            --i;
            --j;
        } else if (dp[at(i - 1, j)] >= dp[at(i, j - 1)]) {
            --i;
        } else {
            --j;
        }
    }
    std::reverse(out.begin(), out.end());
    return out;
}

namespace {

// Cut position for one parent: immediately after the service whose outgoing
// edge is longest, never strictly inside the parent's LCS span.
std::size_t pick_cut(const Genome& parent, const std::vector<ServiceId>& common,
                     const EvalContext& ctx) {
    const auto pos = position_map(parent.sequence);
    bool has_span = !common.empty();
    std::size_t span_lo = 0, span_hi = 0;
    if (has_span) {
        span_lo = pos.at(common.front());
        span_hi = pos.at(common.back());
    }

    const DagEdge* best = nullptr;
    double best_dist = -1.0;
    for (const DagEdge& e : parent.dag->edges) {
        if (e.from < 0 || e.to < 0) continue;
        std::size_t cut = pos.at(e.from);
        if (has_span && cut >= span_lo && cut < span_hi) continue;
        double d = ctx.instance.service_distance(e.from, e.to);
        bool better = d > best_dist;
        if (d == best_dist && best) {
            const auto& ai = ctx.instance.service(e.from).id;
            const auto& bi = ctx.instance.service(best->from).id;
            better = ai < bi || (ai == bi && ctx.instance.service(e.to).id <
                                                 ctx.instance.service(best->to).id);
        }
        if (better) {
            best = &e;
            best_dist = d;
        }
    }
    if (best) return pos.at(best->from);
    if (has_span) return span_hi;           // every candidate inside the span
    return parent.sequence.size() - 1;      // no usable edge: empty tail
}

std::vector<ServiceId> splice(const std::vector<ServiceId>& head_of, std::size_t cut,
                              const std::vector<ServiceId>& tail_of, std::size_t other_cut) {
    std::vector<ServiceId> child(head_of.begin(), head_of.begin() + static_cast<long>(cut) + 1);
    child.insert(child.end(), tail_of.begin() + static_cast<long>(other_cut) + 1, tail_of.end());
    return dedup(child);
}

}  // namespace

std::pair<Genome, Genome> crossover(const Genome& parent1, const Genome& parent2,
                                    const EvalContext& ctx) {
    if (!parent1.dag || !parent2.dag || parent1.dag->empty() || parent2.dag->empty())
        return {parent1, parent2};

    const auto common = lcs(parent1.sequence, parent2.sequence);
    const std::size_t cut1 = pick_cut(parent1, common, ctx);
    const std::size_t cut2 = pick_cut(parent2, common, ctx);

    Genome child1 = decode_and_evaluate(splice(parent1.sequence, cut1, parent2.sequence, cut2), ctx);
    Genome child2 = decode_and_evaluate(splice(parent2.sequence, cut2, parent1.sequence, cut1), ctx);
    return {std::move(child1), std::move(child2)};
}

std::vector<ServiceId> mutate(const std::vector<ServiceId>& sequence, std::size_t n_services,
                              Rng& rng) {
    const std::size_t p = static_cast<std::size_t>(rng.uniform_index(sequence.size() + 1));
    std::vector<ServiceId> out(sequence.begin(), sequence.begin() + static_cast<long>(p));
    std::unordered_set<ServiceId> prefix(out.begin(), out.end());
    std::vector<ServiceId> rest;
    rest.reserve(n_services - p);
    for (std::size_t i = 0; i < n_services; ++i) {
        auto s = static_cast<ServiceId>(i);
        if (!prefix.count(s)) rest.push_back(s);
    }
    rng.shuffle(rest);
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

std::optional<Bottleneck> find_bottleneck(const WorkflowDag& dag,
                                          const std::vector<ServiceId>& sequence,
                                          const ProblemInstance& instance) {
    const DagEdge* best = nullptr;
    double best_dist = 0.0;
    for (const DagEdge& e : dag.edges) {
        if (e.from < 0 || e.to < 0) continue;
        double d = instance.service_distance(e.from, e.to);
        bool better;
        if (!best) {
            better = true;
        } else if (d != best_dist) {
            better = d > best_dist;
        } else {
            const auto& ai = instance.service(e.from).id;
            const auto& bi = instance.service(best->from).id;
            better =
                ai < bi || (ai == bi && instance.service(e.to).id < instance.service(best->to).id);
        }
        if (better) {
            best = &e;
            best_dist = d;
        }
    }
    if (!best) return std::nullopt;
    const auto pos = position_map(sequence);
    Bottleneck b;
    b.producer = best->from;
    b.consumer = best->to;
    b.distance = best_dist;
    b.producer_pos = pos.at(best->from);
    b.consumer_pos = pos.at(best->to);
    return b;
}

std::vector<std::vector<ServiceId>> make_neighbors(const Genome& genome,
                                                   const Bottleneck& bottleneck,
                                                   NeighborKind kind, const EvalContext& ctx,
                                                   std::size_t count, Rng& rng) {
    const ProblemInstance& inst = ctx.instance;
    const std::vector<ServiceId>& seq = genome.sequence;

    // Anchor and the output set candidates must connect to.
    ServiceId anchor = bottleneck.producer;  // Type-I: c itself
    std::size_t insert_at = bottleneck.producer_pos + 1;
    if (kind == NeighborKind::TypeII) {
        // Predecessor of c on the time-critical path; the start node when c
        // is fed by the task inputs alone.
        std::vector<ServiceId> preds;
        for (const DagEdge& e : genome.dag->edges)
            if (e.to == bottleneck.producer && e.from >= 0) preds.push_back(e.from);
        if (preds.empty()) {
            anchor = kStartNode;
            insert_at = bottleneck.producer_pos;  // block goes just before c
        } else {
            auto completion = ctx.evaluator.completion_times(*genome.dag);
            anchor = preds.front();
            for (ServiceId p : preds) {
                double ca = completion[anchor], cp = completion[p];
                if (cp > ca || (cp == ca && inst.service(p).id < inst.service(anchor).id))
                    anchor = p;
            }
            insert_at = position_map(seq).at(anchor) + 1;
        }
    }

    auto connects = [&](ConceptId c) {
        return anchor == kStartNode ? inst.task_satisfies(c) : inst.service_satisfies(anchor, c);
    };
    std::vector<ServiceId> candidates;
    for (std::size_t i = 0; i < inst.size(); ++i) {
        auto s = static_cast<ServiceId>(i);
        if (s == bottleneck.consumer) continue;
        if (kind == NeighborKind::TypeII && s == bottleneck.producer) continue;
        const Service& svc = inst.service(s);
        if (std::any_of(svc.inputs.begin(), svc.inputs.end(), connects)) candidates.push_back(s);
    }
    if (candidates.empty()) return {};

    std::unordered_set<ServiceId> block_set(candidates.begin(), candidates.end());
    std::unordered_set<ServiceId> present(seq.begin(), seq.end());
    std::vector<ServiceId> absent;
    for (std::size_t i = 0; i < inst.size(); ++i) {
        auto s = static_cast<ServiceId>(i);
        if (!present.count(s) && !block_set.count(s)) absent.push_back(s);
    }
    const std::size_t prefix_cap = std::min(absent.size(), inst.size() / 10);

    std::vector<std::vector<ServiceId>> neighbors;
    neighbors.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<ServiceId> block = candidates;
        rng.shuffle(block);
        const std::size_t plen = static_cast<std::size_t>(rng.uniform_index(prefix_cap + 1));
        std::vector<ServiceId> out;
        out.reserve(plen + seq.size() + block.size());
        for (std::size_t idx : rng.sample_indices(absent.size(), plen)) out.push_back(absent[idx]);
        for (std::size_t i = 0; i < insert_at; ++i)
            if (!block_set.count(seq[i])) out.push_back(seq[i]);
        out.insert(out.end(), block.begin(), block.end());
        for (std::size_t i = insert_at; i < seq.size(); ++i)
            if (!block_set.count(seq[i])) out.push_back(seq[i]);
        neighbors.push_back(std::move(out));
    }
    return neighbors;
}

LocalSearchResult local_search(const Genome& genome, const EvalContext& ctx,
                               std::size_t neighborhood_size, bool enable_type1,
                               bool enable_type2, Rng& rng) {
    LocalSearchResult result{genome, ImprovementKind::None};
    if (!genome.dag || !genome.fit) return result;
    auto bottleneck = find_bottleneck(*genome.dag, genome.sequence, ctx.instance);
    if (!bottleneck) return result;

    std::size_t n_type1 = 0, n_type2 = 0;
    if (enable_type1 && enable_type2) {
        n_type1 = neighborhood_size / 2;
        n_type2 = neighborhood_size - n_type1;
    } else if (enable_type1) {
        n_type1 = neighborhood_size;
    } else if (enable_type2) {
        n_type2 = neighborhood_size;
    }

    // All neighbor sequences are constructed up front so the rng draw order
    // is independent of how they are later evaluated.
    std::vector<std::pair<std::vector<ServiceId>, ImprovementKind>> pending;
    for (auto& s : make_neighbors(genome, *bottleneck, NeighborKind::TypeI, ctx, n_type1, rng))
        pending.emplace_back(std::move(s), ImprovementKind::TypeI);
    for (auto& s : make_neighbors(genome, *bottleneck, NeighborKind::TypeII, ctx, n_type2, rng))
        pending.emplace_back(std::move(s), ImprovementKind::TypeII);

    Genome best;
    ImprovementKind best_kind = ImprovementKind::None;
    for (auto& [seq, kind] : pending) {
        Genome cand = decode_and_evaluate(std::move(seq), ctx);
        if (!cand.fit) continue;  // undecodable neighbor: no improvement
        if (cand.fit->fitness < best.fitness_or_worst()) {
            best = std::move(cand);
            best_kind = kind;
        }
    }
    if (best.fit && best.fit->fitness < genome.fit->fitness) {
        result.genome = std::move(best);
        result.improved_by = best_kind;
    }
    return result;
}

}  // namespace dwsc
