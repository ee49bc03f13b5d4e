#include "dwsc/pipeline.hpp"

#include <unordered_set>

#include "dwsc/util.hpp"

namespace dwsc {

Genome decode_and_evaluate(std::vector<ServiceId> sequence, const EvalContext& ctx) {
    Genome g;
    g.sequence = std::move(sequence);
    auto dag = decode_backward(g.sequence, ctx.instance, ctx.provider);
    if (!dag) return g;
    g.sequence = strip_redundant(g.sequence, *dag);
    g.fit = ctx.evaluator.evaluate(*dag);
    g.dag = std::move(*dag);
    return g;
}

Genome make_individual(std::vector<ServiceId> sequence, const EvalContext& ctx, Rng& rng) {
    Genome g = decode_and_evaluate(dedup(sequence), ctx);
    if (g.dag) return g;

    std::unordered_set<ServiceId> present(g.sequence.begin(), g.sequence.end());
    std::vector<ServiceId> absent;
    absent.reserve(ctx.instance.size());
    for (std::size_t i = 0; i < ctx.instance.size(); ++i) {
        auto s = static_cast<ServiceId>(i);
        if (!present.count(s)) absent.push_back(s);
    }
    rng.shuffle(absent);
    std::vector<ServiceId> repaired = g.sequence;
    repaired.insert(repaired.end(), absent.begin(), absent.end());
    g = decode_and_evaluate(std::move(repaired), ctx);
    if (!g.dag) throw InfeasibleError("task cannot be satisfied by the repository");
    return g;
}

}  // namespace dwsc
