#pragma once

#include "dwsc/decoder.hpp"
#include "dwsc/evaluator.hpp"
#include "dwsc/model.hpp"
#include "dwsc/rng.hpp"

namespace dwsc {

// Shared read-only state every operator needs to turn a raw sequence into an
// evaluated individual.
struct EvalContext {
    const ProblemInstance& instance;
    const Evaluator& evaluator;
    ProviderChoice provider = ProviderChoice::Earliest;
};

// Decodes a duplicate-free sequence and, on success, strips it to the
// services actually used and fills both caches. On failure returns the
// genome without caches.
Genome decode_and_evaluate(std::vector<ServiceId> sequence, const EvalContext& ctx);

// Engine pipeline for individuals entering the population: dedup, decode,
// strip, evaluate. An undecodable sequence is repaired by appending the
// missing repository services in random order (which restores the full
// repertoire for the decoder's multi-pass) and decoded again. Throws
// InfeasibleError if even the repaired sequence cannot realize the task.
Genome make_individual(std::vector<ServiceId> sequence, const EvalContext& ctx, Rng& rng);

}  // namespace dwsc
