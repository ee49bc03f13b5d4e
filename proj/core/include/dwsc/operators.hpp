#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "dwsc/pipeline.hpp"

namespace dwsc {

// Longest communication link of a decoded solution: the service-to-service
// edge with the largest normalized distance.
struct Bottleneck {
    ServiceId producer = kStartNode;
    ServiceId consumer = kEndNode;
    double distance = 0.0;
    std::size_t producer_pos = 0;  // positions within the genome sequence
    std::size_t consumer_pos = 0;
};

enum class NeighborKind { TypeI, TypeII };

enum class ImprovementKind { None, TypeI, TypeII };

// Index of the tournament winner: k individuals sampled uniformly without
// replacement, lowest fitness wins, ties broken by earliest population index.
std::size_t tournament_select(const std::vector<Genome>& population, std::size_t k, Rng& rng);

// Longest common subsequence by dynamic programming. Among equal-length
// solutions the backtrace walks from the sequence ends and takes every
// available match, preferring matches closest to the ends; on non-match ties
// it advances in `a` first. Deterministic.
std::vector<ServiceId> lcs(const std::vector<ServiceId>& a, const std::vector<ServiceId>& b);

// Distance-guided single-point crossover. Each parent is cut immediately
// after the service whose outgoing dag edge spans the longest distance,
// skipping cuts that fall strictly inside that parent's LCS span (fallback:
// just after the LCS end). Tails are exchanged, children are dedup'd,
// decoded, stripped and cached. Parents with an empty workflow are returned
// unchanged.
std::pair<Genome, Genome> crossover(const Genome& parent1, const Genome& parent2,
                                    const EvalContext& ctx);

// Keeps a uniformly chosen prefix and replaces the suffix with a random
// permutation of every repository service not in the prefix, restoring the
// full repertoire for the decoder.
std::vector<ServiceId> mutate(const std::vector<ServiceId>& sequence, std::size_t n_services,
                              Rng& rng);

// Max-distance service-to-service edge; ties broken lexicographically by
// (producer id, consumer id). std::nullopt when the dag has no such edge.
// `sequence` locates the endpoints' genome positions.
std::optional<Bottleneck> find_bottleneck(const WorkflowDag& dag,
                                          const std::vector<ServiceId>& sequence,
                                          const ProblemInstance& instance);

// Neighbor sequences for one bottleneck.
//
// Type-I anchors at the bottleneck producer c and inserts, immediately after
// it, every repository service (except the consumer a) whose inputs can
// connect to c's outputs. Type-II anchors at c's predecessor f on the
// time-critical path (the start node if c has no real predecessor) and
// inserts every service other than c and a whose inputs are partially
// satisfiable by f's outputs. Each neighbor shuffles the inserted block,
// prepends a random-length prefix of services absent from the sequence, and
// keeps the block members at their inserted positions when removing
// duplicates. Returns an empty list when there are no candidates.
std::vector<std::vector<ServiceId>> make_neighbors(const Genome& genome,
                                                   const Bottleneck& bottleneck,
                                                   NeighborKind kind, const EvalContext& ctx,
                                                   std::size_t count, Rng& rng);

struct LocalSearchResult {
    Genome genome;
    ImprovementKind improved_by = ImprovementKind::None;
};

// Bottleneck-replacement local search: generates neighborhood_size neighbors
// split between the enabled kinds, evaluates them all, and returns the best
// neighbor if it strictly improves on the input (the input otherwise).
// Never returns a genome with worse fitness than the input.
LocalSearchResult local_search(const Genome& genome, const EvalContext& ctx,
                               std::size_t neighborhood_size, bool enable_type1,
                               bool enable_type2, Rng& rng);

}  // namespace dwsc
