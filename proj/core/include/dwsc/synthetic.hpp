#pragma once

#include <cstdint>

#include "dwsc/augment.hpp"
#include "dwsc/model.hpp"

namespace dwsc {

// Generates a layered instance that is feasible by construction: the task
// inputs feed layer 1, each layer's interface concepts feed the next, and
// the task outputs are the final interface. One chain service per layer
// produces the whole next interface; the remaining budget becomes
// alternative services consuming and producing random interface subsets, so
// every repository service is reachable by forward chaining and layers offer
// genuinely different time/cost/location trade-offs. Part of the concept
// budget becomes child concepts that alternatives may output in place of an
// interface concept, giving the taxonomy matching real work.
//
// Deterministic given the seed. Throws std::invalid_argument when the
// parameters cannot host a feasible chain (fewer services than layers, or
// fewer concepts than interfaces).
ProblemInstance generate_synthetic(std::size_t n_services, std::size_t n_concepts,
                                   std::size_t layers, std::size_t items_per_service,
                                   std::uint64_t seed);

// Same, with explicit control over the augmentation (the seed field is
// ignored; a sub-seed derived from `seed` is used).
ProblemInstance generate_synthetic(std::size_t n_services, std::size_t n_concepts,
                                   std::size_t layers, std::uint64_t seed,
                                   AugmentationParams aug);

}  // namespace dwsc
