#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dwsc/model.hpp"

namespace dwsc {

inline constexpr const char* kSyntheticCoordinates = "synthetic-uniform";

struct AugmentationParams {
    std::uint64_t seed = 0;
    double data_size = 3.0;  // same size for every data item
    double bandwidth_mean = 0.5;
    double bandwidth_stddev = 0.15;
    std::size_t items_per_service_min = 1;
    std::size_t items_per_service_max = 1;
    // kSyntheticCoordinates, or the path of a CSV file with id,x,y rows
    // assigned to services in order (surplus rows ignored).
    std::string coordinate_source = kSyntheticCoordinates;
    double propagation_factor = 1.0;
    double comm_cost_factor = 1.0;
};

// Attaches network geometry and data items to a parsed repository, in place.
//
// Deterministic given the seed; the draw order is: one coordinate per
// service (synthetic mode only), then per service in repository order the
// item count followed by, per item, its coordinate, access latency,
// provision cost and link bandwidth. Latency and provision cost are uniform
// on (0,1]; bandwidth is normal resampled into (0,1]; item coordinates are
// uniform over the bounding box of the service coordinates. Distances are
// normalized by the maximum pairwise distance over all placed entities.
NetworkModel augment(std::vector<Service>& repository, const AugmentationParams& params);

}  // namespace dwsc
