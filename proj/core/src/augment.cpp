#include "dwsc/augment.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "dwsc/rng.hpp"
#include "dwsc/util.hpp"

namespace dwsc {
namespace {

std::vector<Coord> coords_from_csv(const std::string& path, std::size_t needed) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open coordinates file: " + path);
    std::vector<Coord> out;
    std::string line;
    bool first = true;
    while (std::getline(in, line) && out.size() < needed) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string id, xs, ys;
        if (!std::getline(ss, id, ',') || !std::getline(ss, xs, ',') || !std::getline(ss, ys))
            throw ParseError("coordinates row needs id,x,y: " + line);
        try {
            out.push_back({std::stod(xs), std::stod(ys)});
        } catch (const std::exception&) {
            if (first) {
                first = false;  // header row
                continue;
            }
            throw ParseError("coordinates row has non-numeric values: " + line);
        }
        first = false;
    }
    if (out.size() < needed)
        throw ParseError("coordinates file supplies " + std::to_string(out.size()) +
                         " rows but the repository has " + std::to_string(needed) + " services");
    return out;
}

}  // namespace

NetworkModel augment(std::vector<Service>& repository, const AugmentationParams& params) {
    if (params.data_size <= 0.0) throw std::invalid_argument("data_size must be positive");
    if (params.items_per_service_min > params.items_per_service_max)
        throw std::invalid_argument("items_per_service range is inverted");

    Rng rng(params.seed);
    NetworkModel net;
    net.propagation_factor = params.propagation_factor;
    net.comm_cost_factor = params.comm_cost_factor;

    const bool synthetic = params.coordinate_source == kSyntheticCoordinates;
    std::vector<Coord> service_coords;
    if (synthetic) {
        service_coords.reserve(repository.size());
        for (std::size_t i = 0; i < repository.size(); ++i)
            service_coords.push_back({rng.unit_co(), rng.unit_co()});
    } else {
        service_coords = coords_from_csv(params.coordinate_source, repository.size());
    }

    Coord lo = service_coords.front(), hi = service_coords.front();
    for (const Coord& c : service_coords) {
        lo.x = std::min(lo.x, c.x);
        lo.y = std::min(lo.y, c.y);
        hi.x = std::max(hi.x, c.x);
        hi.y = std::max(hi.y, c.y);
    }

    for (std::size_t i = 0; i < repository.size(); ++i) {
        Service& s = repository[i];
        s.location = s.id;
        net.coords[s.id] = service_coords[i];
    }
    // Data items: hosts are placed inside the service bounding box.
    const std::size_t span = params.items_per_service_max - params.items_per_service_min + 1;
    for (Service& s : repository) {
        s.data_items.clear();
        std::size_t count =
            params.items_per_service_min + static_cast<std::size_t>(rng.uniform_index(span));
        for (std::size_t j = 0; j < count; ++j) {
            DataItem d;
            d.id = s.id + "#" + std::to_string(j);
            d.location = d.id;
            net.coords[d.id] = {rng.uniform_real(lo.x, hi.x), rng.uniform_real(lo.y, hi.y)};
            d.access_latency = rng.unit_oc();
            d.provision_cost = rng.unit_oc();
            d.size = params.data_size;
            net.set_bandwidth(d.id, s.id, rng.truncated_normal_oc(params.bandwidth_mean,
                                                                  params.bandwidth_stddev));
            s.data_items.push_back(std::move(d));
        }
    }
    net.normalize_distances();
    return net;
}

}  // namespace dwsc
