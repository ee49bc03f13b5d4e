#include "dwsc/network.hpp"

#include "dwsc/util.hpp"

namespace dwsc {

const Coord& NetworkModel::coord(const std::string& id) const {
    auto it = coords.find(id);
    if (it == coords.end()) throw ValidationError("entity has no coordinate: " + id);
    return it->second;
}

void NetworkModel::normalize_distances() {
    double best = 0.0;
    std::vector<const Coord*> pts;
    pts.reserve(coords.size());
    for (const auto& [id, c] : coords) pts.push_back(&c);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, euclidean(*pts[i], *pts[j]));
    max_distance = best > 0.0 ? best : 1.0;
}

}  // namespace dwsc
