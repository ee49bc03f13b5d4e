#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dwsc {

struct Coord {
    double x = 0.0;
    double y = 0.0;
};

inline double euclidean(const Coord& a, const Coord& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

// Geometry and link properties of the hosting network.
//
// Distances are Euclidean over 2-D coordinates, divided by `max_distance` so
// that every pairwise distance lies in [0, 1]. Propagation delay and
// communication cost between two located entities are the normalized distance
// scaled by `propagation_factor` and `comm_cost_factor`.
class NetworkModel {
public:
    std::unordered_map<std::string, Coord> coords;
    double max_distance = 1.0;  // normalizer; > 0
    double propagation_factor = 1.0;
    double comm_cost_factor = 1.0;

    void set_bandwidth(const std::string& a, const std::string& b, double value) {
        bandwidth_[key(a, b)] = value;
    }
    // Bandwidth of the (unordered) link, or a negative value if not assigned.
    double bandwidth(const std::string& a, const std::string& b) const {
        auto it = bandwidth_.find(key(a, b));
        return it == bandwidth_.end() ? -1.0 : it->second;
    }
    const std::unordered_map<std::string, double>& bandwidth_map() const { return bandwidth_; }

    bool located(const std::string& id) const { return coords.count(id) != 0; }

    const Coord& coord(const std::string& id) const;

    // Normalized distance in [0, 1] (up to the normalizer used).
    double distance(const std::string& a, const std::string& b) const {
        if (a == b) return 0.0;
        return euclidean(coord(a), coord(b)) / max_distance;
    }

    double propagation(const std::string& a, const std::string& b) const {
        return propagation_factor * distance(a, b);
    }
    double comm_cost(const std::string& a, const std::string& b) const {
        return comm_cost_factor * distance(a, b);
    }

    // Sets max_distance to the largest pairwise Euclidean distance among all
    // registered coordinates (1.0 if degenerate).
    void normalize_distances();

private:
    static std::string key(const std::string& a, const std::string& b) {
        return a <= b ? a + '\x1f' + b : b + '\x1f' + a;
    }
    std::unordered_map<std::string, double> bandwidth_;
};

}  // namespace dwsc
