#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dwsc/network.hpp"
#include "dwsc/taxonomy.hpp"

namespace dwsc {

using ServiceId = std::int32_t;

// Virtual workflow endpoints. Real services use their repository index.
inline constexpr ServiceId kStartNode = -1;
inline constexpr ServiceId kEndNode = -2;

enum class EqInterpretation {
    Once,     // processing time / service cost counted once per service
    Literal,  // counted inside the per-data-item sum, i.e. m times
};

enum class ProviderChoice {
    Earliest,  // provider selected earliest during decoding
    Nearest,   // provider at minimal network distance; ties earliest
};

// A data item required by a service: provided at a cost, hosted at a
// location, and retrieved with a per-access latency.
struct DataItem {
    std::string id;
    double provision_cost = 0.0;  // cost charged by the data provider
    double size = 0.0;            // transferred volume, arbitrary units
    std::string location;         // key into NetworkModel::coords
    double access_latency = 0.0;  // server access latency at the host
};

// An atomic data-intensive service.
struct Service {
    std::string id;
    std::vector<ConceptId> inputs;   // sorted, unique
    std::vector<ConceptId> outputs;  // sorted, unique
    double proc_time = 0.0;          // normalized processing time in [0, 1]
    double service_cost = 0.0;       // normalized invocation cost in [0, 1]
    std::vector<DataItem> data_items;
    std::string location;  // key into NetworkModel::coords
};

struct Task {
    std::vector<ConceptId> provided;  // sorted, unique
    std::vector<ConceptId> wanted;    // sorted, unique
};

struct Weights {
    double time = 0.5;
    double cost = 0.5;
};

// Data-flow edge of a decoded workflow: `from` produced at least one concept
// consumed by `to`; `concepts` lists the consumer-side input concepts the
// edge satisfies (sorted, unique).
struct DagEdge {
    ServiceId from = kStartNode;
    ServiceId to = kEndNode;
    std::vector<ConceptId> concepts;
};

// A decoded, functionally correct composition. `services` is in selection
// order (the order the decoder committed them); edges are in creation order.
struct WorkflowDag {
    std::vector<ServiceId> services;
    std::vector<DagEdge> edges;

    bool empty() const { return services.empty(); }
    bool contains(ServiceId s) const;
};

struct FitnessBreakdown {
    double total_time = 0.0;
    double total_cost = 0.0;
    double norm_time = 0.0;  // total_time / time bound, clamped to [0, 1]
    double norm_cost = 0.0;
    double fitness = 0.0;  // weights.time * norm_time + weights.cost * norm_cost
};

// A candidate solution: an ordered, duplicate-free list of services plus the
// decode/evaluation caches. Caches are filled by the engine pipeline.
struct Genome {
    std::vector<ServiceId> sequence;
    std::optional<WorkflowDag> dag;
    std::optional<FitnessBreakdown> fit;

    double fitness_or_worst() const {
        return fit ? fit->fitness : std::numeric_limits<double>::infinity();
    }
};

// Everything one optimization run needs, immutable once finalized.
class ProblemInstance {
public:
    std::vector<Service> services;
    Taxonomy taxonomy;
    Task task;
    NetworkModel network;
    Weights weights;

    std::size_t size() const { return services.size(); }

    ServiceId find_service(const std::string& id) const;
    const Service& service(ServiceId s) const { return services[static_cast<std::size_t>(s)]; }

    // Display name for a node reference, including the virtual endpoints.
    std::string node_name(ServiceId s) const;

    // Validates invariants and precomputes the matching/geometry tables.
    // Must be called once after construction; throws ValidationError on a
    // malformed instance.
    void finalize();
    bool finalized() const { return finalized_; }

    // true iff at least one output of `s` satisfies `wanted`.
    bool service_satisfies(ServiceId s, ConceptId wanted) const {
        return out_closure_[static_cast<std::size_t>(s)][static_cast<std::size_t>(wanted)];
    }
    // true iff some task-provided concept satisfies `wanted`.
    bool task_satisfies(ConceptId wanted) const {
        return task_closure_[static_cast<std::size_t>(wanted)];
    }

    // Normalized service-to-service distance (precomputed).
    double service_distance(ServiceId a, ServiceId b) const {
        return dist_[static_cast<std::size_t>(a) * services.size() + static_cast<std::size_t>(b)];
    }

    double edge_propagation(ServiceId from, ServiceId to) const {
        if (from < 0 || to < 0) return 0.0;  // virtual endpoints: zero-length links
        return network.propagation_factor * service_distance(from, to);
    }
    double edge_comm_cost(ServiceId from, ServiceId to) const {
        if (from < 0 || to < 0) return 0.0;
        return network.comm_cost_factor * service_distance(from, to);
    }

private:
    std::unordered_map<std::string, ServiceId> service_index_;
    std::vector<std::vector<bool>> out_closure_;  // per service: satisfiable wanted concepts
    std::vector<bool> task_closure_;
    std::vector<double> dist_;  // row-major service distance matrix
    bool finalized_ = false;
};

// Sorts, uniques, and returns the concept list (normal form used everywhere).
std::vector<ConceptId> normalize_concepts(std::vector<ConceptId> ids);

}  // namespace dwsc
